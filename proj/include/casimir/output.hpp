#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace casimir {

inline constexpr const char* tool_version = "casimir-scatter 1.0.0";
inline constexpr const char* csv_schema = "casimir-scatter.v1";

inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

//! CSV document with the fixed schema line, '#' provenance headers, one
//! header row and preformatted data rows.
struct CsvDoc {
  std::vector<std::pair<std::string, std::string>> provenance;
  std::string header;
  std::vector<std::string> rows;

  std::string str() const {
    std::ostringstream out;
    out << "# schema=" << csv_schema << "\n";
    for (const auto& [k, v] : provenance) out << "# " << k << "=" << v << "\n";
    out << header << "\n";
    for (const auto& r : rows) out << r << "\n";
    return out.str();
  }
};

//! Writes text to a file, or stdout when path is empty.  Returns false on
//! I/O failure.
inline bool write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

}  // namespace casimir

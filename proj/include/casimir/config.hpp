#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/energy.hpp"
#include "casimir/materials.hpp"

namespace casimir {

//! Plain-text key-value config: one `key = value` per line, '#' comments.
inline std::map<std::string, std::string> parse_config_text(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: missing '=' on line " + std::to_string(lineno));
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config: empty key on line " + std::to_string(lineno));
    kv[key] = val;
  }
  return kv;
}

inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  return parse_config_text(in);
}

namespace detail {

inline std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  size_t b = s.find_last_not_of(" \t");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

inline double to_double(const std::string& key, const std::string& raw) {
  try {
    std::string v = trimmed(raw);
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (...) {
    throw std::invalid_argument("config: bad number for " + key + ": '" + raw + "'");
  }
}

inline int to_int(const std::string& key, const std::string& raw) {
  try {
    std::string v = trimmed(raw);
    size_t pos = 0;
    int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return i;
  } catch (...) {
    throw std::invalid_argument("config: bad integer for " + key + ": '" + raw + "'");
  }
}

// "B,lambda" pairs separated by ';', e.g. "4.91,106" or "1.0,100;0.5,300"
inline std::vector<SellmeierTerm> parse_terms(const std::string& v) {
  std::vector<SellmeierTerm> terms;
  std::stringstream ss(v);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    size_t comma = pair.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("config: sphere term needs 'B,lambda_nm': '" + pair + "'");
    terms.push_back({to_double("material.sphere.terms", pair.substr(0, comma)),
                     to_double("material.sphere.terms", pair.substr(comma + 1))});
  }
  if (terms.empty()) throw std::invalid_argument("config: empty material.sphere.terms");
  return terms;
}

}  // namespace detail

//! Builds a material from `<prefix>.model` plus its parameter keys.
inline MaterialModel material_from_config(const std::map<std::string, std::string>& kv,
                                          const std::string& prefix, const MaterialModel& fallback) {
  auto get = [&](const std::string& suffix) -> const std::string* {
    auto it = kv.find(prefix + "." + suffix);
    return it == kv.end() ? nullptr : &it->second;
  };
  const std::string* model = get("model");
  if (!model) return fallback;
  if (*model == "vacuum") return MaterialModel::vacuum();
  if (*model == "drude") {
    DrudeParams p;
    if (const auto* v = get("lambda_p_nm")) p.lambda_p_nm = detail::to_double(prefix, *v);
    if (const auto* v = get("gamma_ratio")) p.gamma_ratio = detail::to_double(prefix, *v);
    return MaterialModel(p);
  }
  if (*model == "sellmeier") {
    SellmeierParams p;
    if (const auto* v = get("terms")) p.terms = detail::parse_terms(*v);
    return MaterialModel(p);
  }
  throw std::invalid_argument("config: unknown material model '" + *model + "'");
}

//! Applies numerics.* overrides onto a NumericsSpec.
inline NumericsSpec numerics_from_config(const std::map<std::string, std::string>& kv,
                                         NumericsSpec num = {}) {
  auto get = [&](const char* k) -> const std::string* {
    auto it = kv.find(std::string("numerics.") + k);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (const auto* v = get("ell_max")) num.ell_max = detail::to_int("numerics.ell_max", *v);
  if (const auto* v = get("m_rel_cutoff")) num.m_rel_cutoff = detail::to_double("numerics.m_rel_cutoff", *v);
  if (const auto* v = get("xi_nodes")) num.xi_nodes = detail::to_int("numerics.xi_nodes", *v);
  if (const auto* v = get("x_nodes")) num.x_nodes = detail::to_int("numerics.x_nodes", *v);
  if (const auto* v = get("target_rel_err")) num.target_rel_err = detail::to_double("numerics.target_rel_err", *v);
  if (const auto* v = get("refine")) num.refine = (*v == "1" || *v == "true");
  num.validate();
  return num;
}

}  // namespace casimir

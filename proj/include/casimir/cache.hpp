#pragma once

#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "casimir/energy.hpp"
#include "casimir/geometry.hpp"
#include "casimir/materials.hpp"
#include "casimir/sha256.hpp"

namespace casimir {

namespace detail {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

//! Canonical cache key of one energy request; hashed into the file name.
inline std::string energy_cache_key(const char* kind, const Geometry& geom,
                                    const MaterialModel& plane, const MaterialModel& sphere,
                                    const NumericsSpec& num) {
  std::string key = kind;
  key += ";R=" + detail::fmt17(geom.radius_nm) + ";L=" + detail::fmt17(geom.gap_nm);
  key += ";plane=" + plane.describe() + ";sphere=" + sphere.describe();
  key += ";lmax=" + std::to_string(num.ell_max) + ";mcut=" + detail::fmt17(num.m_rel_cutoff);
  key += ";xi=" + std::to_string(num.xi_nodes) + ";x=" + std::to_string(num.x_nodes);
  key += ";tol=" + detail::fmt17(num.target_rel_err) + ";refine=" + (num.refine ? "1" : "0");
  return key;
}

//! One JSON record per key under cache_dir/<sha256>.json; writes go through
//! a temp file and an atomic rename, so concurrent writers stay safe.
class EnergyCache {
 public:
  explicit EnergyCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }
  int hits() const { return hits_; }
  int misses() const { return misses_; }

  std::optional<EnergyResult> lookup(const std::string& key) {
    std::ifstream in(path_for(key));
    if (!in) {
      ++misses_;
      return std::nullopt;
    }
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || j.value("key", "") != key) {
      ++misses_;
      return std::nullopt;
    }
    EnergyResult r;
    const auto& res = j.at("result");
    r.energy_ev = res.at("energy_ev").get<double>();
    r.energy_natural = res.at("energy_natural").get<double>();
    r.lmax_used = res.at("lmax_used").get<int>();
    r.m_used = res.at("m_used").get<int>();
    r.nodes_used = res.at("nodes_used").get<int>();
    r.x_nodes_used = res.at("x_nodes_used").get<int>();
    r.rel_err_estimate = res.at("rel_err_estimate").get<double>();
    r.converged = res.at("converged").get<bool>();
    ++hits_;
    return r;
  }

  void store(const std::string& key, const EnergyResult& r) {
    std::filesystem::create_directories(dir_);
    nlohmann::ordered_json j;
    j["key"] = key;
    j["result"] = {{"energy_ev", r.energy_ev},
                   {"energy_natural", r.energy_natural},
                   {"lmax_used", r.lmax_used},
                   {"m_used", r.m_used},
                   {"nodes_used", r.nodes_used},
                   {"x_nodes_used", r.x_nodes_used},
                   {"rel_err_estimate", r.rel_err_estimate},
                   {"converged", r.converged}};
    std::filesystem::path final_path = path_for(key);
    std::filesystem::path tmp = final_path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
      std::ofstream out(tmp);
      if (!out) throw std::runtime_error("EnergyCache: cannot write " + tmp.string());
      out << j.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, final_path);
  }

  void clear() {
    if (!std::filesystem::exists(dir_)) return;
    for (const auto& e : std::filesystem::directory_iterator(dir_))
      if (e.path().extension() == ".json") std::filesystem::remove(e.path());
  }

 private:
  std::filesystem::path path_for(const std::string& key) const {
    return dir_ / (sha256_hex(key) + ".json");
  }

  std::filesystem::path dir_;
  std::atomic<int> hits_{0};
  std::atomic<int> misses_{0};
};

//! Materials + numerics + optional cache bundled for repeated evaluations.
struct EnergySolver {
  MaterialModel plane = MaterialModel::default_plane();
  MaterialModel sphere = MaterialModel::default_sphere();
  NumericsSpec num;
  EnergyCache* cache = nullptr;
  int workers = 1;

  EnergyResult exact(const Geometry& geom) const {
    if (cache) {
      std::string key = energy_cache_key("exact", geom, plane, sphere, num);
      if (auto hit = cache->lookup(key)) return *hit;
      EnergyResult r = casimir_energy_exact(geom, plane, sphere, num, workers);
      cache->store(key, r);
      return r;
    }
    return casimir_energy_exact(geom, plane, sphere, num, workers);
  }

  EnergyResult perturbative(const Geometry& geom) const {
    if (cache) {
      std::string key = energy_cache_key("perturbative", geom, plane, sphere, num);
      if (auto hit = cache->lookup(key)) return *hit;
      EnergyResult r = casimir_energy_perturbative(geom, plane, sphere, num, workers);
      cache->store(key, r);
      return r;
    }
    return casimir_energy_perturbative(geom, plane, sphere, num, workers);
  }
};

}  // namespace casimir

#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "casimir/analysis.hpp"
#include "casimir/asymptotics.hpp"
#include "casimir/cache.hpp"
#include "casimir/config.hpp"
#include "casimir/energy.hpp"
#include "casimir/output.hpp"
#include "casimir/threads.hpp"

namespace casimir {

//! Parsed invocation of the command-line tool.
struct RunConfig {
  std::string command;       // energy|curve|slopes|ratios|asymptotics|figures|cache-clear
  std::string figure;        // fig1..fig5 for `figures`
  double radius_nm = 10.0;
  double distance_nm = 100.0;
  double l_min_nm = 1.0;
  double l_max_nm = 500.0;
  int points = 30;
  std::vector<double> radii_nm;          // curve families; default {2,5,10,20}
  int lmax = 0;                          // 0 = automatic policy
  int xi_nodes = 0;                      // 0 = default
  int x_nodes = 0;
  double rel_tol = 0.0;
  std::string output_path;               // empty = stdout
  std::string format = "csv";            // csv|json
  std::string cache_dir;                 // empty = env or ./cache
  bool no_cache = false;
  std::string config_path;
  int workers = 0;                       // 0 = hardware
  std::string dump_block_path;           // optional diagnostics

  void validate() const {
    if (format != "csv" && format != "json")
      throw std::invalid_argument("format must be csv or json");
    if (points < 2) throw std::invalid_argument("grid needs >= 2 points");
    if (!(l_min_nm > 0.0 && l_max_nm > l_min_nm)) throw std::invalid_argument("bad L grid");
    for (double r : radii_nm)
      if (!(r > 0.0)) throw std::invalid_argument("radii must be positive");
  }
};

namespace detail {

struct RunContext {
  MaterialModel plane = MaterialModel::default_plane();
  MaterialModel sphere = MaterialModel::default_sphere();
  NumericsSpec num;
  std::unique_ptr<EnergyCache> cache;
  int workers = 1;
  bool all_converged = true;

  EnergySolver solver(int inner_workers) const {
    EnergySolver s;
    s.plane = plane;
    s.sphere = sphere;
    s.num = num;
    s.cache = cache.get();
    s.workers = inner_workers;
    return s;
  }
};

inline RunContext make_context(const RunConfig& cfg) {
  RunContext ctx;
  std::map<std::string, std::string> kv;
  if (!cfg.config_path.empty()) kv = parse_config_file(cfg.config_path);
  ctx.plane = material_from_config(kv, "material.plane", MaterialModel::default_plane());
  ctx.sphere = material_from_config(kv, "material.sphere", MaterialModel::default_sphere());
  ctx.num = numerics_from_config(kv);
  if (cfg.lmax > 0) ctx.num.ell_max = cfg.lmax;
  if (cfg.xi_nodes > 0) ctx.num.xi_nodes = cfg.xi_nodes;
  if (cfg.x_nodes > 0) ctx.num.x_nodes = cfg.x_nodes;
  if (cfg.rel_tol > 0.0) ctx.num.target_rel_err = cfg.rel_tol;
  ctx.num.validate();
  if (!cfg.no_cache) {
    std::string dir = cfg.cache_dir;
    if (dir.empty()) {
      const char* env = std::getenv("CASIMIR_CACHE_DIR");
      dir = env ? env : "cache";
    }
    ctx.cache = std::make_unique<EnergyCache>(dir);
  }
  ctx.workers = cfg.workers > 0 ? cfg.workers : hardware_workers();
  return ctx;
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(i * step);
  g.back() = hi;
  return g;
}

inline std::vector<std::pair<std::string, std::string>> base_provenance(const RunConfig& cfg,
                                                                        const RunContext& ctx) {
  std::vector<std::pair<std::string, std::string>> p;
  p.emplace_back("version", tool_version);
  p.emplace_back("command", cfg.command + (cfg.figure.empty() ? "" : " " + cfg.figure));
  p.emplace_back("material.plane", ctx.plane.describe());
  p.emplace_back("material.sphere", ctx.sphere.describe());
  p.emplace_back("numerics.ell_max", std::to_string(ctx.num.ell_max));
  p.emplace_back("numerics.xi_nodes", std::to_string(ctx.num.xi_nodes));
  p.emplace_back("numerics.x_nodes", std::to_string(ctx.num.x_nodes));
  p.emplace_back("numerics.m_rel_cutoff", fmt_g17(ctx.num.m_rel_cutoff));
  p.emplace_back("numerics.target_rel_err", fmt_g17(ctx.num.target_rel_err));
  // worker count never appears: outputs must be bit-identical across it
  return p;
}

inline void add_cache_provenance(std::vector<std::pair<std::string, std::string>>& p,
                                 const RunContext& ctx) {
  p.emplace_back("cache_hits", std::to_string(ctx.cache ? ctx.cache->hits() : 0));
  p.emplace_back("cache_misses", std::to_string(ctx.cache ? ctx.cache->misses() : 0));
}

// Energies for one radius over an L-grid; points fan out across workers,
// each inner evaluation stays single-threaded, and the assembled curve is
// ordered by index, so output bytes never depend on the worker count.
inline Curve exact_curve(const RunContext& ctx, double radius, const std::vector<double>& grid) {
  Curve c;
  c.points.resize(grid.size());
  EnergySolver s = ctx.solver(1);
  parallel_for(static_cast<int>(grid.size()), ctx.workers, [&](int i) {
    EnergyResult r = s.exact(Geometry(radius, grid[i]));
    c.points[i] = {grid[i], r.energy_ev, r.converged};
  });
  return c;
}

inline nlohmann::ordered_json result_json(const Geometry& g, const EnergyResult& r) {
  return {{"radius_nm", g.radius_nm},
          {"distance_nm", g.gap_nm},
          {"energy_ev", r.energy_ev},
          {"energy_natural", r.energy_natural},
          {"lmax_used", r.lmax_used},
          {"m_used", r.m_used},
          {"xi_nodes_used", r.nodes_used},
          {"x_nodes_used", r.x_nodes_used},
          {"rel_err_estimate", r.rel_err_estimate},
          {"converged", r.converged}};
}

inline nlohmann::ordered_json provenance_json(
    const std::vector<std::pair<std::string, std::string>>& p) {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

inline int emit(const RunConfig& cfg, const CsvDoc& csv, const nlohmann::ordered_json& json) {
  std::string text = (cfg.format == "csv") ? csv.str() : json.dump(2) + "\n";
  if (!write_text(cfg.output_path, text)) {
    std::cerr << "error: cannot write output to '" << cfg.output_path << "'\n";
    return 3;
  }
  return 0;
}

inline int run_energy(const RunConfig& cfg, RunContext& ctx) {
  Geometry geom(cfg.radius_nm, cfg.distance_nm);
  if (!cfg.dump_block_path.empty()) {
    double xi = 1.0 / geom.script_l();
    int lm = ctx.num.ell_max > 0 ? ctx.num.ell_max : ell_max_policy(geom);
    dump_block_csv(roundtrip_block(geom, ctx.plane, ctx.sphere, xi, 0, lm,
                                   QuadratureSpec{ctx.num.x_nodes}),
                   cfg.dump_block_path);
  }
  EnergyResult r = ctx.solver(ctx.workers).exact(geom);
  ctx.all_converged = r.converged;

  auto prov = base_provenance(cfg, ctx);
  add_cache_provenance(prov, ctx);
  CsvDoc csv;
  csv.provenance = prov;
  csv.header = "R_nm,L_nm,E_eV,E_natural,lmax_used,m_used,rel_err_estimate,converged";
  csv.rows.push_back(fmt_g17(geom.radius_nm) + "," + fmt_g17(geom.gap_nm) + "," +
                     fmt_g17(r.energy_ev) + "," + fmt_g17(r.energy_natural) + "," +
                     std::to_string(r.lmax_used) + "," + std::to_string(r.m_used) + "," +
                     fmt_g17(r.rel_err_estimate) + "," + (r.converged ? "1" : "0"));
  nlohmann::ordered_json j;
  j["schema"] = csv_schema;
  j["provenance"] = provenance_json(prov);
  j["result"] = result_json(geom, r);
  // energy prints JSON by default
  RunConfig c2 = cfg;
  if (cfg.format.empty()) c2.format = "json";
  return emit(c2, csv, j);
}

inline int run_curve(const RunConfig& cfg, RunContext& ctx) {
  std::vector<double> grid = log_grid(cfg.l_min_nm, cfg.l_max_nm, cfg.points);
  Curve c = exact_curve(ctx, cfg.radius_nm, grid);
  SlopeCurve nu = slope_nu(c);
  for (const auto& p : c.points) ctx.all_converged = ctx.all_converged && p.converged;

  auto prov = base_provenance(cfg, ctx);
  prov.emplace_back("radius_nm", fmt_g17(cfg.radius_nm));
  add_cache_provenance(prov, ctx);
  CsvDoc csv;
  csv.provenance = prov;
  csv.header = "L_nm,R_nm,E_eV,F_eV_per_nm,nu,converged";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (size_t i = 0; i < c.points.size(); ++i) {
    double L = c.points[i].abscissa_nm, E = c.points[i].energy_ev, v = nu.points[i].slope;
    double F = v * E / L;  // F = -dE/dL = nu E / L
    csv.rows.push_back(fmt_g17(L) + "," + fmt_g17(cfg.radius_nm) + "," + fmt_g17(E) + "," +
                       fmt_g17(F) + "," + fmt_g17(v) + "," + (c.points[i].converged ? "1" : "0"));
    rows.push_back({{"L_nm", L},
                    {"R_nm", cfg.radius_nm},
                    {"E_eV", E},
                    {"F_eV_per_nm", F},
                    {"nu", v},
                    {"converged", c.points[i].converged}});
  }
  nlohmann::ordered_json j;
  j["schema"] = csv_schema;
  j["provenance"] = provenance_json(prov);
  j["rows"] = rows;
  return emit(cfg, csv, j);
}

inline int run_slopes(const RunConfig& cfg, RunContext& ctx) {
  std::vector<double> grid = log_grid(cfg.l_min_nm, cfg.l_max_nm, cfg.points);
  Curve c = exact_curve(ctx, cfg.radius_nm, grid);
  SlopeCurve nu = slope_nu(c);
  EnergySolver s = ctx.solver(1);
  std::vector<double> mu(grid.size());
  parallel_for(static_cast<int>(grid.size()), ctx.workers, [&](int i) {
    mu[i] = slope_mu([&](double R, double L) { return s.exact(Geometry(R, L)).energy_ev; },
                     cfg.radius_nm, grid[i]);
  });
  for (const auto& p : c.points) ctx.all_converged = ctx.all_converged && p.converged;

  auto prov = base_provenance(cfg, ctx);
  prov.emplace_back("radius_nm", fmt_g17(cfg.radius_nm));
  add_cache_provenance(prov, ctx);
  CsvDoc csv;
  csv.provenance = prov;
  csv.header = "L_nm,R_nm,E_eV,nu,mu,converged";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (size_t i = 0; i < grid.size(); ++i) {
    csv.rows.push_back(fmt_g17(grid[i]) + "," + fmt_g17(cfg.radius_nm) + "," +
                       fmt_g17(c.points[i].energy_ev) + "," + fmt_g17(nu.points[i].slope) + "," +
                       fmt_g17(mu[i]) + "," + (c.points[i].converged ? "1" : "0"));
    rows.push_back({{"L_nm", grid[i]},
                    {"R_nm", cfg.radius_nm},
                    {"E_eV", c.points[i].energy_ev},
                    {"nu", nu.points[i].slope},
                    {"mu", mu[i]},
                    {"converged", c.points[i].converged}});
  }
  nlohmann::ordered_json j;
  j["schema"] = csv_schema;
  j["provenance"] = provenance_json(prov);
  j["rows"] = rows;
  return emit(cfg, csv, j);
}

inline int run_ratios(const RunConfig& cfg, RunContext& ctx) {
  if (!ctx.plane.is_drude() || !ctx.sphere.is_sellmeier())
    throw std::invalid_argument("ratios: needs a Drude plane and a Sellmeier sphere");
  Coefficients coeff = coefficients(ctx.plane.drude(), ctx.sphere.sellmeier(), ctx.num);
  std::vector<double> grid = log_grid(cfg.l_min_nm, cfg.l_max_nm, cfg.points);
  Curve c = exact_curve(ctx, cfg.radius_nm, grid);
  std::vector<RatioPoint> ratios = ratio_curves(c, coeff, cfg.radius_nm);
  for (const auto& p : c.points) ctx.all_converged = ctx.all_converged && p.converged;

  auto prov = base_provenance(cfg, ctx);
  prov.emplace_back("radius_nm", fmt_g17(cfg.radius_nm));
  prov.emplace_back("c3_ev", fmt_g17(coeff.c3_ev));
  prov.emplace_back("c4_ev_nm", fmt_g17(coeff.c4_ev_nm));
  add_cache_provenance(prov, ctx);
  CsvDoc csv;
  csv.provenance = prov;
  csv.header = "L_nm,R_nm,E_eV,E_over_Ecp_bar,E_over_Evdw_bar,converged";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (size_t i = 0; i < grid.size(); ++i) {
    csv.rows.push_back(fmt_g17(grid[i]) + "," + fmt_g17(cfg.radius_nm) + "," +
                       fmt_g17(c.points[i].energy_ev) + "," + fmt_g17(ratios[i].e_over_cp_bar) +
                       "," + fmt_g17(ratios[i].e_over_vdw_bar) + "," +
                       (c.points[i].converged ? "1" : "0"));
    rows.push_back({{"L_nm", grid[i]},
                    {"R_nm", cfg.radius_nm},
                    {"E_eV", c.points[i].energy_ev},
                    {"E_over_Ecp_bar", ratios[i].e_over_cp_bar},
                    {"E_over_Evdw_bar", ratios[i].e_over_vdw_bar},
                    {"converged", c.points[i].converged}});
  }
  nlohmann::ordered_json j;
  j["schema"] = csv_schema;
  j["provenance"] = provenance_json(prov);
  j["rows"] = rows;
  return emit(cfg, csv, j);
}

inline int run_asymptotics(const RunConfig& cfg, RunContext& ctx) {
  if (!ctx.plane.is_drude() || !ctx.sphere.is_sellmeier())
    throw std::invalid_argument("asymptotics: needs a Drude plane and a Sellmeier sphere");
  Coefficients c = coefficients(ctx.plane.drude(), ctx.sphere.sellmeier(), ctx.num);
  auto prov = base_provenance(cfg, ctx);
  add_cache_provenance(prov, ctx);
  CsvDoc csv;
  csv.provenance = prov;
  csv.header = "c3_eV,c4_eV_nm,L_star_nm,c3_prime_eV,c3_prime_over_c3";
  csv.rows.push_back(fmt_g17(c.c3_ev) + "," + fmt_g17(c.c4_ev_nm) + "," + fmt_g17(c.l_star_nm) +
                     "," + fmt_g17(c.c3_prime_ev) + "," + fmt_g17(c.c3_prime_ev / c.c3_ev));
  nlohmann::ordered_json j;
  j["schema"] = csv_schema;
  j["provenance"] = provenance_json(prov);
  j["result"] = {{"c3_eV", c.c3_ev},
                 {"c4_eV_nm", c.c4_ev_nm},
                 {"L_star_nm", c.l_star_nm},
                 {"c3_prime_eV", c.c3_prime_ev},
                 {"c3_prime_over_c3", c.c3_prime_ev / c.c3_ev}};
  return emit(cfg, csv, j);
}

inline int run_figures(const RunConfig& cfg, RunContext& ctx) {
  std::vector<double> radii = cfg.radii_nm.empty() ? std::vector<double>{2, 5, 10, 20} : cfg.radii_nm;
  auto prov = base_provenance(cfg, ctx);
  CsvDoc csv;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();

  if (cfg.figure == "fig1") {
    // permittivities over xi/omega_p in [1e-3, 1e2]
    if (!ctx.plane.is_drude()) throw std::invalid_argument("fig1: plane must be Drude");
    double wp = ctx.plane.drude().omega_p();
    int n = std::max(cfg.points, 50);
    std::vector<double> grid = log_grid(1e-3, 1e2, n);
    csv.header = "xi_over_omega_p,eps_plane,eps_sphere";
    for (double r : grid) {
      double xi = r * wp;
      double e1 = ctx.plane.permittivity(xi), e2 = ctx.sphere.permittivity(xi);
      csv.rows.push_back(fmt_g17(r) + "," + fmt_g17(e1) + "," + fmt_g17(e2));
      rows.push_back({{"xi_over_omega_p", r}, {"eps_plane", e1}, {"eps_sphere", e2}});
    }
  } else if (cfg.figure == "fig2" || cfg.figure == "fig3") {
    std::vector<double> grid = log_grid(cfg.l_min_nm, cfg.l_max_nm, cfg.points);
    std::vector<Curve> curves;
    for (double R : radii) curves.push_back(exact_curve(ctx, R, grid));
    for (const auto& cur : curves)
      for (const auto& p : cur.points) ctx.all_converged = ctx.all_converged && p.converged;
    std::string head = "L_nm";
    for (double R : radii)
      head += (cfg.figure == "fig2" ? ",E_abs_eV_R" : ",nu_R") + fmt_g17(R);
    if (cfg.figure == "fig3") head += ",nu_atom";
    csv.header = head;
    std::vector<SlopeCurve> slopes;
    if (cfg.figure == "fig3") {
      for (const auto& cur : curves) slopes.push_back(slope_nu(cur));
    }
    // atomic limit: slope of the point-scatterer curve -K(L)
    Curve atom;
    if (cfg.figure == "fig3") {
      for (double L : grid) atom.points.push_back({L, -cp_kernel(L, ctx.plane, ctx.sphere, ctx.num), true});
    }
    SlopeCurve atom_nu = cfg.figure == "fig3" ? slope_nu(atom) : SlopeCurve{};
    for (size_t i = 0; i < grid.size(); ++i) {
      std::string row = fmt_g17(grid[i]);
      nlohmann::ordered_json jr;
      jr["L_nm"] = grid[i];
      for (size_t k = 0; k < radii.size(); ++k) {
        double v = (cfg.figure == "fig2") ? std::abs(curves[k].points[i].energy_ev)
                                          : slopes[k].points[i].slope;
        row += "," + fmt_g17(v);
        jr[(cfg.figure == "fig2" ? "E_abs_eV_R" : "nu_R") + fmt_g17(radii[k])] = v;
      }
      if (cfg.figure == "fig3") {
        row += "," + fmt_g17(atom_nu.points[i].slope);
        jr["nu_atom"] = atom_nu.points[i].slope;
      }
      csv.rows.push_back(row);
      rows.push_back(jr);
    }
  } else if (cfg.figure == "fig4") {
    std::vector<double> grid = log_grid(cfg.l_min_nm, cfg.l_max_nm, cfg.points);
    EnergySolver s = ctx.solver(1);
    std::vector<std::vector<double>> mu(radii.size(), std::vector<double>(grid.size()));
    const int total = static_cast<int>(radii.size() * grid.size());
    parallel_for(total, ctx.workers, [&](int idx) {
      size_t k = idx / grid.size(), i = idx % grid.size();
      mu[k][i] = slope_mu([&](double R, double L) { return s.exact(Geometry(R, L)).energy_ev; },
                          radii[k], grid[i]);
    });
    std::string head = "L_nm";
    for (double R : radii) head += ",mu_R" + fmt_g17(R);
    csv.header = head;
    for (size_t i = 0; i < grid.size(); ++i) {
      std::string row = fmt_g17(grid[i]);
      nlohmann::ordered_json jr;
      jr["L_nm"] = grid[i];
      for (size_t k = 0; k < radii.size(); ++k) {
        row += "," + fmt_g17(mu[k][i]);
        jr["mu_R" + fmt_g17(radii[k])] = mu[k][i];
      }
      csv.rows.push_back(row);
      rows.push_back(jr);
    }
  } else if (cfg.figure == "fig5") {
    RunConfig c5 = cfg;
    c5.command = "ratios";
    return run_ratios(c5, ctx);
  } else {
    throw std::invalid_argument("figures: unknown figure '" + cfg.figure + "' (fig1..fig5)");
  }

  add_cache_provenance(prov, ctx);
  csv.provenance = prov;
  nlohmann::ordered_json j;
  j["schema"] = csv_schema;
  j["provenance"] = provenance_json(prov);
  j["rows"] = rows;
  return emit(cfg, csv, j);
}

}  // namespace detail

//! Executes one parsed command.  Exit codes: 0 success, 1 bad configuration,
//! 2 numerical non-convergence (outputs are still written), 3 I/O failure.
inline int run(const RunConfig& cfg) {
  detail::RunContext ctx;
  try {
    cfg.validate();
    ctx = detail::make_context(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  try {
    int rc;
    if (cfg.command == "energy") rc = detail::run_energy(cfg, ctx);
    else if (cfg.command == "curve") rc = detail::run_curve(cfg, ctx);
    else if (cfg.command == "slopes") rc = detail::run_slopes(cfg, ctx);
    else if (cfg.command == "ratios") rc = detail::run_ratios(cfg, ctx);
    else if (cfg.command == "asymptotics") rc = detail::run_asymptotics(cfg, ctx);
    else if (cfg.command == "figures") rc = detail::run_figures(cfg, ctx);
    else if (cfg.command == "cache-clear") {
      if (ctx.cache) ctx.cache->clear();
      rc = 0;
    } else {
      std::cerr << "error: unknown command '" << cfg.command << "'\n";
      return 1;
    }
    if (rc != 0) return rc;
    return ctx.all_converged ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace casimir

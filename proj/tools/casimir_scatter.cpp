// Command-line front end: single-point energies, curve sweeps, slope and
// ratio analyses, figure-data reproduction and cache management.

#include <CLI11.hpp>

#include "casimir/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Plane-sphere Casimir energies via the multiple-scattering formula"};
  app.require_subcommand(1);

  casimir::RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lmax", cfg.lmax, "multipole truncation (0 = automatic policy)");
    sub->add_option("--xi-nodes", cfg.xi_nodes, "frequency quadrature nodes");
    sub->add_option("--x-nodes", cfg.x_nodes, "kappa quadrature nodes");
    sub->add_option("--rel-tol", cfg.rel_tol, "target relative error");
    sub->add_option("--output", cfg.output_path, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--cache-dir", cfg.cache_dir, "cache directory (default $CASIMIR_CACHE_DIR or ./cache)");
    sub->add_flag("--no-cache", cfg.no_cache, "disable the energy cache");
    sub->add_option("--config", cfg.config_path, "key-value config file");
    sub->add_option("--workers", cfg.workers, "worker threads (0 = hardware)");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--l-min-nm", cfg.l_min_nm, "smallest gap (nm)");
    sub->add_option("--l-max-nm", cfg.l_max_nm, "largest gap (nm)");
    sub->add_option("--points", cfg.points, "grid points (log-spaced)");
  };

  auto* energy = app.add_subcommand("energy", "single-point exact energy");
  energy->add_option("--radius-nm", cfg.radius_nm, "sphere radius (nm)");
  energy->add_option("--distance-nm", cfg.distance_nm, "closest-approach gap (nm)");
  energy->add_option("--dump-block", cfg.dump_block_path, "dump the m=0 block to CSV");
  add_common(energy);

  auto* curve = app.add_subcommand("curve", "energy, force and slope over an L-grid");
  curve->add_option("--radius-nm", cfg.radius_nm, "sphere radius (nm)");
  add_grid(curve);
  add_common(curve);

  auto* slopes = app.add_subcommand("slopes", "logarithmic slopes nu(L) and mu(L)");
  slopes->add_option("--radius-nm", cfg.radius_nm, "sphere radius (nm)");
  add_grid(slopes);
  add_common(slopes);

  auto* ratios = app.add_subcommand("ratios", "exact energy over pairwise-summation references");
  ratios->add_option("--radius-nm", cfg.radius_nm, "sphere radius (nm)");
  add_grid(ratios);
  add_common(ratios);

  auto* asym = app.add_subcommand("asymptotics", "model coefficients c3, c4, L*, c3'");
  add_common(asym);

  auto* figures = app.add_subcommand("figures", "reproduce figure data (fig1..fig5)");
  figures->add_option("figure", cfg.figure, "fig1|fig2|fig3|fig4|fig5")->required();
  figures->add_option("--radius-nm", cfg.radius_nm, "radius for fig5 (nm)");
  figures->add_option("--radii-nm", cfg.radii_nm, "radius list for fig2-fig4")->delimiter(',');
  add_grid(figures);
  add_common(figures);

  auto* clear = app.add_subcommand("cache-clear", "remove cached energy records");
  add_common(clear);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  for (auto* sub : {energy, curve, slopes, ratios, asym, figures, clear})
    if (sub->parsed()) cfg.command = sub->get_name();
  return casimir::run(cfg);
}

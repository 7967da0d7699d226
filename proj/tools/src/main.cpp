#include <fstream>
#include <iostream>
#include <sstream>

#include <radspec/version.hpp>

#include "CLI11.hpp"
#include "job.hpp"

using radspec::cli::JobConfig;

int main(int argc, char** argv) {
  CLI::App app{"Spectra of Toeplitz operators with radial symbols"};
  app.set_version_flag("--version", radspec::kVersion);

  std::string command, space, symbol, out, format, config_path;
  int d = 0, grid_points = 0;
  double R = 0, tol = 0, lmin = 0, lmax = 0, p = 0, q = 0;
  unsigned kmax = 0;

  app.add_option("command", command, "spectrum | counting | compare | counterexample | periphery");
  app.add_option("--config", config_path, "JSON config file; flags override its keys")->check(CLI::ExistingFile);
  auto* o_space = app.add_option("--space", space, "BergmanComplex, BergmanHarmonic, BergmanHelmholtz, BargmannComplex, "
                                                   "BargmannHarmonic, BargmannHelmholtz or AgmonHormander");
  auto* o_d = app.add_option("--d", d, "dimension");
  auto* o_R = app.add_option("--R", R, "ball radius (Bergman kinds)");
  auto* o_symbol = app.add_option("--symbol", symbol, "radial symbol, e.g. 'chi(0,0.5)'");
  auto* o_kmax = app.add_option("--kmax", kmax, "largest k (a starting point for counting jobs)");
  auto* o_tol = app.add_option("--tol", tol, "relative quadrature tolerance");
  auto* o_lmin = app.add_option("--lambda-min-log10", lmin, "log10 of the smallest lambda");
  auto* o_lmax = app.add_option("--lambda-max-log10", lmax, "log10 of the largest lambda");
  auto* o_points = app.add_option("--grid-points", grid_points, "number of lambda grid points");
  auto* o_out = app.add_option("--out", out, "output file, '-' for stdout");
  auto* o_format = app.add_option("--format", format, "csv or json");
  auto* o_p = app.add_option("--p", p, "counterexample decay exponent p");
  auto* o_q = app.add_option("--q", q, "counterexample oscillation exponent q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : radspec::cli::kExitConfig;
  }

  JobConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      cfg = radspec::cli::config_from_json(buf.str());
    }
    if (!command.empty()) cfg.command = radspec::cli::parse_command(command);
    if (*o_space) cfg.space = radspec::parse_space_kind(space);
    if (*o_d) cfg.d = d;
    if (*o_R) cfg.R = R;
    if (*o_symbol) cfg.symbol = symbol;
    if (*o_kmax) cfg.k_max = kmax;
    if (*o_tol) cfg.tol = tol;
    if (*o_lmin) cfg.lambda_min_log10 = lmin;
    if (*o_lmax) cfg.lambda_max_log10 = lmax;
    if (*o_points) cfg.grid_points = grid_points;
    if (*o_out) cfg.out = out;
    if (*o_format) cfg.format = radspec::cli::parse_format(format);
    if (*o_p) cfg.p = p;
    if (*o_q) cfg.q = q;
    if (!cfg.R && radspec::is_bergman(cfg.space)) cfg.R = 1.0;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return radspec::cli::kExitConfig;
  }

  if (cfg.out.empty() || cfg.out == "-") return radspec::cli::run(cfg, std::cout, std::cerr);
  std::ostringstream body;
  const int status = radspec::cli::run(cfg, body, std::cerr);
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) {
    std::cerr << "cannot open " << cfg.out << " for writing\n";
    return radspec::cli::kExitConfig;
  }
  file << body.str();
  return status;
}

// gfactor: extract universal O(1) fidelity terms of critical lattice models
// and check them against closed-form boundary-CFT predictions.
//
// Exit codes: 0 success, 2 config error, 3 solver failure, 4 oracle mismatch.

#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gfactor/bcft.hpp"
#include "gfactor/cft2d.hpp"
#include "gfactor/csv_io.hpp"
#include "gfactor/gaussian_oracle.hpp"
#include "gfactor/lanczos.hpp"
#include "gfactor/run_config.hpp"
#include "gfactor/runners.hpp"
#include "gfactor/vertex6.hpp"

namespace {

using gfactor::cli::ConfigError;
using gfactor::cli::RunConfig;

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  int lmax = 0;
  int workers = 0;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "key=value config file");
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_option("--lmax", flags.lmax, "largest chain length (even, <= 22)");
  cmd->add_option("--workers", flags.workers, "worker threads");
  cmd->add_option("--seed", flags.seed, "base RNG seed")
      ->each([&flags](const std::string&) { flags.has_seed = true; });
}

RunConfig assemble(const CommonFlags& flags) {
  RunConfig cfg;
  if (!flags.config_path.empty()) cfg.merge_file(flags.config_path);
  if (!flags.out_dir.empty()) cfg.set("out", flags.out_dir);
  if (flags.lmax > 0) cfg.set("lmax", std::to_string(flags.lmax));
  if (flags.workers > 0) cfg.set("workers", std::to_string(flags.workers));
  if (flags.has_seed) cfg.set("seed", std::to_string(flags.seed));
  return cfg;
}

double predict_value(const std::string& quantity, std::optional<double> delta1,
                     std::optional<double> delta2, std::optional<double> lam1,
                     std::optional<double> lam2) {
  namespace bcft = gfactor::bcft;
  auto lam_of = [&](std::optional<double> delta, std::optional<double> lam,
                    const char* which) {
    if (lam) return *lam;
    if (delta) return bcft::lambda_of_delta(*delta).lam;
    throw ConfigError(std::string("predict ") + quantity + " needs --" + which);
  };
  if (quantity == "g-critical")
    return bcft::g_critical(lam_of(delta1, lam1, "delta1 or --lam1"),
                            lam_of(delta2, lam2, "delta2 or --lam2"));
  if (quantity == "g-massive") {
    if (delta2) return bcft::g_critical_massive(bcft::lambda_of_delta(*delta2).k);
    if (lam2) return bcft::g_critical_massive(bcft::coupling_from_lambda(*lam2).k);
    throw ConfigError("predict g-massive needs --delta2 or --lam2");
  }
  if (quantity == "g-dirichlet")
    return bcft::g_dirichlet(lam_of(delta1, lam1, "delta1 or --lam1"));
  if (quantity == "g-neumann")
    return bcft::g_neumann(lam_of(delta1, lam1, "delta1 or --lam1"));
  if (quantity == "g-antiperiodic") return bcft::g_antiperiodic();
  if (quantity == "lambda") {
    if (!delta1) throw ConfigError("predict lambda needs --delta1");
    return bcft::lambda_of_delta(*delta1).lam;
  }
  if (quantity == "K") {
    if (!delta1) throw ConfigError("predict K needs --delta1");
    return bcft::lambda_of_delta(*delta1).k;
  }
  throw ConfigError("unknown predict quantity '" + quantity + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"universal O(1) fidelity terms of critical lattice models"};
  app.require_subcommand(1);

  CommonFlags fig1_flags, fig2_flags, oracle_flags, sweep_flags;
  auto* fig1 = app.add_subcommand(
      "fig1", "XXZ g-factor sweeps (periodic, toroidal, massive) + BCFT curves");
  add_common(fig1, fig1_flags);
  auto* fig2 =
      app.add_subcommand("fig2", "eight-vertex g-factor surface over (c, c')");
  fig2->alias("vertex8-surface");
  add_common(fig2, fig2_flags);
  auto* oracle = app.add_subcommand(
      "oracle", "Gaussian and six-vertex validation suite (exit 4 on mismatch)");
  add_common(oracle, oracle_flags);
  double oracle_tol_scale = -1.0;
  oracle->add_option("--tol-scale", oracle_tol_scale,
                     "scale factor on every oracle tolerance");
  auto* sweep =
      app.add_subcommand("sweep", "one fidelity sweep with explicit parameters");
  add_common(sweep, sweep_flags);

  auto* predict = app.add_subcommand(
      "predict", "closed-form BCFT values (single JSON number or CSV curve)");
  std::string quantity = "g-critical";
  std::optional<double> p_delta1, p_delta2, p_lam1, p_lam2;
  bool curve = false;
  std::string curve_grid = "-0.95:0.95:0.05";
  std::string curve_out = "predict_curve.csv";
  predict->add_option("quantity", quantity,
                      "g-critical | g-massive | g-dirichlet | g-neumann | "
                      "g-antiperiodic | lambda | K");
  predict->add_option("--delta1", p_delta1);
  predict->add_option("--delta2", p_delta2);
  predict->add_option("--lam1", p_lam1);
  predict->add_option("--lam2", p_lam2);
  predict->add_flag("--curve", curve, "emit a CSV curve over a delta2 grid");
  predict->add_option("--grid", curve_grid, "start:stop:step for --curve");
  predict->add_option("--curve-out", curve_out, "CSV path for --curve");

  auto* eta_cmd = app.add_subcommand("eta", "Dedekind eta at a real nome");
  double eta_q = 0.0;
  eta_cmd->add_option("--q", eta_q)->required();

  auto* inst = app.add_subcommand("instanton", "compact-boson instanton sum");
  double inst_lam = 0.0, inst_q = 0.0, inst_aspect = 0.0;
  inst->add_option("--lam", inst_lam)->required();
  inst->add_option("--q", inst_q);
  inst->add_option("--aspect", inst_aspect);

  auto* gs = app.add_subcommand(
      "gaussian-series", "harmonic-ring overlap series (L, F) as CSV");
  double gs_lam1 = 1.0, gs_lam2 = 2.0;
  std::string gs_sizes = "8,16,24,32,40,48,56,64";
  std::string gs_out = "gaussian_series.csv";
  gs->add_option("--lam1", gs_lam1);
  gs->add_option("--lam2", gs_lam2);
  gs->add_option("--sizes", gs_sizes, "comma-separated ring sizes");
  gs->add_option("--out", gs_out, "CSV path");

  auto* vx = app.add_subcommand(
      "vertex-exact", "exact six-vertex lattice fidelity on a small torus");
  int vx_l1 = 4, vx_l2 = 4;
  double vx_c = 0.8, vx_cp = 1.2;
  std::string vx_out;
  vx->add_option("--l1", vx_l1);
  vx->add_option("--l2", vx_l2);
  vx->add_option("--c", vx_c);
  vx->add_option("--cprime", vx_cp);
  vx->add_option("--out", vx_out, "write (c, c_prime, fidelity) CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fig1->parsed()) {
      gfactor::cli::run_fig1(assemble(fig1_flags));
    } else if (fig2->parsed()) {
      gfactor::cli::run_fig2(assemble(fig2_flags));
    } else if (oracle->parsed()) {
      RunConfig cfg = assemble(oracle_flags);
      if (oracle_tol_scale >= 0.0)
        cfg.set("oracle.tol_scale", gfactor::io::format_double(oracle_tol_scale));
      if (gfactor::cli::run_oracle(cfg) != 0) {
        std::cerr << "gfactor: oracle mismatch\n";
        return 4;
      }
    } else if (sweep->parsed()) {
      gfactor::cli::run_sweep(assemble(sweep_flags));
    } else if (predict->parsed()) {
      if (curve) {
        double start = 0, stop = 0, step = 0;
        if (std::sscanf(curve_grid.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
            !(step > 0))
          throw ConfigError("bad --grid, expected start:stop:step");
        RunConfig curve_cfg;
        curve_cfg.set("predict.quantity", quantity);
        curve_cfg.set("predict.grid", curve_grid);
        gfactor::io::Csv csv(curve_out);
        csv.comment("gfactor predict " + quantity);
        csv.comment("config-digest: " + curve_cfg.digest_hex());
        csv.header({"delta", "value"});
        const bool vary_delta2 =
            (quantity == "g-critical" || quantity == "g-massive");
        for (double d = start; d <= stop + 1e-12; d += step) {
          std::optional<double> d1 = p_delta1, d2 = p_delta2;
          (vary_delta2 ? d2 : d1) = d;
          csv.row({gfactor::io::format_double(d),
                   gfactor::io::format_double(
                       predict_value(quantity, d1, d2, p_lam1, p_lam2))});
        }
      } else {
        std::cout << nlohmann::json(predict_value(quantity, p_delta1, p_delta2,
                                                  p_lam1, p_lam2))
                         .dump()
                  << "\n";
      }
    } else if (eta_cmd->parsed()) {
      std::cout << nlohmann::json(gfactor::cft2d::dedekind_eta(eta_q)).dump()
                << "\n";
    } else if (inst->parsed()) {
      if (inst_q <= 0.0 && inst_aspect <= 0.0)
        throw ConfigError("instanton needs --q or --aspect");
      const double q =
          inst_q > 0.0 ? inst_q : std::exp(-2.0 * 3.14159265358979323846 * inst_aspect);
      std::cout << nlohmann::json(gfactor::cft2d::instanton_sum(inst_lam, q)).dump()
                << "\n";
    } else if (gs->parsed()) {
      RunConfig cfg;
      cfg.set("gaussian.lam1", gfactor::io::format_double(gs_lam1));
      cfg.set("gaussian.lam2", gfactor::io::format_double(gs_lam2));
      cfg.set("gaussian.sizes", gs_sizes);
      std::vector<int> sizes = cfg.get_int_list("gaussian.sizes", {});
      gfactor::io::Csv csv(gs_out);
      csv.comment("gfactor gaussian-series");
      csv.comment("config-digest: " + cfg.digest_hex());
      csv.header({"lam1", "lam2", "L", "fidelity"});
      for (auto [l, f] : gfactor::gaussian::overlap_series(gs_lam1, gs_lam2, sizes))
        csv.row({gfactor::io::format_double(gs_lam1),
                 gfactor::io::format_double(gs_lam2), std::to_string(l),
                 gfactor::io::format_double(f)});
    } else if (vx->parsed()) {
      gfactor::vertex6::VertexLattice lat(vx_l1, vx_l2, vx_c);
      const double f = gfactor::vertex6::lattice_fidelity(lat, vx_c, vx_cp);
      if (vx_out.empty()) {
        std::cout << nlohmann::json(f).dump() << "\n";
      } else {
        RunConfig cfg;
        cfg.set("vertex.l1", std::to_string(vx_l1));
        cfg.set("vertex.l2", std::to_string(vx_l2));
        cfg.set("vertex.c", gfactor::io::format_double(vx_c));
        cfg.set("vertex.c_prime", gfactor::io::format_double(vx_cp));
        gfactor::io::Csv csv(vx_out);
        csv.comment("gfactor vertex-exact");
        csv.comment("config-digest: " + cfg.digest_hex());
        csv.header({"c", "c_prime", "fidelity"});
        csv.row({gfactor::io::format_double(vx_c),
                 gfactor::io::format_double(vx_cp),
                 gfactor::io::format_double(f)});
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "gfactor: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "gfactor: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "gfactor: config error: " << e.what() << "\n";
    return 2;
  } catch (const gfactor::lanczos::SolverError& e) {
    std::cerr << "gfactor: solver failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "gfactor: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

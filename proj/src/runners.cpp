#include "gfactor/runners.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <random>
#include <thread>

#include <json.hpp>

#include "gfactor/bcft.hpp"
#include "gfactor/cft2d.hpp"
#include "gfactor/csv_io.hpp"
#include "gfactor/gaussian_oracle.hpp"
#include "gfactor/lanczos.hpp"
#include "gfactor/vertex6.hpp"

namespace gfactor::cli {

namespace {

using fidelity::FidelityPoint;
using fidelity::FidelitySeries;
using fidelity::GFactorEstimate;
using fidelity::SolverSettings;

void run_pool(std::size_t n_tasks, int workers,
              const std::function<void(std::size_t)>& task) {
  if (workers <= 1 || n_tasks <= 1) {
    for (std::size_t i = 0; i < n_tasks; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1))
      task(i);
  };
  std::vector<std::thread> pool;
  const int count = std::min<int>(workers, static_cast<int>(n_tasks));
  pool.reserve(count);
  for (int w = 0; w < count; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

template <class Scalar>
std::vector<FidelitySeries> sweep_impl(const SweepRequest& req) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const std::size_t n_l = req.l_list.size();
  const std::size_t n_d = req.delta2s.size();

  struct Ref {
    Vec vector;
    double energy = 0.0, residual = 0.0;
    std::string error;
  };
  std::vector<Ref> refs(n_l);

  run_pool(n_l, req.workers, [&](std::size_t li) {
    const int l = req.l_list[li];
    XxzParams p1{l, req.delta1, req.bc, req.theta};
    try {
      const SectorBasis basis = fidelity::pipeline_basis(p1);
      const std::uint64_t salt = (static_cast<std::uint64_t>(l) << 8) | 1;
      if constexpr (std::is_same_v<Scalar, double>) {
        auto s = fidelity::solve_ground_state(p1, basis, req.settings, salt);
        refs[li] = {std::move(s.vector), s.energy, s.residual, ""};
      } else {
        auto s =
            fidelity::solve_ground_state_complex(p1, basis, req.settings, salt);
        refs[li] = {std::move(s.vector), s.energy, s.residual, ""};
      }
    } catch (const std::exception& e) {
      refs[li].error = e.what();
    }
  });

  std::vector<FidelityPoint> cells(n_d * n_l);
  run_pool(cells.size(), req.workers, [&](std::size_t idx) {
    const std::size_t di = idx / n_l;
    const std::size_t li = idx % n_l;
    const int l = req.l_list[li];
    FidelityPoint& pt = cells[idx];
    pt.length = l;
    pt.fidelity = std::numeric_limits<double>::quiet_NaN();
    if (!refs[li].error.empty()) {
      pt.converged = false;
      pt.note = "reference solve failed: " + refs[li].error;
      return;
    }
    XxzParams p2{l, req.delta2s[di], req.bc, req.theta};
    try {
      const SectorBasis basis = fidelity::pipeline_basis(p2);
      const std::uint64_t salt = (static_cast<std::uint64_t>(l) << 8) | 2;
      if constexpr (std::is_same_v<Scalar, double>) {
        auto s = fidelity::solve_ground_state(p2, basis, req.settings, salt);
        pt.fidelity = fidelity::overlap(refs[li].vector, s.vector);
        pt.energy2 = s.energy;
        pt.residual2 = s.residual;
      } else {
        auto s =
            fidelity::solve_ground_state_complex(p2, basis, req.settings, salt);
        pt.fidelity = fidelity::overlap(refs[li].vector, s.vector);
        pt.energy2 = s.energy;
        pt.residual2 = s.residual;
      }
      pt.energy1 = refs[li].energy;
      pt.residual1 = refs[li].residual;
      pt.converged = true;
    } catch (const std::exception& e) {
      pt.converged = false;
      pt.note = e.what();
    }
  });

  std::vector<FidelitySeries> out(n_d);
  for (std::size_t di = 0; di < n_d; ++di) {
    out[di].delta1 = req.delta1;
    out[di].delta2 = req.delta2s[di];
    out[di].bc = req.bc;
    out[di].theta = req.theta;
    out[di].settings = req.settings;
    for (std::size_t li = 0; li < n_l; ++li)
      out[di].points.push_back(cells[di * n_l + li]);
  }
  return out;
}

void write_series_csv(const std::filesystem::path& path, const std::string& tag,
                      const std::string& digest,
                      const std::vector<FidelitySeries>& sweeps,
                      std::vector<std::string>& failures) {
  io::Csv csv(path);
  csv.comment("gfactor " + tag);
  csv.comment("config-digest: " + digest);
  csv.header({"delta1", "delta2", "bc", "theta", "L", "fidelity", "energy1",
              "energy2", "residual1", "residual2"});
  for (const auto& s : sweeps) {
    for (const auto& p : s.points) {
      if (!p.converged) {
        failures.push_back(tag + ": delta2=" + io::format_double(s.delta2) +
                           " L=" + std::to_string(p.length) + ": " + p.note);
        continue;
      }
      csv.row({io::format_double(s.delta1), io::format_double(s.delta2),
               boundary_name(s.bc), io::format_double(s.theta),
               std::to_string(p.length), io::format_double(p.fidelity),
               io::format_double(p.energy1), io::format_double(p.energy2),
               io::format_double(p.residual1), io::format_double(p.residual2)});
    }
  }
}

struct LabeledFit {
  std::string sweep;
  const FidelitySeries* series;
  GFactorEstimate est;
};

void write_g_csv(const std::filesystem::path& path, const std::string& tag,
                 const std::string& digest, const std::vector<LabeledFit>& fits) {
  io::Csv csv(path);
  csv.comment("gfactor " + tag);
  csv.comment("config-digest: " + digest);
  csv.header({"delta1", "delta2", "bc", "theta", "g", "ln_g", "f", "c1",
              "stderr_ln_g", "max_abs_residual", "l_min", "l_max", "n_points"});
  for (const auto& lf : fits) {
    const auto& s = *lf.series;
    const auto& e = lf.est;
    csv.row({io::format_double(s.delta1), io::format_double(s.delta2),
             boundary_name(s.bc), io::format_double(s.theta),
             io::format_double(e.g()), io::format_double(e.ln_g),
             io::format_double(e.f), io::format_double(e.c1),
             io::format_double(e.stderr_ln_g),
             io::format_double(e.max_abs_residual), std::to_string(e.l_min),
             std::to_string(e.l_max), std::to_string(e.n_points)});
  }
}

nlohmann::json fit_to_json(const LabeledFit& lf) {
  const auto& s = *lf.series;
  const auto& e = lf.est;
  return nlohmann::json{{"sweep", lf.sweep},
                        {"delta1", s.delta1},
                        {"delta2", s.delta2},
                        {"bc", boundary_name(s.bc)},
                        {"theta", s.theta},
                        {"ln_g", e.ln_g},
                        {"g", e.g()},
                        {"f", e.f},
                        {"c1", e.c1},
                        {"stderr_ln_g", e.stderr_ln_g},
                        {"max_abs_residual", e.max_abs_residual},
                        {"l_min", e.l_min},
                        {"l_max", e.l_max},
                        {"n_points", e.n_points}};
}

std::vector<LabeledFit> fit_sweeps(const std::string& tag,
                                   const std::vector<FidelitySeries>& sweeps,
                                   std::vector<std::string>& failures) {
  std::vector<LabeledFit> fits;
  for (const auto& s : sweeps) {
    int n_ok = 0;
    for (const auto& p : s.points)
      if (p.converged) ++n_ok;
    if (n_ok < 4) {
      failures.push_back(tag + ": delta2=" + io::format_double(s.delta2) +
                         ": only " + std::to_string(n_ok) +
                         " converged points, no fit");
      continue;
    }
    fits.push_back({tag, &s, fidelity::extract_g(s)});
  }
  return fits;
}

int count_converged_points(const std::vector<FidelitySeries>& sweeps) {
  int n = 0;
  for (const auto& s : sweeps)
    for (const auto& p : s.points)
      if (p.converged) ++n;
  return n;
}

}  // namespace

std::vector<int> even_sizes(int lmin, int lmax) {
  std::vector<int> out;
  for (int l = lmin; l <= lmax; l += 2) out.push_back(l);
  return out;
}

std::filesystem::path ensure_out_dir(const RunConfig& cfg) {
  const std::filesystem::path dir = cfg.get_string("out", "out");
  std::filesystem::create_directories(dir);
  return dir;
}

fidelity::SolverSettings settings_from(const RunConfig& cfg) {
  fidelity::SolverSettings s;
  s.tol = cfg.get_double("tol", 1e-12);
  s.max_iter = cfg.get_int("max_iter", 0);
  s.seed = cfg.get_uint64("seed", 20080514ULL);
  s.krylov_dim = cfg.get_int("krylov_dim", 220);
  if (!(s.tol > 0)) throw ConfigError("tol must be positive");
  return s;
}

std::vector<fidelity::FidelitySeries> run_parallel_sweep(const SweepRequest& req) {
  if (req.theta != 0.0 && req.bc != Boundary::periodic)
    return sweep_impl<std::complex<double>>(req);
  return sweep_impl<double>(req);
}

void run_fig1(const RunConfig& cfg) {
  const auto out = ensure_out_dir(cfg);
  const std::string digest = cfg.digest_hex();
  const SolverSettings settings = settings_from(cfg);
  const int workers = std::max(1, cfg.get_int("workers", 1));

  const int lmax = cfg.get_int("lmax", 18);
  if (lmax < 14 || lmax > 22 || lmax % 2 != 0)
    throw ConfigError("lmax must be even and in [14, 22]");
  const int toroidal_lmax = cfg.get_int("fig1.toroidal_lmax", 14);
  if (toroidal_lmax < 14 || toroidal_lmax > 16 || toroidal_lmax % 2 != 0)
    throw ConfigError("fig1.toroidal_lmax must be 14 or 16");

  const double delta1 = cfg.get_double("fig1.delta1", 0.2);
  const std::vector<double> delta2s = cfg.get_double_list(
      "fig1.delta2", {-0.8, -0.6, -0.4, -0.2, 0.0, 0.2, 0.4, 0.6, 0.8});
  const double massive_delta1 = cfg.get_double("fig1.massive_delta1", 10.0);
  const std::vector<double> massive_delta2s =
      cfg.get_double_list("fig1.massive_delta2", {-0.5, 0.0, 0.5});
  if (!(std::abs(delta1) < 1.0))
    throw ConfigError("fig1.delta1 must be critical (|delta| < 1)");
  if (!(massive_delta1 > 1.0))
    throw ConfigError("fig1.massive_delta1 must exceed 1");
  for (double d2 : delta2s)
    if (!(d2 > -1.0) || !(d2 < 1.0))
      throw ConfigError("fig1.delta2 grid must lie inside (-1, 1)");
  for (double d2 : massive_delta2s)
    if (!(d2 > -1.0) || !(d2 < 1.0))
      throw ConfigError("fig1.massive_delta2 grid must lie inside (-1, 1)");

  std::vector<std::string> failures;
  std::vector<LabeledFit> all_fits;
  nlohmann::json fits_json = nlohmann::json::array();

  // main sweep (periodic)
  SweepRequest main_req{delta1,
                        delta2s,
                        Boundary::periodic,
                        0.0,
                        cfg.get_int_list("fig1.l_list", even_sizes(8, lmax)),
                        settings,
                        workers};
  auto main_sweeps = run_parallel_sweep(main_req);
  write_series_csv(out / "fig1_main_series.csv", "fig1 main", digest,
                   main_sweeps, failures);
  auto main_fits = fit_sweeps("fig1_main", main_sweeps, failures);
  write_g_csv(out / "fig1_ed.csv", "fig1 main", digest, main_fits);

  // BCFT curve
  {
    io::Csv csv(out / "fig1_bcft.csv");
    csv.comment("gfactor fig1 bcft curve");
    csv.comment("config-digest: " + digest);
    csv.header({"delta2", "g"});
    const double step = cfg.get_double("fig1.bcft_step", 0.02);
    if (!(step > 0)) throw ConfigError("fig1.bcft_step must be positive");
    const double lam1 = bcft::lambda_of_delta(delta1).lam;
    for (double d2 = -1.0 + step; d2 < 1.0 - 1e-12; d2 += step)
      csv.row({io::format_double(d2),
               io::format_double(
                   bcft::g_critical(lam1, bcft::lambda_of_delta(d2).lam))});
  }

  // toroidal sweep
  SweepRequest tor_req{
      delta1,
      delta2s,
      Boundary::toroidal,
      cfg.get_double("fig1.theta", 0.0),
      cfg.get_int_list("fig1.toroidal_l_list", even_sizes(8, toroidal_lmax)),
      settings,
      workers};
  auto tor_sweeps = run_parallel_sweep(tor_req);
  write_series_csv(out / "fig1_toroidal_series.csv", "fig1 toroidal", digest,
                   tor_sweeps, failures);
  auto tor_fits = fit_sweeps("fig1_toroidal", tor_sweeps, failures);
  write_g_csv(out / "fig1_toroidal.csv", "fig1 toroidal", digest, tor_fits);

  // massive inset
  SweepRequest mass_req{massive_delta1,
                        massive_delta2s,
                        Boundary::periodic,
                        0.0,
                        cfg.get_int_list("fig1.l_list", even_sizes(8, lmax)),
                        settings,
                        workers};
  auto mass_sweeps = run_parallel_sweep(mass_req);
  write_series_csv(out / "fig1_massive_series.csv", "fig1 massive", digest,
                   mass_sweeps, failures);
  auto mass_fits = fit_sweeps("fig1_massive", mass_sweeps, failures);
  write_g_csv(out / "fig1_massive_ed.csv", "fig1 massive", digest, mass_fits);

  {
    io::Csv csv(out / "fig1_massive_bcft.csv");
    csv.comment("gfactor fig1 massive bcft curve");
    csv.comment("config-digest: " + digest);
    csv.header({"delta2", "g"});
    const double step = cfg.get_double("fig1.bcft_step", 0.02);
    for (double d2 = -1.0 + step; d2 < 1.0 - 1e-12; d2 += step)
      csv.row({io::format_double(d2),
               io::format_double(
                   bcft::g_critical_massive(bcft::lambda_of_delta(d2).k))});
  }

  for (const auto& lf : main_fits) fits_json.push_back(fit_to_json(lf));
  for (const auto& lf : tor_fits) fits_json.push_back(fit_to_json(lf));
  for (const auto& lf : mass_fits) fits_json.push_back(fit_to_json(lf));
  {
    std::ofstream jf(out / "fig1_fits.json");
    jf << fits_json.dump(2) << "\n";
  }

  if (!failures.empty()) {
    for (const auto& f : failures) std::cerr << "gfactor: " << f << "\n";
    throw lanczos::SolverError("fig1: " + std::to_string(failures.size()) +
                               " solve(s) failed; partial results flushed");
  }
  (void)count_converged_points(main_sweeps);
}

void run_fig2(const RunConfig& cfg) {
  const auto out = ensure_out_dir(cfg);
  const std::string digest = cfg.digest_hex();
  const int n = cfg.get_int("fig2.n", 21);
  if (n < 2) throw ConfigError("fig2.n must be at least 2");
  const double c_min = cfg.get_double("fig2.c_min", 0.15);
  const double c_max = cfg.get_double("fig2.c_max", 1.35);
  const double aspect = cfg.get_double("fig2.aspect", 1.0);
  if (!(c_min > 0) || !(c_max > c_min))
    throw ConfigError("fig2 grid needs 0 < c_min < c_max");
  if (!(aspect > 0)) throw ConfigError("fig2.aspect must be positive");

  io::Csv csv(out / "fig2_surface.csv");
  csv.comment("gfactor fig2 eight-vertex surface");
  csv.comment("config-digest: " + digest);
  csv.header({"c", "c_prime", "g"});

  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i)
    grid[i] = c_min + (c_max - c_min) * i / (n - 1);

  std::vector<std::vector<std::string>> cells(static_cast<std::size_t>(n) * n);
  const int workers = std::max(1, cfg.get_int("workers", 1));
  run_pool(cells.size(), workers, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / n;
    const int j = static_cast<int>(idx) % n;
    std::string g;
    try {
      g = io::format_double(cft2d::g_eight_vertex(grid[i], grid[j], aspect));
    } catch (const std::domain_error&) {
      g = "nan";  // marker row: outside the disordered region
    }
    cells[idx] = {io::format_double(grid[i]), io::format_double(grid[j]), g};
  });
  for (const auto& row : cells) csv.row(row);
}

void run_sweep(const RunConfig& cfg) {
  const auto out = ensure_out_dir(cfg);
  const std::string digest = cfg.digest_hex();
  const SolverSettings settings = settings_from(cfg);
  const int lmax = cfg.get_int("lmax", 18);
  if (lmax < 14 || lmax > 22 || lmax % 2 != 0)
    throw ConfigError("lmax must be even and in [14, 22]");

  SweepRequest req{cfg.get_double("sweep.delta1", 0.2),
                   cfg.get_double_list("sweep.delta2", {0.5}),
                   boundary_from_name(cfg.get_string("sweep.bc", "periodic")),
                   cfg.get_double("sweep.theta", 0.0),
                   cfg.get_int_list("sweep.l_list", even_sizes(8, lmax)),
                   settings,
                   std::max(1, cfg.get_int("workers", 1))};

  std::vector<std::string> failures;
  auto sweeps = run_parallel_sweep(req);
  write_series_csv(out / "sweep_series.csv", "sweep", digest, sweeps, failures);
  auto fits = fit_sweeps("sweep", sweeps, failures);
  write_g_csv(out / "sweep_g.csv", "sweep", digest, fits);
  nlohmann::json fits_json = nlohmann::json::array();
  for (const auto& lf : fits) fits_json.push_back(fit_to_json(lf));
  {
    std::ofstream jf(out / "sweep_fits.json");
    jf << fits_json.dump(2) << "\n";
  }
  if (!failures.empty()) {
    for (const auto& f : failures) std::cerr << "gfactor: " << f << "\n";
    throw lanczos::SolverError("sweep: " + std::to_string(failures.size()) +
                               " solve(s) failed; partial results flushed");
  }
}

int run_oracle(const RunConfig& cfg) {
  const double ts = cfg.get_double("oracle.tol_scale", 1.0);
  const int n_pairs = cfg.get_int("oracle.pairs", 20);
  if (n_pairs < 1) throw ConfigError("oracle.pairs must be >= 1");
  std::mt19937_64 rng(cfg.get_uint64("seed", 20080514ULL));
  std::uniform_real_distribution<double> lam_dist(0.05, 2.0);

  int failed = 0;
  auto report = [&failed](const std::string& name, double worst, double tol) {
    const bool ok = worst <= tol;
    if (!ok) ++failed;
    std::cout << (ok ? "ok   " : "FAIL ") << name << "  worst=" << worst
              << "  tol=" << tol << "\n";
  };

  {  // determinant overlap vs closed form
    double worst = 0.0;
    for (int p = 0; p < n_pairs; ++p) {
      const double l1 = lam_dist(rng), l2 = lam_dist(rng);
      for (int length : {8, 16, 32}) {
        gaussian::GaussianState s1(length, l1), s2(length, l2);
        worst = std::max(worst,
                         std::abs(gaussian::gaussian_overlap(s1, s2) -
                                  gaussian::closed_form_overlap(l1, l2, length)));
      }
    }
    report("gaussian determinant vs closed form", worst, 1e-12 * ts);
  }
  {  // fitted ln g and f against the BCFT value
    double worst = 0.0;
    const std::vector<int> sizes = {8, 16, 24, 32, 40, 48, 56, 64};
    for (int p = 0; p < n_pairs; ++p) {
      const double l1 = lam_dist(rng), l2 = lam_dist(rng);
      const auto est = gaussian::oracle_g(l1, l2, sizes);
      const double ln_g = std::log(bcft::g_critical(l1, l2));
      worst = std::max({worst, std::abs(est.ln_g - ln_g),
                        std::abs(est.f - ln_g)});
    }
    report("gaussian oracle_g vs g_critical", worst, 1e-10 * ts);
  }
  {  // folding identity
    double worst = 0.0;
    for (int p = 0; p < 1000; ++p) {
      const double l1 = lam_dist(rng), l2 = lam_dist(rng);
      const double lam_n = l1 + l2;
      const double lam_d = l1 * l2 / (l1 + l2);
      worst = std::max(worst,
                       std::abs(bcft::g_dirichlet(lam_d) * bcft::g_neumann(lam_n) -
                                bcft::g_critical(l1, l2)));
    }
    report("folding identity", worst, 1e-13 * ts);
  }
  {  // six-vertex transfer matrix vs enumeration (exact integers)
    bool exact = true;
    double worst_eval = 0.0;
    for (const auto& [l1, l2] :
         std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}, {2, 4}, {3, 4}, {4, 4}}) {
      vertex6::VertexLattice lat(l1, l2);
      const auto a = vertex6::z2d_coefficients(lat);
      const auto b = vertex6::enumeration_histogram(lat);
      if (a != b) exact = false;
      for (double w : {0.0, 0.3, 1.0, 1.7}) {
        const double za = vertex6::z2d(lat, w);
        const double zb = vertex6::evaluate_histogram(b, w);
        worst_eval = std::max(worst_eval, std::abs(za - zb) / zb);
      }
    }
    report("six-vertex coefficients transfer vs enumeration",
           exact ? 0.0 : 1.0, 0.5 * std::min(1.0, ts));
    report("six-vertex evaluation consistency", worst_eval, 1e-12 * ts);
  }
  {  // lattice fidelity bounds
    double worst_diag = 0.0;
    double worst_bound = 0.0;  // positive if F > 1 or F >= 1 off-diagonal
    vertex6::VertexLattice lat(4, 4);
    for (double c = 0.4; c < 1.45; c += 0.25) {
      worst_diag = std::max(worst_diag,
                            std::abs(vertex6::lattice_fidelity(lat, c, c) - 1.0));
      for (double cp = 0.4; cp < 1.45; cp += 0.25) {
        const double f = vertex6::lattice_fidelity(lat, c, cp);
        if (c != cp) worst_bound = std::max(worst_bound, f - (1.0 - 1e-12));
      }
    }
    report("six-vertex diagonal fidelity", worst_diag, 1e-12 * ts);
    report("six-vertex strict Cauchy-Schwarz", worst_bound, ts > 0 ? 0.0 : -1.0);
  }
  return failed;
}

}  // namespace gfactor::cli

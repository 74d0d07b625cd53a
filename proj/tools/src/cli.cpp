#include "foldfem/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include "foldfem/adapt.hpp"
#include "foldfem/bench.hpp"
#include "foldfem/io.hpp"
#include "foldfem/theory.hpp"

namespace foldfem::cli {

namespace {

struct RunConfig {
  std::string case_name = "flat_fold";
  int k = 2;
  double theta = 0.1;
  std::optional<double> gamma0, gamma1;
  bool uniform = false;
  int levels = 10;
  long max_dofs = 50000;
  bool paper_mode = false;
  std::string out_dir = ".";
  bool vtk = false;
  bool verify_bubble = false;
};

constexpr double kBubbleTolerance = 1e-12;

int verify_bubble(const RunConfig& cfg, std::ostream& out) {
  const auto rows = run_bubble_suite();
  std::filesystem::create_directories(cfg.out_dir);
  const auto path = std::filesystem::path(cfg.out_dir) / "bubble_identities.csv";
  std::ofstream file(path);
  if (!file) throw ConfigError("cannot write " + path.string());
  write_bubble_csv(file, rows, kBubbleTolerance);
  write_bubble_csv(out, rows, kBubbleTolerance);
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.report.worst() <= kBubbleTolerance;
  out << (ok ? "all identities hold" : "identity violations above tolerance") << " (tol " << kBubbleTolerance
      << "); report: " << path.string() << '\n';
  return ok ? kOk : kBubbleCheckFailed;
}

int study(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.k < 2 || cfg.k > 4) throw ConfigError("--k must be 2, 3 or 4");
  const BenchmarkCase bc = case_by_name(cfg.case_name);
  Penalties pen = bc.penalties;
  if (cfg.gamma0) pen.gamma0 = *cfg.gamma0;
  if (cfg.gamma1) pen.gamma1 = *cfg.gamma1;
  pen.validate();
  if (pen.below_stable_threshold())
    err << "warning: penalty below " << Penalties::kStableThreshold << ", the system may be indefinite\n";

  AdaptConfig acfg;
  acfg.theta = cfg.theta;
  acfg.max_levels = cfg.levels;
  acfg.max_dofs = cfg.max_dofs;
  acfg.uniform = cfg.uniform;
  acfg.variant = cfg.paper_mode ? EstimatorVariant::PaperMode : EstimatorVariant::WithEta1;
  acfg.validate();

  const std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  LevelObserver observer;
  if (cfg.vtk) {
    observer = [&](const LevelSnapshot& s) { write_vtk_level(dir, s.row.level, s.space, s.coeffs, s.indicators); };
  }
  const AdaptResult result = run_adaptive(bc.problem, bc.initial_mesh(), acfg, pen, cfg.k, {}, observer);

  const auto csv = dir / "convergence.csv";
  std::ofstream file(csv);
  if (!file) throw ConfigError("cannot write " + csv.string());
  write_convergence_csv(file, result.history);

  char line[160];
  std::snprintf(line, sizeof line, "%5s %9s %9s %12s %12s\n", "level", "elements", "dofs", "eta_tot", "dg_error");
  out << line;
  for (const auto& r : result.history) {
    std::snprintf(line, sizeof line, "%5d %9d %9d %12.4e ", r.level, r.elements, r.dofs, r.eta_tot);
    out << line;
    if (r.dg_error) {
      std::snprintf(line, sizeof line, "%12.4e\n", *r.dg_error);
      out << line;
    } else {
      out << std::string(11, ' ') << "-\n";
    }
  }
  out << "wrote " << csv.string() << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Adaptive interior penalty DG solver for folded plates"};
  app.add_option("--case", cfg.case_name, "flat_fold, v_fold or l_shape")
      ->check(CLI::IsMember({"flat_fold", "v_fold", "l_shape"}));
  app.add_option("--k", cfg.k, "polynomial degree (2..4)")->check(CLI::Range(2, 4));
  app.add_option("--theta", cfg.theta, "refinement fraction in (0, 1]");
  app.add_option("--gamma0", cfg.gamma0, "value-jump penalty (default: per case)");
  app.add_option("--gamma1", cfg.gamma1, "gradient-jump penalty (default: per case)");
  app.add_flag("--uniform", cfg.uniform, "refine every element");
  app.add_option("--levels", cfg.levels, "number of solved levels");
  app.add_option("--max-dofs", cfg.max_dofs, "stop before exceeding this many unknowns");
  app.add_flag("--paper-mode", cfg.paper_mode, "eta_tot without eta_1");
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_flag("--vtk", cfg.vtk, "write mesh_level_{L}.vtk per level");
  app.add_flag("--verify-bubble", cfg.verify_bubble, "check the edge-bubble identities and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (cfg.verify_bubble) return verify_bubble(cfg, out);
    return study(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IndefiniteMatrixError& e) {
    err << "numerical error: " << e.what() << '\n'
        << "hint: raise --gamma0/--gamma1; the case defaults are sized for k = 2 and higher degrees need"
           " larger penalties\n";
    return kNumericalError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  for (const auto& a : args) argv.push_back(a.c_str());
  argv.push_back(nullptr);
  return run(static_cast<int>(args.size()), argv.data(), out, err);
}

}  // namespace foldfem::cli

#include "sfcdf/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "csv.hpp"
#include "sfcdf/accuracy.hpp"
#include "sfcdf/composed_error.hpp"
#include "sfcdf/grid.hpp"
#include "sfcdf/quadrature.hpp"
#include "sfcdf/sampling.hpp"

namespace sfcdf::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct BadCombination : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct FamilyFlags {
  std::string family;
  double mu = 0.0, sigma_u = 0.0, sigma_v = 0.0, lambda = 0.0;
  std::string method;

  void add_to(CLI::App* cmd, bool family_required = true) {
    auto* fam = cmd->add_option("--family", family,
                                "Inefficiency family: tn (truncated normal) or exp");
    fam->check(CLI::IsMember({"tn", "exp"}));
    if (family_required) fam->required();
    cmd->add_option("--mu", mu, "Pre-truncation mean of u (tn family)");
    cmd->add_option("--sigma-u", sigma_u, "Scale of u (tn family)");
    cmd->add_option("--sigma-v", sigma_v, "Noise scale")->required();
    cmd->add_option("--lambda", lambda, "Rate of u (exp family)");
    cmd->add_option("--method", method,
                    "Analytic representation: owen|bvn (tn), direct|emg (exp)");
  }

  bool is_tn() const { return family == "tn"; }

  TruncNormalParams tn_params(const CLI::App* cmd) const {
    if (!cmd->count("--mu") || !cmd->count("--sigma-u")) {
      throw CLI::RequiredError("--mu and --sigma-u (tn family)");
    }
    return {mu, sigma_u, sigma_v};
  }

  ExpParams exp_params(const CLI::App* cmd) const {
    if (!cmd->count("--lambda")) throw CLI::RequiredError("--lambda (exp family)");
    return {lambda, sigma_v};
  }

  TnMethod tn_method() const {
    if (method.empty() || method == "bvn") return TnMethod::bvn;
    if (method == "owen") return TnMethod::owen;
    throw BadCombination("method '" + method + "' is not valid for the tn family");
  }

  ExpMethod exp_method() const {
    if (method.empty() || method == "emg") return ExpMethod::emg;
    if (method == "direct") return ExpMethod::direct;
    throw BadCombination("method '" + method + "' is not valid for the exp family");
  }

  std::string method_name() const {
    if (!method.empty()) return method;
    return is_tn() ? "bvn" : "emg";
  }
};

Orientation parse_orientation(const std::string& text) {
  if (text == "production") return Orientation::production;
  if (text == "cost") return Orientation::cost;
  throw BadCombination("orientation must be 'production' or 'cost'");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary); // binary: LF endings everywhere
  if (!out) throw std::ios_base::failure("cannot open output file '" + path + "'");
  return out;
}

// Writes one line of throttled progress to err.
class Progress {
 public:
  Progress(std::ostream& err, std::string label, std::size_t total)
      : err_(err), label_(std::move(label)), total_(total), start_(Clock::now()) {}

  void tick(std::size_t done) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto now = Clock::now();
    if (done < total_ && now - last_ < std::chrono::milliseconds(250)) return;
    last_ = now;
    const double secs = std::chrono::duration<double>(now - start_).count();
    err_ << label_ << ": " << done << "/" << total_ << " cells (" << std::fixed
         << std::setprecision(1) << secs << " s)\n"
         << std::defaultfloat;
  }

 private:
  std::ostream& err_;
  std::string label_;
  std::size_t total_;
  Clock::time_point start_;
  Clock::time_point last_{};
  std::mutex mutex_;
};

// Runs fn(i) for i in [0, n) across `threads` workers; exceptions rethrown.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---------------------------------------------------------------- eval ----

struct EvalCmd {
  FamilyFlags fam;
  double kappa = 0.0;
  std::string orientation = "production";
  CLI::App* cmd = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand("eval", "Evaluate the analytic cdf at one point");
    fam.add_to(cmd);
    cmd->add_option("--kappa", kappa, "Evaluation point")->required();
    cmd->add_option("--orientation", orientation,
                    "production (eps = v - u) or cost (eps* = v + u)")
        ->check(CLI::IsMember({"production", "cost"}));
  }

  int run(std::ostream& out, std::ostream&) const {
    const Orientation o = parse_orientation(orientation);
    double value = 0.0;
    if (fam.is_tn()) {
      value = cdf(fam.tn_params(cmd), kappa, o, fam.tn_method());
    } else {
      value = cdf(fam.exp_params(cmd), kappa, o, fam.exp_method());
    }
    out << format17(value) << "\n";
    return exit_ok;
  }
};

// -------------------------------------------------------------- oracle ----

struct OracleCmd {
  FamilyFlags fam;
  double kappa = 0.0;
  std::string orientation = "production";
  QuadratureSettings quad;
  CLI::App* cmd = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand("oracle",
                             "Compare the analytic cdf against tanh-sinh quadrature");
    fam.add_to(cmd);
    cmd->add_option("--kappa", kappa, "Evaluation point")->required();
    cmd->add_option("--orientation", orientation, "production or cost")
        ->check(CLI::IsMember({"production", "cost"}));
    cmd->add_option("--level-max", quad.level_max, "Max tanh-sinh refinement level");
    cmd->add_option("--abs-tol", quad.abs_tol, "Quadrature convergence target");
    cmd->add_option("--lower-cut", quad.lower_cut,
                    "Effective -infinity in standardized units");
  }

  int run(std::ostream& out, std::ostream& err) const {
    const Orientation o = parse_orientation(orientation);
    const double at = o == Orientation::cost ? -kappa : kappa;
    double analytic = 0.0;
    QuadratureResult q;
    if (fam.is_tn()) {
      const TruncNormalParams p = fam.tn_params(cmd);
      analytic = cdf(p, kappa, o, fam.tn_method());
      q = quad_cdf(p, at, quad);
    } else {
      const ExpParams p = fam.exp_params(cmd);
      analytic = cdf(p, kappa, o, fam.exp_method());
      q = quad_cdf(p, at, quad);
    }
    const double quad_value = o == Orientation::cost ? 1.0 - q.value : q.value;
    out << "analytic   = " << format17(analytic) << "\n"
        << "quadrature = " << format17(quad_value)
        << (q.converged ? "" : "  (NOT CONVERGED)") << "\n"
        << "abs_diff   = " << format17(std::fabs(analytic - quad_value)) << "\n";
    if (!q.converged) {
      err << "oracle: quadrature did not converge at level " << q.level
          << " (error estimate " << format_double(q.error_estimate) << ")\n";
      return exit_not_converged;
    }
    return exit_ok;
  }
};

// ------------------------------------------------------------ simulate ----

struct SimulateCmd {
  FamilyFlags fam;
  std::size_t n = 1000000;
  std::uint64_t seed = 12345;
  std::string grid_arg = "default";
  std::string out_path;
  unsigned threads = 0;
  CLI::App* cmd = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand(
        "simulate", "Monte-Carlo accuracy sweep |F(Q*(p)) - p| over a parameter grid");
    auto* fam_opt =
        cmd->add_option("--family", fam.family, "tn, exp, or both")->required();
    fam_opt->check(CLI::IsMember({"tn", "exp", "both"}));
    cmd->add_option("--method", fam.method, "Analytic representation to score");
    cmd->add_option("--n", n, "Draws per grid cell");
    cmd->add_option("--seed", seed, "Master seed; per-cell seeds derive from it");
    cmd->add_option("--grid", grid_arg, "'default' or a grid config file path");
    cmd->add_option("--out", out_path, "Output CSV path")->required();
    cmd->add_option("--threads", threads, "Worker threads (0 = hardware)");
  }

  int run(std::ostream&, std::ostream& err) const {
    const GridSpec grid =
        grid_arg == "default" ? GridSpec::defaults() : GridSpec::from_file(grid_arg);
    const bool do_tn = fam.family == "tn" || fam.family == "both";
    const bool do_exp = fam.family == "exp" || fam.family == "both";
    if (fam.family == "both" && !fam.method.empty()) {
      throw BadCombination("--method cannot be combined with --family both");
    }

    std::ofstream out = open_output(out_path);
    out << "family,mu,sigma_u,lambda,sigma_v,p,q_star,analytic_cdf,abs_error,method,n,seed\n";

    const auto emit = [&](const std::string& family, const std::string& mu,
                          const std::string& sigma_u, const std::string& lambda,
                          const std::string& sigma_v, const AccuracyRecord& r,
                          const std::string& method) {
      out << family << ',' << mu << ',' << sigma_u << ',' << lambda << ',' << sigma_v << ','
          << format_double(r.p) << ',' << format_double(r.q_star) << ','
          << format_double(r.analytic) << ',' << format_double(r.abs_error) << ',' << method
          << ',' << n << ',' << seed << "\n";
    };

    if (do_tn) {
      const auto cells = tn_cells(grid);
      const TnMethod method = fam.tn_method();
      const std::string method_name = fam.method.empty() ? "bvn" : fam.method;
      std::vector<std::vector<AccuracyRecord>> results(cells.size());
      Progress progress(err, "simulate tn", cells.size());
      std::atomic<std::size_t> done{0};
      parallel_for(cells.size(), threads, [&](std::size_t i) {
        const TruncNormalParams p{cells[i].mu, cells[i].sigma_u, cells[i].sigma_v};
        results[i] = mc_accuracy(p, grid.p, n, derive_cell_seed(seed, i), method);
        progress.tick(++done);
      });
      for (std::size_t i = 0; i < cells.size(); ++i) {
        for (const auto& r : results[i]) {
          emit("tn", format_double(cells[i].mu), format_double(cells[i].sigma_u), "",
               format_double(cells[i].sigma_v), r, method_name);
        }
      }
    }
    if (do_exp) {
      const auto cells = exp_cells(grid);
      const ExpMethod method = fam.exp_method();
      const std::string method_name = fam.method.empty() ? "emg" : fam.method;
      std::vector<std::vector<AccuracyRecord>> results(cells.size());
      Progress progress(err, "simulate exp", cells.size());
      std::atomic<std::size_t> done{0};
      parallel_for(cells.size(), threads, [&](std::size_t i) {
        const ExpParams p{cells[i].lambda, cells[i].sigma_v};
        results[i] = mc_accuracy(p, grid.p, n, derive_cell_seed(seed, i), method);
        progress.tick(++done);
      });
      for (std::size_t i = 0; i < cells.size(); ++i) {
        for (const auto& r : results[i]) {
          emit("exp", "", "", format_double(cells[i].lambda), format_double(cells[i].sigma_v),
               r, method_name);
        }
      }
    }
    if (!out) throw std::ios_base::failure("write failure on '" + out_path + "'");
    return exit_ok;
  }
};

// --------------------------------------------------------------- bench ----

struct BenchCmd {
  FamilyFlags fam;
  std::size_t n_evals = 10000;
  std::string out_path;
  CLI::App* cmd = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand(
        "bench", "Wall-time and accuracy of the analytic cdf vs the quadrature oracle");
    auto* fam_opt = cmd->add_option("--family", fam.family, "tn or exp")->required();
    fam_opt->check(CLI::IsMember({"tn", "exp"}));
    cmd->add_option("--method", fam.method, "Analytic representation to time");
    cmd->add_option("--n-evals", n_evals, "Total evaluations spread over the default grid");
    cmd->add_option("--out", out_path, "Output CSV path")->required();
  }

  template <class Params, class Analytic>
  void bench_cells(std::ofstream& out, std::ostream& err, const std::vector<Params>& params,
                   const Analytic& analytic, const std::string& family) const {
    const QuadratureSettings comparator{};            // matched tolerance 1e-12
    const QuadratureSettings reference{14, 1e-15, -40.0};
    const int per_cell = std::max<int>(1, static_cast<int>(n_evals / params.size()));
    Progress progress(err, "bench " + family, params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
      const auto& p = params[i];
      const std::vector<double> kappas = kappa_span(p, per_cell);
      std::vector<double> ref(kappas.size());
      for (std::size_t j = 0; j < kappas.size(); ++j) {
        ref[j] = quad_cdf(p, kappas[j], reference).value;
      }

      double sink = 0.0;
      double err_analytic = 0.0;
      const auto t0 = Clock::now();
      for (std::size_t j = 0; j < kappas.size(); ++j) {
        const double v = analytic(p, kappas[j]);
        sink += v;
        err_analytic = std::max(err_analytic, std::fabs(v - ref[j]));
      }
      const auto t1 = Clock::now();
      double err_quad = 0.0;
      for (std::size_t j = 0; j < kappas.size(); ++j) {
        const double v = quad_cdf(p, kappas[j], comparator).value;
        sink += v;
        err_quad = std::max(err_quad, std::fabs(v - ref[j]));
      }
      const auto t2 = Clock::now();
      if (!std::isfinite(sink)) err << "bench: non-finite value encountered\n";

      const double analytic_time = std::chrono::duration<double>(t1 - t0).count();
      const double quad_time = std::chrono::duration<double>(t2 - t1).count();
      const double rel_time = quad_time / std::max(analytic_time, 1e-12);
      const double rel_accuracy = err_quad / std::max(err_analytic, 1e-18);
      out << family << ',' << fam.method_name() << ",tanh_sinh,"
          << format_double(rel_accuracy) << ',' << format_double(rel_time) << ','
          << kappas.size() << "\n";
      progress.tick(i + 1);
    }
  }

  int run(std::ostream&, std::ostream& err) const {
    const GridSpec grid = GridSpec::defaults();
    std::ofstream out = open_output(out_path);
    out << "family,method,comparator,rel_accuracy,rel_time,n_evals\n";
    if (fam.is_tn()) {
      const TnMethod method = fam.tn_method();
      std::vector<TruncNormalParams> params;
      for (const auto& c : tn_cells(grid)) params.emplace_back(c.mu, c.sigma_u, c.sigma_v);
      bench_cells(out, err, params,
                  [method](const TruncNormalParams& p, double k) {
                    return cdf(p, k, Orientation::production, method);
                  },
                  "tn");
    } else {
      const ExpMethod method = fam.exp_method();
      std::vector<ExpParams> params;
      for (const auto& c : exp_cells(grid)) params.emplace_back(c.lambda, c.sigma_v);
      bench_cells(out, err, params,
                  [method](const ExpParams& p, double k) {
                    return cdf(p, k, Orientation::production, method);
                  },
                  "exp");
    }
    if (!out) throw std::ios_base::failure("write failure on '" + out_path + "'");
    return exit_ok;
  }
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analytic cdfs of the stochastic-frontier composed error"};
  app.name("sfcdf");
  app.require_subcommand(1);

  EvalCmd eval_cmd;
  OracleCmd oracle_cmd;
  SimulateCmd simulate_cmd;
  BenchCmd bench_cmd;
  eval_cmd.setup(app);
  oracle_cmd.setup(app);
  simulate_cmd.setup(app);
  bench_cmd.setup(app);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "sfcdf: " << e.what() << "\n";
    return exit_bad_flags;
  }

  try {
    if (eval_cmd.cmd->parsed()) return eval_cmd.run(out, err);
    if (oracle_cmd.cmd->parsed()) return oracle_cmd.run(out, err);
    if (simulate_cmd.cmd->parsed()) return simulate_cmd.run(out, err);
    if (bench_cmd.cmd->parsed()) return bench_cmd.run(out, err);
  } catch (const CLI::RequiredError& e) {
    err << "sfcdf: " << e.what() << "\n";
    return exit_bad_flags;
  } catch (const BadCombination& e) {
    err << "sfcdf: " << e.what() << "\n";
    return exit_bad_combination;
  } catch (const std::domain_error& e) {
    // invalid method/parameter combinations surfaced by the library
    err << "sfcdf: " << e.what() << "\n";
    return exit_bad_combination;
  } catch (const std::ios_base::failure& e) {
    err << "sfcdf: " << e.what() << "\n";
    return exit_io_error;
  } catch (const std::invalid_argument& e) {
    err << "sfcdf: " << e.what() << "\n";
    return exit_bad_flags;
  } catch (const std::exception& e) {
    err << "sfcdf: " << e.what() << "\n";
    return exit_bad_flags;
  }
  return exit_bad_flags;
}

} // namespace sfcdf::cli

// Command-line harness: dataset generation, single projection/regression
// runs, accuracy-vs-ridge-calls sweeps (CSV), and the self-verification
// suites.
//
// Exit codes: 0 success, 1 suite/criterion failure, 2 validation error,
// 3 I/O error, 4 convergence failure.

#include "pcpr/datagen.hpp"
#include "pcpr/io.hpp"
#include "pcpr/pcp.hpp"
#include "pcpr/pcr.hpp"
#include "pcpr/selfcheck.hpp"
#include "pcpr/sign_poly.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace pcpr;

constexpr int kExitFail = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitConvergence = 4;

std::string out_dir() {
  const char* env = std::getenv("PCPR_OUT_DIR");
  return env && *env ? env : ".";
}

struct OracleSpec {
  OracleKind kind = OracleKind::exact_cg;
  double cg_eps = 1e-12;
  int noise_k = 6;
  int svrg_passes = 50;
  double svrg_eps = 1e-2;  // conservative declared accuracy

  static OracleSpec parse(const std::string& text) {
    OracleSpec s;
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string arg =
        colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "cg") {
      s.kind = OracleKind::exact_cg;
      if (!arg.empty()) s.cg_eps = std::stod(arg);
    } else if (head == "noisy") {
      s.kind = OracleKind::noisy;
      if (arg.empty())
        throw validation_error("--oracle noisy:K needs the exponent K");
      s.noise_k = std::stoi(arg);
    } else if (head == "svrg") {
      s.kind = OracleKind::svrg;
      if (arg.empty())
        throw validation_error("--oracle svrg:P needs the pass count P");
      s.svrg_passes = std::stoi(arg);
    } else {
      throw validation_error("--oracle must be cg[:TOL], noisy:K or svrg:P");
    }
    return s;
  }

  RidgeOracle make(const DataMatrix& m, double lambda,
                   std::uint64_t seed) const {
    switch (kind) {
      case OracleKind::exact_cg:
        return RidgeOracle::exact_cg(m, lambda, cg_eps);
      case OracleKind::noisy:
        return RidgeOracle::noisy(m, lambda, noise_k, seed);
      case OracleKind::svrg:
        return RidgeOracle::svrg(m, lambda, svrg_passes, svrg_eps, seed);
    }
    throw validation_error("unknown oracle kind");
  }

  std::string label() const {
    switch (kind) {
      case OracleKind::exact_cg:
        return "cg";
      case OracleKind::noisy:
        return "noisy:" + std::to_string(noise_k);
      case OracleKind::svrg:
        return "svrg:" + std::to_string(svrg_passes);
    }
    return "?";
  }
};

struct NRange {
  int lo = 0, hi = 0, step = 1;

  static NRange parse(const std::string& text) {
    NRange r;
    char c1 = 0, c2 = 0;
    std::istringstream ss(text);
    if (!(ss >> r.lo >> c1 >> r.hi >> c2 >> r.step) || c1 != ':' || c2 != ':')
      throw validation_error("--n-range must be A:B:STEP");
    if (r.lo < 1 || r.hi < r.lo || r.step < 1)
      throw validation_error("--n-range must be nonempty and increasing");
    return r;
  }

  std::vector<int> values() const {
    std::vector<int> v;
    for (int n = lo; n <= hi; n += step) v.push_back(n);
    return v;
  }
};

const char* kSweepColumns =
    "n,ridge_calls,regression_error,projection_error,denoising_error,"
    "denoising_error_small";

void print_report(std::ostream& os, const ApproxReport& rep, int n) {
  os << n << ',';
  write_report_row(os, rep);
}

EigenReference reference_for(const Dataset& ds) {
  if (ds.truth) return ds.truth->reference();
  return EigenReference(ds.a);  // desk-scale dense fallback
}

int cmd_gen(Index dp, Index d, double a, double lambda, std::uint64_t seed,
            double noise_scale, std::string stem) {
  const SynthSpec spec{dp, d, a, lambda, seed, noise_scale};
  const Dataset ds = gen_random_a(spec);
  if (stem.empty()) {
    std::ostringstream name;
    name << "random-" << a << '-' << dp << 'x' << d << "-s" << seed;
    stem = (std::filesystem::path(out_dir()) / name.str()).string();
  }
  save_dataset(stem, ds, &spec);
  std::cout << "wrote " << stem << ".{a.bin,b.bin,truth.bin,manifest.txt}\n"
            << "  d' = " << dp << ", d = " << d << ", a = " << a
            << ", lambda = " << lambda << ", seed = " << seed
            << ", sigma_max ~= " << ds.a.sigma_max_estimate() << '\n';
  return 0;
}

int cmd_run(const std::string& dataset, const std::string& method,
            const OracleSpec& oracle_spec, double lambda, double gamma,
            std::optional<int> n_opt, std::optional<int> m_opt,
            std::optional<double> eps_opt, std::uint64_t seed,
            std::string out_prefix) {
  const Dataset ds = load_dataset(dataset);
  if (out_prefix.empty())
    out_prefix =
        (std::filesystem::path(out_dir()) / ("run-" + method)).string();

  int n = 0, m = 0;
  if (method == "quickpcr") {
    m = m_opt.value_or(10);
    if (n_opt)
      n = *n_opt;
    else if (eps_opt) {
      const PcrParams sched = pcr_schedule(lambda, gamma, *eps_opt);
      n = sched.pcp.n;
      if (!m_opt) m = sched.m;
    } else
      throw validation_error("run: need --n or --eps");
  } else if (method == "quickpcp") {
    if (n_opt)
      n = *n_opt;
    else if (eps_opt)
      n = pcp_schedule(lambda, gamma, *eps_opt).n;
    else
      throw validation_error("run: need --n or --eps");
  } else {
    throw validation_error("--method must be quickpcp or quickpcr");
  }

  RidgeOracle oracle = oracle_spec.make(ds.a, lambda, seed);
  RunOutputs outputs;
  std::string result_path;
  if (method == "quickpcp") {
    const PcpParams params = PcpParams::make(lambda, gamma, n);
    std::cout << "quickpcp: n = " << params.n
              << ", gamma_eff = " << params.gamma_eff
              << ", kappa = " << params.kappa << '\n';
    const Vector chi = ds.a.apply_t(ds.b);
    outputs.xi = quick_pcp(oracle, chi, params);
    result_path = out_prefix + ".xi.bin";
    write_vector_bin(result_path, *outputs.xi);
  } else {
    const PcrParams params = PcrParams::make(lambda, gamma, n, m);
    std::cout << "quickpcr: n = " << params.pcp.n << ", m = " << params.m
              << ", gamma_eff = " << params.pcp.gamma_eff << '\n';
    outputs.x = quick_pcr(oracle, ds.b, params);
    result_path = out_prefix + ".x.bin";
    write_vector_bin(result_path, *outputs.x);
  }
  outputs.ridge_calls = oracle.calls();

  std::ofstream report(out_prefix + ".report.csv");
  report << "# pcpr-report-v1 method=" << method
         << " oracle=" << oracle_spec.label() << " lambda=" << lambda
         << " gamma=" << gamma << " seed=" << seed << '\n';
  report << kSweepColumns << '\n';
  std::cout << kSweepColumns << '\n';
  if (ds.truth) {
    const EigenReference ref = ds.truth->reference();
    const Vector chi = ds.a.apply_t(ds.b);
    const ApproxReport rep = error_report(ref, ds.a, lambda, chi, ds.b, outputs);
    print_report(report, rep, n);
    print_report(std::cout, rep, n);
  } else {
    // no ground truth: only oracle-free quantities
    ApproxReport rep;
    rep.ridge_calls = outputs.ridge_calls;
    if (outputs.x) {
      const double rel = (ds.a.apply(*outputs.x) - ds.b).norm() / ds.b.norm();
      std::cout << "# ||Ax - b||/||b|| = " << rel << '\n';
      report << "# ||Ax - b||/||b|| = " << rel << '\n';
    }
    print_report(report, rep, n);
    print_report(std::cout, rep, n);
  }
  std::cout << "wrote " << result_path << " and " << out_prefix
            << ".report.csv\n";
  return 0;
}

int cmd_sweep(const std::string& dataset, const std::string& method,
              const OracleSpec& oracle_spec, double lambda, double gamma,
              const NRange& range, int m, double small_threshold,
              std::uint64_t seed, std::string out, bool gnuplot) {
  if (method != "quickpcp" && method != "quickpcr")
    throw validation_error("--method must be quickpcp or quickpcr");
  const Dataset ds = load_dataset(dataset);
  const EigenReference ref = reference_for(ds);
  if (out.empty())
    out = (std::filesystem::path(out_dir()) / ("sweep-" + method + ".csv"))
              .string();

  std::ofstream csv(out);
  if (!csv) throw io_error(io_fault::not_found, "cannot open " + out);
  csv.precision(12);
  csv << "# pcpr-sweep-v1 method=" << method
      << " oracle=" << oracle_spec.label() << " lambda=" << lambda
      << " gamma=" << gamma << " m=" << m
      << " small_threshold=" << small_threshold << " seed=" << seed
      << " dataset=" << dataset << '\n';
  csv << kSweepColumns << '\n';

  const Vector chi = ds.a.apply_t(ds.b);
  for (int n : range.values()) {
    RidgeOracle oracle = oracle_spec.make(ds.a, lambda, seed);
    RunOutputs outputs;
    if (method == "quickpcp") {
      outputs.xi = quick_pcp(oracle, chi, PcpParams::make(lambda, gamma, n));
    } else {
      outputs.x =
          quick_pcr(oracle, ds.b, PcrParams::make(lambda, gamma, n, m));
    }
    outputs.ridge_calls = oracle.calls();
    const ApproxReport rep = error_report(ref, ds.a, lambda, chi, ds.b,
                                          outputs, small_threshold);
    print_report(csv, rep, n);
  }
  std::cout << "wrote " << out << '\n';

  if (gnuplot) {
    const std::string gp = out + ".gp";
    std::ofstream script(gp);
    script << "set datafile separator ','\n"
           << "set logscale y\n"
           << "set xlabel 'ridge regression calls'\n"
           << "set ylabel 'relative error'\n"
           << "plot '" << out << "' using 2:4 with linespoints title '"
           << method << " projection', \\\n     '" << out
           << "' using 2:5 with linespoints title 'denoising', \\\n     '"
           << out << "' using 2:6 with linespoints title 'denoising (small)'\n";
    std::cout << "wrote " << gp << '\n';
  }
  return 0;
}

int cmd_verify(std::uint64_t seed, const std::string& dump_poly) {
  if (!dump_poly.empty()) {
    std::ofstream out(dump_poly);
    if (!out) throw io_error(io_fault::not_found, "cannot open " + dump_poly);
    save_sign_poly_csv(out, build_sign_poly(0.1, 1e-3));
    std::cout << "wrote " << dump_poly << '\n';
  }
  bool all = true;
  for (const SuiteResult& suite : run_selfcheck(seed)) {
    std::cout << (suite.pass ? "[PASS] " : "[FAIL] ") << suite.name << '\n';
    for (const std::string& line : suite.lines) std::cout << "    " << line << '\n';
    all = all && suite.pass;
  }
  std::cout << (all ? "verify: all suites passed\n"
                    : "verify: FAILURES above\n");
  return all ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"principal component projection and regression through ridge "
               "regression"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset bundle");
  Index gen_dp = 300, gen_d = 200;
  double gen_a = 0.1, gen_lambda = 0.1, gen_noise = 0.1;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--dp", gen_dp, "rows d'");
  gen->add_option("--d", gen_d, "columns d (must be even)");
  gen->add_option("--a", gen_a, "eigengap parameter (0 = gap-free)");
  gen->add_option("--lambda", gen_lambda, "eigenvalue threshold");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--noise-scale", gen_noise, "relative noise on b");
  gen->add_option("--out", gen_out, "bundle stem (default under PCPR_OUT_DIR)");

  // run
  auto* run = app.add_subcommand("run", "one projection or regression run");
  std::string run_dataset, run_method = "quickpcp", run_oracle = "cg",
              run_out;
  double run_lambda = 0.1, run_gamma = 0.1;
  std::optional<int> run_n, run_m;
  std::optional<double> run_eps;
  std::uint64_t run_seed = 0;
  run->add_option("--dataset", run_dataset, "bundle stem")->required();
  run->add_option("--method", run_method, "quickpcp | quickpcr");
  run->add_option("--oracle", run_oracle, "cg[:TOL] | noisy:K | svrg:P");
  run->add_option("--lambda", run_lambda, "eigenvalue threshold");
  run->add_option("--gamma", run_gamma, "approximation ratio (0 derives from n)");
  run->add_option("--n", run_n, "inner degree (overrides --eps)");
  run->add_option("--m", run_m, "reduction iterations (quickpcr)");
  run->add_option("--eps", run_eps, "target accuracy, sizes n (and m)");
  run->add_option("--seed", run_seed, "oracle seed");
  run->add_option("--out", run_out, "output prefix");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "error vs ridge calls, CSV table");
  std::string sw_dataset, sw_method = "quickpcp", sw_oracle = "cg", sw_out,
              sw_range_text;
  double sw_lambda = 0.1, sw_gamma = 0.1;
  int sw_m = 10;
  double sw_small = 0.81;
  std::uint64_t sw_seed = 0;
  bool sw_gnuplot = false;
  sweep->add_option("--dataset", sw_dataset, "bundle stem")->required();
  sweep->add_option("--method", sw_method, "quickpcp | quickpcr");
  sweep->add_option("--oracle", sw_oracle, "cg[:TOL] | noisy:K | svrg:P");
  sweep->add_option("--lambda", sw_lambda, "eigenvalue threshold");
  sweep->add_option("--gamma", sw_gamma, "approximation ratio");
  sweep->add_option("--n-range", sw_range_text, "A:B:STEP")->required();
  sweep->add_option("--m", sw_m, "reduction iterations (quickpcr)");
  sweep->add_option("--small-threshold", sw_small,
                    "threshold factor for the small denoising column");
  sweep->add_option("--seed", sw_seed, "oracle seed");
  sweep->add_option("--out", sw_out, "CSV path");
  sweep->add_flag("--gnuplot", sw_gnuplot, "also write a gnuplot script");

  // verify
  auto* verify = app.add_subcommand("verify", "run all property suites");
  std::uint64_t verify_seed = 20250810;
  std::string verify_dump;
  verify->add_option("--seed", verify_seed, "suite seed");
  verify->add_option("--dump-poly", verify_dump,
                     "write the reference sign polynomial as CSV");

  try {
    app.parse(argc, argv);
    if (gen->parsed())
      return cmd_gen(gen_dp, gen_d, gen_a, gen_lambda, gen_seed, gen_noise,
                     gen_out);
    if (run->parsed())
      return cmd_run(run_dataset, run_method, OracleSpec::parse(run_oracle),
                     run_lambda, run_gamma, run_n, run_m, run_eps, run_seed,
                     run_out);
    if (sweep->parsed())
      return cmd_sweep(sw_dataset, sw_method, OracleSpec::parse(sw_oracle),
                       sw_lambda, sw_gamma, NRange::parse(sw_range_text), sw_m,
                       sw_small, sw_seed, sw_out, sw_gnuplot);
    if (verify->parsed()) return cmd_verify(verify_seed, verify_dump);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitValidation;
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const io_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const convergence_error& e) {
    std::cerr << "convergence error: " << e.what() << '\n';
    return kExitConvergence;
  }
  return 0;
}

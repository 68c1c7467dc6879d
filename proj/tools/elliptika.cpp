// elliptika: batch verification of the elliptic reciprocity identities and
// single evaluations of the underlying functions.
//
// Exit codes: 0 all checks passed, 1 a check failed or evaluation error,
// 2 bad configuration or arguments, 3 I/O failure.

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "elliptika/errors.hpp"
#include "elliptika/report.hpp"

namespace {

using namespace elliptika;

struct SuiteFlags {
  std::string config_path;
  std::vector<std::string> taus;
  std::optional<int> a;
  std::optional<int> b;
  int pair_bound = 0;
  std::vector<std::string> cases;
  std::optional<int> N_max;
  std::optional<int> samples;
  std::optional<double> tol;
  std::string format;
  std::string out;
  unsigned threads = 0;
};

void add_suite_flags(CLI::App* cmd, SuiteFlags& f) {
  cmd->add_option("--config", f.config_path, "key = value config file");
  cmd->add_option("--tau", f.taus, "tau value such as 2i or 0.3+1.5i (repeatable)");
  cmd->add_option("--a", f.a, "first entry of a single pair (needs --b)");
  cmd->add_option("--b", f.b, "second entry of a single pair (needs --a)");
  cmd->add_option("--pair-bound", f.pair_bound, "use all coprime pairs with entries up to this bound");
  cmd->add_option("--case", f.cases, "identity case ij:mn, e.g. 11:10 (repeatable)");
  cmd->add_option("--N", f.N_max, "highest reciprocity order checked");
  cmd->add_option("--samples", f.samples, "sample points per identity check");
  cmd->add_option("--tol", f.tol, "tolerance for the identity and its z=0 reciprocity law");
  cmd->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", f.out, "output file (default stdout)");
  cmd->add_option("--threads", f.threads, "worker threads (0 = hardware)");
}

SuiteConfig build_config(const SuiteFlags& f, SuiteConfig config) {
  if (!f.config_path.empty()) config = load_config(f.config_path);
  if (!f.taus.empty()) {
    config.tau_list.clear();
    for (const auto& t : f.taus) config.tau_list.push_back(parse_complex(t));
  }
  if (f.a.has_value() != f.b.has_value()) throw ConfigError("--a and --b go together");
  if (f.a) {
    try {
      config.pairs = {CoprimePair(*f.a, *f.b)};
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  } else if (f.pair_bound > 0) {
    config.pairs = coprime_pairs_up_to(f.pair_bound);
  }
  if (!f.cases.empty()) {
    config.cases.clear();
    for (const auto& c : f.cases) config.cases.push_back(parse_case(c));
  }
  if (f.N_max) config.N_max = *f.N_max;
  if (f.samples) config.samples = *f.samples;
  if (f.tol) {
    config.tolerances.theorem31 = *f.tol;
    config.tolerances.corollary33 = *f.tol;
  }
  if (f.format == "json") config.output_format = OutputFormat::json;
  if (f.format == "csv") config.output_format = OutputFormat::csv;
  if (!f.out.empty()) config.output_path = f.out;
  if (f.threads != 0) config.threads = f.threads;
  config.validate();
  return config;
}

int run_suite_command(const SuiteConfig& config) {
  const SuiteResult result = run_suite(config);
  emit_result(config, result);
  return result.summary.failed == 0 ? 0 : 1;
}

void print_value(cplx v, double err) {
  std::printf("%.17g%+.17gi %.3g\n", v.real(), v.imag(), err);
}

ParityIndex index_from(const std::vector<int>& idx) {
  if (idx.size() != 2) throw ParseError("expected two indices i j");
  const ParityIndex p(idx[0], idx[1]);
  if (!p.is_function_index()) throw ParseError("index (0,0) is not an elliptic function");
  return p;
}

EvalMethod method_from(const std::string& name) {
  if (name == "theta") return EvalMethod::theta_quotient;
  if (name == "fourier") return EvalMethod::fourier;
  if (name == "eisenstein") return EvalMethod::eisenstein;
  if (name == "mumford") return EvalMethod::mumford;
  throw ParseError("method must be theta, fourier, eisenstein or mumford");
}

// Second route used for the printed error estimate; falls back to a rounding
// bound where the Fourier series does not converge.
std::optional<cplx> fourier_f(ParityIndex idx, cplx z, const EllipticContext& ctx) {
  if (std::abs(z.imag()) >= 0.5 * ctx.tau().imag()) return std::nullopt;
  return f_ij(idx, z, ctx, EvalMethod::fourier);
}

double rounding_bound(cplx v) { return 16.0 * 2.220446049250313e-16 * std::max(1.0, std::abs(v)); }

int eval_command(const std::string& what, const std::vector<int>& indices, const std::string& z_text,
                 const std::string& tau_text, int s, const std::string& method,
                 const std::string& mode) {
  const cplx z = parse_complex(z_text);
  const TauParameter tau(parse_complex(tau_text));

  if (what == "theta") {
    if (indices.size() != 1) throw ParseError("theta takes one index in 1..4");
    const ThetaValue v = theta(indices[0], z, tau);
    print_value(v.value, v.error_estimate);
    return v.converged ? 0 : 1;
  }

  const EllipticContext ctx = context_from_tau(tau);
  if (what == "f") {
    const ParityIndex idx = index_from(indices);
    const cplx v = f_ij(idx, z, ctx, method_from(method));
    const auto other = method == "theta" ? fourier_f(idx, z, ctx)
                                         : std::optional<cplx>(f_ij(idx, z, ctx));
    print_value(v, other ? std::max(std::abs(v - *other), rounding_bound(v)) : rounding_bound(v));
    return 0;
  }
  if (what == "sn" || what == "cn" || what == "dn") {
    const JacobiTriple t = jacobi_basic(z, ctx);
    const cplx v = what == "sn" ? t.sn : what == "cn" ? t.cn : t.dn;
    double err = rounding_bound(v);
    if (const auto ns = fourier_f(kNs, z, ctx)) {
      cplx alt = ctx.two_K() / *ns;
      if (what == "cn") alt = *fourier_f(kCs, z, ctx) / *ns;
      if (what == "dn") alt = *fourier_f(kDs, z, ctx) / *ns;
      err = std::max(err, std::abs(v - alt));
    }
    print_value(v, err);
    return 0;
  }
  if (what == "wp") {
    const WpMode m = mode == "lattice" ? WpMode::lattice : WpMode::from_f;
    if (mode != "from_f" && mode != "lattice" && mode != "closed_form") {
      throw ParseError("wp mode must be from_f or lattice");
    }
    const cplx v = weierstrass_p(z, ctx, m);
    const cplx alt = weierstrass_p(z, ctx, m == WpMode::from_f ? WpMode::lattice : WpMode::from_f);
    print_value(v, std::abs(v - alt));
    return 0;
  }
  if (what == "C") {
    const ParityIndex idx = index_from(indices);
    const LaurentMode m = mode == "contour" ? LaurentMode::contour : LaurentMode::closed_form;
    if (mode != "contour" && mode != "closed_form" && mode != "from_f") {
      throw ParseError("C mode must be closed_form or contour");
    }
    const cplx v = m == LaurentMode::closed_form && s > 2 ? laurent_C_best(idx, s, ctx)
                                                          : laurent_C(idx, s, ctx, m);
    const cplx contour = laurent_C(idx, s, ctx, LaurentMode::contour);
    const cplx coarse = laurent_C(idx, s, ctx, LaurentMode::contour, ContourConfig{0.4, 256});
    const double err = std::max({std::abs(v - contour), std::abs(contour - coarse), rounding_bound(v)});
    print_value(v, err);
    return 0;
  }
  throw ParseError("unknown quantity '" + what + "'; use theta, sn, cn, dn, f, wp or C");
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging_from_env();

  CLI::App app{"Elliptic reciprocity identity verifier"};
  app.require_subcommand(1);

  SuiteFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "run the verification suite and print a report");
  add_suite_flags(verify, verify_flags);

  SuiteFlags sweep_flags;
  auto* sweep = app.add_subcommand(
      "sweep", "grid over pairs and tau; CSV output, reciprocity orders above 0 off unless --N");
  add_suite_flags(sweep, sweep_flags);

  std::string what;
  std::vector<int> indices;
  std::string z_text = "0.25+0.1i";
  std::string tau_text = "i";
  int s = 1;
  std::string method = "theta";
  std::string mode = "closed_form";
  auto* eval = app.add_subcommand("eval", "evaluate one quantity: theta, sn, cn, dn, f, wp, C");
  eval->add_option("what", what, "theta | sn | cn | dn | f | wp | C")->required();
  eval->add_option("indices", indices, "theta index, or i j for f and C");
  eval->add_option("--z", z_text, "argument z");
  eval->add_option("--tau", tau_text, "modulus tau");
  eval->add_option("--s", s, "Laurent order for C");
  eval->add_option("--method", method, "f: theta, fourier, eisenstein, mumford");
  eval->add_option("--mode", mode, "wp: from_f | lattice; C: closed_form | contour");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return run_suite_command(build_config(verify_flags, SuiteConfig{}));
    if (sweep->parsed()) {
      SuiteConfig base;
      base.name = "sweep";
      base.N_max = 0;
      base.output_format = OutputFormat::csv;
      return run_suite_command(build_config(sweep_flags, base));
    }
    return eval_command(what, indices, z_text, tau_text, s, method, mode);
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const ParseError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const IoError& e) {
    spdlog::error("{}", e.what());
    return 3;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
}

// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
// Usage: acceptance <path-to-elliptika-cli> <scratch-dir>

#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "elliptika/identity.hpp"

using namespace elliptika;

namespace {

const cplx kI{0.0, 1.0};
const std::array<ParityIndex, 3> kIndices{kCs, kDs, kNs};

struct Outcome {
  bool pass;
  std::string detail;
};

EllipticContext ctx_at(cplx tau) { return context_from_tau(TauParameter(tau)); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

bool classical_parity_ok(int id, const CoprimePair& p) {
  const bool a_even = p.a() % 2 == 0;
  const bool sum_even = (p.a() + p.b()) % 2 == 0;
  switch (id) {
    case 1: return a_even;
    case 2: return !a_even;
    case 3: return sum_even;
    case 4: return !sum_even;
    default: return true;
  }
}

const std::vector<CoprimePair>& classical_pairs() {
  static const std::vector<CoprimePair> pairs{{2, 3}, {3, 2}, {1, 3}, {1, 2}, {2, 1}, {3, 4}};
  return pairs;
}

Outcome ac1() {
  constexpr double kTolLambda = 1e-12;
  constexpr double kTolTwoK = 1e-9;
  constexpr double kTolLimit = 1e-12;
  const double oracle = std::pow(std::tgamma(0.25), 2) / (2.0 * std::sqrt(kPi));
  const auto c = ctx_at(kI);
  const double e1 = std::abs(c.lambda() - 0.5);
  const double e2 = std::abs(c.two_K() - 3.708149354602744);
  const double e3 = std::abs(ctx_at(10.0 * kI).two_K() - kPi);
  const double e4 = std::abs(oracle - 3.708149354602744);
  return {e1 < kTolLambda && e2 < kTolTwoK && e4 < kTolTwoK && e3 < kTolLimit,
          "|lambda(i)-1/2|=" + sci(e1) + " |2K(i)-oracle|=" + sci(e2) + " |2K(10i)-pi|=" + sci(e3)};
}

Outcome ac2() {
  constexpr double kTol = 1e-12;
  constexpr int kSamples = 32;
  double worst = 0.0;
  int checked = 0;
  const auto c = ctx_at(2.0 * kI);
  for (int id = 0; id <= 4; ++id) {
    for (const auto& pair : classical_pairs()) {
      if (!classical_parity_ok(id, pair)) continue;
      for (const cplx z : sample_points(IdentityCase{}, pair, c, kSamples)) {
        const Sides s = classical_trig_identity(id, pair, z);
        worst = std::max(worst, std::abs(s.lhs - s.rhs));
      }
      ++checked;
    }
  }
  return {worst < kTol, std::to_string(checked) + " (case, pair) runs, max residual " + sci(worst)};
}

Outcome ac3() {
  constexpr double kTol = 1e-12;
  double worst = 0.0;
  for (int id = 0; id <= 4; ++id) {
    for (const auto& pair : classical_pairs()) {
      if (!classical_parity_ok(id, pair)) continue;
      const RealSides s = classical_trig_reciprocity(id, pair);
      worst = std::max(worst, std::abs(s.lhs - s.rhs));
    }
  }
  const RealSides f1 = classical_trig_reciprocity(0, CoprimePair(2, 3));
  const RealSides f2 = classical_trig_reciprocity(0, CoprimePair(1, 3));
  const RealSides f3 = classical_trig_reciprocity(4, CoprimePair(1, 2));
  const double fixtures = std::max({std::abs(f1.lhs + 2.0 / 9.0), std::abs(f1.rhs + 2.0 / 9.0),
                                    std::abs(f2.lhs - 2.0 / 9.0), std::abs(f2.rhs - 2.0 / 9.0),
                                    std::abs(f3.lhs + 0.5), std::abs(f3.rhs + 0.5)});
  return {worst < kTol && fixtures < kTol,
          "max |lhs-rhs| " + sci(worst) + ", fixtures -2/9, 2/9, -1/2 off by " + sci(fixtures)};
}

Outcome ac4() {
  constexpr double kTol = 1e-9;
  constexpr int kSamples = 16;
  int runs = 0;
  int failed = 0;
  double worst_rel = 0.0;
  for (const cplx tau : {2.0 * kI, cplx{0.3, 1.5}}) {
    const auto c = ctx_at(tau);
    for (const auto& fam : all_families()) {
      for (const auto& pair : coprime_pairs_up_to(5)) {
        if (!fam.admissible(pair)) continue;
        const auto r = verify_theorem31(fam, pair, c, kSamples, kTol);
        ++runs;
        failed += r.passed ? 0 : 1;
        worst_rel = std::max(worst_rel, r.max_rel_residual);
      }
    }
  }
  return {failed == 0, std::to_string(runs) + " runs, " + std::to_string(failed) +
                           " failed, max |Phi-Psi|/scale " + sci(worst_rel)};
}

Outcome ac5() {
  constexpr double kTol = 1e-9;
  constexpr double kTolLambdaCoeff = 1e-8;
  int failed = 0;
  int runs = 0;
  const auto c1 = ctx_at(2.0 * kI);
  const auto c2 = ctx_at(cplx{0.3, 1.5});
  for (const auto* c : {&c1, &c2}) {
    for (const auto& fam : all_families()) {
      for (const auto& pair : coprime_pairs_up_to(5)) {
        if (!fam.admissible(pair)) continue;
        ++runs;
        failed += verify_corollary33(fam, pair, *c, kTol).passed ? 0 : 1;
      }
    }
  }
  const IdentityCase fixture_case{kDs, kCs};
  const Sides fx = corollary33_sides(fixture_case, CoprimePair(1, 2), c1);
  const double fixture_err = std::abs(fx.lhs / (c1.two_K() * c1.two_K()) - 0.5);

  double coeff_err = 0.0;
  for (const auto& fam : all_families()) {
    for (const auto& pair : coprime_pairs_up_to(5)) {
      if (!fam.admissible(pair)) continue;
      const cplx v1 = corollary33_sides(fam, pair, c1).lhs / (c1.two_K() * c1.two_K());
      const cplx v2 = corollary33_sides(fam, pair, c2).lhs / (c2.two_K() * c2.two_K());
      const cplx B = (v1 - v2) / (c1.lambda() - c2.lambda());
      const cplx A = v1 - B * c1.lambda();
      const auto table = tabulated_reciprocity_constants(fam, pair);
      coeff_err = std::max({coeff_err, std::abs(A - table->constant),
                            std::abs(B - table->lambda_coefficient)});
    }
  }
  const auto fixture_table = tabulated_reciprocity_constants(fixture_case, CoprimePair(1, 2));
  const bool fixture_lambda_zero = std::abs(fixture_table->lambda_coefficient) < kTolLambdaCoeff;
  return {failed == 0 && fixture_err < kTol && fixture_lambda_zero && coeff_err < kTolLambdaCoeff,
          std::to_string(runs) + " runs, " + std::to_string(failed) + " failed; (1,1)(1,0)@(1,2) = 1/2 off by " +
              sci(fixture_err) + "; constants vs table " + sci(coeff_err)};
}

Outcome ac6() {
  constexpr double kTolN1 = 1e-7;
  constexpr double kTolN2 = 1e-6;
  const auto c = ctx_at(2.0 * kI);
  int families_ok = 0;
  std::string worst;
  for (const auto& fam : all_families()) {
    bool ok = false;
    for (const auto& pair : coprime_pairs_up_to(3)) {
      if (!fam.admissible(pair)) continue;
      const auto r1 = verify_theorem32(fam, pair, 1, c, {}, kTolN1);
      const auto r2 = verify_theorem32(fam, pair, 2, c, {}, kTolN2);
      if (r1.passed && r2.passed) {
        ok = true;
        break;
      }
    }
    families_ok += ok ? 1 : 0;
  }
  return {families_ok == 6, std::to_string(families_ok) + "/6 families with a passing pair at N=1 and N=2"};
}

Outcome ac7() {
  constexpr double kTolFourier = 1e-10;
  constexpr double kTolMumford = 1e-12;
  constexpr double kTolEisenstein = 1e-3;
  double fourier = 0.0;
  double mumford = 0.0;
  double eisenstein = 0.0;
  const auto c = ctx_at(2.0 * kI);
  const double half = 0.5 * c.tau().imag();
  for (int x = 0; x < 5; ++x) {
    for (int y = 0; y < 5; ++y) {
      // |Im z| < Im tau / 2, away from the real-axis poles.
      const cplx z{0.11 + 0.19 * x, -0.9 * half + 0.45 * half * y + 0.03};
      for (const auto idx : kIndices) {
        const cplx ref = f_ij(idx, z, c);
        fourier = std::max(fourier, std::abs(f_ij(idx, z, c, EvalMethod::fourier) - ref));
        mumford = std::max(mumford, std::abs(f_ij(idx, z, c, EvalMethod::mumford) - ref));
      }
    }
  }
  for (const cplx z : {cplx{0.21, 0.33}, cplx{0.4, -0.2}, cplx{0.73, 0.5}, cplx{-0.3, 0.15}}) {
    for (const auto idx : kIndices) {
      eisenstein = std::max(eisenstein, std::abs(f_ij(idx, z, c, EvalMethod::eisenstein,
                                                      EisensteinLimits{2000, 2000}) -
                                                 f_ij(idx, z, c)));
    }
  }
  return {fourier < kTolFourier && mumford < kTolMumford && eisenstein < kTolEisenstein,
          "fourier " + sci(fourier) + ", mumford " + sci(mumford) + ", eisenstein " + sci(eisenstein)};
}

Outcome ac8() {
  constexpr double kTolContour = 1e-10;
  constexpr double kTolSum = 1e-13;
  constexpr double kTolDerivative = 1e-10;
  double contour = 0.0;
  double sum = 0.0;
  double derivative = 0.0;
  for (const cplx tau : {kI, 2.0 * kI}) {
    const auto c = ctx_at(tau);
    for (const auto idx : kIndices) {
      for (int s = 0; s <= 2; ++s) {
        contour = std::max(contour, std::abs(laurent_C(idx, s, c, LaurentMode::contour) -
                                             laurent_C(idx, s, c, LaurentMode::closed_form)));
      }
      for (const cplx z0 : {cplx{0.27, 0.33}, cplx{0.61, -0.2}}) {
        derivative = std::max(derivative, std::abs(f_nth_derivative(idx, 1, z0, c) -
                                                   f_ij_derivative(idx, z0, c)));
      }
    }
    sum = std::max(sum, std::abs(laurent_C(kCs, 1, c) + laurent_C(kDs, 1, c) + laurent_C(kNs, 1, c)));
  }
  return {contour < kTolContour && sum < kTolSum && derivative < kTolDerivative,
          "contour vs closed " + sci(contour) + ", C sum " + sci(sum) + ", f' " + sci(derivative)};
}

Outcome ac9() {
  constexpr double kTol = 1e-8;
  constexpr int kSamples = 8;
  int runs = 0;
  int failed = 0;
  int non_monotone = 0;
  double worst = 0.0;
  for (const auto& fam : all_families()) {
    for (const auto& pair : coprime_pairs_up_to(5)) {
      if (!fam.admissible(pair)) continue;
      double previous = INFINITY;
      for (const double im : {4.0, 6.0, 8.0}) {
        const auto c = ctx_at(cplx{0.0, im});
        const auto pts = sample_points(fam, pair, c, kSamples);
        const auto r = degeneration_check(fam, pair, c, pts, kTol);
        // Exactly zero residuals (empty sums at pair (1,1)) cannot decrease.
        const bool decreasing = r.max_abs_residual < previous ||
                                (r.max_abs_residual == 0.0 && previous == 0.0);
        if (!decreasing) ++non_monotone;
        previous = r.max_abs_residual;
        if (im == 8.0) {
          ++runs;
          failed += r.passed ? 0 : 1;
          worst = std::max(worst, r.max_rel_residual);
        }
      }
    }
  }
  return {failed == 0 && non_monotone == 0,
          std::to_string(runs) + " runs at 8i, " + std::to_string(failed) + " failed, max " + sci(worst) +
              ", non-monotone " + std::to_string(non_monotone)};
}

Outcome ac10() {
  constexpr double kTolModes = 2e-3;
  constexpr double kTolDerivative = 1e-6;
  const auto c = ctx_at(2.0 * kI);
  double modes = 0.0;
  double derivative = 0.0;
  for (const cplx z : {cplx{0.29, 0.21}, cplx{0.41, -0.37}, cplx{0.13, 0.6}}) {
    modes = std::max(modes, std::abs(weierstrass_p(z, c, WpMode::from_f) -
                                     weierstrass_p(z, c, WpMode::lattice)));
    const double h = 1e-4;
    const cplx numeric = (weierstrass_p(z + h, c) - weierstrass_p(z - h, c)) / (2.0 * h);
    const cplx formula = -2.0 * f_ij(kCs, z, c) * f_ij(kDs, z, c) * f_ij(kNs, z, c);
    derivative = std::max(derivative, std::abs(numeric - formula) / std::max(1.0, std::abs(formula)));
  }
  return {modes < kTolModes && derivative < kTolDerivative,
          "from_f vs lattice " + sci(modes) + ", p' relative " + sci(derivative)};
}

Outcome ac11(const std::string& cli, const std::filesystem::path& scratch) {
  std::filesystem::create_directories(scratch);
  const auto first = scratch / "verify_1.json";
  const auto second = scratch / "verify_2.json";
  const auto run = [&](const std::filesystem::path& out) {
    const std::string cmd = "ELLIPTIKA_LOG=quiet \"" + cli + "\" verify --out \"" + out.string() + "\"";
    return std::system(cmd.c_str());
  };
  const int rc1 = run(first);
  const int rc2 = run(second);
  const auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string a = slurp(first);
  const std::string b = slurp(second);
  int failed = -1;
  try {
    failed = nlohmann::json::parse(a)["summary"]["failed"].get<int>();
  } catch (const std::exception&) {
  }
  return {rc1 == 0 && rc2 == 0 && failed == 0 && !a.empty() && a == b,
          "exit codes " + std::to_string(rc1) + "/" + std::to_string(rc2) + ", failed " +
              std::to_string(failed) + ", identical " + (a == b && !a.empty() ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <elliptika-cli> <scratch-dir>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const std::filesystem::path scratch = argv[2];

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 elliptic parameter oracles", ac1},
      {"AC2 trigonometric identities", ac2},
      {"AC3 trigonometric reciprocity", ac3},
      {"AC4 elliptic identity, all families", ac4},
      {"AC5 z=0 reciprocity and constants", ac5},
      {"AC6 higher reciprocity N=1,2", ac6},
      {"AC7 evaluation methods agree", ac7},
      {"AC8 Laurent machinery", ac8},
      {"AC9 trigonometric degeneration", ac9},
      {"AC10 Weierstrass p consistency", ac10},
      {"AC11 CLI verify determinism", [&] { return ac11(cli, scratch); }},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o{false, ""};
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

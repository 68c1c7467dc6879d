#include "elliptika/elliptic.hpp"

#include <cmath>
#include <limits>

#include "elliptika/errors.hpp"
#include "elliptika/laurent.hpp"

namespace elliptika {

namespace {

constexpr cplx kI{0.0, 1.0};

// Beyond this exponent the theta values themselves approach double overflow,
// so theta_quotient shifts z by a multiple of tau first.
constexpr double kFoldExponent = 300.0;

void require_function_index(ParityIndex idx) {
  if (!idx.is_function_index()) throw DomainError("(0,0) is not a valid function index");
}

void require_off_lattice(cplx z, cplx tau, const char* what) {
  if (lattice_distance(z, tau) < kPoleGuard) {
    throw PoleProximity(std::string(what) + ": evaluation point within pole guard of Z + Z tau");
  }
}

cplx theta_at(int index, cplx z, const EllipticContext& ctx) {
  return theta(index, z, ctx.tau(), ctx.truncation()).value;
}

cplx by_theta_quotient(ParityIndex idx, cplx z, const EllipticContext& ctx) {
  const double im_tau = ctx.tau().imag();
  double sign = 1.0;
  if (kPi * z.imag() * z.imag() / im_tau > kFoldExponent) {
    const long mu = std::lround(z.imag() / im_tau);
    z -= static_cast<double>(mu) * ctx.tau().tau();
    sign = idx.character(mu, 0);
  }
  const cplx t2 = ctx.theta_null(2);
  const cplx t3 = ctx.theta_null(3);
  const cplx t4 = ctx.theta_null(4);
  const cplx th1 = theta_at(1, z, ctx);
  if (idx == kCs) return sign * ctx.two_K() * (t4 / t3) * theta_at(2, z, ctx) / th1;
  if (idx == kDs) return sign * ctx.two_K() * (t2 * t4 / (t3 * t3)) * theta_at(3, z, ctx) / th1;
  return sign * ctx.two_K() * (t2 / t3) * theta_at(4, z, ctx) / th1;
}

// theta_{a,b} in Mumford's characteristic notation.
cplx mumford_theta(int a, int b, cplx z, const EllipticContext& ctx) {
  a &= 1;
  b &= 1;
  if (a == 0 && b == 0) return theta_at(3, z, ctx);
  if (a == 1 && b == 0) return theta_at(2, z, ctx);
  if (a == 0 && b == 1) return theta_at(4, z, ctx);
  return -theta_at(1, z, ctx);
}

cplx by_mumford(ParityIndex idx, cplx z, const EllipticContext& ctx) {
  const int i = idx.i();
  const int j = idx.j();
  return -kPi * mumford_theta(j, 0, 0.0, ctx) * mumford_theta(0, i, 0.0, ctx) *
         mumford_theta(j + 1, i + 1, z, ctx) / mumford_theta(1, 1, z, ctx);
}

cplx by_fourier(ParityIndex idx, cplx z, const EllipticContext& ctx) {
  const cplx tau = ctx.tau().tau();
  const double im_tau = ctx.tau().imag();
  if (std::abs(z.imag()) >= im_tau) {
    throw DomainError("Fourier expansion requires |Im z| < Im tau");
  }
  constexpr int kMaxTerms = 100000;
  const double settle = std::abs(z.imag()) + 1.0;

  if (idx == kCs) {
    cplx sum = kPi * std::cos(kPi * z) / std::sin(kPi * z);
    const cplx numerator = kPi * std::sin(2.0 * kPi * z);
    for (int m = 1; m < kMaxTerms; ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      const cplx term = sign * numerator /
                        (std::sin(kPi * (z + double(m) * tau)) * std::sin(kPi * (z - double(m) * tau)));
      sum += term;
      if (m * im_tau > settle && std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }

  // ds carries (-1)^m, ns does not.
  const bool alternating = idx == kDs;
  cplx sum = kPi / std::sin(kPi * z);
  for (int m = 1; m < kMaxTerms; ++m) {
    const double sign = (alternating && m % 2 == 1) ? -1.0 : 1.0;
    const cplx term = sign * (kPi / std::sin(kPi * (z + double(m) * tau)) +
                              kPi / std::sin(kPi * (z - double(m) * tau)));
    sum += term;
    if (m * im_tau > settle && std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// 1/w without the overhead of the general complex division.
inline cplx reciprocal(double re, double im) {
  const double d = re * re + im * im;
  return {re / d, -im / d};
}

// SUM^e_n (-1)^{j n} / (w + n) over |n| <= inner.
cplx eisenstein_row(cplx w, int j, int inner) {
  double re = 0.0;
  double im = 0.0;
  for (int n = inner; n >= 1; --n) {
    const double sign = (j == 1 && n % 2 == 1) ? -1.0 : 1.0;
    const cplx pair = reciprocal(w.real() + n, w.imag()) + reciprocal(w.real() - n, w.imag());
    re += sign * pair.real();
    im += sign * pair.imag();
  }
  return cplx{re, im} + reciprocal(w.real(), w.imag());
}

cplx by_eisenstein(ParityIndex idx, cplx z, const EllipticContext& ctx,
                   const EisensteinLimits& limits) {
  if (limits.outer < 0 || limits.inner < 0) throw DomainError("Eisenstein limits must be >= 0");
  const cplx tau = ctx.tau().tau();
  cplx sum = eisenstein_row(z, idx.j(), limits.inner);
  for (int m = limits.outer; m >= 1; --m) {
    const double sign = (idx.i() == 1 && m % 2 == 1) ? -1.0 : 1.0;
    sum += sign * (eisenstein_row(z + double(m) * tau, idx.j(), limits.inner) +
                   eisenstein_row(z - double(m) * tau, idx.j(), limits.inner));
  }
  return sum;
}

}  // namespace

std::string ParityIndex::to_string() const {
  return "(" + std::to_string(i_) + "," + std::to_string(j_) + ")";
}

EllipticContext::EllipticContext(TauParameter tau, SeriesTruncation trunc)
    : tau_(tau), trunc_(trunc) {
  trunc_.validate();
  for (int index = 2; index <= 4; ++index) {
    const ThetaValue v = theta(index, 0.0, tau_, trunc_);
    if (!v.converged) {
      throw TruncationNotConverged("theta_" + std::to_string(index) +
                                   "(0) did not reach its tail target");
    }
    theta_null_[static_cast<std::size_t>(index)] = v.value;
  }
  const cplx t2 = theta_null_[2];
  const cplx t3 = theta_null_[3];
  k_ = t2 * t2 / (t3 * t3);
  lambda_ = k_ * k_;
  two_K_ = kPi * t3 * t3;
}

EllipticContext context_from_tau(const TauParameter& tau, const SeriesTruncation& trunc) {
  return EllipticContext(tau, trunc);
}

double lattice_distance(cplx z, cplx tau) {
  const double y = z.imag() / tau.imag();
  const double x = z.real() - y * tau.real();
  const long m0 = std::lround(y);
  const long n0 = std::lround(x);
  double best = std::numeric_limits<double>::infinity();
  for (long m = m0 - 3; m <= m0 + 3; ++m) {
    for (long n = n0 - 3; n <= n0 + 3; ++n) {
      best = std::min(best, std::abs(z - (double(n) + double(m) * tau)));
    }
  }
  return best;
}

double shortest_period(cplx tau) {
  double best = std::numeric_limits<double>::infinity();
  for (int m = -3; m <= 3; ++m) {
    for (int n = -3; n <= 3; ++n) {
      if (m == 0 && n == 0) continue;
      best = std::min(best, std::abs(double(n) + double(m) * tau));
    }
  }
  return best;
}

JacobiTriple jacobi_basic(cplx z, const EllipticContext& ctx) {
  const cplx tau = ctx.tau().tau();
  if (lattice_distance(z - 0.5 * tau, tau) < kPoleGuard) {
    throw PoleProximity("jacobi_basic: z within pole guard of a zero of theta_4");
  }
  const cplx t2 = ctx.theta_null(2);
  const cplx t3 = ctx.theta_null(3);
  const cplx t4 = ctx.theta_null(4);
  const cplx th4 = theta_at(4, z, ctx);
  return {(t3 / t2) * theta_at(1, z, ctx) / th4, (t4 / t2) * theta_at(2, z, ctx) / th4,
          (t4 / t3) * theta_at(3, z, ctx) / th4};
}

cplx f_ij(ParityIndex idx, cplx z, const EllipticContext& ctx, EvalMethod method,
          const EisensteinLimits& limits) {
  require_function_index(idx);
  require_off_lattice(z, ctx.tau().tau(), "f_ij");
  switch (method) {
    case EvalMethod::theta_quotient:
      return by_theta_quotient(idx, z, ctx);
    case EvalMethod::fourier:
      return by_fourier(idx, z, ctx);
    case EvalMethod::eisenstein:
      return by_eisenstein(idx, z, ctx, limits);
    case EvalMethod::mumford:
      return by_mumford(idx, z, ctx);
  }
  throw DomainError("unknown evaluation method");
}

cplx f_ij_derivative(ParityIndex idx, cplx z, const EllipticContext& ctx) {
  require_function_index(idx);
  return -f_ij(ParityIndex(idx.i() + 1, 1), z, ctx) * f_ij(ParityIndex(1, idx.j() + 1), z, ctx);
}

cplx weierstrass_p(cplx z, const EllipticContext& ctx, WpMode mode, int lattice_radius) {
  const cplx tau = ctx.tau().tau();
  require_off_lattice(z, tau, "weierstrass_p");
  if (mode == WpMode::from_f) {
    const cplx f = f_ij(kCs, z, ctx);
    return f * f - 2.0 * laurent_closed_form(kCs, 1, ctx);
  }
  cplx sum = 1.0 / (z * z);
  for (int m = -lattice_radius; m <= lattice_radius; ++m) {
    for (int n = -lattice_radius; n <= lattice_radius; ++n) {
      if (m == 0 && n == 0) continue;
      const cplx w = double(m) * tau + double(n);
      const cplx u = 1.0 / (w + z);
      const cplx v = 1.0 / w;
      sum += u * u - v * v;
    }
  }
  return sum;
}

cplx trig_degeneration(ParityIndex idx, cplx z, double w) {
  require_function_index(idx);
  const double w_round = std::round(w);
  if (std::abs(w - w_round) < 1e-12) {
    if (std::abs(z - std::round(z.real())) < kPoleGuard) {
      throw DomainError("trig_degeneration: z at a pole of cot/csc");
    }
    const double sign = std::fmod(std::abs(w_round), 2.0) == 0.0 ? 1.0 : -1.0;
    const cplx s = std::sin(kPi * z);
    if (idx == kCs) return sign * std::cos(kPi * z) / s;
    if (idx == kDs) return sign / s;
    return 1.0 / s;
  }
  if (idx == kCs) {
    const double floor_sign = std::fmod(std::abs(std::floor(w)), 2.0) == 0.0 ? 1.0 : -1.0;
    return -kI * floor_sign;
  }
  return 0.0;
}

}  // namespace elliptika

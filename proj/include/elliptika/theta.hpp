#pragma once

// Jacobi theta functions in the nome q = e(tau) = exp(2 pi i tau):
//
//   theta_1(z) = 2 SUM_{n>=0} (-1)^n q^{(n+1/2)^2/2} sin((2n+1) pi z)
//   theta_2(z) = 2 SUM_{n>=0}        q^{(n+1/2)^2/2} cos((2n+1) pi z)
//   theta_3(z) = 1 + 2 SUM_{n>=1}        q^{n^2/2} cos(2 n pi z)
//   theta_4(z) = 1 + 2 SUM_{n>=1} (-1)^n q^{n^2/2} cos(2 n pi z)
//
// and the equivalent triple products. Fractional powers of q are always
// formed as e(tau * exponent), never as powers of the complex number q.

#include <complex>

namespace elliptika {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// e(x) = exp(2 pi i x).
cplx exponential_e(cplx x);

/// A point of the upper half plane together with its nome.
class TauParameter {
 public:
  /// Throws DomainError unless Im(tau) > 0.
  explicit TauParameter(cplx tau);

  cplx tau() const { return tau_; }
  cplx nome() const { return q_; }
  double imag() const { return tau_.imag(); }

  /// |Re tau| <= 1 and |tau +- 1/2| >= 1/2 (fundamental domain of Gamma(2)).
  bool in_fundamental_domain() const { return in_fundamental_domain_; }

 private:
  cplx tau_;
  cplx q_;
  bool in_fundamental_domain_;
};

struct SeriesTruncation {
  double epsilon = 1e-18;
  int max_terms = 512;

  /// Throws DomainError when epsilon <= 0 or max_terms < 4.
  void validate() const;
};

/// Value of a truncated series or product with its tail estimate.
struct ThetaValue {
  cplx value;
  double error_estimate = 0.0;
  int terms = 0;
  /// False when max_terms was reached before the tail target; the value is
  /// still the best available partial sum.
  bool converged = true;
};

/// theta_index(z, tau) from the sine/cosine q-series. index in {1,2,3,4}.
ThetaValue theta(int index, cplx z, const TauParameter& tau,
                 const SeriesTruncation& trunc = {});

/// theta_index(z, tau) from the infinite product.
ThetaValue theta_product(int index, cplx z, const TauParameter& tau,
                         const SeriesTruncation& trunc = {});

}  // namespace elliptika

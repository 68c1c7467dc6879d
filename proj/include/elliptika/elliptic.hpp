#pragma once

// Jacobi elliptic functions in the normalisation where the elliptic argument
// is 2Kz: every function here takes z and evaluates at u = 2K(tau) z.
//
// The unified family
//   f_{1,0}(z) = 2K cs(2Kz, k),  f_{1,1}(z) = 2K ds(2Kz, k),  f_{0,1}(z) = 2K ns(2Kz, k)
// has simple poles exactly on the lattice Z + Z tau with residue 1 at 0 and
// f_{i,j}(z + mu tau + nu) = (-1)^{i mu + j nu} f_{i,j}(z).

#include <array>
#include <string>

#include "elliptika/theta.hpp"

namespace elliptika {

/// Absolute distance inside which evaluation at a pole is refused.
inline constexpr double kPoleGuard = 1e-6;

/// Index (i, j) of the family f_{i,j}, read modulo 2.
class ParityIndex {
 public:
  constexpr ParityIndex(int i, int j) : i_(mod2(i)), j_(mod2(j)) {}

  constexpr int i() const { return i_; }
  constexpr int j() const { return j_; }

  /// (0,0) is not a function index.
  constexpr bool is_function_index() const { return i_ != 0 || j_ != 0; }

  /// (-1)^{i mu + j nu}.
  constexpr double character(long mu, long nu) const {
    return mod2(i_ * mu + j_ * nu) == 0 ? 1.0 : -1.0;
  }

  friend constexpr ParityIndex operator+(ParityIndex a, ParityIndex b) {
    return {a.i_ + b.i_, a.j_ + b.j_};
  }
  friend constexpr bool operator==(ParityIndex a, ParityIndex b) = default;

  std::string to_string() const;

 private:
  static constexpr int mod2(long v) { return static_cast<int>(((v % 2) + 2) % 2); }
  int i_;
  int j_;
};

inline constexpr ParityIndex kCs{1, 0};
inline constexpr ParityIndex kDs{1, 1};
inline constexpr ParityIndex kNs{0, 1};

enum class EvalMethod { theta_quotient, fourier, eisenstein, mumford };

/// Truncation of the symmetric double partial-fraction sum.
struct EisensteinLimits {
  int outer = 2000;  // |m| <= outer
  int inner = 2000;  // |n| <= inner
};

/// k, lambda and 2K for a fixed tau, plus the theta constants they come from.
class EllipticContext {
 public:
  EllipticContext(TauParameter tau, SeriesTruncation trunc);

  const TauParameter& tau() const { return tau_; }
  const SeriesTruncation& truncation() const { return trunc_; }
  cplx k() const { return k_; }
  cplx lambda() const { return lambda_; }
  cplx two_K() const { return two_K_; }
  /// theta_index(0, tau) for index 2, 3, 4.
  cplx theta_null(int index) const { return theta_null_.at(static_cast<std::size_t>(index)); }

 private:
  TauParameter tau_;
  SeriesTruncation trunc_;
  std::array<cplx, 5> theta_null_{};
  cplx k_;
  cplx lambda_;
  cplx two_K_;
};

/// Throws TruncationNotConverged if a theta constant fails to converge.
EllipticContext context_from_tau(const TauParameter& tau, const SeriesTruncation& trunc = {});

struct JacobiTriple {
  cplx sn;
  cplx cn;
  cplx dn;
};

/// sn, cn, dn at 2Kz. Throws PoleProximity near the zeros of theta_4.
JacobiTriple jacobi_basic(cplx z, const EllipticContext& ctx);

/// Distance from z to the nearest point of Z + Z tau.
double lattice_distance(cplx z, cplx tau);

/// Distance from the origin to the nearest non-zero lattice point.
double shortest_period(cplx tau);

/// f_{i,j}(z, tau). Throws PoleProximity within kPoleGuard of the lattice and
/// DomainError for the Fourier method when |Im z| >= Im tau.
cplx f_ij(ParityIndex idx, cplx z, const EllipticContext& ctx,
          EvalMethod method = EvalMethod::theta_quotient, const EisensteinLimits& limits = {});

/// f'_{i,j}(z) = -f_{i+1,1}(z) f_{1,j+1}(z).
cplx f_ij_derivative(ParityIndex idx, cplx z, const EllipticContext& ctx);

enum class WpMode { from_f, lattice };

/// Weierstrass p for the lattice Z + Z tau. The lattice mode truncates the
/// sum to |m|, |n| <= lattice_radius and is only meant as a loose cross-check.
cplx weierstrass_p(cplx z, const EllipticContext& ctx, WpMode mode = WpMode::from_f,
                   int lattice_radius = 600);

/// Limit of cs, ds or ns(2K(z + w tau), k) as tau -> i infinity.
cplx trig_degeneration(ParityIndex idx, cplx z, double w);

}  // namespace elliptika

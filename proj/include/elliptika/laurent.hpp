#pragma once

// Laurent data of f_{i,j} at z = 0,
//
//   f_{i,j}(z) = (1/z) SUM_{s>=0} C_{i,j}(s) z^{2s},   C_{i,j}(0) = 1,
//
// and derivatives of f_{i,j} at regular points, both by the trapezoid rule on
// a circle (spectrally accurate for analytic integrands).

#include "elliptika/elliptic.hpp"

namespace elliptika {

struct ContourConfig {
  /// Radius as a fraction of the distance to the nearest pole, in (0, 1).
  double radius_fraction = 0.5;
  /// Trapezoid nodes on the circle.
  int n_samples = 256;
};

enum class LaurentMode { closed_form, contour };

/// C_{i,j}(s) as a polynomial in lambda times (2K)^{2s}; s <= 2 only.
cplx laurent_closed_form(ParityIndex idx, int s, const EllipticContext& ctx);

/// Coefficient of z^power in the Laurent expansion of f_{i,j} at 0, by
/// contour extraction. power >= -1.
cplx laurent_coefficient(ParityIndex idx, int power, const EllipticContext& ctx,
                         const ContourConfig& cfg = {});

/// C_{i,j}(s). Throws UnsupportedOrder for closed_form with s > 2.
cplx laurent_C(ParityIndex idx, int s, const EllipticContext& ctx,
               LaurentMode mode = LaurentMode::closed_form, const ContourConfig& cfg = {});

/// Closed form where available (s <= 2), contour extraction otherwise.
cplx laurent_C_best(ParityIndex idx, int s, const EllipticContext& ctx,
                    const ContourConfig& cfg = {});

/// n-th derivative of f_{i,j} at z0 by the Cauchy integral formula.
/// Throws PoleProximity near a pole and RadiusTooLarge when the configured
/// radius would not stay strictly inside the pole-free disc.
cplx f_nth_derivative(ParityIndex idx, int n, cplx z0, const EllipticContext& ctx,
                      const ContourConfig& cfg = {});

}  // namespace elliptika

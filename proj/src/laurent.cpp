#include "elliptika/laurent.hpp"

#include <cmath>
#include <string>

#include "elliptika/errors.hpp"

namespace elliptika {

namespace {

void validate(const ContourConfig& cfg) {
  if (!(cfg.radius_fraction > 0.0) || !(cfg.radius_fraction < 1.0)) {
    throw RadiusTooLarge("contour radius_fraction must lie in (0, 1)");
  }
  if (cfg.n_samples < 8) throw DomainError("contour needs at least 8 samples");
}

// (1 / 2 pi i) \oint g(z) dz over |z - center| = r, with g already divided by
// the (z - center)^k weight; the trapezoid rule reduces to a plain mean of
// g(z_k) (z_k - center).
template <typename Integrand>
cplx circle_mean(cplx center, double radius, int nodes, Integrand&& integrand) {
  cplx sum = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double angle = 2.0 * kPi * k / nodes;
    const cplx offset = std::polar(radius, angle);
    sum += integrand(center + offset, offset) * offset;
  }
  return sum / static_cast<double>(nodes);
}

}  // namespace

cplx laurent_closed_form(ParityIndex idx, int s, const EllipticContext& ctx) {
  if (s < 0) throw DomainError("Laurent order must be non-negative");
  if (!idx.is_function_index()) throw DomainError("(0,0) is not a valid function index");
  if (s > 2) throw UnsupportedOrder("closed-form Laurent coefficients exist only for s <= 2");
  if (s == 0) return 1.0;
  const cplx lam = ctx.lambda();
  const cplx scale = std::pow(ctx.two_K(), 2 * s);
  if (s == 1) {
    if (idx == kCs) return (-1.0 / 3.0 + lam / 6.0) * scale;
    if (idx == kDs) return (1.0 / 6.0 - lam / 3.0) * scale;
    return (1.0 / 6.0 + lam / 6.0) * scale;
  }
  if (idx == kCs) return (-1.0 / 45.0 + lam / 45.0 + 7.0 / 360.0 * lam * lam) * scale;
  if (idx == kDs) return (7.0 / 360.0 + lam / 45.0 - lam * lam / 45.0) * scale;
  return (7.0 / 360.0 - 11.0 / 180.0 * lam + 7.0 / 360.0 * lam * lam) * scale;
}

cplx laurent_coefficient(ParityIndex idx, int power, const EllipticContext& ctx,
                         const ContourConfig& cfg) {
  validate(cfg);
  if (power < -1) throw DomainError("f_{i,j} has a simple pole at 0");
  const double radius = cfg.radius_fraction * shortest_period(ctx.tau().tau());
  return circle_mean(0.0, radius, cfg.n_samples, [&](cplx z, cplx offset) {
    return f_ij(idx, z, ctx) * std::pow(offset, -(power + 1));
  });
}

cplx laurent_C(ParityIndex idx, int s, const EllipticContext& ctx, LaurentMode mode,
               const ContourConfig& cfg) {
  if (s < 0) throw DomainError("Laurent order must be non-negative");
  if (mode == LaurentMode::closed_form) return laurent_closed_form(idx, s, ctx);
  return laurent_coefficient(idx, 2 * s - 1, ctx, cfg);
}

cplx laurent_C_best(ParityIndex idx, int s, const EllipticContext& ctx, const ContourConfig& cfg) {
  return s <= 2 ? laurent_C(idx, s, ctx, LaurentMode::closed_form)
                : laurent_C(idx, s, ctx, LaurentMode::contour, cfg);
}

cplx f_nth_derivative(ParityIndex idx, int n, cplx z0, const EllipticContext& ctx,
                      const ContourConfig& cfg) {
  if (n < 0) throw DomainError("derivative order must be non-negative");
  const double pole_distance = lattice_distance(z0, ctx.tau().tau());
  if (pole_distance < kPoleGuard) {
    throw PoleProximity("f_nth_derivative: z0 within pole guard of Z + Z tau");
  }
  validate(cfg);
  const double radius = cfg.radius_fraction * pole_distance;
  const cplx mean = circle_mean(z0, radius, cfg.n_samples, [&](cplx z, cplx offset) {
    return f_ij(idx, z, ctx) * std::pow(offset, -(n + 1));
  });
  return std::tgamma(n + 1.0) * mean;
}

}  // namespace elliptika

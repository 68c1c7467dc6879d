#include "elliptika/theta.hpp"

#include <cmath>
#include <string>

#include "elliptika/errors.hpp"

namespace elliptika {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_index(int index) {
  if (index < 1 || index > 4) {
    throw DomainError("theta index must be in {1,2,3,4}, got " + std::to_string(index));
  }
}

// Upper bound of |q^{k^2/2} e(+-k z)| summed over both signs.
double series_term_bound(double k, double im_tau, double abs_im_z) {
  return 2.0 * std::exp(-kPi * im_tau * k * k + 2.0 * kPi * abs_im_z * k);
}

}  // namespace

cplx exponential_e(cplx x) { return std::exp(2.0 * kPi * kI * x); }

TauParameter::TauParameter(cplx tau) : tau_(tau) {
  if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag())) {
    throw DomainError("tau must lie in the upper half plane");
  }
  q_ = exponential_e(tau);
  in_fundamental_domain_ = std::abs(tau.real()) <= 1.0 && std::abs(tau + 0.5) >= 0.5 &&
                           std::abs(tau - 0.5) >= 0.5;
}

void SeriesTruncation::validate() const {
  if (!(epsilon > 0.0)) throw DomainError("truncation epsilon must be positive");
  if (max_terms < 4) throw DomainError("truncation max_terms must be at least 4");
}

ThetaValue theta(int index, cplx z, const TauParameter& tau, const SeriesTruncation& trunc) {
  check_index(index);
  trunc.validate();

  const double im_tau = tau.imag();
  const double abs_im_z = std::abs(z.imag());
  // Terms grow until k ~ |Im z| / Im tau and decay afterwards.
  const double peak = abs_im_z / im_tau;
  const bool half_integer = index <= 2;

  ThetaValue out;
  cplx sum = half_integer ? cplx{0.0} : cplx{1.0};
  int n = half_integer ? 0 : 1;
  for (int count = 0; count < trunc.max_terms; ++count, ++n) {
    const double k = half_integer ? n + 0.5 : static_cast<double>(n);
    const cplx phase = tau.tau() * (0.5 * k * k);
    const cplx plus = exponential_e(phase + k * z);
    const cplx minus = exponential_e(phase - k * z);
    const double sign = (index == 1 || index == 4) && (n % 2 == 1) ? -1.0 : 1.0;
    if (index == 1) {
      sum += -kI * sign * (plus - minus);
    } else {
      sum += sign * (plus + minus);
    }
    out.terms = count + 1;

    const double k_next = k + 1.0;
    const double next_bound = series_term_bound(k_next, im_tau, abs_im_z);
    out.error_estimate = 2.0 * next_bound;
    if (k_next > peak && next_bound < trunc.epsilon) {
      out.value = sum;
      out.converged = true;
      return out;
    }
  }
  out.value = sum;
  out.converged = false;
  return out;
}

ThetaValue theta_product(int index, cplx z, const TauParameter& tau,
                         const SeriesTruncation& trunc) {
  check_index(index);
  trunc.validate();

  const cplx t = tau.tau();
  const double im_tau = tau.imag();
  const double abs_im_z = std::abs(z.imag());

  cplx prefactor;
  double offset = 0.0;  // q^{n - offset} in the z-dependent factors
  double sign = 1.0;    // (1 + sign * q^{n-offset} e(+-z))
  switch (index) {
    case 1:
      prefactor = 2.0 * exponential_e(t / 8.0) * std::sin(kPi * z);
      sign = -1.0;
      break;
    case 2:
      prefactor = 2.0 * exponential_e(t / 8.0) * std::cos(kPi * z);
      break;
    case 3:
      prefactor = 1.0;
      offset = 0.5;
      break;
    default:
      prefactor = 1.0;
      offset = 0.5;
      sign = -1.0;
      break;
  }

  ThetaValue out;
  cplx prod = prefactor;
  for (int n = 1; n <= trunc.max_terms; ++n) {
    const double power = n - offset;
    prod *= (1.0 - exponential_e(double(n) * t)) * (1.0 + sign * exponential_e(power * t + z)) *
            (1.0 + sign * exponential_e(power * t - z));
    out.terms = n;

    const double next_power = n + 1 - offset;
    const double next_size = std::exp(-2.0 * kPi * (next_power * im_tau - abs_im_z));
    out.error_estimate = 4.0 * std::abs(prod) * next_size;
    if (next_power * im_tau > abs_im_z && next_size < trunc.epsilon) {
      out.value = prod;
      out.converged = true;
      return out;
    }
  }
  out.value = prod;
  out.converged = false;
  return out;
}

}  // namespace elliptika

#pragma once

#include <doctest.h>

#include <complex>
#include <sstream>
#include <string>

#include "elliptika/theta.hpp"

namespace testing_support {

inline std::string show(elliptika::cplx v) {
  std::ostringstream os;
  os.precision(17);
  os << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i";
  return os.str();
}

}  // namespace testing_support

// |a - b| < tol with both values in the failure message.
#define CHECK_CLOSE(a, b, tol)                                                          \
  do {                                                                                  \
    const elliptika::cplx check_close_a_ = (a);                                         \
    const elliptika::cplx check_close_b_ = (b);                                         \
    INFO(#a " = " << testing_support::show(check_close_a_));                            \
    INFO(#b " = " << testing_support::show(check_close_b_));                            \
    CHECK(std::abs(check_close_a_ - check_close_b_) < (tol));                           \
  } while (0)

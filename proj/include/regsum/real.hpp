#pragma once

// Working precision for the numerical summation oracles. Abel sums of
// alternating polynomials of degree 6 lose over 100 bits to cancellation
// near x = 1, so double is not an option here.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "regsum/exactnum.hpp"

namespace regsum {

/// 60 decimal digits (about 200 bits), stack allocated.
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<60, boost::multiprecision::allocate_stack>,
    boost::multiprecision::et_off>;

inline Real to_real(const Rational& r) { return Real(r); }

inline double to_double(const Real& r) { return static_cast<double>(r); }

inline Real pi_real() { return boost::math::constants::pi<Real>(); }

} // namespace regsum

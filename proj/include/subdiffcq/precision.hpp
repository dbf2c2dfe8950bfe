#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <stdexcept>

namespace subdiffcq {

// Extended-precision real, variable precision MPFR backend.
using Real = boost::multiprecision::mpfr_float;

namespace prec {

// Working precision is process-wide; MPFR default precision is per-thread,
// so every OpenMP region must re-apply it via apply_thread_precision().
void set_working_bits(unsigned bits);
unsigned working_bits();

// Decimal digits corresponding to the working precision.
unsigned working_digits();

// Call at the top of each thread that creates Real temporaries.
void apply_thread_precision();

// 10^-(working_digits - slack), the usual comparison tolerance.
Real tolerance(unsigned slack = 10);

// Copy of x carrying the current working precision. Variable-precision
// arithmetic propagates operand precision, so a parameter constructed before
// set_working_bits() would silently narrow every expression it touches.
Real at_working(const Real& x);

} // namespace prec

} // namespace subdiffcq

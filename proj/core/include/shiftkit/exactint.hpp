#pragma once

#include <gmpxx.h>

namespace shiftkit {

// Exact integer and rational arithmetic for counts and atomic measures.
using BigInt = mpz_class;
using Rational = mpq_class;

}  // namespace shiftkit

#pragma once

#include "sbp/rational.hpp"

namespace sbp::testing {

// mpq_class(p, q) keeps the raw parts; arithmetic needs canonical operands.
inline Rational frac(long p, long q) {
  Rational v(p, q);
  v.canonicalize();
  return v;
}

}  // namespace sbp::testing

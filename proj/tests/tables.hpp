#pragma once

// Reference rows: smallest closure for t = s, and the largest
// boundary order at r = 2s. eta is printed to 4 significant digits.

#include <array>

namespace sbp::tables {

struct MinClosureRow {
  int s, t, r, dof_p, dof_d;
  double eta;
};

inline constexpr std::array<MinClosureRow, 8> min_closure{{
    {1, 1, 1, 0, 0, 5.000e-01},
    {2, 2, 4, 0, 0, 3.541e-01},
    {3, 3, 6, 0, 1, 3.159e-01},
    {4, 4, 8, 0, 3, 2.575e-01},
    {5, 5, 11, 1, 10, 2.077e-01},
    {6, 6, 14, 2, 21, 9.683e-03},
    {7, 7, 19, 5, 55, 1.907e-01},
    {8, 8, 23, 7, 91, 4.652e-02},
}};

struct MaxOrderRow {
  int s, t, r, dof_p;
  double eta;
};

inline constexpr std::array<MaxOrderRow, 8> max_order{{
    {1, 1, 2, 0, 5.000e-01},
    {2, 2, 4, 0, 3.542e-01},
    {3, 3, 6, 0, 3.159e-01},
    {4, 4, 8, 0, 2.575e-01},
    {5, 4, 10, 2, 3.367e-01},
    {6, 5, 12, 2, 2.997e-01},
    {7, 6, 14, 2, 9.682e-03},
    {8, 6, 16, 4, 2.992e-01},
}};

// |value - printed| within one unit of the 4th significant digit of printed.
inline bool matches_4_digits(double value, double printed) {
  double unit = 1e-3;
  for (double p = printed; p < 1.0; p *= 10) unit /= 10;
  return value - printed <= unit * (1 + 1e-9) && printed - value <= unit * (1 + 1e-9);
}

}  // namespace sbp::tables

#pragma once

// Published reference rows for small k: the best periodic device tuple
// found, its c and q, and the size of the blocking witness set reported
// for c - 1e-5 (0 where none was reported).

#include <cstddef>
#include <vector>

#include "pebble/scalar.hpp"

namespace pebble::lp {

struct Table1Row {
  std::size_t k;
  Real c;
  Real q;
  Real half_power;  // (1 - c/k)^{-k/2}
  std::vector<std::size_t> D;
  bool geometric;
  std::size_t blocking_size;
};

inline const std::vector<Table1Row>& table1() {
  static const std::vector<Table1Row> rows = {
      {2, 1.0L, 2.0L, 2.0L, {1}, true, 0},
      {3, 1.145898L, 1.618093L, 2.058171L, {1}, true, 1},
      {4, 1.231914L, 1.342363L, 2.088146L, {1, 3}, false, 3},
      {5, 1.225612L, 1.324718L, 2.019801L, {1, 3}, true, 5},
      {6, 1.296634L, 1.239553L, 2.076001L, {1, 2, 3, 1, 3, 5}, false, 601},
      {7, 1.310296L, 1.208296L, 2.06552L, {1, 3, 4, 1, 5, 3}, false, 3005},
      {8, 1.320138L, 1.159761L, 2.057263L, {1, 2, 4, 7, 5, 3, 1, 7, 5, 3, 7, 1, 4, 2, 4, 5}, false, 51691},
      {9, 1.325768L, 1.15984L, 2.048492L, {1, 5, 3, 5, 1, 5, 6, 3}, false, 911662},
      {10, 1.334405L, 1.132085L, 2.046483L, {1, 5, 3, 5, 1, 5, 6, 3, 1, 5, 9, 3, 5, 9}, false, 0},
      {11, 1.342994L, 1.123932L, 2.046568L, {1, 3, 5, 6, 1, 6, 2, 10, 6, 3, 6, 1, 6, 2, 6, 3, 9, 6}, false, 0},
      {12, 1.354008L, 1.121687L, 2.051024L, {1, 2, 3, 5, 6, 7, 1, 2, 6, 3, 6, 7, 1, 2, 6, 3, 6, 9, 7}, false, 0},
      {13, 1.355001L, 1.114038L, 2.045151L, {1, 3, 6, 7, 4, 7, 1, 7, 8, 3}, false, 0},
      {14, 1.360472L, 1.097269L, 2.045409L,
       {1, 4, 2, 6, 7, 4, 7, 8, 1, 8, 2, 3, 7, 12, 4, 7, 8, 1, 4, 7, 2, 7, 8, 4, 13, 8, 1, 8, 4, 2, 7, 4, 7, 8, 1, 8, 4,
        2, 7, 12, 4, 7, 13, 8},
       false, 0},
  };
  return rows;
}

}  // namespace pebble::lp

#pragma once

// Data-parallel inner loops, each with a serial reference implementation kept
// for testing. The OpenMP variants write disjoint output slots only, so the
// results are deterministic and bit-identical to the serial ones.

#include <functional>
#include <vector>

#include "modhecke/oracle.hpp"

namespace modhecke {

ExactMatrix matmul_serial(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix matmul_parallel(const ExactMatrix& a, const ExactMatrix& b);

/// Row-major |X|^2 table of classify(x_i & x_j). This is the hot loop when
/// building operator bases from pairwise intersections.
std::vector<int> meet_table_serial(const std::vector<Bitset>& xs,
                                   const std::function<int(const Bitset&)>& classify);
std::vector<int> meet_table_parallel(const std::vector<Bitset>& xs,
                                     const std::function<int(const Bitset&)>& classify);

/// Rectangular variant over two families.
std::vector<int> meet_table_serial(const std::vector<Bitset>& xs, const std::vector<Bitset>& ys,
                                   const std::function<int(const Bitset&, const Bitset&)>& classify);
std::vector<int> meet_table_parallel(const std::vector<Bitset>& xs, const std::vector<Bitset>& ys,
                                     const std::function<int(const Bitset&, const Bitset&)>& classify);

}  // namespace modhecke

#pragma once

// Shared test inputs. The 4x2x2x3 hypermatrices are built from their sparse
// entry lists here; the data/ copies are checked against these in io tests.

#include <filesystem>
#include <utility>
#include <vector>

#include "kpdkit/io.hpp"
#include "kpdkit/matrix.hpp"
#include "kpdkit/tensor_core.hpp"

namespace kpdkit::testing {

inline std::filesystem::path data_path(const char* name) {
  return std::filesystem::path(KPDKIT_DATA_DIR) / name;
}

using Entry = std::pair<std::vector<std::size_t>, double>;

inline Hypermatrix sparse_hypermatrix(const Shape& shape, const std::vector<Entry>& entries) {
  auto h = Hypermatrix::zeros(shape);
  for (const auto& [idx, val] : entries) h.set(MultiIndex{idx}, val);
  return h;
}

/// Rank one: 4 * (0,0,1,-1) ⊗ (1,2) ⊗ (0,1) ⊗ (0,1,0.5).
inline Hypermatrix exact_4x2x2x3() {
  return sparse_hypermatrix({4, 2, 2, 3}, {{{3, 1, 2, 2}, 4},
                                           {{3, 1, 2, 3}, 2},
                                           {{3, 2, 2, 2}, 8},
                                           {{3, 2, 2, 3}, 4},
                                           {{4, 1, 2, 2}, -4},
                                           {{4, 1, 2, 3}, -2},
                                           {{4, 2, 2, 2}, -8},
                                           {{4, 2, 2, 3}, -4}});
}

/// Same support, not decomposable; NKP error 4.3218.
inline Hypermatrix inexact_4x2x2x3() {
  return sparse_hypermatrix({4, 2, 2, 3}, {{{3, 1, 2, 2}, -2},
                                           {{3, 1, 2, 3}, 3.5},
                                           {{3, 2, 2, 2}, -5.2},
                                           {{3, 2, 2, 3}, 7.3},
                                           {{4, 1, 2, 2}, 0.5},
                                           {{4, 1, 2, 3}, 2},
                                           {{4, 2, 2, 2}, 6.5},
                                           {{4, 2, 2, 3}, -5}});
}

/// Several stationary values: 7.7168 (global), 11.7043, 11.7130.
inline Hypermatrix multimodal_4x2x2x3() {
  return sparse_hypermatrix({4, 2, 2, 3}, {{{3, 1, 2, 2}, 2},
                                           {{3, 2, 1, 1}, 3.5},
                                           {{4, 1, 1, 3}, -5.2},
                                           {{4, 1, 2, 1}, 7.3},
                                           {{4, 2, 1, 2}, 0.5},
                                           {{4, 2, 1, 3}, 2},
                                           {{4, 2, 2, 1}, 6.5},
                                           {{4, 2, 2, 2}, -5}});
}

inline Matrix collar() { return read_matrix(data_path("collar16.hm")); }

/// Exact two-term factors of the Collar matrix: A = B1⊗C1 - 1024 B2⊗C2.
/// B2 is stored in 64ths; its 4-decimal roundings are 2.0156, 1.9531, ...
struct CollarFactors {
  Matrix b1, c1, b2, c2;
};

inline CollarFactors collar_factors() {
  Matrix b2_64ths{{0, 64, 129, 65}, {4, 68, 125, 61}, {8, 72, 121, 57}, {12, 76, 117, 53}};
  return {Matrix{{1, 65, 128, 64}, {5, 69, 124, 60}, {9, 73, 120, 56}, {13, 77, 116, 52}},
          Matrix{{1, 17, 33, 49}, {2, 18, 34, 50}, {3, 19, 35, 51}, {4, 20, 36, 52}},
          (1.0 / 64.0) * b2_64ths,
          Matrix{{0, 1, 2, 3},
                 {0.0625, 1.0625, 2.0625, 3.0625},
                 {0.125, 1.125, 2.125, 3.125},
                 {0.1875, 1.1875, 2.1875, 3.1875}}};
}

/// B2 as printed to four decimals.
inline Matrix collar_b2_printed() {
  return Matrix{{0, 1, 2.0156, 1.0156},
                {0.0625, 1.0625, 1.9531, 0.9531},
                {0.1250, 1.1250, 1.8906, 0.8906},
                {0.1875, 1.1875, 1.8281, 0.8281}};
}

}  // namespace kpdkit::testing

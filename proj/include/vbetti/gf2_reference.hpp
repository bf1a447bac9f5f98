#ifndef VBETTI_GF2_REFERENCE_HPP
#define VBETTI_GF2_REFERENCE_HPP

// Unpacked, single-threaded Gaussian elimination. Kept as the reference the
// packed OpenMP kernel in gf2.hpp is tested and benchmarked against.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "vbetti/gf2.hpp"

namespace vbetti::gf2::reference {

using DenseRows = std::vector<std::vector<std::uint8_t>>;

inline DenseRows unpack(const Matrix& m) {
    DenseRows out(m.rows(), std::vector<std::uint8_t>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.get(r, c) ? 1 : 0;
    return out;
}

inline std::size_t rank(DenseRows a) {
    std::size_t pivot_row = 0;
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    for (std::size_t c = 0; c < cols && pivot_row < a.size(); ++c) {
        std::size_t found = pivot_row;
        while (found < a.size() && a[found][c] == 0) ++found;
        if (found == a.size()) continue;
        std::swap(a[found], a[pivot_row]);
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r != pivot_row && a[r][c] != 0) {
                for (std::size_t k = c; k < cols; ++k) a[r][k] ^= a[pivot_row][k];
            }
        }
        ++pivot_row;
    }
    return pivot_row;
}

inline std::size_t rank(const Matrix& m) { return rank(unpack(m)); }

} // namespace vbetti::gf2::reference

#endif

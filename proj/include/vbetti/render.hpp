#ifndef VBETTI_RENDER_HPP
#define VBETTI_RENDER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vbetti/complex.hpp"
#include "vbetti/mvss.hpp"
#include "vbetti/polynomial.hpp"
#include "vbetti/weights.hpp"

namespace vbetti::render {

/// Rows q from top to bottom, columns p left to right. Cells whose cochain
/// group is zero are left blank when block_dims is given.
std::string page_table(const SpectralPage& page, const std::vector<std::vector<std::size_t>>* block_dims = nullptr);

/// Triangle with w(n,n) on top and w00 w10 ... w(n,0) on the bottom row.
std::string weight_triangle(const WeightArray& w);

/// "b: 1 1 8".
std::string betti_line(const BettiVector& b);
/// "beta_0: 4" style lines, one per degree up to the degree of beta.
std::string virtual_betti_table(const IntPolynomial& beta);

std::string join(const std::vector<std::int64_t>& values, const std::string& sep = " ");

} // namespace vbetti::render

#endif

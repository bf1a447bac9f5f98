#ifndef VBETTI_MVSS_HPP
#define VBETTI_MVSS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "vbetti/complex.hpp"
#include "vbetti/exec.hpp"
#include "vbetti/gf2.hpp"
#include "vbetti/weights.hpp"

namespace vbetti {

/// A complex covered by closed subcomplexes X_0..X_{m-1}.
struct Arrangement {
    ComplexPtr total;
    std::vector<std::string> names;
    std::vector<Subcomplex> pieces;

    std::size_t size() const noexcept { return pieces.size(); }
    /// Throws NotACover unless every simplex of total lies in some piece, and
    /// InvalidInput when pieces live in another complex or names mismatch.
    void validate() const;
};

/// Double complex C^{p,q} = direct sum over (p+1)-fold intersections of their
/// q-cochains, and its total complex. Tot^n lists the blocks by increasing p,
/// so F^p Tot^n (all blocks with index >= p) is a coordinate suffix.
class DoubleComplex {
public:
    explicit DoubleComplex(const Arrangement& a);

    std::size_t columns() const noexcept { return subsets_.size(); }
    /// Largest q with a nonzero cochain group, or -1 if everything is empty.
    int max_q() const noexcept { return max_q_; }
    std::size_t max_total_degree() const noexcept;

    /// Index subsets of size p+1, in lexicographic order.
    const std::vector<std::vector<std::size_t>>& subsets(std::size_t p) const { return subsets_.at(p); }
    const Subcomplex& intersection(std::size_t p, std::size_t k) const { return intersections_.at(p).at(k); }

    std::size_t block_dim(std::size_t p, std::size_t q) const;
    std::size_t total_dim(std::size_t n) const;
    /// First coordinate of F^p Tot^n; equals total_dim(n) when p is past the last column.
    std::size_t filtration_offset(std::size_t n, std::size_t p) const;

    /// Restriction to deeper intersections, C^{p,q} -> C^{p+1,q}.
    const gf2::Matrix& horizontal(std::size_t p, std::size_t q) const;
    /// Simplicial coboundary inside each intersection, C^{p,q} -> C^{p,q+1}.
    const gf2::Matrix& vertical(std::size_t p, std::size_t q) const;
    /// Total differential Tot^n -> Tot^{n+1}.
    const gf2::Matrix& differential(std::size_t n) const { return total_.at(n); }

private:
    std::vector<std::vector<std::vector<std::size_t>>> subsets_;
    std::vector<std::vector<Subcomplex>> intersections_;
    std::vector<std::vector<std::size_t>> dims_;
    std::vector<std::vector<gf2::Matrix>> horizontal_;
    std::vector<std::vector<gf2::Matrix>> vertical_;
    std::vector<gf2::Matrix> total_;
    int max_q_ = -1;
    gf2::Matrix empty_;
};

/// dims[p][q] of one page; p < columns, q <= max_q.
struct SpectralPage {
    std::size_t r = 0;
    std::vector<std::vector<std::size_t>> dims;

    std::size_t at(std::ptrdiff_t p, std::ptrdiff_t q) const noexcept;
    std::size_t columns() const noexcept { return dims.size(); }
    std::size_t rows() const noexcept { return dims.empty() ? 0 : dims.front().size(); }
    friend bool operator==(const SpectralPage& a, const SpectralPage& b) { return a.dims == b.dims; }
};

/// Rank of d_r : E_r^{p,q} -> E_r^{p+r, q-r+1}.
struct DifferentialRank {
    std::size_t r = 0;
    std::size_t p = 0;
    std::size_t q = 0;
    std::size_t rank = 0;
};

struct SpectralSequence {
    std::size_t columns = 0;
    /// dim C^{p,q}; cells where it is zero can never carry anything.
    std::vector<std::vector<std::size_t>> block_dims;
    /// pages[k] is E_{k+1}; always computed through E_{columns+1}.
    std::vector<SpectralPage> pages;
    /// Every d_r whose source and target cells both exist.
    std::vector<DifferentialRank> differentials;
    SpectralPage e_infinity;
    /// Smallest r with d_s = 0 for every s >= r, so E_r = E_infinity.
    std::size_t stabilization_page = 1;
    /// d_s out of every cell for stabilization_page <= s < pages.size(), including
    /// maps whose target lies outside the grid. All ranks are zero.
    std::vector<DifferentialRank> certificate;

    const SpectralPage& page(std::size_t r) const { return pages.at(r - 1); }
    std::size_t rank(std::size_t r, std::size_t p, std::size_t q) const;
};

/// Pages from the filtration of the total complex by p:
///   Z_r^p = F^p cap D^{-1}(F^{p+r}),  E_r^p = Z_r^p / (Z_{r-1}^{p+1} + F^p cap D(F^{p-r+1})).
/// Computes E_1 .. E_max(up_to, m+1).
SpectralSequence spectral_sequence(const Arrangement& a, std::size_t up_to = 1, Exec exec = Exec::parallel);
SpectralSequence spectral_sequence(const DoubleComplex& dc, std::size_t up_to = 1, Exec exec = Exec::parallel);
/// E_1 .. E_up_to.
std::vector<SpectralPage> compute_pages(const Arrangement& a, std::size_t up_to, Exec exec = Exec::parallel);

/// Sum of E_infinity along antidiagonals, checked against direct homology of
/// the total complex. Throws ConvergenceMismatch.
BettiVector converged_betti(const Arrangement& a, Exec exec = Exec::parallel);
BettiVector converged_betti(const SpectralSequence& ss, const SimplicialComplex& total);

/// w(i,j) = dim E_infinity^{i-j, j}.
FiltrationProfile mv_filtration(const SpectralSequence& ss);
FiltrationProfile mv_filtration(const Arrangement& a, Exec exec = Exec::parallel);

/// sum_p (-1)^p dims(p,q), indexed by q.
std::vector<std::int64_t> row_alternating_sums(const SpectralPage& page);
/// sum_{p,q} (-1)^{p+q} dims(p,q).
std::int64_t page_euler(const SpectralPage& page);

} // namespace vbetti

#endif

#include "vbetti/mvss.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <limits>
#include <map>
#include <tuple>

#include "vbetti/error.hpp"

namespace vbetti {

void Arrangement::validate() const {
    if (!total) throw Error(ErrorCode::InvalidInput, "arrangement without a total complex");
    if (names.size() != pieces.size())
        throw Error(ErrorCode::InvalidInput, "arrangement has " + std::to_string(pieces.size()) + " pieces but " +
                                                 std::to_string(names.size()) + " names");
    if (pieces.empty()) throw Error(ErrorCode::NotACover, "arrangement has no pieces");
    if (pieces.size() > 16) throw Error(ErrorCode::InvalidInput, "arrangements are limited to 16 pieces");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (!(pieces[i].parent() == *total))
            throw Error(ErrorCode::InvalidInput, "piece is not a subcomplex of the total complex", names[i]);
    }
    Subcomplex u(total);
    for (const auto& piece : pieces) u = u.unite(piece);
    for (std::size_t d = 0; d <= static_cast<std::size_t>(std::max(total->dim(), 0)); ++d) {
        for (std::size_t k = 0; k < total->count(d); ++k) {
            if (!u.contains(d, k)) {
                std::string label;
                for (const auto& v : total->to_names(total->simplices(d)[k])) label += (label.empty() ? "" : ",") + v;
                throw Error(ErrorCode::NotACover, "simplex {" + label + "} lies in no piece", label);
            }
        }
    }
}

namespace {

constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

template <class F>
void for_each_bit(const gf2::Vector& v, F&& f) {
    const auto words = v.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
        gf2::Word bits = words[w];
        while (bits) {
            const int b = std::countr_zero(bits);
            f(w * gf2::kWordBits + static_cast<std::size_t>(b));
            bits &= bits - 1;
        }
    }
}

// XOR `src` into `dst` at (row0, col0).
void paste(gf2::Matrix& dst, const gf2::Matrix& src, std::size_t row0, std::size_t col0) {
    for (std::size_t r = 0; r < src.rows(); ++r)
        for_each_bit(src.row(r), [&](std::size_t c) { dst.flip(row0 + r, col0 + c); });
}

} // namespace

DoubleComplex::DoubleComplex(const Arrangement& a) {
    a.validate();
    const SimplicialComplex& total = *a.total;
    const std::size_t m = a.size();
    max_q_ = total.dim();
    const std::size_t qs = max_q_ < 0 ? 0 : static_cast<std::size_t>(max_q_) + 1;

    subsets_.resize(m);
    intersections_.resize(m);
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        const auto p = static_cast<std::size_t>(std::popcount(mask)) - 1;
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (1u << i)) s.push_back(i);
        subsets_[p].push_back(std::move(s));
    }
    std::map<std::vector<std::size_t>, std::size_t> subset_index;
    for (std::size_t p = 0; p < m; ++p) {
        std::sort(subsets_[p].begin(), subsets_[p].end());
        for (std::size_t k = 0; k < subsets_[p].size(); ++k) {
            const auto& s = subsets_[p][k];
            subset_index[s] = k;
            Subcomplex x = a.pieces[s[0]];
            for (std::size_t i = 1; i < s.size(); ++i) x = x.intersect(a.pieces[s[i]]);
            intersections_[p].push_back(std::move(x));
        }
    }

    // pos[p][q][k][simplex] = coordinate inside block C^{p,q}, or kAbsent.
    std::vector<std::vector<std::vector<std::vector<std::uint32_t>>>> pos(m);
    dims_.assign(m, std::vector<std::size_t>(qs, 0));
    for (std::size_t p = 0; p < m; ++p) {
        pos[p].resize(qs);
        for (std::size_t q = 0; q < qs; ++q) {
            std::uint32_t next = 0;
            for (std::size_t k = 0; k < subsets_[p].size(); ++k) {
                std::vector<std::uint32_t> local(total.count(q), kAbsent);
                for (std::size_t s = 0; s < total.count(q); ++s)
                    if (intersections_[p][k].contains(q, s)) local[s] = next++;
                pos[p][q].push_back(std::move(local));
            }
            dims_[p][q] = next;
        }
    }

    horizontal_.assign(m, std::vector<gf2::Matrix>(qs));
    vertical_.assign(m, std::vector<gf2::Matrix>(qs));
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < qs; ++q) {
            const std::size_t rows_h = p + 1 < m ? dims_[p + 1][q] : 0;
            gf2::Matrix h(rows_h, dims_[p][q]);
            if (p + 1 < m) {
                for (std::size_t k2 = 0; k2 < subsets_[p + 1].size(); ++k2) {
                    const auto& big = subsets_[p + 1][k2];
                    for (std::size_t drop = 0; drop < big.size(); ++drop) {
                        std::vector<std::size_t> small = big;
                        small.erase(small.begin() + static_cast<std::ptrdiff_t>(drop));
                        const std::size_t k1 = subset_index.at(small);
                        for (std::size_t s = 0; s < total.count(q); ++s) {
                            const std::uint32_t row = pos[p + 1][q][k2][s];
                            if (row != kAbsent) h.flip(row, pos[p][q][k1][s]);
                        }
                    }
                }
            }
            horizontal_[p][q] = std::move(h);

            const std::size_t rows_v = q + 1 < qs ? dims_[p][q + 1] : 0;
            gf2::Matrix v(rows_v, dims_[p][q]);
            if (q + 1 < qs) {
                for (std::size_t k = 0; k < subsets_[p].size(); ++k) {
                    for (std::size_t t = 0; t < total.count(q + 1); ++t) {
                        const std::uint32_t row = pos[p][q + 1][k][t];
                        if (row == kAbsent) continue;
                        const Simplex& tau = total.simplices(q + 1)[t];
                        for (std::size_t drop = 0; drop < tau.size(); ++drop) {
                            Simplex face = tau;
                            face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                            v.flip(row, pos[p][q][k][*total.index_of(face)]);
                        }
                    }
                }
            }
            vertical_[p][q] = std::move(v);
        }
    }

    const std::size_t top = max_total_degree();
    for (std::size_t n = 0; n <= top; ++n) {
        gf2::Matrix d(total_dim(n + 1), total_dim(n));
        for (std::size_t p = 0; p < m && p <= n; ++p) {
            const std::size_t q = n - p;
            if (q >= qs) continue;
            const std::size_t col = filtration_offset(n, p);
            if (p + 1 < m) paste(d, horizontal_[p][q], filtration_offset(n + 1, p + 1), col);
            if (q + 1 < qs) paste(d, vertical_[p][q], filtration_offset(n + 1, p), col);
        }
        total_.push_back(std::move(d));
    }
}

std::size_t DoubleComplex::max_total_degree() const noexcept {
    if (max_q_ < 0 || subsets_.empty()) return 0;
    return subsets_.size() - 1 + static_cast<std::size_t>(max_q_);
}

std::size_t DoubleComplex::block_dim(std::size_t p, std::size_t q) const {
    if (p >= dims_.size() || q >= dims_[p].size()) return 0;
    return dims_[p][q];
}

std::size_t DoubleComplex::filtration_offset(std::size_t n, std::size_t p) const {
    std::size_t off = 0;
    for (std::size_t i = 0; i < p && i <= n && i < dims_.size(); ++i) off += block_dim(i, n - i);
    return off;
}

std::size_t DoubleComplex::total_dim(std::size_t n) const { return filtration_offset(n, dims_.size()); }

const gf2::Matrix& DoubleComplex::horizontal(std::size_t p, std::size_t q) const {
    if (p >= horizontal_.size() || q >= horizontal_[p].size()) return empty_;
    return horizontal_[p][q];
}

const gf2::Matrix& DoubleComplex::vertical(std::size_t p, std::size_t q) const {
    if (p >= vertical_.size() || q >= vertical_[p].size()) return empty_;
    return vertical_[p][q];
}

// ---------------------------------------------------------------------------

std::size_t SpectralPage::at(std::ptrdiff_t p, std::ptrdiff_t q) const noexcept {
    if (p < 0 || q < 0 || static_cast<std::size_t>(p) >= dims.size()) return 0;
    const auto& col = dims[static_cast<std::size_t>(p)];
    return static_cast<std::size_t>(q) < col.size() ? col[static_cast<std::size_t>(q)] : 0;
}

std::size_t SpectralSequence::rank(std::size_t r, std::size_t p, std::size_t q) const {
    for (const auto& d : differentials)
        if (d.r == r && d.p == p && d.q == q) return d.rank;
    return 0;
}

namespace {

// Z_r^p(n) for r = 0 .. limit; Z_r^p stops changing once p + r reaches the last column.
struct CycleTower {
    std::vector<gf2::Subspace> z;
    const gf2::Subspace& at(std::size_t r) const { return z[std::min(r, z.size() - 1)]; }
};

CycleTower cycle_tower(const DoubleComplex& dc, std::size_t n, std::size_t p, std::size_t max_r, Exec exec) {
    const std::size_t m = dc.columns();
    const std::size_t dim = dc.total_dim(n);
    const std::size_t first = dc.filtration_offset(n, p);
    CycleTower t;
    if (p >= m) {
        t.z.push_back(gf2::Subspace::zero(dim));
        return t;
    }
    const std::size_t last_r = std::min(max_r, m - p);
    const gf2::Matrix& d = dc.differential(n);
    for (std::size_t r = 0; r <= last_r; ++r) {
        if (r == 0) {
            // D preserves the filtration, so Z_0^p = F^p.
            std::vector<gf2::Vector> basis;
            for (std::size_t i = first; i < dim; ++i) basis.push_back(gf2::Vector::unit(dim, i));
            t.z.push_back(gf2::Subspace::span(dim, std::move(basis), exec));
            continue;
        }
        const std::size_t rows = dc.filtration_offset(n + 1, p + r);
        const gf2::Subspace local = gf2::kernel_basis(d.block(0, rows, first, dim), exec);
        std::vector<gf2::Vector> basis;
        basis.reserve(local.dim());
        for (const auto& v : local.basis()) basis.push_back(v.embed(dim, first));
        t.z.push_back(gf2::Subspace::span(dim, std::move(basis), exec));
    }
    return t;
}

// F^p Tot^n cap D(F^{p-r+1} Tot^{n-1}).
gf2::Subspace boundary_part(const DoubleComplex& dc, std::size_t n, std::size_t p, std::size_t r, Exec exec) {
    const std::size_t dim = dc.total_dim(n);
    if (n == 0) return gf2::Subspace::zero(dim);
    const std::ptrdiff_t from = static_cast<std::ptrdiff_t>(p) - static_cast<std::ptrdiff_t>(r) + 1;
    const std::size_t first = dc.filtration_offset(n - 1, static_cast<std::size_t>(std::max<std::ptrdiff_t>(from, 0)));
    const gf2::Matrix& d = dc.differential(n - 1);
    const gf2::Subspace image = gf2::image_basis(d.block(0, d.rows(), first, d.cols()), exec);
    return image.restrict_to_suffix(dc.filtration_offset(n, p));
}

template <class F>
void parallel_cells(std::size_t count, Exec exec, F&& body) {
    std::vector<std::exception_ptr> errors(count);
    const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel && n > 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace

SpectralSequence spectral_sequence(const DoubleComplex& dc, std::size_t up_to, Exec exec) {
    const std::size_t m = dc.columns();
    const std::size_t qs = dc.max_q() < 0 ? 0 : static_cast<std::size_t>(dc.max_q()) + 1;
    const std::size_t last_page = std::max(up_to, m + 1);
    const std::size_t degrees = dc.max_total_degree() + 1;

    // Towers for every (n, p) with p = 0..m; p = m is the zero filtration step.
    std::vector<CycleTower> towers(degrees * (m + 1));
    parallel_cells(towers.size(), exec, [&](std::size_t i) {
        towers[i] = cycle_tower(dc, i / (m + 1), i % (m + 1), last_page + 1, exec);
    });
    auto tower = [&](std::size_t n, std::size_t p) -> const CycleTower& { return towers[n * (m + 1) + p]; };

    SpectralSequence ss;
    ss.columns = m;
    ss.block_dims.assign(m, std::vector<std::size_t>(qs, 0));
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < qs; ++q) ss.block_dims[p][q] = dc.block_dim(p, q);
    for (std::size_t r = 1; r <= last_page; ++r)
        ss.pages.push_back({r, std::vector<std::vector<std::size_t>>(m, std::vector<std::size_t>(qs, 0))});

    // One task per cell (p, q); fills every page and every outgoing d_r.
    std::vector<std::vector<DifferentialRank>> ranks(m * qs);
    std::vector<std::vector<DifferentialRank>> outgoing(m * qs);
    parallel_cells(m * qs, exec, [&](std::size_t cell) {
        const std::size_t p = cell / qs;
        const std::size_t q = cell % qs;
        const std::size_t n = p + q;
        if (n >= degrees) return;
        const CycleTower& here = tower(n, p);
        const CycleTower& next = tower(n, p + 1);
        for (std::size_t r = 1; r <= last_page; ++r) {
            const gf2::Subspace denominator = next.at(r - 1).sum(boundary_part(dc, n, p, r, exec));
            ss.pages[r - 1].dims[p][q] = gf2::quotient_dim(here.at(r), denominator);
            const std::size_t kernel = here.at(r + 1).sum(next.at(r - 1)).dim();
            const std::size_t rank = here.at(r).dim() - kernel;
            const bool target_exists = p + r < m && q + 1 >= r && q + 1 - r < qs;
            outgoing[cell].push_back({r, p, q, rank});
            if (target_exists) ranks[cell].push_back({r, p, q, rank});
            else if (rank != 0)
                throw Error(ErrorCode::ConvergenceMismatch, "nonzero differential into an empty cell",
                            "d_" + std::to_string(r) + " at (" + std::to_string(p) + "," + std::to_string(q) + ")");
        }
    });
    for (auto& list : ranks)
        for (auto& d : list) ss.differentials.push_back(d);
    std::sort(ss.differentials.begin(), ss.differentials.end(), [](const auto& a, const auto& b) {
        return std::tie(a.r, a.p, a.q) < std::tie(b.r, b.p, b.q);
    });

    // Each page is the homology of the previous one.
    for (std::size_t r = 1; r < last_page; ++r) {
        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t q = 0; q < qs; ++q) {
                const std::size_t out = ss.rank(r, p, q);
                const std::size_t in = (p >= r && q + r - 1 < qs) ? ss.rank(r, p - r, q + r - 1) : 0;
                if (ss.page(r).dims[p][q] != ss.page(r + 1).dims[p][q] + out + in)
                    throw Error(ErrorCode::ConvergenceMismatch, "page recurrence broken",
                                "E_" + std::to_string(r + 1) + " at (" + std::to_string(p) + "," + std::to_string(q) + ")");
            }
        }
    }

    ss.e_infinity = ss.pages.back();
    ss.stabilization_page = last_page;
    while (ss.stabilization_page > 1) {
        const std::size_t r = ss.stabilization_page - 1;
        const bool zero = std::all_of(ss.differentials.begin(), ss.differentials.end(),
                                      [r](const auto& d) { return d.r != r || d.rank == 0; });
        if (!zero) break;
        ss.stabilization_page = r;
    }
    for (const auto& list : outgoing)
        for (const auto& d : list)
            if (d.r >= ss.stabilization_page && d.r < last_page) ss.certificate.push_back(d);
    std::sort(ss.certificate.begin(), ss.certificate.end(), [](const auto& a, const auto& b) {
        return std::tie(a.r, a.p, a.q) < std::tie(b.r, b.p, b.q);
    });
    return ss;
}

SpectralSequence spectral_sequence(const Arrangement& a, std::size_t up_to, Exec exec) {
    return spectral_sequence(DoubleComplex(a), up_to, exec);
}

std::vector<SpectralPage> compute_pages(const Arrangement& a, std::size_t up_to, Exec exec) {
    if (up_to == 0) throw Error(ErrorCode::InvalidInput, "page index starts at 1");
    SpectralSequence ss = spectral_sequence(a, up_to, exec);
    ss.pages.resize(up_to);
    return ss.pages;
}

BettiVector converged_betti(const SpectralSequence& ss, const SimplicialComplex& total) {
    std::vector<std::size_t> b;
    const SpectralPage& e = ss.e_infinity;
    for (std::size_t p = 0; p < e.columns(); ++p) {
        for (std::size_t q = 0; q < e.rows(); ++q) {
            if (b.size() <= p + q) b.resize(p + q + 1, 0);
            b[p + q] += e.dims[p][q];
        }
    }
    BettiVector converged(std::move(b));
    const BettiVector direct = betti_mod2(total);
    if (!(converged == direct))
        throw Error(ErrorCode::ConvergenceMismatch,
                    "E_infinity gives " + converged.to_string() + " but direct homology gives " + direct.to_string());
    return converged;
}

BettiVector converged_betti(const Arrangement& a, Exec exec) {
    return converged_betti(spectral_sequence(a, 1, exec), *a.total);
}

FiltrationProfile mv_filtration(const SpectralSequence& ss) {
    const SpectralPage& e = ss.e_infinity;
    std::size_t top = 0;
    bool any = false;
    for (std::size_t p = 0; p < e.columns(); ++p)
        for (std::size_t q = 0; q < e.rows(); ++q)
            if (e.dims[p][q]) {
                top = std::max(top, p + q);
                any = true;
            }
    FiltrationProfile w(any ? top + 1 : 0);
    for (std::size_t p = 0; p < e.columns(); ++p)
        for (std::size_t q = 0; q < e.rows(); ++q)
            if (e.dims[p][q]) w.set(p + q, q, static_cast<std::int64_t>(e.dims[p][q]));
    return w;
}

FiltrationProfile mv_filtration(const Arrangement& a, Exec exec) { return mv_filtration(spectral_sequence(a, 1, exec)); }

std::vector<std::int64_t> row_alternating_sums(const SpectralPage& page) {
    std::vector<std::int64_t> out(page.rows(), 0);
    for (std::size_t p = 0; p < page.columns(); ++p)
        for (std::size_t q = 0; q < page.rows(); ++q)
            out[q] += (p % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(page.dims[p][q]);
    return out;
}

std::int64_t page_euler(const SpectralPage& page) {
    std::int64_t chi = 0;
    for (std::size_t p = 0; p < page.columns(); ++p)
        for (std::size_t q = 0; q < page.rows(); ++q)
            chi += ((p + q) % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(page.dims[p][q]);
    return chi;
}

} // namespace vbetti

#ifndef VBETTI_TESTS_ORACLES_HPP
#define VBETTI_TESTS_ORACLES_HPP

// Slow, obviously-correct reference computations and random generators used
// only by the tests. Nothing here calls into the library's linear algebra.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "vbetti/complex.hpp"
#include "vbetti/gf2.hpp"
#include "vbetti/scissor.hpp"
#include "vbetti/weights.hpp"

namespace oracle {

using Dense = std::vector<std::vector<int>>;

inline Dense to_dense(const vbetti::gf2::Matrix& m) {
    Dense out(m.rows(), std::vector<int>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.get(r, c) ? 1 : 0;
    return out;
}

inline std::uint64_t pack(const std::vector<int>& row) {
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] & 1) w |= std::uint64_t(1) << i;
    return w;
}

/// Every subset sum of the given vectors (at most ~20 of them, width <= 64).
inline std::set<std::uint64_t> span(const std::vector<std::uint64_t>& vectors) {
    std::set<std::uint64_t> out;
    const std::size_t n = vectors.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1u) v ^= vectors[i];
        out.insert(v);
    }
    return out;
}

inline std::size_t log2_exact(std::size_t count) {
    std::size_t k = 0;
    while ((std::size_t(1) << k) < count) ++k;
    return k;
}

/// Rank by enumerating all row-subset sums.
inline std::size_t brute_rank(const Dense& m) {
    std::vector<std::uint64_t> rows;
    for (const auto& r : m) rows.push_back(pack(r));
    return log2_exact(span(rows).size());
}

/// Kernel dimension by testing every vector of GF(2)^cols.
inline std::size_t brute_kernel_dim(const Dense& m, std::size_t cols) {
    std::size_t count = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << cols); ++x) {
        bool zero = true;
        for (const auto& row : m)
            if (__builtin_popcountll(pack(row) & x) & 1) {
                zero = false;
                break;
            }
        count += zero;
    }
    return log2_exact(count);
}

/// Textbook Gaussian elimination on unpacked integer rows.
inline std::size_t dense_rank(Dense m) {
    std::size_t rank = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < m.size() && (m[pivot][c] & 1) == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = 0; r < m.size(); ++r)
            if (r != rank && (m[r][c] & 1))
                for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
        ++rank;
    }
    return rank;
}

using Face = std::vector<int>;

/// Face closure by explicit subset enumeration.
inline std::vector<std::set<Face>> closure(const std::vector<Face>& maximal) {
    std::vector<std::set<Face>> by_dim;
    for (Face f : maximal) {
        std::sort(f.begin(), f.end());
        const std::size_t n = f.size();
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
            Face sub;
            for (std::size_t i = 0; i < n; ++i)
                if ((mask >> i) & 1u) sub.push_back(f[i]);
            if (by_dim.size() < sub.size()) by_dim.resize(sub.size());
            by_dim[sub.size() - 1].insert(sub);
        }
    }
    return by_dim;
}

/// Mod 2 Betti numbers from boundary matrices built here, trailing zeros trimmed.
inline std::vector<std::size_t> homology(const std::vector<Face>& maximal) {
    const auto faces = closure(maximal);
    const std::size_t top = faces.size();
    std::vector<std::size_t> ranks(top + 1, 0);  // ranks[d] = rank of boundary C_d -> C_{d-1}
    for (std::size_t d = 1; d < top; ++d) {
        std::vector<Face> lower(faces[d - 1].begin(), faces[d - 1].end());
        Dense m;
        for (const auto& s : faces[d]) {
            std::vector<int> row(lower.size(), 0);
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                Face f = s;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
                row[static_cast<std::size_t>(std::lower_bound(lower.begin(), lower.end(), f) - lower.begin())] ^= 1;
            }
            m.push_back(row);
        }
        ranks[d] = dense_rank(m);
    }
    std::vector<std::size_t> betti;
    for (std::size_t d = 0; d < top; ++d) betti.push_back(faces[d].size() - ranks[d] - ranks[d + 1]);
    while (!betti.empty() && betti.back() == 0) betti.pop_back();
    return betti;
}

inline std::vector<Face> faces_of(const vbetti::SimplicialComplex& k) {
    std::vector<Face> out;
    for (const auto& s : k.maximal_simplices()) out.emplace_back(s.begin(), s.end());
    return out;
}

/// Every triangular array with entries in [0, max b] satisfying both families of equations.
inline std::vector<vbetti::WeightArray> brute_weights(const vbetti::WeightSystemInput& in) {
    const std::size_t n = in.b.size();
    std::int64_t bound = 0;
    for (auto v : in.b) bound = std::max(bound, v);
    const std::size_t cells = n * (n + 1) / 2;
    std::vector<std::int64_t> digits(cells, 0);
    std::vector<vbetti::WeightArray> out;
    while (true) {
        std::vector<std::vector<std::int64_t>> rows;
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            rows.emplace_back(digits.begin() + static_cast<std::ptrdiff_t>(k),
                              digits.begin() + static_cast<std::ptrdiff_t>(k + i + 1));
            k += i + 1;
        }
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            std::int64_t sum = 0;
            for (auto v : rows[i]) sum += v;
            ok = sum == in.b[i];
        }
        for (std::size_t j = 0; j < n && ok; ++j) {
            std::int64_t sum = 0;
            for (std::size_t i = j; i < n; ++i) sum += (i % 2 ? -1 : 1) * rows[i][j];
            ok = (j % 2 ? -sum : sum) == in.beta[j];
        }
        if (ok) out.push_back(n == 0 ? vbetti::WeightArray(0) : vbetti::WeightArray::from_rows(rows));
        std::size_t pos = 0;
        while (pos < cells && digits[pos] == bound) digits[pos++] = 0;
        if (pos == cells) break;
        ++digits[pos];
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- surface checks -------------------------------------------------------------

inline std::map<Face, std::vector<Face>> edge_faces(const std::vector<Face>& triangles) {
    std::map<Face, std::vector<Face>> out;
    for (Face t : triangles) {
        std::sort(t.begin(), t.end());
        out[{t[0], t[1]}].push_back(t);
        out[{t[0], t[2]}].push_back(t);
        out[{t[1], t[2]}].push_back(t);
    }
    return out;
}

/// Every edge in exactly two triangles and every vertex link a single cycle.
inline bool closed_surface(const std::vector<Face>& triangles) {
    const auto edges = edge_faces(triangles);
    for (const auto& [e, ts] : edges)
        if (ts.size() != 2) return false;
    std::map<int, std::vector<std::pair<int, int>>> link;
    for (Face t : triangles) {
        link[t[0]].push_back({t[1], t[2]});
        link[t[1]].push_back({t[0], t[2]});
        link[t[2]].push_back({t[0], t[1]});
    }
    for (const auto& [v, segs] : link) {
        std::map<int, std::vector<int>> adj;
        for (auto [a, b] : segs) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::set<int> seen = {adj.begin()->first};
        std::vector<int> stack = {adj.begin()->first};
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int y : adj[x])
                if (seen.insert(y).second) stack.push_back(y);
        }
        if (seen.size() != adj.size()) return false;
    }
    return true;
}

/// Propagates an orientation across shared edges; false if two neighbours disagree.
inline bool orientable(const std::vector<Face>& triangles) {
    std::map<Face, int> sign;  // sorted triangle -> +1 / -1 relative to sorted order
    const auto edges = edge_faces(triangles);
    auto induced = [](const Face& t, int s, int a, int b) {
        // Direction in which the oriented triangle traverses edge (a, b), a < b.
        const int ia = static_cast<int>(std::find(t.begin(), t.end(), a) - t.begin());
        const int ib = static_cast<int>(std::find(t.begin(), t.end(), b) - t.begin());
        const int dir = ((ib - ia + 3) % 3 == 1) ? 1 : -1;
        return dir * s;
    };
    for (Face start : triangles) {
        std::sort(start.begin(), start.end());
        if (sign.count(start)) continue;
        sign[start] = 1;
        std::vector<Face> stack = {start};
        while (!stack.empty()) {
            const Face t = stack.back();
            stack.pop_back();
            for (auto [a, b] : {std::pair{t[0], t[1]}, std::pair{t[0], t[2]}, std::pair{t[1], t[2]}}) {
                for (const Face& u : edges.at({a, b})) {
                    if (u == t) continue;
                    const int want = -induced(t, sign[t], a, b);
                    const int have = induced(u, 1, a, b);
                    const int s = want == have ? 1 : -1;
                    if (auto it = sign.find(u); it != sign.end()) {
                        if (it->second != s) return false;
                    } else {
                        sign[u] = s;
                        stack.push_back(u);
                    }
                }
            }
        }
    }
    return true;
}

// ---- random generators --------------------------------------------------------------

inline vbetti::gf2::Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density = 0.5) {
    std::bernoulli_distribution bit(density);
    vbetti::gf2::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (bit(rng)) m.set(r, c);
    return m;
}

/// Random complex on `vertices` vertices from a handful of random maximal simplices.
inline vbetti::SimplicialComplex random_complex(std::mt19937_64& rng, std::size_t vertices, std::size_t facets,
                                                std::size_t max_dim) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < vertices; ++i) names.push_back("v" + std::to_string(i));
    std::vector<vbetti::NamedSimplex> maximal;
    for (const auto& n : names) maximal.push_back({n});
    std::uniform_int_distribution<std::size_t> size(1, max_dim + 1);
    for (std::size_t f = 0; f < facets; ++f) {
        std::vector<std::string> pool = names;
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(std::min(size(rng), pool.size()));
        maximal.push_back(pool);
    }
    return vbetti::SimplicialComplex::from_maximal(names, maximal);
}

inline vbetti::IntPolynomial random_poly(std::mt19937_64& rng, std::size_t max_degree = 3, int range = 5) {
    std::uniform_int_distribution<std::size_t> deg(0, max_degree);
    std::uniform_int_distribution<int> coef(-range, range);
    std::vector<std::int64_t> c(deg(rng) + 1);
    for (auto& v : c) v = coef(rng);
    return vbetti::IntPolynomial(c);
}

/// Random union/product/difference tree over the given atom names.
inline vbetti::ScissorExpr random_expr(std::mt19937_64& rng, const std::vector<std::string>& atoms, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 4);
    std::uniform_int_distribution<std::size_t> atom(0, atoms.size() - 1);
    switch (pick(rng)) {
    case 0: return vbetti::ScissorExpr::atom(atoms[atom(rng)]);
    case 1: return depth <= 0 ? vbetti::ScissorExpr::empty() : vbetti::ScissorExpr::atom(atoms[atom(rng)]);
    case 2: return vbetti::ScissorExpr::disjoint_union(random_expr(rng, atoms, depth - 1), random_expr(rng, atoms, depth - 1));
    case 3: return vbetti::ScissorExpr::product(random_expr(rng, atoms, depth - 1), random_expr(rng, atoms, depth - 1));
    default:
        return vbetti::ScissorExpr::closed_difference(random_expr(rng, atoms, depth - 1), random_expr(rng, atoms, depth - 1));
    }
}

} // namespace oracle

#endif

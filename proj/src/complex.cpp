#include "vbetti/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "vbetti/error.hpp"

namespace vbetti {

namespace {

std::string join_names(const NamedSimplex& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i];
    return out + "}";
}

// Every nonempty face of every maximal simplex, grouped by dimension.
std::vector<std::vector<Simplex>> close_faces(const std::vector<Simplex>& maximal, std::size_t num_vertices) {
    std::vector<std::set<Simplex>> faces;
    std::size_t total = 0;
    auto bump = [&total](std::size_t n) {
        total += n;
        if (total > kMaxSimplices)
            throw Error(ErrorCode::SizeLimit, "complex exceeds " + std::to_string(kMaxSimplices) + " simplices");
    };
    if (num_vertices > 0) {
        faces.resize(1);
        for (VertexId v = 0; v < num_vertices; ++v) faces[0].insert(Simplex{v});
        bump(num_vertices);
    }
    for (const Simplex& top : maximal) {
        if (top.size() > 17) throw Error(ErrorCode::SizeLimit, "simplex has too many faces");
        const std::size_t k = top.size();
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            Simplex face;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1u << i)) face.push_back(top[i]);
            if (faces.size() < face.size()) faces.resize(face.size());
            if (faces[face.size() - 1].insert(std::move(face)).second) bump(1);
        }
    }
    std::vector<std::vector<Simplex>> out;
    out.reserve(faces.size());
    for (auto& f : faces) out.emplace_back(f.begin(), f.end());
    return out;
}

Simplex normalized(Simplex s, const std::string& context) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw Error(ErrorCode::InvalidSimplex, "simplex repeats a vertex", context);
    if (s.empty()) throw Error(ErrorCode::InvalidSimplex, "empty simplex", context);
    return s;
}

std::unordered_map<std::string, VertexId> name_index(const std::vector<std::string>& vertices) {
    std::unordered_map<std::string, VertexId> ids;
    for (VertexId i = 0; i < vertices.size(); ++i) {
        if (!ids.emplace(vertices[i], i).second)
            throw Error(ErrorCode::InvalidSimplex, "duplicate vertex name", vertices[i]);
    }
    return ids;
}

Simplex resolve(const std::unordered_map<std::string, VertexId>& ids, const NamedSimplex& named) {
    Simplex s;
    s.reserve(named.size());
    for (const auto& n : named) {
        auto it = ids.find(n);
        if (it == ids.end()) throw Error(ErrorCode::UnknownVertex, "unknown vertex '" + n + "'", join_names(named));
        s.push_back(it->second);
    }
    return normalized(std::move(s), join_names(named));
}

std::int64_t alternating(const std::vector<std::size_t>& counts) {
    std::int64_t acc = 0;
    for (std::size_t d = 0; d < counts.size(); ++d) {
        const auto c = static_cast<std::int64_t>(counts[d]);
        acc = (d % 2 == 0) ? checked::add(acc, c) : checked::sub(acc, c);
    }
    return acc;
}

} // namespace

// ---------------------------------------------------------------------------
// SimplicialComplex

SimplicialComplex SimplicialComplex::from_maximal(std::vector<std::string> vertices, const std::vector<NamedSimplex>& maximal) {
    const auto ids = name_index(vertices);
    std::vector<Simplex> tops;
    tops.reserve(maximal.size());
    for (const auto& m : maximal) tops.push_back(resolve(ids, m));
    return from_maximal_ids(std::move(vertices), std::move(tops));
}

SimplicialComplex SimplicialComplex::from_maximal_ids(std::vector<std::string> vertices, std::vector<Simplex> maximal) {
    for (auto& m : maximal) {
        m = normalized(std::move(m), "");
        if (m.back() >= vertices.size()) throw Error(ErrorCode::UnknownVertex, "vertex id out of range");
    }
    SimplicialComplex k;
    k.ids_ = name_index(vertices);
    k.by_dim_ = close_faces(maximal, vertices.size());
    k.names_ = std::move(vertices);
    k.index();
    return k;
}

SimplicialComplex SimplicialComplex::from_simplices(std::vector<std::string> vertices, const std::vector<NamedSimplex>& simplices) {
    validate(vertices, simplices);
    return from_maximal(std::move(vertices), simplices);
}

void SimplicialComplex::index() {
    position_.assign(by_dim_.size(), {});
    for (std::size_t d = 0; d < by_dim_.size(); ++d)
        for (std::size_t i = 0; i < by_dim_[d].size(); ++i) position_[d].emplace(by_dim_[d][i], i);
}

std::size_t SimplicialComplex::size() const noexcept {
    std::size_t n = 0;
    for (const auto& v : by_dim_) n += v.size();
    return n;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
    std::vector<std::size_t> f;
    for (const auto& v : by_dim_) f.push_back(v.size());
    return f;
}

std::optional<VertexId> SimplicialComplex::vertex_id(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const std::vector<Simplex>& SimplicialComplex::simplices(std::size_t d) const {
    static const std::vector<Simplex> none;
    return d < by_dim_.size() ? by_dim_[d] : none;
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
    if (s.empty() || s.size() > position_.size()) return std::nullopt;
    const auto& m = position_[s.size() - 1];
    auto it = m.find(s);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
    // A simplex is maximal iff none of its cofacets exists.
    std::vector<Simplex> out;
    for (std::size_t d = 0; d < by_dim_.size(); ++d) {
        std::vector<bool> covered(by_dim_[d].size(), false);
        if (d + 1 < by_dim_.size()) {
            for (const Simplex& up : by_dim_[d + 1]) {
                for (std::size_t drop = 0; drop < up.size(); ++drop) {
                    Simplex face = up;
                    face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                    covered[position_[d].at(face)] = true;
                }
            }
        }
        for (std::size_t i = 0; i < by_dim_[d].size(); ++i)
            if (!covered[i]) out.push_back(by_dim_[d][i]);
    }
    return out;
}

Simplex SimplicialComplex::to_ids(const NamedSimplex& named) const { return resolve(ids_, named); }

NamedSimplex SimplicialComplex::to_names(const Simplex& s) const {
    NamedSimplex out;
    out.reserve(s.size());
    for (VertexId v : s) out.push_back(names_[v]);
    return out;
}

gf2::Matrix SimplicialComplex::coboundary(std::size_t d) const {
    gf2::Matrix m(count(d + 1), count(d));
    if (d + 1 >= by_dim_.size()) return m;
    const auto& ups = by_dim_[d + 1];
    for (std::size_t r = 0; r < ups.size(); ++r) {
        for (std::size_t drop = 0; drop < ups[r].size(); ++drop) {
            Simplex face = ups[r];
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
            m.set(r, position_[d].at(face));
        }
    }
    return m;
}

void validate(const std::vector<std::string>& vertices, const std::vector<NamedSimplex>& simplices) {
    const auto ids = name_index(vertices);
    std::set<Simplex> present;
    std::vector<std::pair<Simplex, const NamedSimplex*>> resolved;
    for (const auto& named : simplices) {
        Simplex s = resolve(ids, named);
        present.insert(s);
        resolved.emplace_back(std::move(s), &named);
    }
    for (const auto& [s, named] : resolved) {
        if (s.size() == 1) continue;
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            Simplex face = s;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
            if (!present.count(face)) {
                NamedSimplex missing;
                for (VertexId v : face) missing.push_back(vertices[v]);
                throw Error(ErrorCode::NotFaceClosed,
                            "simplex " + join_names(*named) + " is missing its face " + join_names(missing),
                            join_names(*named));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Subcomplex

Subcomplex::Subcomplex(ComplexPtr parent) : parent_(std::move(parent)) {
    member_.resize(parent_->dim() + 1);
    for (std::size_t d = 0; d < member_.size(); ++d) member_[d].assign(parent_->count(d), false);
}

Subcomplex Subcomplex::whole(ComplexPtr parent) {
    Subcomplex s(std::move(parent));
    for (auto& row : s.member_) row.assign(row.size(), true);
    return s;
}

Subcomplex Subcomplex::from_maximal(ComplexPtr parent, const std::vector<Simplex>& maximal) {
    Subcomplex s(parent);
    for (const Simplex& top : maximal) {
        if (!parent->contains(top)) {
            throw Error(ErrorCode::InvalidSubcomplex, "simplex does not belong to the parent complex",
                        join_names(parent->to_names(top)));
        }
        const std::size_t k = top.size();
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            Simplex face;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1u << i)) face.push_back(top[i]);
            s.member_[face.size() - 1][*parent->index_of(face)] = true;
        }
    }
    return s;
}

Subcomplex Subcomplex::from_maximal(ComplexPtr parent, const std::vector<NamedSimplex>& maximal) {
    std::vector<Simplex> ids;
    ids.reserve(maximal.size());
    for (const auto& m : maximal) ids.push_back(parent->to_ids(m));
    return from_maximal(std::move(parent), ids);
}

bool Subcomplex::contains(const Simplex& s) const {
    auto idx = parent_->index_of(s);
    return idx && contains(s.size() - 1, *idx);
}

std::size_t Subcomplex::count(std::size_t d) const noexcept {
    if (d >= member_.size()) return 0;
    return static_cast<std::size_t>(std::count(member_[d].begin(), member_[d].end(), true));
}

std::size_t Subcomplex::size() const noexcept {
    std::size_t n = 0;
    for (std::size_t d = 0; d < member_.size(); ++d) n += count(d);
    return n;
}

Subcomplex Subcomplex::intersect(const Subcomplex& other) const {
    Subcomplex out(parent_);
    for (std::size_t d = 0; d < member_.size(); ++d)
        for (std::size_t i = 0; i < member_[d].size(); ++i) out.member_[d][i] = member_[d][i] && other.member_[d][i];
    return out;
}

Subcomplex Subcomplex::unite(const Subcomplex& other) const {
    Subcomplex out(parent_);
    for (std::size_t d = 0; d < member_.size(); ++d)
        for (std::size_t i = 0; i < member_[d].size(); ++i) out.member_[d][i] = member_[d][i] || other.member_[d][i];
    return out;
}

std::vector<Simplex> Subcomplex::maximal_simplices() const {
    std::vector<Simplex> out;
    for (std::size_t d = 0; d < member_.size(); ++d) {
        std::vector<bool> covered(member_[d].size(), false);
        if (d + 1 < member_.size()) {
            for (std::size_t j = 0; j < member_[d + 1].size(); ++j) {
                if (!member_[d + 1][j]) continue;
                const Simplex& up = parent_->simplices(d + 1)[j];
                for (std::size_t drop = 0; drop < up.size(); ++drop) {
                    Simplex face = up;
                    face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                    covered[*parent_->index_of(face)] = true;
                }
            }
        }
        for (std::size_t i = 0; i < member_[d].size(); ++i)
            if (member_[d][i] && !covered[i]) out.push_back(parent_->simplices(d)[i]);
    }
    return out;
}

SimplicialComplex Subcomplex::to_complex() const {
    std::vector<VertexId> old_to_new(parent_->num_vertices(), VertexId(-1));
    std::vector<std::string> names;
    if (!member_.empty()) {
        for (std::size_t i = 0; i < member_[0].size(); ++i) {
            if (member_[0][i]) {
                old_to_new[parent_->simplices(0)[i][0]] = static_cast<VertexId>(names.size());
                names.push_back(parent_->vertex_names()[parent_->simplices(0)[i][0]]);
            }
        }
    }
    std::vector<Simplex> tops;
    for (std::size_t d = 1; d < member_.size(); ++d) {
        for (std::size_t i = 0; i < member_[d].size(); ++i) {
            if (!member_[d][i]) continue;
            Simplex s;
            for (VertexId v : parent_->simplices(d)[i]) s.push_back(old_to_new[v]);
            tops.push_back(std::move(s));
        }
    }
    return SimplicialComplex::from_maximal_ids(std::move(names), std::move(tops));
}

// ---------------------------------------------------------------------------
// Homology

BettiVector::BettiVector(std::vector<std::size_t> d) : dims(std::move(d)) {
    while (!dims.empty() && dims.back() == 0) dims.pop_back();
}

std::int64_t BettiVector::euler() const { return alternating(dims); }

IntPolynomial BettiVector::polynomial() const {
    std::vector<std::int64_t> c(dims.begin(), dims.end());
    return IntPolynomial(std::move(c));
}

std::string BettiVector::to_string() const {
    if (dims.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < dims.size(); ++i) out += (i ? " " : "") + std::to_string(dims[i]);
    return out;
}

CochainComplex cochain_complex(const SimplicialComplex& k) {
    CochainComplex c;
    const auto top = static_cast<std::size_t>(k.dim() + 1);
    for (std::size_t d = 0; d < top; ++d) {
        c.dims.push_back(k.count(d));
        c.coboundary.push_back(k.coboundary(d));
    }
    return c;
}

CochainComplex relative_cochain_complex(const PairSpace& p) {
    const SimplicialComplex& k = *p.total;
    const auto top = static_cast<std::size_t>(k.dim() + 1);
    std::vector<std::vector<std::size_t>> keep(top);
    for (std::size_t d = 0; d < top; ++d)
        for (std::size_t i = 0; i < k.count(d); ++i)
            if (!p.boundary.contains(d, i)) keep[d].push_back(i);
    CochainComplex c;
    for (std::size_t d = 0; d < top; ++d) {
        c.dims.push_back(keep[d].size());
        const gf2::Matrix full = k.coboundary(d);
        const std::size_t next = d + 1 < top ? keep[d + 1].size() : 0;
        gf2::Matrix m(next, keep[d].size());
        for (std::size_t r = 0; r < next; ++r)
            for (std::size_t col = 0; col < keep[d].size(); ++col)
                if (full.get(keep[d + 1][r], keep[d][col])) m.set(r, col);
        c.coboundary.push_back(std::move(m));
    }
    return c;
}

BettiVector cohomology_dims(const CochainComplex& c, gf2::Exec exec) {
    std::vector<std::size_t> ranks(c.dims.size(), 0);
    for (std::size_t d = 0; d < c.dims.size(); ++d) ranks[d] = gf2::rank(c.coboundary[d], exec);
    std::vector<std::size_t> out(c.dims.size(), 0);
    for (std::size_t d = 0; d < c.dims.size(); ++d) {
        const std::size_t incoming = d > 0 ? ranks[d - 1] : 0;
        out[d] = c.dims[d] - ranks[d] - incoming;
    }
    return BettiVector(std::move(out));
}

BettiVector betti_mod2(const SimplicialComplex& k, gf2::Exec exec) {
    const auto top = static_cast<std::size_t>(k.dim() + 1);
    // boundary_d : C_d -> C_{d-1} is the transpose of the coboundary C^{d-1} -> C^d.
    std::vector<std::size_t> boundary_rank(top + 1, 0);
    for (std::size_t d = 1; d < top; ++d) boundary_rank[d] = gf2::rank(k.coboundary(d - 1).transpose(), exec);
    std::vector<std::size_t> out(top, 0);
    for (std::size_t d = 0; d < top; ++d) {
        const std::size_t cycles = k.count(d) - boundary_rank[d];
        out[d] = cycles - boundary_rank[d + 1];
    }
    return BettiVector(std::move(out));
}

BettiVector cohomology_betti_mod2(const SimplicialComplex& k, gf2::Exec exec) {
    return cohomology_dims(cochain_complex(k), exec);
}

BettiVector betti_compact_supports(const PairSpace& p, gf2::Exec exec) {
    return cohomology_dims(relative_cochain_complex(p), exec);
}

IntPolynomial poincare_polynomial(const SimplicialComplex& k) { return betti_mod2(k).polynomial(); }

std::int64_t euler_characteristic(const SimplicialComplex& k) { return alternating(k.f_vector()); }

std::int64_t euler_compact_supports(const PairSpace& p) { return betti_compact_supports(p).euler(); }

std::int64_t euler_compact_supports_by_count(const PairSpace& p) {
    std::vector<std::size_t> counts;
    for (std::size_t d = 0; d < static_cast<std::size_t>(p.total->dim() + 1); ++d)
        counts.push_back(p.total->count(d) - p.boundary.count(d));
    return alternating(counts);
}

// ---------------------------------------------------------------------------
// Constructions

SimplicialComplex disjoint_union(const SimplicialComplex& a, const SimplicialComplex& b,
                                 std::string_view left_tag, std::string_view right_tag) {
    std::vector<std::string> names;
    for (const auto& n : a.vertex_names()) names.push_back(std::string(left_tag) + n);
    for (const auto& n : b.vertex_names()) names.push_back(std::string(right_tag) + n);
    const auto shift = static_cast<VertexId>(a.num_vertices());
    std::vector<Simplex> tops = a.maximal_simplices();
    for (Simplex s : b.maximal_simplices()) {
        for (auto& v : s) v += shift;
        tops.push_back(std::move(s));
    }
    return SimplicialComplex::from_maximal_ids(std::move(names), std::move(tops));
}

SimplicialComplex product_complex(const SimplicialComplex& a, const SimplicialComplex& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t nb = b.num_vertices();
    std::vector<std::string> names;
    names.reserve(a.num_vertices() * nb);
    for (const auto& x : a.vertex_names())
        for (const auto& y : b.vertex_names()) names.push_back("(" + x + "," + y + ")");

    std::vector<Simplex> tops;
    const auto max_a = a.maximal_simplices();
    const auto max_b = b.maximal_simplices();
    for (const Simplex& sa : max_a) {
        for (const Simplex& sb : max_b) {
            const std::size_t p = sa.size() - 1, q = sb.size() - 1;
            // Each monotone lattice path (0,0) -> (p,q) with unit steps is one
            // top simplex; a bitmask of length p+q marks the steps taken in a.
            for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (p + q)); ++mask) {
                if (static_cast<std::size_t>(std::popcount(mask)) != p) continue;
                Simplex s;
                std::size_t i = 0, j = 0;
                s.push_back(static_cast<VertexId>(sa[i] * nb + sb[j]));
                for (std::size_t step = 0; step < p + q; ++step) {
                    if (mask & (std::uint64_t(1) << step)) ++i;
                    else ++j;
                    s.push_back(static_cast<VertexId>(sa[i] * nb + sb[j]));
                }
                tops.push_back(std::move(s));
            }
        }
    }
    return SimplicialComplex::from_maximal_ids(std::move(names), std::move(tops));
}

std::vector<OpenComponent> open_components(const PairSpace& p) {
    const SimplicialComplex& k = *p.total;
    const auto top = static_cast<std::size_t>(k.dim() + 1);
    std::vector<std::size_t> offset(top + 1, 0);
    for (std::size_t d = 0; d < top; ++d) offset[d + 1] = offset[d] + k.count(d);
    std::vector<std::size_t> parent(offset[top]);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    // Two open simplices outside the boundary lie in one component when one
    // is a facet of the other; longer face chains pass through such steps.
    for (std::size_t d = 1; d < top; ++d) {
        for (std::size_t i = 0; i < k.count(d); ++i) {
            if (p.boundary.contains(d, i)) continue;
            const Simplex& s = k.simplices(d)[i];
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                Simplex face = s;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                const std::size_t fi = *k.index_of(face);
                if (p.boundary.contains(d - 1, fi)) continue;
                parent[find(offset[d] + i)] = find(offset[d - 1] + fi);
            }
        }
    }
    std::map<std::size_t, OpenComponent> by_root;
    for (std::size_t d = 0; d < top; ++d) {
        for (std::size_t i = 0; i < k.count(d); ++i) {
            if (p.boundary.contains(d, i)) continue;
            OpenComponent& c = by_root[find(offset[d] + i)];
            if (c.f_vector.size() <= d) c.f_vector.resize(d + 1, 0);
            ++c.f_vector[d];
        }
    }
    std::vector<OpenComponent> out;
    for (auto& [root, c] : by_root) {
        c.euler_compact = alternating(c.f_vector);
        out.push_back(std::move(c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Simplicial maps

SimplicialMap::SimplicialMap(ComplexPtr source, ComplexPtr target, std::vector<VertexId> vertex_map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(vertex_map)) {
    if (map_.size() != source_->num_vertices())
        throw Error(ErrorCode::InvalidMap, "vertex map must cover every source vertex");
    for (std::size_t d = 0; d < static_cast<std::size_t>(source_->dim() + 1); ++d) {
        for (const Simplex& s : source_->simplices(d)) {
            Simplex img;
            for (VertexId v : s) img.push_back(map_[v]);
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            if (!target_->contains(img))
                throw Error(ErrorCode::InvalidMap, "image of a simplex is not a simplex of the target",
                            join_names(source_->to_names(s)));
        }
    }
}

SimplicialMap SimplicialMap::by_name(ComplexPtr source, ComplexPtr target, const std::map<std::string, std::string>& vertex_map) {
    std::vector<VertexId> m;
    for (const auto& name : source->vertex_names()) {
        auto it = vertex_map.find(name);
        if (it == vertex_map.end()) throw Error(ErrorCode::InvalidMap, "vertex has no image", name);
        auto id = target->vertex_id(it->second);
        if (!id) throw Error(ErrorCode::UnknownVertex, "unknown target vertex '" + it->second + "'");
        m.push_back(*id);
    }
    return SimplicialMap(std::move(source), std::move(target), std::move(m));
}

gf2::Matrix SimplicialMap::cochain_pullback(std::size_t d) const {
    gf2::Matrix m(source_->count(d), target_->count(d));
    for (std::size_t r = 0; r < source_->count(d); ++r) {
        Simplex img;
        for (VertexId v : source_->simplices(d)[r]) img.push_back(map_[v]);
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end()) continue;  // degenerate image
        m.set(r, *target_->index_of(img));
    }
    return m;
}

gf2::Subspace cocycles(const SimplicialComplex& k, std::size_t d) { return gf2::kernel_basis(k.coboundary(d)); }

gf2::Subspace coboundaries(const SimplicialComplex& k, std::size_t d) {
    if (d == 0) return gf2::Subspace::zero(k.count(0));
    return gf2::image_basis(k.coboundary(d - 1));
}

gf2::Subspace cohomology_image(const SimplicialMap& f, std::size_t d) {
    const auto image = gf2::image_of(f.cochain_pullback(d), cocycles(f.target(), d));
    return image.sum(coboundaries(f.source(), d));
}

gf2::Subspace cohomology_kernel(const SimplicialMap& f, std::size_t d) {
    const auto pre = gf2::preimage(f.cochain_pullback(d), coboundaries(f.source(), d));
    return pre.intersect(cocycles(f.target(), d));
}

std::size_t cohomology_rank(const SimplicialMap& f, std::size_t d) {
    return gf2::quotient_dim(cohomology_image(f, d), coboundaries(f.source(), d));
}

} // namespace vbetti

#ifndef VBETTI_COMPLEX_HPP
#define VBETTI_COMPLEX_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vbetti/gf2.hpp"
#include "vbetti/polynomial.hpp"

namespace vbetti {

using VertexId = std::uint32_t;
/// Vertex ids in strictly increasing order.
using Simplex = std::vector<VertexId>;
using NamedSimplex = std::vector<std::string>;

/// Complexes larger than this are rejected with Error(SizeLimit).
inline constexpr std::size_t kMaxSimplices = 100000;

/// Finite abstract simplicial complex. Always face-closed; every vertex is a
/// 0-simplex. Vertex ids follow the order of vertex_names(), and simplices of
/// each dimension are kept in lexicographic order, which fixes the row and
/// column order of every coboundary matrix.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Face closure of the given maximal simplices. Throws UnknownVertex,
    /// InvalidSimplex (repeated vertex) or SizeLimit.
    static SimplicialComplex from_maximal(std::vector<std::string> vertices, const std::vector<NamedSimplex>& maximal);
    static SimplicialComplex from_maximal_ids(std::vector<std::string> vertices, std::vector<Simplex> maximal);
    /// Takes an explicit simplex list and checks it is already face-closed.
    static SimplicialComplex from_simplices(std::vector<std::string> vertices, const std::vector<NamedSimplex>& simplices);

    bool empty() const noexcept { return names_.empty(); }
    /// -1 for the empty complex.
    int dim() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }
    std::size_t num_vertices() const noexcept { return names_.size(); }
    std::size_t count(std::size_t d) const noexcept { return d < by_dim_.size() ? by_dim_[d].size() : 0; }
    std::size_t size() const noexcept;
    std::vector<std::size_t> f_vector() const;

    const std::vector<std::string>& vertex_names() const noexcept { return names_; }
    std::optional<VertexId> vertex_id(std::string_view name) const;
    const std::vector<Simplex>& simplices(std::size_t d) const;
    std::optional<std::size_t> index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }
    std::vector<Simplex> maximal_simplices() const;

    Simplex to_ids(const NamedSimplex& named) const;
    NamedSimplex to_names(const Simplex& s) const;

    /// Coboundary C^d -> C^{d+1}: rows are (d+1)-simplices, columns d-simplices.
    gf2::Matrix coboundary(std::size_t d) const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.names_ == b.names_ && a.by_dim_ == b.by_dim_;
    }

private:
    void index();

    std::vector<std::string> names_;
    std::unordered_map<std::string, VertexId> ids_;
    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<std::map<Simplex, std::size_t>> position_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

inline ComplexPtr share(SimplicialComplex k) { return std::make_shared<const SimplicialComplex>(std::move(k)); }

/// Face-closed subset of a parent complex's simplices.
class Subcomplex {
public:
    Subcomplex() = default;
    /// The empty subcomplex of `parent`.
    explicit Subcomplex(ComplexPtr parent);
    static Subcomplex whole(ComplexPtr parent);
    /// Closure of `maximal` inside parent; InvalidSubcomplex if a simplex is not in parent.
    static Subcomplex from_maximal(ComplexPtr parent, const std::vector<Simplex>& maximal);
    static Subcomplex from_maximal(ComplexPtr parent, const std::vector<NamedSimplex>& maximal);

    const SimplicialComplex& parent() const noexcept { return *parent_; }
    const ComplexPtr& parent_ptr() const noexcept { return parent_; }
    bool contains(std::size_t d, std::size_t index) const noexcept {
        return d < member_.size() && member_[d][index];
    }
    bool contains(const Simplex& s) const;
    std::size_t count(std::size_t d) const noexcept;
    std::size_t size() const noexcept;
    bool empty() const noexcept { return size() == 0; }

    Subcomplex intersect(const Subcomplex& other) const;
    Subcomplex unite(const Subcomplex& other) const;
    std::vector<Simplex> maximal_simplices() const;
    /// Standalone complex on the vertices used here, keeping names and relative order.
    SimplicialComplex to_complex() const;

    friend bool operator==(const Subcomplex& a, const Subcomplex& b) {
        return *a.parent_ == *b.parent_ && a.member_ == b.member_;
    }

private:
    ComplexPtr parent_;
    std::vector<std::vector<bool>> member_;
};

/// |total| minus |boundary|: a locally compact space presented by a
/// compactification and the subcomplex removed from it.
struct PairSpace {
    ComplexPtr total;
    Subcomplex boundary;

    static PairSpace absolute(ComplexPtr k) { return {k, Subcomplex(k)}; }
    friend bool operator==(const PairSpace& a, const PairSpace& b) { return a.boundary == b.boundary; }
};

/// Mod-2 Betti numbers, trailing zeros trimmed.
struct BettiVector {
    std::vector<std::size_t> dims;

    BettiVector() = default;
    explicit BettiVector(std::vector<std::size_t> d);
    std::size_t operator[](std::size_t i) const noexcept { return i < dims.size() ? dims[i] : 0; }
    std::int64_t euler() const;
    IntPolynomial polynomial() const;
    /// "1 1 8"; "0" when all dimensions vanish.
    std::string to_string() const;
    friend bool operator==(const BettiVector&, const BettiVector&) = default;
};

/// Cochain complex of GF(2) vector spaces: coboundary[d] maps degree d to d+1.
struct CochainComplex {
    std::vector<std::size_t> dims;
    std::vector<gf2::Matrix> coboundary;
};

CochainComplex cochain_complex(const SimplicialComplex& k);
/// Cochains vanishing on the boundary: the cochain complex of the pair.
CochainComplex relative_cochain_complex(const PairSpace& p);
/// dim ker d^i - rank d^{i-1} in every degree.
BettiVector cohomology_dims(const CochainComplex& c, gf2::Exec exec = gf2::Exec::parallel);

/// Checks a raw simplex list for face closure. Throws NotFaceClosed naming
/// the simplex whose face is missing, or UnknownVertex.
void validate(const std::vector<std::string>& vertices, const std::vector<NamedSimplex>& simplices);

/// dim H_i from boundary matrices: dim ker(boundary_i) - dim im(boundary_{i+1}).
BettiVector betti_mod2(const SimplicialComplex& k, gf2::Exec exec = gf2::Exec::parallel);
/// Same numbers computed from coboundaries (cohomology side).
BettiVector cohomology_betti_mod2(const SimplicialComplex& k, gf2::Exec exec = gf2::Exec::parallel);
/// Cohomology with compact supports of |total| \ |boundary|.
BettiVector betti_compact_supports(const PairSpace& p, gf2::Exec exec = gf2::Exec::parallel);
IntPolynomial poincare_polynomial(const SimplicialComplex& k);

/// Alternating simplex count.
std::int64_t euler_characteristic(const SimplicialComplex& k);
/// Alternating sum of compactly supported Betti numbers.
std::int64_t euler_compact_supports(const PairSpace& p);
/// Alternating count of simplices of total that are not in boundary.
std::int64_t euler_compact_supports_by_count(const PairSpace& p);

/// Vertex names become left_tag + name and right_tag + name.
SimplicialComplex disjoint_union(const SimplicialComplex& a, const SimplicialComplex& b,
                                 std::string_view left_tag = "1.", std::string_view right_tag = "2.");
/// Staircase triangulation of |a| x |b|; vertex (x, y) is named "(x,y)".
SimplicialComplex product_complex(const SimplicialComplex& a, const SimplicialComplex& b);

/// One connected component of |total| \ |boundary|, as a union of open simplices.
struct OpenComponent {
    std::vector<std::size_t> f_vector;
    std::int64_t euler_compact = 0;
};
std::vector<OpenComponent> open_components(const PairSpace& p);

/// Vertex map between complexes that sends simplices to simplices.
class SimplicialMap {
public:
    /// Throws InvalidMap if some simplex's image is not a simplex of target.
    SimplicialMap(ComplexPtr source, ComplexPtr target, std::vector<VertexId> vertex_map);
    static SimplicialMap by_name(ComplexPtr source, ComplexPtr target,
                                 const std::map<std::string, std::string>& vertex_map);

    const SimplicialComplex& source() const noexcept { return *source_; }
    const SimplicialComplex& target() const noexcept { return *target_; }
    /// Pullback C^d(target) -> C^d(source).
    gf2::Matrix cochain_pullback(std::size_t d) const;

private:
    ComplexPtr source_;
    ComplexPtr target_;
    std::vector<VertexId> map_;
};

gf2::Subspace cocycles(const SimplicialComplex& k, std::size_t d);
gf2::Subspace coboundaries(const SimplicialComplex& k, std::size_t d);
/// Image of f^*: H^d(target) -> H^d(source), as a subspace of C^d(source) containing B^d(source).
gf2::Subspace cohomology_image(const SimplicialMap& f, std::size_t d);
/// Kernel of f^*: H^d(target) -> H^d(source), as a subspace of C^d(target) containing B^d(target).
gf2::Subspace cohomology_kernel(const SimplicialMap& f, std::size_t d);
std::size_t cohomology_rank(const SimplicialMap& f, std::size_t d);

} // namespace vbetti

#endif

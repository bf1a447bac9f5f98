#ifndef VBETTI_SCISSOR_HPP
#define VBETTI_SCISSOR_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vbetti/complex.hpp"
#include "vbetti/polynomial.hpp"

namespace vbetti {

enum class ProvenanceKind { declared, computed_from_model, computed_recursively };

std::string_view to_string(ProvenanceKind kind);

struct Provenance {
    ProvenanceKind kind = ProvenanceKind::declared;
    /// Model or stratification the value came from; free text for declared atoms.
    std::string source;
    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Finished invariants of one named variety. beta and chi_c are obtained by
/// separate routes whenever a model is available.
struct AtomRecord {
    IntPolynomial beta;
    std::int64_t chi_c = 0;
    Provenance provenance;
    bool compact_nonsingular = false;
    friend bool operator==(const AtomRecord&, const AtomRecord&) = default;
};

class AtomRegistry {
public:
    /// Throws InvalidAtom on a duplicate name, or when a compact nonsingular
    /// atom has a negative coefficient.
    void add(const std::string& name, AtomRecord record);
    /// chi_c defaults to beta(-1) when not given.
    void declare(const std::string& name, IntPolynomial beta, std::optional<std::int64_t> chi_c = std::nullopt,
                 bool compact_nonsingular = false, std::string note = {});
    /// Compact nonsingular model: beta from mod-2 homology, chi_c from simplex counts.
    void add_compact_model(const std::string& name, const SimplicialComplex& model, std::string source = {});

    bool contains(const std::string& name) const { return atoms_.count(name) != 0; }
    /// Throws UnknownAtom.
    const AtomRecord& at(const std::string& name) const;
    const std::map<std::string, AtomRecord>& records() const noexcept { return atoms_; }

    friend bool operator==(const AtomRegistry&, const AtomRegistry&) = default;

private:
    std::map<std::string, AtomRecord> atoms_;
};

/// Which side of a blowup quadruple a Blowup node stands for.
enum class BlowupSide { total, base };

/// Immutable expression tree presenting an element of the Grothendieck ring.
/// ClosedDifference(X, Y) is [X] - [Y] for Y closed in X; closedness is the
/// caller's assertion. A Blowup node stands for [Bl_C X] (side total) or [X]
/// (side base); the side it stands for may be omitted and is then recovered
/// from [Bl_C X] - [E] = [X] - [C]. When both are present the relation is
/// checked during evaluation.
class ScissorExpr {
public:
    enum class Kind { empty, atom, disjoint_union, product, closed_difference, blowup };

    struct BlowupParts;

    ScissorExpr();  // empty
    static ScissorExpr empty() { return {}; }
    static ScissorExpr atom(std::string name);
    static ScissorExpr disjoint_union(ScissorExpr a, ScissorExpr b);
    static ScissorExpr product(ScissorExpr a, ScissorExpr b);
    static ScissorExpr closed_difference(ScissorExpr total, ScissorExpr closed_sub);
    static ScissorExpr blowup(BlowupParts parts);

    Kind kind() const noexcept;
    const std::string& name() const noexcept;
    /// Children: union/product (left, right); difference (total, closed_sub);
    /// blowup (blowup_total, exceptional, base, center), absent ones null.
    const ScissorExpr* child(std::size_t i) const noexcept;
    BlowupSide side() const noexcept;

    std::set<std::string> atoms() const;
    std::size_t node_count() const;
    std::string to_string() const;

    friend bool operator==(const ScissorExpr& a, const ScissorExpr& b);

private:
    struct Node;
    explicit ScissorExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct ScissorExpr::BlowupParts {
    std::optional<ScissorExpr> blowup_total;
    ScissorExpr exceptional;
    std::optional<ScissorExpr> base;
    ScissorExpr center;
    BlowupSide side = BlowupSide::total;
};

/// Atoms with declared provenance met while evaluating.
struct EvaluationTrace {
    std::set<std::string> declared_atoms;
};

/// Structural recursion into Z[t]. Throws UnknownAtom, BlowupMismatch.
IntPolynomial evaluate_beta(const ScissorExpr& e, const AtomRegistry& reg, EvaluationTrace* trace = nullptr);
/// Same recursion on the integer chi_c of each atom.
std::int64_t evaluate_chi_c(const ScissorExpr& e, const AtomRegistry& reg);

struct BlowupVerdict {
    bool holds = false;
    /// Lowest degree where bl - e and x - c differ.
    std::optional<std::size_t> first_failing_degree;
    IntPolynomial lhs;  // bl - e
    IntPolynomial rhs;  // x - c
};

/// Does bl - e = x - c hold as polynomials?
BlowupVerdict check_blowup_relation(const IntPolynomial& x, const IntPolynomial& c,
                                    const IntPolynomial& bl, const IntPolynomial& e);

struct DegreeVerdict {
    bool holds = false;
    IntPolynomial beta;
    std::string diagnostic;
};

/// Nonempty variety of dimension claimed_dim must have a nonzero class whose
/// degree is claimed_dim with positive leading coefficient.
DegreeVerdict degree_report(const ScissorExpr& e, const AtomRegistry& reg, std::size_t claimed_dim);
DegreeVerdict degree_report(const IntPolynomial& beta, std::size_t claimed_dim);

} // namespace vbetti

#endif

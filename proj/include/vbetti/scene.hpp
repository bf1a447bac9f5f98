#ifndef VBETTI_SCENE_HPP
#define VBETTI_SCENE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vbetti/complex.hpp"
#include "vbetti/mvss.hpp"
#include "vbetti/polynomial.hpp"
#include "vbetti/scissor.hpp"
#include "vbetti/strata.hpp"
#include "vbetti/weights.hpp"

namespace vbetti {

inline constexpr int kSceneSchemaVersion = 1;

/// |total| minus the subcomplex spanned by `boundary` (maximal simplices, by vertex name).
struct PairDef {
    std::string total;
    std::vector<NamedSimplex> boundary;
    friend bool operator==(const PairDef&, const PairDef&) = default;
};

struct StratumDef {
    enum class Kind { compact, open, declared };
    std::string name;
    std::size_t dim = 0;
    Kind kind = Kind::compact;
    std::string complex;                 // compact
    std::string pair;                    // open
    std::string boundary_stratification; // open, optional
    bool boundary_nonsingular = false;   // open
    IntPolynomial beta;                  // declared
    std::optional<std::int64_t> chi_c;   // declared
    friend bool operator==(const StratumDef&, const StratumDef&) = default;
};

struct StratificationDef {
    std::vector<StratumDef> strata;
    std::map<std::string, std::set<std::string>> frontier;
    friend bool operator==(const StratificationDef&, const StratificationDef&) = default;
};

struct AtomDef {
    enum class Kind { declared, complex, stratification };
    Kind kind = Kind::declared;
    IntPolynomial beta;                 // declared
    std::optional<std::int64_t> chi_c;  // declared
    bool compact_nonsingular = false;   // declared
    std::string ref;                    // complex or stratification name
    std::string note;
    friend bool operator==(const AtomDef&, const AtomDef&) = default;
};

/// Where a polynomial comes from: a literal or a named object of the scene.
struct PolySource {
    enum class Kind { literal, atom, complex, expression, stratification };
    Kind kind = Kind::literal;
    IntPolynomial literal;
    std::string ref;

    static PolySource of(IntPolynomial p) { return {Kind::literal, std::move(p), {}}; }
    static PolySource named(Kind k, std::string name) { return {k, {}, std::move(name)}; }
    friend bool operator==(const PolySource&, const PolySource&) = default;
};

struct CoverDef {
    std::vector<std::pair<std::string, PolySource>> pieces;
    /// Keys list piece names; every subset of two or more pieces needs an entry.
    std::vector<std::pair<std::vector<std::string>, PolySource>> intersections;
    friend bool operator==(const CoverDef&, const CoverDef&) = default;
};

struct ArrangementDef {
    std::string total;
    /// Piece name and its maximal simplices by vertex name.
    std::vector<std::pair<std::string, std::vector<NamedSimplex>>> pieces;
    friend bool operator==(const ArrangementDef&, const ArrangementDef&) = default;
};

struct ConstraintDef {
    std::string text;
    std::string note;
    friend bool operator==(const ConstraintDef&, const ConstraintDef&) = default;
};

struct WeightInputDef {
    WeightSystemInput input;
    std::vector<ConstraintDef> constraints;
    bool compact_nonsingular = false;
    friend bool operator==(const WeightInputDef&, const WeightInputDef&) = default;
};

/// Quadruple (X, C, Bl_C X, E) to test against the blowup relation.
struct BlowupDef {
    PolySource x, center, blowup, exceptional;
    bool expect_holds = true;
    std::string note;
    friend bool operator==(const BlowupDef&, const BlowupDef&) = default;
};

/// Named objects of one scene file. Every section is a map keyed by name;
/// different sections may reuse a name for the same space.
struct Scene {
    std::map<std::string, ComplexPtr> complexes;
    std::map<std::string, PairDef> pairs;
    std::map<std::string, AtomDef> atoms;
    std::map<std::string, ScissorExpr> expressions;
    std::map<std::string, StratificationDef> stratifications;
    std::map<std::string, CoverDef> covers;
    std::map<std::string, ArrangementDef> arrangements;
    std::map<std::string, WeightInputDef> weight_inputs;
    std::map<std::string, BlowupDef> blowups;

    /// Resolves every cross-reference and rejects reference cycles. Throws
    /// InvalidScene naming the dangling reference.
    void validate() const;

    friend bool operator==(const Scene& a, const Scene& b);
};

/// Parses JSON text; throws ParseError on malformed JSON, InvalidScene on
/// schema violations. The result is validated.
Scene parse_scene(std::string_view json_text);
Scene load_scene_file(const std::string& path);
/// Canonical JSON (sorted keys, two-space indent).
std::string serialize_scene(const Scene& scene);

/// A polynomial together with an independently computed chi_c.
struct Valued {
    IntPolynomial beta;
    std::int64_t chi_c = 0;
    std::vector<Diagnostic> diagnostics;
    std::set<std::string> declared_atoms;
};

/// Resolves scene names into computational objects, caching what it builds.
/// Not thread-safe; use one per thread.
class SceneEvaluator {
public:
    explicit SceneEvaluator(const Scene& scene, EngineOptions options = {});

    const Scene& scene() const noexcept { return scene_; }
    const EngineOptions& options() const noexcept { return options_; }

    /// Each lookup throws UnknownName when the name is absent from its section.
    ComplexPtr complex(const std::string& name) const;
    PairSpace pair(const std::string& name) const;
    std::shared_ptr<const StratifiedSpec> stratification(const std::string& name);
    const AtomRegistry& registry();
    Arrangement arrangement(const std::string& name) const;

    Valued expression(const std::string& name);
    Valued stratified(const std::string& name);
    /// Inclusion-exclusion for beta and, separately, for chi_c.
    Valued cover(const std::string& name);
    Valued source(const PolySource& s);
    BlowupVerdict blowup(const std::string& name);

    /// First match among expressions, stratifications, covers, atoms.
    Valued target(const std::string& name);
    /// Which section target() would use, or empty.
    std::string target_kind(const std::string& name) const;

private:
    const Scene& scene_;
    EngineOptions options_;
    std::map<std::string, std::shared_ptr<const StratifiedSpec>> strat_cache_;
    std::optional<AtomRegistry> registry_;
    std::set<std::string> building_;
};

} // namespace vbetti

#endif

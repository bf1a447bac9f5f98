#ifndef VBETTI_STRATA_HPP
#define VBETTI_STRATA_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "vbetti/complex.hpp"
#include "vbetti/error.hpp"
#include "vbetti/exec.hpp"
#include "vbetti/polynomial.hpp"

namespace vbetti {

struct StratifiedSpec;

/// Stratum that is itself compact nonsingular.
struct CompactModel {
    ComplexPtr complex;
};

/// Stratum presented as |total| minus |boundary| where total is asserted to be a
/// nonsingular compactification. The removed part is resolved from, in order:
/// emptiness, being a finite point set, an explicit stratification, or the
/// boundary_nonsingular assertion.
struct OpenModel {
    PairSpace pair;
    std::shared_ptr<const StratifiedSpec> boundary_stratification;
    bool boundary_nonsingular = false;
};

struct DeclaredBeta {
    IntPolynomial beta;
    std::optional<std::int64_t> chi_c;
};

using StratumModel = std::variant<CompactModel, OpenModel, DeclaredBeta>;

struct StratumRecord {
    std::string name;
    std::size_t dim = 0;
    StratumModel model;
};

struct StratifiedSpec {
    std::string name;
    std::vector<StratumRecord> strata;
    /// stratum -> strata whose union is its frontier.
    std::map<std::string, std::set<std::string>> frontier;

    /// Unique names, frontier entries naming known strata of strictly smaller
    /// dimension. Throws InvalidStratification.
    void validate() const;
    const StratumRecord* find(const std::string& name) const;
};

struct EngineOptions {
    /// Turn DimensionMismatch diagnostics into errors.
    bool strict = false;
    Exec exec = Exec::parallel;
};

struct Diagnostic {
    ErrorCode code;
    std::string where;
    std::string message;
    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// beta and chi_c come from separate computations: beta from homology and the
/// boundary recursion, chi_c from simplex counts of the models.
struct StratumValue {
    IntPolynomial beta;
    std::int64_t chi_c = 0;
    std::vector<Diagnostic> diagnostics;
};

/// Throws MissingBoundaryData, BoundaryMismatch, and DimensionMismatch when strict.
StratumValue beta_of_stratum(const StratumRecord& s, const EngineOptions& opt = {});
/// Sum over strata, followed by the degree law for the whole space.
StratumValue beta_of_stratified(const StratifiedSpec& x, const EngineOptions& opt = {});

/// Alternating sum over nonempty index subsets. Singletons come from `pieces`;
/// every larger subset must appear in `intersections` (sorted indices), else
/// MissingIntersection naming it.
IntPolynomial inclusion_exclusion(const std::vector<std::pair<std::string, IntPolynomial>>& pieces,
                                  const std::map<std::vector<std::size_t>, IntPolynomial>& intersections);

struct RefinementVerdict {
    bool holds = false;
    /// Coarse stratum whose sum disagrees, empty when only totals differ.
    std::string failing_stratum;
    std::string message;
};

/// Each coarse stratum's beta against the sum of its fine strata. Throws
/// NotAPartition unless `mapping` sends coarse strata to disjoint sets that
/// cover the fine strata exactly once.
RefinementVerdict refinement_check(const StratifiedSpec& coarse, const StratifiedSpec& fine,
                                   const std::map<std::string, std::set<std::string>>& mapping,
                                   const EngineOptions& opt = {});

} // namespace vbetti

#endif

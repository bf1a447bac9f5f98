#ifndef VBETTI_WEIGHTS_HPP
#define VBETTI_WEIGHTS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vbetti/exec.hpp"

namespace vbetti {

struct WeightSystemInput {
    std::vector<std::int64_t> b;     // b_0..b_n, nonnegative
    std::vector<std::int64_t> beta;  // beta_0..beta_n

    /// Top degree; lengths must agree (checked by validate).
    std::size_t n() const noexcept { return b.empty() ? 0 : b.size() - 1; }
    /// Throws InvalidInput on length mismatch or negative b_i.
    void validate() const;
    friend bool operator==(const WeightSystemInput&, const WeightSystemInput&) = default;
};

/// Triangular array w(i, j), 0 <= j <= i <= n, stored in the order
/// w00, w10, w11, w20, w21, w22, ...
class WeightArray {
public:
    WeightArray() = default;
    explicit WeightArray(std::size_t n);
    /// Rows of the triangle: values[i] holds w(i,0..i).
    static WeightArray from_rows(const std::vector<std::vector<std::int64_t>>& rows);

    /// Empty when there are no degrees at all.
    std::size_t degrees() const noexcept { return degrees_; }
    std::int64_t at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, std::int64_t value);
    const std::vector<std::int64_t>& values() const noexcept { return values_; }

    /// Sum of the i-th diagonal, w(i,0) + ... + w(i,i).
    std::int64_t diagonal_sum(std::size_t i) const;
    /// (-1)^j * sum_i (-1)^i w(i,j).
    std::int64_t row_alternating_sum(std::size_t j) const;

    /// "{1; 0,1; 3,2,3}".
    std::string to_string() const;

    friend bool operator==(const WeightArray&, const WeightArray&) = default;
    friend auto operator<=>(const WeightArray& a, const WeightArray& b) { return a.values_ <=> b.values_; }

private:
    static std::size_t slot(std::size_t i, std::size_t j) noexcept { return i * (i + 1) / 2 + j; }
    std::size_t degrees_ = 0;
    std::vector<std::int64_t> values_;
};

/// Dimension profile of a filtration, laid out like WeightArray.
using FiltrationProfile = WeightArray;

/// All nonnegative arrays with diagonal sums b_i and row alternating sums
/// beta_j, sorted lexicographically. Empty when infeasible.
std::vector<WeightArray> solve_weight_system(const WeightSystemInput& input, Exec exec = Exec::parallel);

struct ConditionFlags {
    bool compact_nonsingular = false;
};

struct ConditionReport {
    bool diagonal_sums = false;
    bool virtual_betti = false;
    std::optional<std::size_t> virtual_betti_failing_row;
    /// w(i,j) = 0 whenever j < i.
    bool manifold = false;
    std::optional<std::pair<std::size_t, std::size_t>> manifold_witness;
    /// Set only when flagged compact nonsingular: diagonal array with w(i,i) = b_i = beta_i.
    std::optional<bool> compact_nonsingular_consistent;
};

ConditionReport check_conditions(const WeightArray& w, const WeightSystemInput& input, const ConditionFlags& flags = {});

enum class Relation { le, ge, eq };

/// sum coeff * w(i,j) (relation) rhs, with an optional note saying where it comes from.
struct LinearConstraint {
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> terms;
    Relation relation = Relation::ge;
    std::int64_t rhs = 0;
    std::string note;

    /// Accepts "2*w21 - w10 >= 3", "w[2,1] + 1 = w22", "w10 <= 0". Both sides
    /// may be linear; the result is normalized with all terms on the left.
    /// Throws MalformedConstraint.
    static LinearConstraint parse(const std::string& text, std::string note = {});

    bool satisfied_by(const WeightArray& w) const;
    /// Normalized text, e.g. "w21 >= 3".
    std::string to_string() const;
    friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

struct FilterStep {
    LinearConstraint constraint;
    std::size_t removed = 0;
    std::size_t remaining = 0;
};

struct FilterResult {
    std::vector<WeightArray> kept;
    std::vector<FilterStep> steps;
    /// Constraint after which nothing was left, when infeasible.
    std::optional<LinearConstraint> violated;
    bool infeasible() const noexcept { return kept.empty(); }
    /// "INFEASIBLE (violates: w21 >= 3)" or "FEASIBLE (k solutions)".
    std::string summary() const;
};

/// Constraints are applied in order. Throws MalformedConstraint when a
/// constraint mentions w(i,j) outside the arrays.
FilterResult constraint_filter(const std::vector<WeightArray>& solutions, const std::vector<LinearConstraint>& constraints);

struct RowMismatch {
    std::size_t row = 0;
    std::int64_t actual = 0;
    std::int64_t expected = 0;
    friend bool operator==(const RowMismatch&, const RowMismatch&) = default;
};

struct ProfileVerdict {
    bool holds = false;
    std::vector<RowMismatch> failures;
};

/// Do the profile's row alternating sums equal beta?
ProfileVerdict mv_profile_vs_virtual_betti(const FiltrationProfile& profile, const std::vector<std::int64_t>& beta);

} // namespace vbetti

#endif

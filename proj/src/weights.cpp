#include "vbetti/weights.hpp"

#include <algorithm>
#include <cctype>

#include "vbetti/error.hpp"
#include "vbetti/polynomial.hpp"

namespace vbetti {

void WeightSystemInput::validate() const {
    if (b.size() != beta.size())
        throw Error(ErrorCode::InvalidInput, "b and beta have different lengths",
                    std::to_string(b.size()) + " vs " + std::to_string(beta.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i] < 0) throw Error(ErrorCode::InvalidInput, "negative Betti number", "b_" + std::to_string(i));
}

WeightArray::WeightArray(std::size_t n) : degrees_(n), values_(n * (n + 1) / 2, 0) {}

WeightArray WeightArray::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
    WeightArray w(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != i + 1)
            throw Error(ErrorCode::InvalidInput, "row " + std::to_string(i) + " must have " + std::to_string(i + 1) + " entries");
        for (std::size_t j = 0; j <= i; ++j) w.set(i, j, rows[i][j]);
    }
    return w;
}

std::int64_t WeightArray::at(std::size_t i, std::size_t j) const {
    if (j > i || i >= degrees_) return 0;
    return values_[slot(i, j)];
}

void WeightArray::set(std::size_t i, std::size_t j, std::int64_t value) {
    if (j > i || i >= degrees_)
        throw Error(ErrorCode::InvalidInput, "weight index out of range",
                    "w(" + std::to_string(i) + "," + std::to_string(j) + ")");
    values_[slot(i, j)] = value;
}

std::int64_t WeightArray::diagonal_sum(std::size_t i) const {
    std::int64_t s = 0;
    for (std::size_t j = 0; j <= i; ++j) s = checked::add(s, at(i, j));
    return s;
}

std::int64_t WeightArray::row_alternating_sum(std::size_t j) const {
    std::int64_t s = 0;
    for (std::size_t i = j; i < degrees_; ++i) s = (i % 2 == 0) ? checked::add(s, at(i, j)) : checked::sub(s, at(i, j));
    return j % 2 == 0 ? s : -s;
}

std::string WeightArray::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < degrees_; ++i) {
        if (i) out += "; ";
        for (std::size_t j = 0; j <= i; ++j) {
            if (j) out += ",";
            out += std::to_string(at(i, j));
        }
    }
    return out + "}";
}

namespace {

// Every way to write total as an ordered sum of `parts` nonnegative integers.
std::vector<std::vector<std::int64_t>> compositions(std::int64_t total, std::size_t parts) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur(parts, 0);
    auto rec = [&](auto&& self, std::size_t k, std::int64_t left) -> void {
        if (k + 1 == parts) {
            cur[k] = left;
            out.push_back(cur);
            return;
        }
        for (std::int64_t v = 0; v <= left; ++v) {
            cur[k] = v;
            self(self, k + 1, left - v);
        }
    };
    rec(rec, 0, total);
    return out;
}

constexpr std::uint64_t kMaxCandidates = 200'000'000;

} // namespace

std::vector<WeightArray> solve_weight_system(const WeightSystemInput& input, Exec exec) {
    input.validate();
    const std::size_t deg = input.b.size();
    std::vector<std::vector<std::vector<std::int64_t>>> diag(deg);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < deg; ++i) {
        diag[i] = compositions(input.b[i], i + 1);
        total *= diag[i].size();
        if (total > kMaxCandidates)
            throw Error(ErrorCode::InvalidInput, "weight search space too large", std::to_string(total) + "+ candidates");
    }

    auto candidate = [&](std::uint64_t index) {
        WeightArray w(deg);
        for (std::size_t i = deg; i-- > 0;) {
            const auto& c = diag[i][index % diag[i].size()];
            index /= diag[i].size();
            for (std::size_t j = 0; j <= i; ++j) w.set(i, j, c[j]);
        }
        return w;
    };
    auto solves = [&](const WeightArray& w) {
        for (std::size_t j = 0; j < deg; ++j)
            if (w.row_alternating_sum(j) != input.beta[j]) return false;
        return true;
    };

    std::vector<WeightArray> found;
    const auto n = static_cast<std::int64_t>(total);
#pragma omp parallel if (exec == Exec::parallel && n > 1024)
    {
        std::vector<WeightArray> local;
#pragma omp for schedule(static) nowait
        for (std::int64_t k = 0; k < n; ++k) {
            WeightArray w = candidate(static_cast<std::uint64_t>(k));
            if (solves(w)) local.push_back(std::move(w));
        }
#pragma omp critical(vbetti_weights_merge)
        found.insert(found.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
    }
    std::sort(found.begin(), found.end());
    return found;
}

ConditionReport check_conditions(const WeightArray& w, const WeightSystemInput& input, const ConditionFlags& flags) {
    input.validate();
    ConditionReport r;
    const std::size_t deg = input.b.size();
    r.diagonal_sums = w.degrees() == deg;
    for (std::size_t i = 0; i < deg && r.diagonal_sums; ++i) r.diagonal_sums = w.diagonal_sum(i) == input.b[i];

    r.virtual_betti = w.degrees() == deg;
    for (std::size_t j = 0; j < deg; ++j) {
        if (w.row_alternating_sum(j) != input.beta[j]) {
            r.virtual_betti = false;
            r.virtual_betti_failing_row = j;
            break;
        }
    }

    r.manifold = true;
    for (std::size_t i = 0; i < w.degrees() && r.manifold; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (w.at(i, j) != 0) {
                r.manifold = false;
                r.manifold_witness = {i, j};
                break;
            }
        }
    }

    if (flags.compact_nonsingular) {
        bool ok = r.manifold && w.degrees() == deg;
        for (std::size_t i = 0; i < deg && ok; ++i) ok = w.at(i, i) == input.b[i] && input.b[i] == input.beta[i];
        r.compact_nonsingular_consistent = ok;
    }
    return r;
}

// ---------------------------------------------------------------------------

namespace {

class ConstraintParser {
public:
    explicit ConstraintParser(const std::string& text) : s_(text) {}

    LinearConstraint run() {
        LinearConstraint c;
        std::int64_t constant = 0;
        side(c.terms, constant, 1);
        skip_space();
        if (eat("<=")) c.relation = Relation::le;
        else if (eat(">=")) c.relation = Relation::ge;
        else if (eat("==") || eat("=")) c.relation = Relation::eq;
        else fail("expected <=, >= or =");
        side(c.terms, constant, -1);
        skip_space();
        if (pos_ != s_.size()) fail("trailing input");
        std::erase_if(c.terms, [](const auto& kv) { return kv.second == 0; });
        if (c.terms.empty()) fail("no weight variable");
        c.rhs = checked::sub(0, constant);
        return c;
    }

private:
    // Adds sign * (linear expression) into terms/constant.
    void side(std::map<std::pair<std::size_t, std::size_t>, std::int64_t>& terms, std::int64_t& constant,
              std::int64_t sign) {
        bool first = true;
        while (true) {
            skip_space();
            std::int64_t term_sign = 1;
            if (eat("+")) {
            } else if (eat("-")) {
                term_sign = -1;
            } else if (!first) {
                return;
            }
            skip_space();
            std::optional<std::int64_t> coeff = number();
            skip_space();
            bool has_var = false;
            std::pair<std::size_t, std::size_t> var;
            if (coeff && eat("*")) {
                skip_space();
                if (!peek_var()) fail("expected weight variable after '*'");
            }
            if (peek_var()) {
                var = variable();
                has_var = true;
            }
            if (!coeff && !has_var) fail("expected a term");
            const std::int64_t value = checked::mul(checked::mul(sign, term_sign), coeff.value_or(1));
            if (has_var) terms[var] = checked::add(terms[var], value);
            else constant = checked::add(constant, value);
            first = false;
        }
    }

    bool peek_var() const { return pos_ < s_.size() && s_[pos_] == 'w'; }

    std::pair<std::size_t, std::size_t> variable() {
        ++pos_;  // 'w'
        if (eat("[")) {
            skip_space();
            const auto i = number();
            skip_space();
            if (!i || !eat(",")) fail("expected w[i,j]");
            skip_space();
            const auto j = number();
            skip_space();
            if (!j || !eat("]")) fail("expected w[i,j]");
            return check_index(*i, *j);
        }
        if (pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])) &&
            std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            const std::int64_t i = s_[pos_] - '0';
            const std::int64_t j = s_[pos_ + 1] - '0';
            pos_ += 2;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("ambiguous variable; use w[i,j] for indices above 9");
            return check_index(i, j);
        }
        fail("expected wij or w[i,j]");
        return {};
    }

    std::pair<std::size_t, std::size_t> check_index(std::int64_t i, std::int64_t j) {
        if (i < 0 || j < 0 || j > i) fail("weight index needs 0 <= j <= i");
        return {static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
    }

    std::optional<std::int64_t> number() {
        const std::size_t start = pos_;
        std::int64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = checked::add(checked::mul(v, 10), s_[pos_] - '0');
            ++pos_;
        }
        if (pos_ == start) return std::nullopt;
        return v;
    }

    void skip_space() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(std::string_view tok) {
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorCode::MalformedConstraint, why + " at position " + std::to_string(pos_), s_);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

std::string_view relation_text(Relation r) {
    switch (r) {
    case Relation::le: return "<=";
    case Relation::ge: return ">=";
    case Relation::eq: return "=";
    }
    return "?";
}

} // namespace

LinearConstraint LinearConstraint::parse(const std::string& text, std::string note) {
    LinearConstraint c = ConstraintParser(text).run();
    c.note = std::move(note);
    return c;
}

bool LinearConstraint::satisfied_by(const WeightArray& w) const {
    std::int64_t lhs = 0;
    for (const auto& [ij, coeff] : terms) lhs = checked::add(lhs, checked::mul(coeff, w.at(ij.first, ij.second)));
    switch (relation) {
    case Relation::le: return lhs <= rhs;
    case Relation::ge: return lhs >= rhs;
    case Relation::eq: return lhs == rhs;
    }
    return false;
}

std::string LinearConstraint::to_string() const {
    std::string out;
    for (const auto& [ij, coeff] : terms) {
        const std::string var = "w" + (ij.first < 10 && ij.second < 10
                                           ? std::to_string(ij.first) + std::to_string(ij.second)
                                           : "[" + std::to_string(ij.first) + "," + std::to_string(ij.second) + "]");
        const std::int64_t mag = coeff < 0 ? -coeff : coeff;
        if (out.empty()) out += coeff < 0 ? "-" : "";
        else out += coeff < 0 ? " - " : " + ";
        if (mag != 1) out += std::to_string(mag) + "*";
        out += var;
    }
    return out + " " + std::string(relation_text(relation)) + " " + std::to_string(rhs);
}

std::string FilterResult::summary() const {
    if (infeasible()) return "INFEASIBLE (violates: " + (violated ? violated->to_string() : std::string("none")) + ")";
    return "FEASIBLE (" + std::to_string(kept.size()) + (kept.size() == 1 ? " solution)" : " solutions)");
}

FilterResult constraint_filter(const std::vector<WeightArray>& solutions, const std::vector<LinearConstraint>& constraints) {
    FilterResult r;
    r.kept = solutions;
    for (const auto& c : constraints) {
        for (const auto& [ij, coeff] : c.terms) {
            (void)coeff;
            for (const auto& w : solutions) {
                if (ij.first >= w.degrees())
                    throw Error(ErrorCode::MalformedConstraint, "constraint mentions a degree beyond the arrays",
                                c.to_string());
            }
        }
        const std::size_t before = r.kept.size();
        std::erase_if(r.kept, [&c](const WeightArray& w) { return !c.satisfied_by(w); });
        r.steps.push_back({c, before - r.kept.size(), r.kept.size()});
        if (r.kept.empty() && !r.violated) r.violated = c;
    }
    return r;
}

ProfileVerdict mv_profile_vs_virtual_betti(const FiltrationProfile& profile, const std::vector<std::int64_t>& beta) {
    ProfileVerdict v;
    const std::size_t rows = std::max(profile.degrees(), beta.size());
    for (std::size_t j = 0; j < rows; ++j) {
        const std::int64_t actual = profile.row_alternating_sum(j);
        const std::int64_t expected = j < beta.size() ? beta[j] : 0;
        if (actual != expected) v.failures.push_back({j, actual, expected});
    }
    v.holds = v.failures.empty();
    return v;
}

} // namespace vbetti

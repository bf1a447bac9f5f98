#include "vbetti/strata.hpp"

#include <exception>

#include "vbetti/error.hpp"
#include "vbetti/scissor.hpp"

namespace vbetti {

const StratumRecord* StratifiedSpec::find(const std::string& stratum) const {
    for (const auto& s : strata)
        if (s.name == stratum) return &s;
    return nullptr;
}

void StratifiedSpec::validate() const {
    std::set<std::string> seen;
    for (const auto& s : strata) {
        if (!seen.insert(s.name).second)
            throw Error(ErrorCode::InvalidStratification, "duplicate stratum '" + s.name + "'", name);
        if (const auto* open = std::get_if<OpenModel>(&s.model)) {
            if (!open->pair.total)
                throw Error(ErrorCode::InvalidStratification, "open model without a compactification", s.name);
            if (open->boundary_stratification) open->boundary_stratification->validate();
        }
        if (const auto* compact = std::get_if<CompactModel>(&s.model); compact && !compact->complex)
            throw Error(ErrorCode::InvalidStratification, "compact model without a complex", s.name);
    }
    for (const auto& [stratum, lower] : frontier) {
        const StratumRecord* top = find(stratum);
        if (!top) throw Error(ErrorCode::InvalidStratification, "frontier of unknown stratum '" + stratum + "'", name);
        for (const auto& f : lower) {
            const StratumRecord* low = find(f);
            if (!low)
                throw Error(ErrorCode::InvalidStratification,
                            "frontier of '" + stratum + "' names unknown stratum '" + f + "'", name);
            if (low->dim >= top->dim)
                throw Error(ErrorCode::InvalidStratification,
                            "frontier stratum '" + f + "' of '" + stratum + "' is not of smaller dimension", name);
        }
    }
}

namespace {

void degree_law(const IntPolynomial& beta, std::size_t dim, const std::string& where, const EngineOptions& opt,
                std::vector<Diagnostic>& diags) {
    const DegreeVerdict v = degree_report(beta, dim);
    if (v.holds) return;
    if (opt.strict) throw Error(ErrorCode::DimensionMismatch, v.diagnostic, where);
    diags.push_back({ErrorCode::DimensionMismatch, where, v.diagnostic});
}

bool only_points(const Subcomplex& b) {
    return b.size() == b.count(0);
}

std::int64_t euler_by_count(const Subcomplex& b) {
    std::int64_t chi = 0;
    for (std::size_t d = 0; d <= static_cast<std::size_t>(std::max(b.parent().dim(), 0)); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(b.count(d));
    return chi;
}

StratumValue boundary_value(const StratumRecord& s, const OpenModel& m, const EngineOptions& opt) {
    const Subcomplex& b = m.pair.boundary;
    StratumValue out;
    if (b.empty()) return out;
    if (only_points(b)) {
        const auto n = static_cast<std::int64_t>(b.count(0));
        out.beta = IntPolynomial::constant(n);
        out.chi_c = n;
        return out;
    }
    if (m.boundary_stratification) {
        out = beta_of_stratified(*m.boundary_stratification, opt);
        const std::int64_t counted = euler_by_count(b);
        if (out.chi_c != counted) {
            throw Error(ErrorCode::BoundaryMismatch,
                        "boundary stratification has chi_c " + std::to_string(out.chi_c) +
                            " but the removed subcomplex has Euler characteristic " + std::to_string(counted),
                        s.name);
        }
        return out;
    }
    if (m.boundary_nonsingular) {
        const SimplicialComplex k = b.to_complex();
        out.beta = poincare_polynomial(k);
        out.chi_c = euler_characteristic(k);
        return out;
    }
    throw Error(ErrorCode::MissingBoundaryData,
                "removed subcomplex is neither a point set, stratified, nor asserted nonsingular", s.name);
}

} // namespace

StratumValue beta_of_stratum(const StratumRecord& s, const EngineOptions& opt) {
    StratumValue out;
    if (const auto* c = std::get_if<CompactModel>(&s.model)) {
        out.beta = poincare_polynomial(*c->complex);
        out.chi_c = euler_characteristic(*c->complex);
    } else if (const auto* o = std::get_if<OpenModel>(&s.model)) {
        StratumValue boundary = boundary_value(s, *o, opt);
        out.beta = poincare_polynomial(*o->pair.total) - boundary.beta;
        out.chi_c = euler_compact_supports_by_count(o->pair);
        for (auto& d : boundary.diagnostics) {
            d.where = s.name + "/" + d.where;
            out.diagnostics.push_back(std::move(d));
        }
    } else {
        const auto& d = std::get<DeclaredBeta>(s.model);
        out.beta = d.beta;
        out.chi_c = d.chi_c ? *d.chi_c : d.beta.eval(-1);
    }
    degree_law(out.beta, s.dim, s.name, opt, out.diagnostics);
    return out;
}

StratumValue beta_of_stratified(const StratifiedSpec& x, const EngineOptions& opt) {
    x.validate();
    const auto n = static_cast<std::ptrdiff_t>(x.strata.size());
    std::vector<StratumValue> values(x.strata.size());
    std::vector<std::exception_ptr> errors(x.strata.size());
#pragma omp parallel for schedule(dynamic) if (opt.exec == Exec::parallel && n > 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            values[i] = beta_of_stratum(x.strata[i], opt);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    StratumValue out;
    std::size_t top = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out.beta += values[i].beta;
        out.chi_c = checked::add(out.chi_c, values[i].chi_c);
        for (auto& d : values[i].diagnostics) out.diagnostics.push_back(std::move(d));
        top = std::max(top, x.strata[i].dim);
    }
    if (!x.strata.empty()) degree_law(out.beta, top, x.name, opt, out.diagnostics);
    return out;
}

IntPolynomial inclusion_exclusion(const std::vector<std::pair<std::string, IntPolynomial>>& pieces,
                                  const std::map<std::vector<std::size_t>, IntPolynomial>& intersections) {
    const std::size_t m = pieces.size();
    if (m > 20) throw Error(ErrorCode::InvalidInput, "inclusion-exclusion over more than 20 pieces");
    IntPolynomial total;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (1u << i)) subset.push_back(i);
        const IntPolynomial* term = nullptr;
        if (subset.size() == 1) {
            term = &pieces[subset[0]].second;
        } else {
            auto it = intersections.find(subset);
            if (it == intersections.end()) {
                std::string label;
                for (std::size_t i : subset) label += (label.empty() ? "" : " & ") + pieces[i].first;
                throw Error(ErrorCode::MissingIntersection, "no value for intersection " + label, label);
            }
            term = &it->second;
        }
        if (subset.size() % 2 == 1) total += *term;
        else total -= *term;
    }
    return total;
}

RefinementVerdict refinement_check(const StratifiedSpec& coarse, const StratifiedSpec& fine,
                                   const std::map<std::string, std::set<std::string>>& mapping,
                                   const EngineOptions& opt) {
    std::set<std::string> used;
    for (const auto& [c, parts] : mapping) {
        if (!coarse.find(c)) throw Error(ErrorCode::NotAPartition, "mapping names unknown coarse stratum", c);
        for (const auto& f : parts) {
            if (!fine.find(f)) throw Error(ErrorCode::NotAPartition, "mapping names unknown fine stratum", f);
            if (!used.insert(f).second)
                throw Error(ErrorCode::NotAPartition, "fine stratum assigned twice", f);
        }
    }
    for (const auto& s : coarse.strata)
        if (!mapping.count(s.name)) throw Error(ErrorCode::NotAPartition, "coarse stratum has no image", s.name);
    for (const auto& s : fine.strata)
        if (!used.count(s.name)) throw Error(ErrorCode::NotAPartition, "fine stratum not covered", s.name);

    RefinementVerdict v;
    for (const auto& s : coarse.strata) {
        const IntPolynomial lhs = beta_of_stratum(s, opt).beta;
        IntPolynomial rhs;
        for (const auto& f : mapping.at(s.name)) rhs += beta_of_stratum(*fine.find(f), opt).beta;
        if (lhs != rhs) {
            v.failing_stratum = s.name;
            v.message = "stratum '" + s.name + "' has beta " + lhs.to_string() + " but its refinement sums to " +
                        rhs.to_string();
            return v;
        }
    }
    const IntPolynomial a = beta_of_stratified(coarse, opt).beta;
    const IntPolynomial b = beta_of_stratified(fine, opt).beta;
    if (a != b) {
        v.message = "totals differ: " + a.to_string() + " vs " + b.to_string();
        return v;
    }
    v.holds = true;
    return v;
}

} // namespace vbetti

#include "vbetti/scissor.hpp"

#include <array>

#include "vbetti/error.hpp"

namespace vbetti {

std::string_view to_string(ProvenanceKind kind) {
    switch (kind) {
    case ProvenanceKind::declared: return "declared";
    case ProvenanceKind::computed_from_model: return "computed-from-model";
    case ProvenanceKind::computed_recursively: return "computed-recursively";
    }
    return "unknown";
}

void AtomRegistry::add(const std::string& name, AtomRecord record) {
    if (name.empty()) throw Error(ErrorCode::InvalidAtom, "atom name must not be empty");
    if (record.compact_nonsingular && !record.beta.nonnegative()) {
        throw Error(ErrorCode::InvalidAtom,
                    "compact nonsingular atom has a negative Betti number: " + record.beta.to_string(), name);
    }
    if (!atoms_.emplace(name, std::move(record)).second) throw Error(ErrorCode::InvalidAtom, "duplicate atom", name);
}

void AtomRegistry::declare(const std::string& name, IntPolynomial beta, std::optional<std::int64_t> chi_c,
                           bool compact_nonsingular, std::string note) {
    AtomRecord r;
    r.chi_c = chi_c ? *chi_c : beta.eval(-1);
    r.beta = std::move(beta);
    r.provenance = {ProvenanceKind::declared, std::move(note)};
    r.compact_nonsingular = compact_nonsingular;
    add(name, std::move(r));
}

void AtomRegistry::add_compact_model(const std::string& name, const SimplicialComplex& model, std::string source) {
    AtomRecord r;
    r.beta = poincare_polynomial(model);
    r.chi_c = euler_characteristic(model);
    r.provenance = {ProvenanceKind::computed_from_model, source.empty() ? name : std::move(source)};
    r.compact_nonsingular = true;
    add(name, std::move(r));
}

const AtomRecord& AtomRegistry::at(const std::string& name) const {
    auto it = atoms_.find(name);
    if (it == atoms_.end()) throw Error(ErrorCode::UnknownAtom, "unknown atom '" + name + "'", name);
    return it->second;
}

// ---------------------------------------------------------------------------

struct ScissorExpr::Node {
    Kind kind = Kind::empty;
    std::string name;
    std::array<std::optional<ScissorExpr>, 4> children{};
    BlowupSide side = BlowupSide::total;
};

ScissorExpr::ScissorExpr() : node_(std::make_shared<const Node>()) {}

ScissorExpr ScissorExpr::atom(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::atom;
    n->name = std::move(name);
    return ScissorExpr(std::move(n));
}

ScissorExpr ScissorExpr::disjoint_union(ScissorExpr a, ScissorExpr b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::disjoint_union;
    n->children = {std::move(a), std::move(b), std::nullopt, std::nullopt};
    return ScissorExpr(std::move(n));
}

ScissorExpr ScissorExpr::product(ScissorExpr a, ScissorExpr b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::product;
    n->children = {std::move(a), std::move(b), std::nullopt, std::nullopt};
    return ScissorExpr(std::move(n));
}

ScissorExpr ScissorExpr::closed_difference(ScissorExpr total, ScissorExpr closed_sub) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::closed_difference;
    n->children = {std::move(total), std::move(closed_sub), std::nullopt, std::nullopt};
    return ScissorExpr(std::move(n));
}

ScissorExpr ScissorExpr::blowup(BlowupParts parts) {
    const bool has_total = parts.blowup_total.has_value();
    const bool has_base = parts.base.has_value();
    if (!has_total && !has_base) throw Error(ErrorCode::InvalidScene, "blowup needs the blown-up variety or its base");
    if (parts.side == BlowupSide::total && !has_base)
        throw Error(ErrorCode::InvalidScene, "blowup standing for Bl_C X needs its base X");
    if (parts.side == BlowupSide::base && !has_total)
        throw Error(ErrorCode::InvalidScene, "blowup standing for X needs Bl_C X");
    auto n = std::make_shared<Node>();
    n->kind = Kind::blowup;
    n->side = parts.side;
    n->children = {std::move(parts.blowup_total), std::move(parts.exceptional), std::move(parts.base),
                   std::move(parts.center)};
    return ScissorExpr(std::move(n));
}

ScissorExpr::Kind ScissorExpr::kind() const noexcept { return node_->kind; }
const std::string& ScissorExpr::name() const noexcept { return node_->name; }
BlowupSide ScissorExpr::side() const noexcept { return node_->side; }

const ScissorExpr* ScissorExpr::child(std::size_t i) const noexcept {
    if (i >= 4 || !node_->children[i]) return nullptr;
    return &*node_->children[i];
}

namespace {

template <class F>
void visit_all(const ScissorExpr& e, F&& f) {
    f(e);
    for (std::size_t i = 0; i < 4; ++i)
        if (const ScissorExpr* c = e.child(i)) visit_all(*c, f);
}

} // namespace

std::set<std::string> ScissorExpr::atoms() const {
    std::set<std::string> out;
    visit_all(*this, [&out](const ScissorExpr& e) {
        if (e.kind() == Kind::atom) out.insert(e.name());
    });
    return out;
}

std::size_t ScissorExpr::node_count() const {
    std::size_t n = 0;
    visit_all(*this, [&n](const ScissorExpr&) { ++n; });
    return n;
}

std::string ScissorExpr::to_string() const {
    switch (kind()) {
    case Kind::empty: return "0";
    case Kind::atom: return "[" + name() + "]";
    case Kind::disjoint_union: return "(" + child(0)->to_string() + " + " + child(1)->to_string() + ")";
    case Kind::product: return "(" + child(0)->to_string() + " * " + child(1)->to_string() + ")";
    case Kind::closed_difference: return "(" + child(0)->to_string() + " \\ " + child(1)->to_string() + ")";
    case Kind::blowup: {
        auto part = [this](std::size_t i) { return child(i) ? child(i)->to_string() : std::string("?"); };
        return std::string(side() == BlowupSide::total ? "Bl" : "Base") + "{bl=" + part(0) + ", e=" + part(1) +
               ", x=" + part(2) + ", c=" + part(3) + "}";
    }
    }
    return "?";
}

bool operator==(const ScissorExpr& a, const ScissorExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.name() != b.name() || a.side() != b.side()) return false;
    for (std::size_t i = 0; i < 4; ++i) {
        const ScissorExpr* x = a.child(i);
        const ScissorExpr* y = b.child(i);
        if ((x == nullptr) != (y == nullptr)) return false;
        if (x && !(*x == *y)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

namespace {

// One recursion shared by beta and chi_c; the callables supply the ring.
template <class T, class AtomValue, class Add, class Sub, class Mul, class Format>
T evaluate(const ScissorExpr& e, const AtomValue& atom, const Add& add, const Sub& sub, const Mul& mul,
           const Format& format) {
    auto rec = [&](const ScissorExpr& x) { return evaluate<T>(x, atom, add, sub, mul, format); };
    using K = ScissorExpr::Kind;
    switch (e.kind()) {
    case K::empty: return T{};
    case K::atom: return atom(e.name());
    case K::disjoint_union: return add(rec(*e.child(0)), rec(*e.child(1)));
    case K::product: return mul(rec(*e.child(0)), rec(*e.child(1)));
    case K::closed_difference: return sub(rec(*e.child(0)), rec(*e.child(1)));
    case K::blowup: {
        const T exceptional = rec(*e.child(1));
        const T center = rec(*e.child(3));
        std::optional<T> bl, base;
        if (e.child(0)) bl = rec(*e.child(0));
        if (e.child(2)) base = rec(*e.child(2));
        if (bl && base && sub(*bl, exceptional) != sub(*base, center)) {
            throw Error(ErrorCode::BlowupMismatch,
                        "blowup relation fails: [Bl] - [E] = " + format(sub(*bl, exceptional)) +
                            " but [X] - [C] = " + format(sub(*base, center)),
                        e.to_string());
        }
        if (e.side() == BlowupSide::total) return bl ? *bl : add(sub(*base, center), exceptional);
        return base ? *base : add(sub(*bl, exceptional), center);
    }
    }
    return T{};
}

} // namespace

IntPolynomial evaluate_beta(const ScissorExpr& e, const AtomRegistry& reg, EvaluationTrace* trace) {
    return evaluate<IntPolynomial>(
        e,
        [&](const std::string& name) {
            const AtomRecord& r = reg.at(name);
            if (trace && r.provenance.kind == ProvenanceKind::declared) trace->declared_atoms.insert(name);
            return r.beta;
        },
        [](const IntPolynomial& a, const IntPolynomial& b) { return a + b; },
        [](const IntPolynomial& a, const IntPolynomial& b) { return a - b; },
        [](const IntPolynomial& a, const IntPolynomial& b) { return a * b; },
        [](const IntPolynomial& a) { return a.to_string(); });
}

std::int64_t evaluate_chi_c(const ScissorExpr& e, const AtomRegistry& reg) {
    return evaluate<std::int64_t>(
        e, [&](const std::string& name) { return reg.at(name).chi_c; },
        [](std::int64_t a, std::int64_t b) { return checked::add(a, b); },
        [](std::int64_t a, std::int64_t b) { return checked::sub(a, b); },
        [](std::int64_t a, std::int64_t b) { return checked::mul(a, b); },
        [](std::int64_t a) { return std::to_string(a); });
}

BlowupVerdict check_blowup_relation(const IntPolynomial& x, const IntPolynomial& c, const IntPolynomial& bl,
                                    const IntPolynomial& e) {
    BlowupVerdict v;
    v.lhs = bl - e;
    v.rhs = x - c;
    v.holds = v.lhs == v.rhs;
    if (!v.holds) {
        const std::size_t top = std::max(v.lhs.coeffs().size(), v.rhs.coeffs().size());
        for (std::size_t k = 0; k < top; ++k) {
            if (v.lhs.coeff(k) != v.rhs.coeff(k)) {
                v.first_failing_degree = k;
                break;
            }
        }
    }
    return v;
}

DegreeVerdict degree_report(const IntPolynomial& beta, std::size_t claimed_dim) {
    DegreeVerdict v;
    v.beta = beta;
    const auto d = beta.degree();
    if (!d) {
        v.diagnostic = "class is zero, but a nonempty variety has a nonzero class";
        return v;
    }
    if (*d != claimed_dim) {
        v.diagnostic = "degree " + std::to_string(*d) + " differs from claimed dimension " + std::to_string(claimed_dim);
        return v;
    }
    if (beta.leading() <= 0) {
        v.diagnostic = "leading coefficient " + std::to_string(beta.leading()) + " is not positive";
        return v;
    }
    v.holds = true;
    return v;
}

DegreeVerdict degree_report(const ScissorExpr& e, const AtomRegistry& reg, std::size_t claimed_dim) {
    return degree_report(evaluate_beta(e, reg), claimed_dim);
}

} // namespace vbetti

#include <random>

#include "catch_amalgamated.hpp"

#include "oracles.hpp"
#include "support.hpp"
#include "vbetti/fixtures.hpp"
#include "vbetti/scissor.hpp"

using namespace vbetti;
namespace fx = vbetti::fixtures;
using E = ScissorExpr;
using P = IntPolynomial;

namespace {

AtomRegistry small_registry() {
    AtomRegistry reg;
    reg.add_compact_model("point", fx::points(1));
    reg.add_compact_model("two-points", fx::points(2));
    reg.add_compact_model("circle", fx::circle());
    reg.add_compact_model("sphere", fx::sphere(2));
    reg.add_compact_model("torus", fx::torus());
    reg.declare("line", P::t(), std::nullopt, false, "circle minus a point");
    return reg;
}

// Term-by-term evaluation used as the reference for the recursion.
P reference_beta(const E& e, const std::map<std::string, P>& values) {
    switch (e.kind()) {
    case E::Kind::empty: return P();
    case E::Kind::atom: return values.at(e.name());
    case E::Kind::disjoint_union: return reference_beta(*e.child(0), values) + reference_beta(*e.child(1), values);
    case E::Kind::product: return reference_beta(*e.child(0), values) * reference_beta(*e.child(1), values);
    case E::Kind::closed_difference:
        return reference_beta(*e.child(0), values) - reference_beta(*e.child(1), values);
    default: throw std::logic_error("unexpected node");
    }
}

E blowup_base(E total, E exceptional, E center) {
    return E::blowup({std::move(total), std::move(exceptional), std::nullopt, std::move(center), BlowupSide::base});
}

} // namespace

TEST_CASE("atom registry") {
    AtomRegistry reg = small_registry();
    CHECK(reg.at("circle").beta == P({1, 1}));
    CHECK(reg.at("circle").chi_c == 0);
    CHECK(reg.at("circle").provenance.kind == ProvenanceKind::computed_from_model);
    CHECK(reg.at("line").provenance.kind == ProvenanceKind::declared);
    CHECK(reg.at("line").chi_c == -1);
    CHECK(error_code_of([&] { reg.declare("circle", P({1})); }) == ErrorCode::InvalidAtom);
    CHECK(error_code_of([&] { reg.declare("bad", P({1, -1}), std::nullopt, true); }) == ErrorCode::InvalidAtom);
    CHECK(error_code_of([&] { (void)reg.at("nowhere"); }) == ErrorCode::UnknownAtom);
}

TEST_CASE("evaluation examples") {
    const AtomRegistry reg = small_registry();
    const E ellipses = E::closed_difference(E::disjoint_union(E::atom("circle"), E::atom("circle")),
                                            E::disjoint_union(E::atom("two-points"), E::atom("two-points")));
    CHECK(evaluate_beta(ellipses, reg) == P({-2, 2}));
    CHECK(evaluate_chi_c(ellipses, reg) == -4);
    CHECK(evaluate_beta(E::product(E::atom("circle"), E::atom("circle")), reg) == reg.at("torus").beta);
    CHECK(evaluate_beta(E::empty(), reg).is_zero());
    CHECK(evaluate_beta(E::product(E::atom("torus"), E::empty()), reg).is_zero());

    EvaluationTrace trace;
    CHECK(evaluate_beta(E::disjoint_union(E::atom("line"), E::atom("point")), reg, &trace) == P({1, 1}));
    CHECK(trace.declared_atoms == std::set<std::string>{"line"});

    CHECK(error_code_of([&] { (void)evaluate_beta(E::atom("missing"), reg); }) == ErrorCode::UnknownAtom);
    CHECK(error_code_of([&] { (void)evaluate_chi_c(E::product(E::atom("circle"), E::atom("missing")), reg); }) ==
          ErrorCode::UnknownAtom);
}

TEST_CASE("blowup nodes") {
    const AtomRegistry reg = small_registry();
    // Nodal figure eight from the normalization of its node.
    const E node = blowup_base(E::atom("circle"), E::atom("two-points"), E::atom("point"));
    CHECK(evaluate_beta(node, reg) == P::t());
    CHECK(evaluate_chi_c(node, reg) == -1);

    const E total_side = E::blowup({std::nullopt, E::atom("two-points"), node, E::atom("point"), BlowupSide::total});
    CHECK(evaluate_beta(total_side, reg) == P({1, 1}));

    const E consistent = E::blowup({E::atom("circle"), E::atom("two-points"), node, E::atom("point"), BlowupSide::base});
    CHECK(evaluate_beta(consistent, reg) == P::t());
    const E broken =
        E::blowup({E::atom("torus"), E::atom("two-points"), E::atom("circle"), E::atom("point"), BlowupSide::base});
    CHECK(error_code_of([&] { (void)evaluate_beta(broken, reg); }) == ErrorCode::BlowupMismatch);
}

TEST_CASE("blowup relation checker") {
    const AtomRegistry reg = small_registry();
    const P sphere = reg.at("sphere").beta;
    const P rp2 = betti_mod2(fx::projective_plane()).polynomial();
    const P klein = betti_mod2(fx::klein_bottle()).polynomial();
    const P circle = reg.at("circle").beta, point = reg.at("point").beta;
    CHECK(check_blowup_relation(sphere, point, rp2, circle).holds);
    CHECK(check_blowup_relation(rp2, point, klein, circle).holds);
    CHECK(check_blowup_relation(reg.at("torus").beta, P(), reg.at("torus").beta, P()).holds);

    const BlowupVerdict wrong = check_blowup_relation(sphere, point, reg.at("torus").beta, circle);
    CHECK_FALSE(wrong.holds);
    CHECK(wrong.first_failing_degree == std::size_t{1});
    CHECK(wrong.lhs == reg.at("torus").beta - circle);
    CHECK(wrong.rhs == sphere - point);
}

TEST_CASE("degree law") {
    CHECK(degree_report(P({-2, 2}), 1).holds);
    CHECK(degree_report(P::t(), 1).holds);
    CHECK_FALSE(degree_report(P({0, -1}), 1).holds);
    CHECK_FALSE(degree_report(P({1, 1}), 2).holds);
    CHECK_FALSE(degree_report(P(), 0).holds);
    const AtomRegistry reg = small_registry();
    CHECK(degree_report(E::product(E::atom("line"), E::atom("circle")), reg, 2).holds);
}

TEST_CASE("affine spaces vanish below the top degree") {
    for (std::size_t n = 0; n <= 3; ++n) {
        AtomRegistry reg;
        reg.add_compact_model("sphere", fx::sphere(n + 1));
        reg.add_compact_model("point", fx::points(1));
        const P affine = evaluate_beta(E::closed_difference(E::atom("sphere"), E::atom("point")), reg);
        CHECK(affine == P::monomial(1, n + 1));
        // Two disjoint copies also vanish in degree n.
        CHECK(evaluate_beta(E::disjoint_union(E::closed_difference(E::atom("sphere"), E::atom("point")),
                                              E::closed_difference(E::atom("sphere"), E::atom("point"))),
                            reg)
                  .coeff(n) == 0);
    }
}

TEST_CASE("evaluation is a ring homomorphism on 1000 random expressions") {
    std::mt19937_64 rng(101);
    AtomRegistry reg;
    std::map<std::string, P> values;
    std::vector<std::string> names;
    for (int i = 0; i < 6; ++i) {
        const std::string name = "a" + std::to_string(i);
        const P p = oracle::random_poly(rng, 3, 4);
        reg.declare(name, p);
        values[name] = p;
        names.push_back(name);
    }
    for (int trial = 0; trial < 1000; ++trial) {
        const E x = oracle::random_expr(rng, names, 3);
        const E y = oracle::random_expr(rng, names, 2);
        const P bx = evaluate_beta(x, reg), by = evaluate_beta(y, reg);
        CHECK(bx == reference_beta(x, values));
        CHECK(evaluate_beta(E::disjoint_union(x, y), reg) == bx + by);
        CHECK(evaluate_beta(E::product(x, y), reg) == bx * by);
        CHECK(evaluate_beta(E::closed_difference(x, y), reg) == bx - by);
        CHECK(evaluate_chi_c(x, reg) == bx.eval(-1));
        CHECK(evaluate_chi_c(E::product(x, y), reg) == bx.eval(-1) * by.eval(-1));
    }
}

TEST_CASE("expressions over compact models keep beta(-1) equal to chi_c") {
    std::mt19937_64 rng(103);
    const AtomRegistry reg = small_registry();
    const std::vector<std::string> names{"point", "two-points", "circle", "sphere", "torus"};
    for (int trial = 0; trial < 300; ++trial) {
        const E x = oracle::random_expr(rng, names, 3);
        CHECK(evaluate_beta(x, reg).eval(-1) == evaluate_chi_c(x, reg));
    }
}

TEST_CASE("expression structure") {
    const E e = E::product(E::atom("circle"), E::disjoint_union(E::atom("point"), E::empty()));
    CHECK(e.atoms() == std::set<std::string>{"circle", "point"});
    CHECK(e.node_count() == 5);
    CHECK(e == E::product(E::atom("circle"), E::disjoint_union(E::atom("point"), E::empty())));
    CHECK_FALSE(e == E::product(E::atom("point"), E::disjoint_union(E::atom("circle"), E::empty())));
}

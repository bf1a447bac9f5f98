#include <random>

#include "catch_amalgamated.hpp"

#include "oracles.hpp"
#include "support.hpp"
#include "vbetti/fixtures.hpp"
#include "vbetti/strata.hpp"

using namespace vbetti;
namespace fx = vbetti::fixtures;
using P = IntPolynomial;

namespace {

StratumRecord compact(std::string name, std::size_t dim, SimplicialComplex k) {
    return {std::move(name), dim, CompactModel{share(std::move(k))}};
}

StratumRecord open(std::string name, std::size_t dim, ComplexPtr total, const std::vector<NamedSimplex>& removed,
                   bool nonsingular = false, std::shared_ptr<const StratifiedSpec> strat = nullptr) {
    Subcomplex boundary = Subcomplex::from_maximal(total, removed);
    return {std::move(name), dim, OpenModel{{std::move(total), std::move(boundary)}, std::move(strat), nonsingular}};
}

StratumRecord declared(std::string name, std::size_t dim, P beta) {
    return {std::move(name), dim, DeclaredBeta{std::move(beta), std::nullopt}};
}

StratifiedSpec circle_strata() {
    StratifiedSpec s{"circle", {}, {}};
    s.strata.push_back(open("line", 1, share(fx::circle()), {{"c0"}}));
    s.strata.push_back(compact("point", 0, fx::points(1)));
    s.frontier["line"] = {"point"};
    return s;
}

} // namespace

TEST_CASE("single strata") {
    const auto circle = share(fx::circle());
    const StratumValue line = beta_of_stratum(open("line", 1, circle, {{"c0"}}));
    CHECK(line.beta == P::t());
    CHECK(line.chi_c == -1);
    CHECK(line.diagnostics.empty());

    const StratumValue two_arcs = beta_of_stratum(open("arcs", 1, circle, {{"c0"}, {"c2"}}));
    CHECK(two_arcs.beta == P({-1, 1}));
    CHECK(two_arcs.chi_c == -2);

    CHECK(beta_of_stratum(compact("torus", 2, fx::torus())).beta == P({1, 2, 1}));
    CHECK(beta_of_stratum(declared("plane", 2, P::monomial(1, 2))).chi_c == 1);
}

TEST_CASE("sphere minus equator needs boundary data") {
    const auto sphere = share(fx::sphere(2));
    CHECK(error_code_of([&] { (void)beta_of_stratum(open("s", 2, sphere, fx::sphere_equator(2))); }) ==
          ErrorCode::MissingBoundaryData);
    const StratumValue v = beta_of_stratum(open("s", 2, sphere, fx::sphere_equator(2), true));
    CHECK(v.beta == P({0, -1, 1}));
    CHECK(v.chi_c == 2);

    auto equator = std::make_shared<StratifiedSpec>(circle_strata());
    CHECK(beta_of_stratum(open("s", 2, sphere, fx::sphere_equator(2), false, equator)).beta == P({0, -1, 1}));
}

TEST_CASE("boundary stratification must match the removed subcomplex") {
    const auto sphere = share(fx::sphere(2));
    auto wrong = std::make_shared<StratifiedSpec>(StratifiedSpec{"wrong", {compact("pt", 0, fx::points(1))}, {}});
    CHECK(error_code_of([&] { (void)beta_of_stratum(open("s", 2, sphere, fx::sphere_equator(2), false, wrong)); }) ==
          ErrorCode::BoundaryMismatch);
}

TEST_CASE("stratified spaces") {
    const StratumValue v = beta_of_stratified(circle_strata());
    CHECK(v.beta == P({1, 1}));
    CHECK(v.chi_c == 0);

    StratifiedSpec bad = circle_strata();
    bad.frontier["point"] = {"line"};
    CHECK(error_code_of([&] { bad.validate(); }) == ErrorCode::InvalidStratification);
    StratifiedSpec dup = circle_strata();
    dup.strata.push_back(compact("point", 0, fx::points(1)));
    CHECK(error_code_of([&] { dup.validate(); }) == ErrorCode::InvalidStratification);
    StratifiedSpec unknown = circle_strata();
    unknown.frontier["line"] = {"nowhere"};
    CHECK(error_code_of([&] { unknown.validate(); }) == ErrorCode::InvalidStratification);
}

TEST_CASE("dimension law") {
    StratifiedSpec s{"claimed", {compact("circle", 2, fx::circle())}, {}};
    const StratumValue lax = beta_of_stratified(s);
    REQUIRE(lax.diagnostics.size() >= 1);
    CHECK(lax.diagnostics[0].code == ErrorCode::DimensionMismatch);
    CHECK(lax.beta == P({1, 1}));
    EngineOptions strict;
    strict.strict = true;
    CHECK(error_code_of([&] { (void)beta_of_stratified(s, strict); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("inclusion-exclusion") {
    const std::vector<std::pair<std::string, P>> pieces{{"A", P({1, 1})}, {"B", P({1, 1})}};
    CHECK(inclusion_exclusion(pieces, {{{0, 1}, P({4})}}) == P({-2, 2}));
    CHECK(error_code_of([&] { (void)inclusion_exclusion(pieces, {}); }) == ErrorCode::MissingIntersection);
    const std::vector<std::pair<std::string, P>> three{{"A", P({1})}, {"B", P({1})}, {"C", P({1})}};
    CHECK(inclusion_exclusion(three, {{{0, 1}, P({1})}, {{0, 2}, P({1})}, {{1, 2}, P({1})}, {{0, 1, 2}, P({1})}}) ==
          P({1}));
    CHECK(error_code_of([&] {
              (void)inclusion_exclusion(three, {{{0, 1}, P({1})}, {{0, 2}, P({1})}, {{1, 2}, P({1})}});
          }) == ErrorCode::MissingIntersection);
}

TEST_CASE("refinement") {
    StratifiedSpec coarse{"coarse", {compact("circle", 1, fx::circle())}, {}};
    const StratifiedSpec fine = circle_strata();
    CHECK(refinement_check(coarse, fine, {{"circle", {"line", "point"}}}).holds);

    CHECK(error_code_of([&] { (void)refinement_check(coarse, fine, {{"circle", {"line"}}}); }) ==
          ErrorCode::NotAPartition);
    CHECK(error_code_of([&] { (void)refinement_check(coarse, fine, {{"circle", {"line", "point", "ghost"}}}); }) ==
          ErrorCode::NotAPartition);

    StratifiedSpec two{"two", {compact("circle", 1, fx::circle()), compact("extra", 0, fx::points(1))}, {}};
    StratifiedSpec split = circle_strata();
    split.strata.push_back(compact("other", 0, fx::points(1, "o")));
    CHECK(error_code_of([&] {
              (void)refinement_check(two, split, {{"circle", {"line", "point"}}, {"extra", {"other", "point"}}});
          }) == ErrorCode::NotAPartition);
    const RefinementVerdict wrong = refinement_check(two, split, {{"circle", {"line"}}, {"extra", {"point", "other"}}});
    CHECK_FALSE(wrong.holds);
    CHECK(wrong.failing_stratum == "circle");
}

TEST_CASE("two triangulations of one pair agree") {
    const StratumValue square = beta_of_stratum(open("a", 1, share(fx::circle()), {{"c0"}}));
    const StratumValue triangle = beta_of_stratum(open("b", 1, share(fx::cycle({"x", "y", "z"})), {{"y"}}));
    CHECK(square.beta == triangle.beta);
    CHECK(square.chi_c == triangle.chi_c);

    const StratumValue cross = beta_of_stratum(open("s", 2, share(fx::sphere(2)), {{"x0+"}}));
    const auto tetra = share(SimplicialComplex::from_maximal(
        {"a", "b", "c", "d"}, {{"a", "b", "c"}, {"a", "b", "d"}, {"a", "c", "d"}, {"b", "c", "d"}}));
    const StratumValue other = beta_of_stratum(open("t", 2, tetra, {{"d"}}));
    CHECK(cross.beta == other.beta);
    CHECK(cross.beta == P::monomial(1, 2));
}

TEST_CASE("open strata on random complexes keep beta(-1) equal to chi_c") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 200; ++trial) {
        const auto k = share(oracle::random_complex(rng, 7, 5, 2));
        std::vector<NamedSimplex> removed;
        for (const auto& v : k->vertex_names())
            if (rng() % 3 == 0) removed.push_back({v});
        const StratumValue v = beta_of_stratum(open("u", 2, k, removed));
        CHECK(v.beta.eval(-1) == v.chi_c);
        CHECK(v.chi_c == euler_compact_supports({k, Subcomplex::from_maximal(k, removed)}));
        CHECK(v.beta == poincare_polynomial(*k) - P::constant(static_cast<std::int64_t>(removed.size())));
    }
}

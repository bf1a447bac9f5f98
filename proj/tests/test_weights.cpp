#include <random>

#include "catch_amalgamated.hpp"

#include "oracles.hpp"
#include "support.hpp"
#include "vbetti/weights.hpp"

using namespace vbetti;

namespace {

std::string joined(const std::vector<WeightArray>& list) {
    std::string out;
    for (const auto& w : list) out += (out.empty() ? "" : " ") + w.to_string();
    return out;
}

} // namespace

TEST_CASE("weight array layout") {
    const WeightArray w = WeightArray::from_rows({{1}, {0, 1}, {3, 2, 3}});
    CHECK(w.degrees() == 3);
    CHECK(w.values() == std::vector<std::int64_t>{1, 0, 1, 3, 2, 3});
    CHECK(w.at(2, 1) == 2);
    CHECK(w.diagonal_sum(2) == 8);
    CHECK(w.row_alternating_sum(0) == 4);
    CHECK(w.row_alternating_sum(1) == -1);
    CHECK(w.row_alternating_sum(2) == 3);
    CHECK(w.to_string() == "{1; 0,1; 3,2,3}");
}

TEST_CASE("the surface weight system") {
    const WeightSystemInput in{{1, 1, 8}, {4, -1, 3}};
    const auto sols = solve_weight_system(in);
    CHECK(joined(sols) == "{1; 0,1; 3,2,3} {1; 1,0; 4,1,3}");
    CHECK(sols == oracle::brute_weights(in));
    for (const auto& w : sols) {
        const ConditionReport r = check_conditions(w, in);
        CHECK(r.diagonal_sums);
        CHECK(r.virtual_betti);
        CHECK_FALSE(r.manifold);
        CHECK_FALSE(r.compact_nonsingular_consistent.has_value());
    }
    const FilterResult f = constraint_filter(sols, {LinearConstraint::parse("w21 >= 3")});
    CHECK(f.infeasible());
    CHECK(f.summary() == "INFEASIBLE (violates: w21 >= 3)");
    REQUIRE(f.steps.size() == 1);
    CHECK(f.steps[0].removed == 2);
}

TEST_CASE("sub-arrangement weight systems") {
    CHECK(joined(solve_weight_system({{1, 0, 3}, {1, -1, 2}})) == "{1; 0,0; 0,1,2}");
    const auto x13 = solve_weight_system({{1, 2, 3}, {1, 1, 2}});
    CHECK(x13 == oracle::brute_weights({{1, 2, 3}, {1, 1, 2}}));
    const FilterResult f = constraint_filter(x13, {LinearConstraint::parse("w10 = 0")});
    CHECK(joined(f.kept) == "{1; 0,2; 0,1,2}");
    CHECK(f.kept[0].at(2, 1) + f.kept[0].at(2, 2) == 3);
}

TEST_CASE("solver agrees with exhaustive search") {
    std::mt19937_64 rng(89);
    std::uniform_int_distribution<std::int64_t> bdist(0, 3), betadist(-3, 3);
    std::uniform_int_distribution<std::size_t> ndist(1, 3);
    std::size_t feasible = 0;
    for (int trial = 0; trial < 400; ++trial) {
        WeightSystemInput in;
        const std::size_t n = ndist(rng);
        for (std::size_t i = 0; i < n; ++i) {
            in.b.push_back(bdist(rng));
            in.beta.push_back(betadist(rng));
        }
        // Half the inputs come from an actual array so both outcomes are exercised.
        if (trial % 2 == 0) in.beta = in.b;
        const auto sols = solve_weight_system(in, trial % 4 < 2 ? Exec::serial : Exec::parallel);
        CHECK(sols == oracle::brute_weights(in));
        feasible += !sols.empty();
        for (const auto& w : sols) CHECK(check_conditions(w, in).virtual_betti);
    }
    CHECK(feasible >= 200);
}

TEST_CASE("the diagonal array solves b = beta") {
    std::mt19937_64 rng(97);
    std::uniform_int_distribution<std::int64_t> bdist(0, 4);
    for (int trial = 0; trial < 100; ++trial) {
        WeightSystemInput in;
        for (std::size_t i = 0; i < 3; ++i) in.b.push_back(bdist(rng));
        in.beta = in.b;
        WeightArray diagonal(3);
        for (std::size_t i = 0; i < 3; ++i) diagonal.set(i, i, in.b[i]);
        const auto sols = solve_weight_system(in);
        CHECK(std::find(sols.begin(), sols.end(), diagonal) != sols.end());
        const ConditionReport r = check_conditions(diagonal, in, {true});
        CHECK(r.manifold);
        CHECK(r.compact_nonsingular_consistent == true);
    }
}

TEST_CASE("condition witnesses") {
    const WeightSystemInput torus{{1, 2, 1}, {1, 2, 1}};
    const WeightArray off = WeightArray::from_rows({{1}, {1, 1}, {0, 0, 1}});
    const ConditionReport r = check_conditions(off, torus, {true});
    CHECK(r.diagonal_sums);
    CHECK_FALSE(r.virtual_betti);
    CHECK(r.virtual_betti_failing_row == std::size_t{0});
    CHECK_FALSE(r.manifold);
    CHECK(r.manifold_witness == std::pair<std::size_t, std::size_t>{1, 0});
    CHECK(r.compact_nonsingular_consistent == false);
}

TEST_CASE("degenerate inputs") {
    const auto zero = solve_weight_system({{0, 0, 0}, {0, 0, 0}});
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].values() == std::vector<std::int64_t>(6, 0));
    CHECK(solve_weight_system({{1}, {2}}).empty());
    CHECK(solve_weight_system({{}, {}}).size() == 1);
    CHECK(error_code_of([] { (void)solve_weight_system({{1, 2}, {1}}); }) == ErrorCode::InvalidInput);
    CHECK(error_code_of([] { (void)solve_weight_system({{-1}, {-1}}); }) == ErrorCode::InvalidInput);
}

TEST_CASE("constraint parsing") {
    const LinearConstraint a = LinearConstraint::parse("2*w21 - w10 >= 3", "note");
    CHECK(a.terms.at({2, 1}) == 2);
    CHECK(a.terms.at({1, 0}) == -1);
    CHECK(a.rhs == 3);
    CHECK(a.note == "note");
    const LinearConstraint b = LinearConstraint::parse("w[2,1] + 1 = w22");
    CHECK(b.relation == Relation::eq);
    CHECK(b.terms.at({2, 1}) == 1);
    CHECK(b.terms.at({2, 2}) == -1);
    CHECK(b.rhs == -1);
    CHECK(LinearConstraint::parse("w10 <= 0").to_string() == "w10 <= 0");
    CHECK(LinearConstraint::parse(" w21>=3 ").to_string() == "w21 >= 3");
    CHECK(LinearConstraint::parse(LinearConstraint::parse("2*w21 - w10 >= 3").to_string()) ==
          LinearConstraint::parse("2*w21 - w10 >= 3"));

    for (const char* bad : {"w21 >", "x >= 1", "w2 >= 1", "w21 >= 3 >= 1", "", "w21 3"})
        CHECK(error_code_of([&] { (void)LinearConstraint::parse(bad); }) == ErrorCode::MalformedConstraint);
    const auto sols = solve_weight_system({{1, 1}, {1, 1}});
    CHECK(error_code_of([&] { (void)constraint_filter(sols, {LinearConstraint::parse("w32 >= 0")}); }) ==
          ErrorCode::MalformedConstraint);
}

TEST_CASE("filtering applies constraints in order") {
    const auto sols = solve_weight_system({{1, 1, 8}, {4, -1, 3}});
    const FilterResult f =
        constraint_filter(sols, {LinearConstraint::parse("w10 = 1"), LinearConstraint::parse("w10 <= 0")});
    REQUIRE(f.steps.size() == 2);
    CHECK(f.steps[0].remaining == 1);
    CHECK(f.steps[1].remaining == 0);
    REQUIRE(f.violated.has_value());
    CHECK(f.violated->to_string() == "w10 <= 0");
    CHECK(constraint_filter(sols, {}).summary() == "FEASIBLE (2 solutions)");
}

TEST_CASE("profile against virtual Betti numbers") {
    const WeightArray w = WeightArray::from_rows({{1}, {0, 1}, {2, 3, 3}});
    const ProfileVerdict v = mv_profile_vs_virtual_betti(w, {4, -1, 3});
    CHECK_FALSE(v.holds);
    REQUIRE(v.failures.size() == 2);
    CHECK(v.failures[0] == RowMismatch{0, 3, 4});
    CHECK(v.failures[1] == RowMismatch{1, -2, -1});
    CHECK(mv_profile_vs_virtual_betti(WeightArray::from_rows({{1}, {0, 1}, {3, 2, 3}}), {4, -1, 3}).holds);
}

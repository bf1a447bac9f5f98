// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "vbetti/fixtures.hpp"
#include "vbetti/mvss.hpp"
#include "vbetti/scene.hpp"
#include "vbetti/weights.hpp"

using namespace vbetti;
namespace fx = vbetti::fixtures;

namespace {

// Collects mismatches of one criterion.
struct Gate {
    std::vector<std::string> failures;

    template <class A, class B>
    void eq(const std::string& what, const A& actual, const B& expected) {
        if (actual == expected) return;
        std::ostringstream out;
        out << what << ": got " << actual << ", want " << expected;
        failures.push_back(out.str());
    }
    void require(const std::string& what, bool ok) {
        if (!ok) failures.push_back(what);
    }
};

std::string cells(const SpectralPage& page, const std::vector<std::vector<std::size_t>>& blocks, std::size_t q) {
    std::string out;
    for (std::size_t p = 0; p < page.columns(); ++p)
        if (blocks[p][q] != 0) out += (out.empty() ? "" : " ") + std::to_string(page.dims[p][q]);
    return out;
}

std::string row_sums(const SpectralPage& page) {
    std::string out;
    for (auto v : row_alternating_sums(page)) out += (out.empty() ? "" : " ") + std::to_string(v);
    return out;
}

void chi_c_fixtures(Gate& g, SceneEvaluator& ev) {
    const PairSpace open = ev.pair("circle-minus-point");
    g.eq("chi_c(circle)", euler_compact_supports(PairSpace::absolute(ev.complex("circle"))), 0);
    g.eq("chi_c(circle minus point)", euler_compact_supports(open), -1);
    g.eq("chi_c(circle minus point) by count", euler_compact_supports_by_count(open), -1);
    g.eq("chi_c(point)", euler_compact_supports(PairSpace::absolute(ev.complex("point"))), 1);
}

void ellipses(Gate& g, SceneEvaluator& ev) {
    const IntPolynomial beta = ev.expression("ellipses").beta;
    g.eq("beta_0", beta.coeff(0), -2);
    g.eq("beta", beta.to_string(), "-2 + 2*t");
    const DegreeAndLeading dl = degree_and_leading(beta);
    g.require("degree 1", dl.degree == std::size_t{1});
    g.require("positive leading coefficient", dl.leading > 0);
    g.require("degree law", degree_report(beta, 1).holds);
}

void figure_eights(Gate& g, SceneEvaluator& ev) {
    const ScissorExpr& x = ev.scene().expressions.at("figure-eight-x");
    const ScissorExpr& y = ev.scene().expressions.at("figure-eight-y");
    g.require("X is presented by a blowup", x.kind() == ScissorExpr::Kind::blowup);
    g.require("Y is presented by a union", y.kind() == ScissorExpr::Kind::disjoint_union);
    g.eq("beta_1(X)", ev.expression("figure-eight-x").beta.coeff(1), 1);
    g.eq("beta_1(Y)", ev.expression("figure-eight-y").beta.coeff(1), 2);
}

void alexandroff(Gate& g, SceneEvaluator& ev) {
    for (std::size_t n = 0; n <= 3; ++n) {
        const std::string k = std::to_string(n);
        g.eq("beta_" + k + "(S^" + std::to_string(n + 1) + " minus S^" + k + ")",
             ev.stratified("sphere-complement-" + k).beta.coeff(n), -1);
        g.eq("beta_" + k + "(R^" + std::to_string(n + 1) + ")", ev.stratified("affine-" + std::to_string(n + 1)).beta.coeff(n),
             0);
    }
}

void euler_consistency(Gate& g, SceneEvaluator& ev) {
    const Scene& s = ev.scene();
    auto check = [&g](const std::string& what, const Valued& v) { g.eq(what, v.beta.eval(-1), v.chi_c); };
    for (const auto& [name, e] : s.expressions) check("expression " + name, ev.expression(name));
    for (const auto& [name, st] : s.stratifications) check("stratification " + name, ev.stratified(name));
    for (const auto& [name, c] : s.covers) check("cover " + name, ev.cover(name));
    for (const auto& [name, a] : s.atoms) check("atom " + name, ev.target(name));
}

void surface_beta(Gate& g, SceneEvaluator& ev) {
    g.eq("b", betti_mod2(*ev.complex("surface-443")).to_string(), "1 1 8");
    g.eq("beta by inclusion-exclusion", ev.cover("surface-443-cover").beta.to_string(), "4 - t + 3*t^2");
    const StratifiedSpec& strata = *ev.stratification("surface-443");
    std::size_t open_cells = 0, arcs = 0, points = 0;
    for (const auto& s : strata.strata) {
        if (const auto* o = std::get_if<OpenModel>(&s.model)) {
            const std::size_t pieces = open_components(o->pair).size();
            (s.dim == 2 ? open_cells : arcs) += pieces;
        } else if (s.dim == 0) {
            points += std::get<CompactModel>(s.model).complex->num_vertices();
        }
    }
    g.eq("open 2-cells", open_cells, 17);
    g.eq("open arcs", arcs, 12);
    g.eq("points", points, 4);
    g.eq("beta by strata", ev.stratified("surface-443").beta.to_string(), "4 - t + 3*t^2");
}

void surface_pages(Gate& g, SceneEvaluator& ev) {
    const SpectralSequence ss = spectral_sequence(ev.arrangement("surface-443"), 3);
    const char* expected[3][3] = {{"3 3 4", "2 3", "3"}, {"1 0 3", "2 3", "3"}, {"1 0 2", "1 3", "3"}};
    for (std::size_t r = 1; r <= 3; ++r)
        for (std::size_t q = 0; q < 3; ++q)
            g.eq("E_" + std::to_string(r) + " row " + std::to_string(q), cells(ss.page(r), ss.block_dims, q),
                 std::string(expected[r - 1][q]));
    g.eq("rank d_2 (0,1) -> (2,0)", ss.rank(2, 0, 1), 1);
    std::size_t other = 0;
    for (const auto& d : ss.differentials)
        if (d.r == 2 && !(d.p == 0 && d.q == 1)) other += d.rank;
    g.eq("other d_2 ranks", other, 0);
    g.eq("stabilization page", ss.stabilization_page, 3);
    g.require("E_3 = E_infinity", ss.page(3) == ss.e_infinity);
    g.require("certificate is nonempty", !ss.certificate.empty());
    for (const auto& d : ss.certificate) g.eq("certificate rank", d.rank, 0);
}

void surface_rows(Gate& g, SceneEvaluator& ev) {
    const SpectralSequence ss = spectral_sequence(ev.arrangement("surface-443"), 3);
    g.eq("row sums E_1", row_sums(ss.page(1)), "4 -1 3");
    g.eq("row sums E_2", row_sums(ss.page(2)), "4 -1 3");
    const ProfileVerdict v = mv_profile_vs_virtual_betti(mv_filtration(ss), {4, -1, 3});
    g.require("E_3 rows fail", !v.holds);
    if (!v.failures.empty()) {
        g.eq("first failing row", v.failures[0].row, 0);
        g.eq("row 0 actual", v.failures[0].actual, 3);
        g.eq("row 0 expected", v.failures[0].expected, 4);
    }
}

void weights(Gate& g, SceneEvaluator& ev) {
    const auto sols = solve_weight_system({{1, 1, 8}, {4, -1, 3}});
    g.eq("solution count", sols.size(), 2);
    g.require("contains {1; 0,1; 3,2,3}",
              std::find(sols.begin(), sols.end(), WeightArray::from_rows({{1}, {0, 1}, {3, 2, 3}})) != sols.end());
    g.require("w21 >= 3 infeasible", constraint_filter(sols, {LinearConstraint::parse("w21 >= 3")}).infeasible());

    g.eq("b(X1 u X2)", betti_mod2(*ev.complex("surface-x1x2")).to_string(), "1 0 3");
    const auto x12 = solve_weight_system({{1, 0, 3}, {1, -1, 2}});
    g.eq("X1 u X2 solutions", x12.size(), 1);
    if (x12.size() == 1) {
        g.eq("X1 u X2 w20", x12[0].at(2, 0), 0);
        g.eq("X1 u X2 w21", x12[0].at(2, 1), 1);
        g.eq("X1 u X2 w22", x12[0].at(2, 2), 2);
    }
    g.eq("b(X1 u X3)", betti_mod2(*ev.complex("surface-x1x3")).to_string(), "1 2 3");
    const auto x13 =
        constraint_filter(solve_weight_system({{1, 2, 3}, {1, 1, 2}}), {LinearConstraint::parse("w10 = 0")}).kept;
    g.eq("X1 u X3 solutions with w10 = 0", x13.size(), 1);
    if (x13.size() == 1) {
        g.eq("X1 u X3 w20", x13[0].at(2, 0), 0);
        g.eq("X1 u X3 w21", x13[0].at(2, 1), 1);
        g.eq("X1 u X3 w22", x13[0].at(2, 2), 2);
    }
}

void property_suites(Gate& g, SceneEvaluator& ev) {
    std::mt19937_64 rng(20261016);

    AtomRegistry reg;
    std::vector<std::string> names;
    for (int i = 0; i < 6; ++i) {
        names.push_back("a" + std::to_string(i));
        reg.declare(names.back(), oracle::random_poly(rng, 3, 4));
    }
    std::size_t law_failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const ScissorExpr x = oracle::random_expr(rng, names, 3), y = oracle::random_expr(rng, names, 3);
        const IntPolynomial bx = evaluate_beta(x, reg), by = evaluate_beta(y, reg);
        law_failures += evaluate_beta(ScissorExpr::disjoint_union(x, y), reg) != bx + by;
        law_failures += evaluate_beta(ScissorExpr::product(x, y), reg) != bx * by;
        law_failures += evaluate_beta(ScissorExpr::closed_difference(x, y), reg) != bx - by;
        law_failures += evaluate_chi_c(x, reg) != bx.eval(-1);
    }
    g.eq("homomorphism law failures over 1000 expressions", law_failures, 0);

    std::size_t matrix_failures = 0;
    std::uniform_int_distribution<std::size_t> dim(0, 8);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t rows = dim(rng), cols = dim(rng);
        const gf2::Matrix m = oracle::random_matrix(rng, rows, cols);
        const std::size_t r = gf2::rank(m);
        matrix_failures += r + gf2::kernel_basis(m).dim() != cols;
        matrix_failures += r != oracle::brute_rank(oracle::to_dense(m));
        matrix_failures += gf2::kernel_basis(m).dim() != oracle::brute_kernel_dim(oracle::to_dense(m), cols);
    }
    g.eq("GF(2) rank-nullity and oracle failures", matrix_failures, 0);

    const Scene& s = ev.scene();
    for (const auto& [name, k] : s.complexes) {
        const BettiVector b = betti_mod2(*k);
        g.eq("Euler " + name, b.euler(), euler_characteristic(*k));
        g.require("oracle homology " + name, b.dims == oracle::homology(oracle::faces_of(*k)));
    }
    for (const char* a : {"circle", "torus", "sphere-1", "two-points"})
        for (const char* b : {"circle", "point", "rp2"}) {
            const IntPolynomial pa = poincare_polynomial(*ev.complex(a)), pb = poincare_polynomial(*ev.complex(b));
            g.require(std::string("Kunneth ") + a + " x " + b,
                      poincare_polynomial(product_complex(*ev.complex(a), *ev.complex(b))) == pa * pb);
        }
    for (const auto& [name, def] : s.arrangements) {
        const Arrangement a = ev.arrangement(name);
        const SpectralSequence ss = spectral_sequence(a, a.size() + 1);
        for (const auto& page : ss.pages)
            g.eq("page Euler " + name + " E_" + std::to_string(page.r), page_euler(page), euler_characteristic(*a.total));
    }

    std::size_t controls = 0;
    for (const auto& [name, def] : s.blowups) {
        const bool holds = ev.blowup(name).holds;
        g.require("blowup " + name + (def.expect_holds ? " holds" : " fails"), holds == def.expect_holds);
        controls += !def.expect_holds;
    }
    g.require("a corrupted negative control is present", controls >= 1);
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Gate&, SceneEvaluator&)>>> criteria = {
        {"chi_c of circle, circle minus point, point", chi_c_fixtures},
        {"two intersecting ellipses", ellipses},
        {"figure-eight curves X and Y", figure_eights},
        {"sphere minus equator and affine space, n = 0..3", alexandroff},
        {"beta(-1) = chi_c for every fixture", euler_consistency},
        {"surface homology, inclusion-exclusion and strata", surface_beta},
        {"surface spectral sequence pages and certificate", surface_pages},
        {"row alternating sums across pages", surface_rows},
        {"weight systems and constraints", weights},
        {"property suites", property_suites},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Gate g;
        try {
            SceneEvaluator ev(fx::builtin_scene());
            criteria[i].second(g, ev);
        } catch (const std::exception& e) {
            g.failures.push_back(std::string("threw: ") + e.what());
        }
        const bool ok = g.failures.empty();
        all = all && ok;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << "\n";
        for (const auto& f : g.failures) std::cout << "    " << f << "\n";
    }
    return all ? 0 : 1;
}

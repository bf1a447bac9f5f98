#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "vbetti/error.hpp"
#include "vbetti/fixtures.hpp"
#include "vbetti/render.hpp"
#include "vbetti/scene.hpp"

namespace {

using nlohmann::json;
using namespace vbetti;

constexpr int kExitOk = 0;
constexpr int kExitFixtureFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;

struct Globals {
    std::string scene_path;
    bool json = false;
    bool strict = false;
    bool quiet = false;
};

void report_error(const std::string& code, const std::string& message, const std::string& context) {
    std::cerr << json{{"code", code}, {"message", message}, {"context", context}}.dump() << "\n";
}

void warn(const Globals& g, const std::string& text) {
    if (!g.quiet) std::cerr << "warning: " << text << "\n";
}

json poly_json(const IntPolynomial& p) { return p.coeffs(); }

json dims_json(const std::vector<std::size_t>& dims) { return dims; }

void warn_about(const Globals& g, const Valued& v) {
    if (!v.declared_atoms.empty()) {
        std::string names;
        for (const auto& n : v.declared_atoms) names += (names.empty() ? "" : ", ") + n;
        warn(g, "result depends on declared atoms: " + names);
    }
    for (const auto& d : v.diagnostics) warn(g, std::string(to_string(d.code)) + " at " + d.where + ": " + d.message);
}

// ---- commands ------------------------------------------------------------------

int cmd_betti(const Globals& g, SceneEvaluator& ev, const std::string& name) {
    const BettiVector b = betti_mod2(*ev.complex(name));
    if (g.json) {
        std::cout << json{{"name", name}, {"b", dims_json(b.dims)}}.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << render::betti_line(b) << "\n";
    return kExitOk;
}

int cmd_vbetti(const Globals& g, SceneEvaluator& ev, const std::string& name, bool chi_c) {
    const std::string kind = ev.target_kind(name);
    const Valued v = ev.target(name);
    warn_about(g, v);
    if (g.json) {
        json out = {{"name", name}, {"kind", kind}, {"beta", v.beta.to_string()}, {"coefficients", poly_json(v.beta)}};
        if (chi_c) {
            out["beta_at_minus_one"] = v.beta.eval(-1);
            out["chi_c"] = v.chi_c;
        }
        out["declared_atoms"] = v.declared_atoms;
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "beta: " << v.beta.to_string() << "\n" << render::virtual_betti_table(v.beta);
    if (chi_c) std::cout << "beta(-1): " << v.beta.eval(-1) << "\nchi_c: " << v.chi_c << "\n";
    return kExitOk;
}

// Inclusion-exclusion over all intersections, each treated as a compact model.
IntPolynomial arrangement_beta(const DoubleComplex& dc) {
    IntPolynomial out;
    for (std::size_t p = 0; p < dc.columns(); ++p)
        for (std::size_t k = 0; k < dc.subsets(p).size(); ++k) {
            const IntPolynomial piece = poincare_polynomial(dc.intersection(p, k).to_complex());
            out = p % 2 == 0 ? out + piece : out - piece;
        }
    return out;
}

std::vector<std::int64_t> coefficients(const IntPolynomial& p, std::size_t length) {
    std::vector<std::int64_t> out;
    for (std::size_t k = 0; k < length; ++k) out.push_back(p.coeff(k));
    return out;
}

int cmd_mvss(const Globals& g, SceneEvaluator& ev, const std::string& name, std::optional<std::size_t> pages) {
    const Arrangement a = ev.arrangement(name);
    a.validate();
    const DoubleComplex dc(a);
    const SpectralSequence ss = spectral_sequence(dc, pages.value_or(1));
    const std::size_t shown = pages.value_or(std::max<std::size_t>(ss.stabilization_page, 1));
    if (shown == 0) throw Error(ErrorCode::InvalidInput, "--pages must be at least 1");
    const BettiVector b = converged_betti(ss, *a.total);
    const FiltrationProfile profile = mv_filtration(ss);
    const std::size_t degrees = profile.degrees();
    const std::vector<std::int64_t> beta = coefficients(arrangement_beta(dc), degrees);
    const ProfileVerdict verdict = mv_profile_vs_virtual_betti(profile, beta);

    if (g.json) {
        json out = {{"name", name}, {"pieces", a.names}, {"block_dims", ss.block_dims}};
        json page_list = json::array();
        for (std::size_t r = 1; r <= shown && r <= ss.pages.size(); ++r)
            page_list.push_back({{"r", r}, {"dims", ss.page(r).dims}, {"row_sums", row_alternating_sums(ss.page(r))}});
        out["pages"] = page_list;
        json diffs = json::array();
        for (const auto& d : ss.differentials)
            if (d.r <= shown) diffs.push_back({{"r", d.r}, {"p", d.p}, {"q", d.q}, {"rank", d.rank}});
        out["differentials"] = diffs;
        out["e_infinity"] = ss.e_infinity.dims;
        out["stabilization_page"] = ss.stabilization_page;
        json cert = json::array();
        for (const auto& d : ss.certificate) cert.push_back({{"r", d.r}, {"p", d.p}, {"q", d.q}, {"rank", d.rank}});
        out["certificate"] = cert;
        out["converged_b"] = dims_json(b.dims);
        out["profile"] = profile.values();
        json fails = json::array();
        for (const auto& f : verdict.failures) fails.push_back({{"row", f.row}, {"actual", f.actual}, {"expected", f.expected}});
        out["virtual_betti"] = {{"beta", beta}, {"holds", verdict.holds}, {"failures", fails}};
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }

    for (std::size_t r = 1; r <= shown && r <= ss.pages.size(); ++r) {
        std::cout << render::page_table(ss.page(r), &ss.block_dims);
        std::cout << "row sums: " << render::join(row_alternating_sums(ss.page(r))) << "\n";
        for (const auto& d : ss.differentials)
            if (d.r == r && d.rank != 0)
                std::cout << "d_" << d.r << " (" << d.p << "," << d.q << ") -> (" << d.p + d.r << ","
                          << d.q + 1 - d.r << ") rank " << d.rank << "\n";
        std::cout << "\n";
    }
    std::cout << "E_inf = E_" << ss.stabilization_page << " (certificate: " << ss.certificate.size()
              << " differentials d_r with r >= " << ss.stabilization_page << ", all rank 0)\n";
    std::cout << "converged " << render::betti_line(b) << "\n";
    std::cout << "profile " << profile.to_string() << "\n" << render::weight_triangle(profile);
    std::cout << "beta: " << render::join(beta) << "\n";
    if (verdict.holds) {
        std::cout << "virtual Betti rows: holds\n";
    } else {
        std::cout << "virtual Betti rows: FAILS";
        for (std::size_t i = 0; i < verdict.failures.size(); ++i) {
            const auto& f = verdict.failures[i];
            std::cout << (i ? ";" : "") << " row " << f.row << ": " << f.actual << " != " << f.expected;
        }
        std::cout << "\n";
    }
    return kExitOk;
}

std::vector<ConstraintDef> read_constraints(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open constraints file", path);
    std::vector<ConstraintDef> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        std::string text = line.substr(0, hash);
        std::string note = hash == std::string::npos ? "" : line.substr(hash + 1);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        text = trim(text);
        if (!text.empty()) out.push_back({text, trim(note)});
    }
    return out;
}

int cmd_weights(const Globals& g, SceneEvaluator& ev, const std::string& name, const std::string& constraints_path) {
    auto it = ev.scene().weight_inputs.find(name);
    if (it == ev.scene().weight_inputs.end())
        throw Error(ErrorCode::UnknownName, "no weight input named '" + name + "'", name);
    WeightInputDef def = it->second;
    if (!constraints_path.empty()) def.constraints = read_constraints(constraints_path);
    std::vector<LinearConstraint> constraints;
    for (const auto& c : def.constraints) constraints.push_back(LinearConstraint::parse(c.text, c.note));

    const auto solutions = solve_weight_system(def.input);
    const FilterResult filtered = constraint_filter(solutions, constraints);

    if (g.json) {
        json sols = json::array();
        for (const auto& w : solutions) sols.push_back(w.values());
        json steps = json::array();
        for (const auto& s : filtered.steps)
            steps.push_back({{"constraint", s.constraint.to_string()},
                             {"note", s.constraint.note},
                             {"removed", s.removed},
                             {"remaining", s.remaining}});
        json kept = json::array();
        for (const auto& w : filtered.kept) {
            const ConditionReport rep = check_conditions(w, def.input, {def.compact_nonsingular});
            json one = {{"values", w.values()}, {"manifold", rep.manifold}};
            if (rep.compact_nonsingular_consistent) one["compact_nonsingular_consistent"] = *rep.compact_nonsingular_consistent;
            kept.push_back(one);
        }
        std::cout << json{{"name", name},         {"b", def.input.b},  {"beta", def.input.beta}, {"solutions", sols},
                          {"constraints", steps}, {"kept", kept},      {"summary", filtered.summary()}}
                         .dump(2)
                  << "\n";
        return kExitOk;
    }

    std::cout << "b: " << render::join(def.input.b) << "\nbeta: " << render::join(def.input.beta) << "\n";
    std::cout << "solutions: " << solutions.size() << "\n";
    for (const auto& w : solutions) {
        const ConditionReport rep = check_conditions(w, def.input, {def.compact_nonsingular});
        std::cout << "\n" << w.to_string() << (rep.manifold ? "  manifold condition holds" : "  manifold condition fails");
        if (rep.compact_nonsingular_consistent)
            std::cout << (*rep.compact_nonsingular_consistent ? ", compact nonsingular consistent"
                                                               : ", compact nonsingular inconsistent");
        std::cout << "\n" << render::weight_triangle(w);
    }
    if (!filtered.steps.empty()) {
        std::cout << "\nconstraints:\n";
        for (const auto& s : filtered.steps) {
            std::cout << "  " << s.constraint.to_string();
            if (!s.constraint.note.empty()) std::cout << "  [" << s.constraint.note << "]";
            std::cout << "  removed " << s.removed << ", remaining " << s.remaining << "\n";
        }
    }
    std::cout << "\n" << filtered.summary() << "\n";
    if (!filtered.steps.empty())
        for (const auto& w : filtered.kept) std::cout << w.to_string() << "\n";
    return kExitOk;
}

int cmd_fixtures(const Globals& g, bool list, std::optional<std::string> only, bool dump) {
    if (dump) {
        std::cout << serialize_scene(fixtures::builtin_scene());
        return kExitOk;
    }
    if (list) {
        for (const auto& f : fixtures::suite())
            std::cout << (g.json ? f.name : f.name + "  " + f.summary) << "\n";
        return kExitOk;
    }
    std::vector<const fixtures::Fixture*> chosen;
    if (only && !only->empty()) chosen.push_back(&fixtures::find(*only));
    else
        for (const auto& f : fixtures::suite()) chosen.push_back(&f);

    EngineOptions opt;
    opt.strict = g.strict;
    bool all = true;
    json report = json::array();
    for (const auto* f : chosen) {
        const fixtures::FixtureResult r = fixtures::run(*f, opt);
        all = all && r.passed();
        if (g.json) {
            json checks = json::array();
            for (const auto& c : r.checks)
                checks.push_back({{"what", c.what}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok()}});
            json one = {{"name", r.name}, {"passed", r.passed()}, {"checks", checks}};
            if (!r.error.empty()) one["error"] = r.error;
            report.push_back(one);
            continue;
        }
        std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << "\n";
        if (!r.error.empty()) std::cout << "  error: " << r.error << "\n";
        for (const auto& c : r.checks)
            if (!g.quiet || !c.ok())
                std::cout << "  " << (c.ok() ? "ok   " : "FAIL ") << c.what << ": expected " << c.expected << ", got "
                          << c.actual << "\n";
    }
    if (g.json) std::cout << json{{"passed", all}, {"fixtures", report}}.dump(2) << "\n";
    return all ? kExitOk : kExitFixtureFailure;
}

int exit_code_for(ErrorCode code) { return code == ErrorCode::UnknownName ? kExitUsage : kExitValidation; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mod 2 Betti numbers, virtual Betti numbers and Mayer-Vietoris pages of real varieties"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--scene", g.scene_path, "JSON scene file (defaults to the built-in fixtures)");
    app.add_flag("--json", g.json, "machine-readable output");
    app.add_flag("--strict", g.strict, "treat dimension diagnostics as errors");
    app.add_flag("--quiet", g.quiet, "suppress warnings and passing checks");

    std::string name;
    auto* betti = app.add_subcommand("betti", "mod 2 Betti numbers of a complex");
    betti->add_option("name", name, "complex name")->required();

    bool chi_c = false;
    auto* vbetti = app.add_subcommand("vbetti", "virtual Poincare polynomial of an expression, stratification, cover or atom");
    vbetti->add_option("name", name, "target name")->required();
    vbetti->add_flag("--chi-c", chi_c, "also print beta(-1) and the independently computed chi_c");

    std::optional<std::size_t> pages;
    auto* mvss = app.add_subcommand("mvss", "Mayer-Vietoris spectral sequence of an arrangement");
    mvss->add_option("name", name, "arrangement name")->required();
    mvss->add_option("--pages", pages, "print E_1 through E_r (default: through the stable page)")
        ->check(CLI::PositiveNumber);

    std::string constraints_path;
    auto* weights = app.add_subcommand("weights", "solutions of the weight system, then constraint filtering");
    weights->add_option("name", name, "weight input name")->required();
    weights->add_option("--constraints", constraints_path, "file with one constraint per line; '#' starts a note")
        ->check(CLI::ExistingFile);

    bool list = false;
    bool dump = false;
    std::optional<std::string> only;
    auto* fixtures_cmd = app.add_subcommand("fixtures", "built-in example suite");
    fixtures_cmd->add_flag("--list", list, "print fixture names");
    fixtures_cmd->add_option("--run", only, "run one fixture, or all when no name is given")->expected(0, 1);
    fixtures_cmd->add_flag("--dump", dump, "print the built-in scene as JSON");

    for (auto* sub : {betti, vbetti, mvss, weights, fixtures_cmd}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        report_error("UsageError", e.what(), "");
        return kExitUsage;
    }

    try {
        if (fixtures_cmd->parsed()) return cmd_fixtures(g, list, only, dump);

        std::optional<Scene> loaded;
        if (!g.scene_path.empty()) loaded = load_scene_file(g.scene_path);
        const Scene& scene = loaded ? *loaded : fixtures::builtin_scene();
        EngineOptions opt;
        opt.strict = g.strict;
        SceneEvaluator ev(scene, opt);

        if (betti->parsed()) return cmd_betti(g, ev, name);
        if (vbetti->parsed()) return cmd_vbetti(g, ev, name, chi_c);
        if (mvss->parsed()) return cmd_mvss(g, ev, name, pages);
        if (weights->parsed()) return cmd_weights(g, ev, name, constraints_path);
    } catch (const Error& e) {
        report_error(std::string(to_string(e.code())), e.what(), e.context());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        report_error("InternalError", e.what(), "");
        return kExitValidation;
    }
    return kExitUsage;
}

#include "vbetti/scene.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

#include "vbetti/error.hpp"

namespace vbetti {

using nlohmann::json;

bool operator==(const Scene& a, const Scene& b) {
    if (a.complexes.size() != b.complexes.size()) return false;
    for (const auto& [name, k] : a.complexes) {
        auto it = b.complexes.find(name);
        if (it == b.complexes.end() || !(*k == *it->second)) return false;
    }
    return a.pairs == b.pairs && a.atoms == b.atoms && a.expressions == b.expressions &&
           a.stratifications == b.stratifications && a.covers == b.covers && a.arrangements == b.arrangements &&
           a.weight_inputs == b.weight_inputs && a.blowups == b.blowups;
}

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::InvalidScene, what, where);
}

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) bad(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) bad(where, std::string("missing field '") + key + "'");
    return *it;
}

std::string get_string(const json& v, const std::string& where) {
    if (!v.is_string()) bad(where, "expected a string");
    return v.get<std::string>();
}

std::int64_t get_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) bad(where, "expected an integer");
    return v.get<std::int64_t>();
}

bool get_bool(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) return false;
    if (!it->is_boolean()) bad(where + "." + key, "expected true or false");
    return it->get<bool>();
}

std::vector<std::int64_t> get_int_list(const json& v, const std::string& where) {
    if (!v.is_array()) bad(where, "expected an array of integers");
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_int(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<NamedSimplex> get_simplices(const json& v, const std::string& where) {
    if (!v.is_array()) bad(where, "expected an array of simplices");
    std::vector<NamedSimplex> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string w = where + "[" + std::to_string(i) + "]";
        if (!v[i].is_array()) bad(w, "expected an array of vertex names");
        NamedSimplex s;
        for (const auto& name : v[i]) s.push_back(get_string(name, w));
        out.push_back(std::move(s));
    }
    return out;
}

IntPolynomial get_poly(const json& v, const std::string& where) {
    if (v.is_string()) return IntPolynomial::parse(v.get<std::string>());
    if (v.is_array()) return IntPolynomial(get_int_list(v, where));
    if (v.is_number_integer()) return IntPolynomial::constant(v.get<std::int64_t>());
    bad(where, "expected a polynomial string or coefficient array");
}

template <class F>
void each_entry(const json& doc, const char* section, F&& f) {
    auto it = doc.find(section);
    if (it == doc.end()) return;
    if (!it->is_object()) bad(section, "section must be an object keyed by name");
    for (auto e = it->begin(); e != it->end(); ++e) f(e.key(), e.value(), std::string(section) + "." + e.key());
}

// ---- reading ---------------------------------------------------------------

ComplexPtr read_complex(const json& v, const std::string& where) {
    const json& verts = field(v, "vertices", where);
    if (!verts.is_array()) bad(where + ".vertices", "expected an array of names");
    std::vector<std::string> names;
    for (const auto& n : verts) names.push_back(get_string(n, where + ".vertices"));
    return share(SimplicialComplex::from_maximal(std::move(names), get_simplices(field(v, "maximal_simplices", where),
                                                                                  where + ".maximal_simplices")));
}

PolySource read_source(const json& v, const std::string& where) {
    if (!v.is_object()) return PolySource::of(get_poly(v, where));
    static const std::pair<const char*, PolySource::Kind> kinds[] = {
        {"atom", PolySource::Kind::atom},
        {"complex", PolySource::Kind::complex},
        {"expression", PolySource::Kind::expression},
        {"stratification", PolySource::Kind::stratification},
    };
    if (v.size() != 1) bad(where, "polynomial source needs exactly one of atom, complex, expression, stratification");
    for (const auto& [key, kind] : kinds)
        if (v.contains(key)) return PolySource::named(kind, get_string(v.at(key), where + "." + key));
    bad(where, "unknown polynomial source");
}

ScissorExpr read_expr(const json& v, const std::string& where) {
    if (v.is_string()) return ScissorExpr::atom(v.get<std::string>());
    const std::string op = get_string(field(v, "op", where), where + ".op");
    auto fold = [&](bool product) {
        const json& args = field(v, "args", where);
        if (!args.is_array()) bad(where + ".args", "expected an array");
        if (args.empty()) {
            if (product) bad(where + ".args", "product needs at least one factor");
            return ScissorExpr::empty();
        }
        ScissorExpr acc = read_expr(args[0], where + ".args[0]");
        for (std::size_t i = 1; i < args.size(); ++i) {
            ScissorExpr next = read_expr(args[i], where + ".args[" + std::to_string(i) + "]");
            acc = product ? ScissorExpr::product(acc, next) : ScissorExpr::disjoint_union(acc, next);
        }
        return acc;
    };
    if (op == "empty") return ScissorExpr::empty();
    if (op == "atom") return ScissorExpr::atom(get_string(field(v, "name", where), where + ".name"));
    if (op == "union") return fold(false);
    if (op == "product") return fold(true);
    if (op == "difference")
        return ScissorExpr::closed_difference(read_expr(field(v, "total", where), where + ".total"),
                                              read_expr(field(v, "closed", where), where + ".closed"));
    if (op == "blowup") {
        ScissorExpr::BlowupParts parts;
        if (v.contains("blowup_total")) parts.blowup_total = read_expr(v.at("blowup_total"), where + ".blowup_total");
        if (v.contains("base")) parts.base = read_expr(v.at("base"), where + ".base");
        parts.exceptional = read_expr(field(v, "exceptional", where), where + ".exceptional");
        parts.center = read_expr(field(v, "center", where), where + ".center");
        const std::string yields = v.contains("yields") ? get_string(v.at("yields"), where + ".yields") : "total";
        if (yields == "total") parts.side = BlowupSide::total;
        else if (yields == "base") parts.side = BlowupSide::base;
        else bad(where + ".yields", "expected \"total\" or \"base\"");
        try {
            return ScissorExpr::blowup(std::move(parts));
        } catch (const Error& e) {
            bad(where, e.what());
        }
    }
    bad(where + ".op", "unknown operation '" + op + "'");
}

StratificationDef read_stratification(const json& v, const std::string& where) {
    StratificationDef def;
    const json& strata = field(v, "strata", where);
    if (!strata.is_array()) bad(where + ".strata", "expected an array");
    for (std::size_t i = 0; i < strata.size(); ++i) {
        const std::string w = where + ".strata[" + std::to_string(i) + "]";
        const json& s = strata[i];
        StratumDef d;
        d.name = get_string(field(s, "name", w), w + ".name");
        const std::int64_t dim = get_int(field(s, "dim", w), w + ".dim");
        if (dim < 0) bad(w + ".dim", "dimension must be nonnegative");
        d.dim = static_cast<std::size_t>(dim);
        const json& model = field(s, "model", w);
        const std::string mw = w + ".model";
        const std::string kind = get_string(field(model, "kind", mw), mw + ".kind");
        if (kind == "compact") {
            d.kind = StratumDef::Kind::compact;
            d.complex = get_string(field(model, "complex", mw), mw + ".complex");
        } else if (kind == "open") {
            d.kind = StratumDef::Kind::open;
            d.pair = get_string(field(model, "pair", mw), mw + ".pair");
            if (model.contains("boundary_stratification"))
                d.boundary_stratification = get_string(model.at("boundary_stratification"), mw + ".boundary_stratification");
            d.boundary_nonsingular = get_bool(model, "boundary_nonsingular", mw);
        } else if (kind == "declared") {
            d.kind = StratumDef::Kind::declared;
            d.beta = get_poly(field(model, "beta", mw), mw + ".beta");
            if (model.contains("chi_c")) d.chi_c = get_int(model.at("chi_c"), mw + ".chi_c");
        } else {
            bad(mw + ".kind", "expected compact, open or declared");
        }
        def.strata.push_back(std::move(d));
    }
    if (v.contains("frontier")) {
        const json& f = v.at("frontier");
        if (!f.is_object()) bad(where + ".frontier", "expected an object");
        for (auto e = f.begin(); e != f.end(); ++e) {
            if (!e->is_array()) bad(where + ".frontier." + e.key(), "expected an array of stratum names");
            auto& set = def.frontier[e.key()];
            for (const auto& n : *e) set.insert(get_string(n, where + ".frontier." + e.key()));
        }
    }
    return def;
}

Scene read_scene(const json& doc) {
    if (!doc.is_object()) bad("$", "scene must be a JSON object");
    const json& version = field(doc, "schema_version", "$");
    if (get_int(version, "schema_version") != kSceneSchemaVersion)
        bad("schema_version", "unsupported schema version " + version.dump());

    Scene s;
    each_entry(doc, "complexes", [&](const std::string& name, const json& v, const std::string& w) {
        s.complexes[name] = read_complex(v, w);
    });
    each_entry(doc, "pairs", [&](const std::string& name, const json& v, const std::string& w) {
        s.pairs[name] = {get_string(field(v, "total", w), w + ".total"),
                         get_simplices(field(v, "boundary", w), w + ".boundary")};
    });
    each_entry(doc, "atoms", [&](const std::string& name, const json& v, const std::string& w) {
        AtomDef a;
        if (v.contains("note")) a.note = get_string(v.at("note"), w + ".note");
        if (v.contains("declared")) {
            const json& d = v.at("declared");
            a.kind = AtomDef::Kind::declared;
            a.beta = get_poly(field(d, "beta", w + ".declared"), w + ".declared.beta");
            if (d.contains("chi_c")) a.chi_c = get_int(d.at("chi_c"), w + ".declared.chi_c");
            a.compact_nonsingular = get_bool(d, "compact_nonsingular", w + ".declared");
        } else if (v.contains("complex")) {
            a.kind = AtomDef::Kind::complex;
            a.ref = get_string(v.at("complex"), w + ".complex");
        } else if (v.contains("stratification")) {
            a.kind = AtomDef::Kind::stratification;
            a.ref = get_string(v.at("stratification"), w + ".stratification");
        } else {
            bad(w, "atom needs one of declared, complex, stratification");
        }
        s.atoms[name] = std::move(a);
    });
    each_entry(doc, "expressions", [&](const std::string& name, const json& v, const std::string& w) {
        s.expressions.emplace(name, read_expr(v, w));
    });
    each_entry(doc, "stratifications", [&](const std::string& name, const json& v, const std::string& w) {
        s.stratifications[name] = read_stratification(v, w);
    });
    each_entry(doc, "covers", [&](const std::string& name, const json& v, const std::string& w) {
        CoverDef c;
        const json& pieces = field(v, "pieces", w);
        if (!pieces.is_array()) bad(w + ".pieces", "expected an array");
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            const std::string pw = w + ".pieces[" + std::to_string(i) + "]";
            c.pieces.emplace_back(get_string(field(pieces[i], "name", pw), pw + ".name"),
                                  read_source(field(pieces[i], "beta", pw), pw + ".beta"));
        }
        if (v.contains("intersections")) {
            const json& xs = v.at("intersections");
            if (!xs.is_array()) bad(w + ".intersections", "expected an array");
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const std::string xw = w + ".intersections[" + std::to_string(i) + "]";
                const json& of = field(xs[i], "of", xw);
                if (!of.is_array()) bad(xw + ".of", "expected an array of piece names");
                std::vector<std::string> names;
                for (const auto& n : of) names.push_back(get_string(n, xw + ".of"));
                c.intersections.emplace_back(std::move(names), read_source(field(xs[i], "beta", xw), xw + ".beta"));
            }
        }
        s.covers[name] = std::move(c);
    });
    each_entry(doc, "arrangements", [&](const std::string& name, const json& v, const std::string& w) {
        ArrangementDef a;
        a.total = get_string(field(v, "total", w), w + ".total");
        const json& pieces = field(v, "pieces", w);
        if (!pieces.is_array()) bad(w + ".pieces", "expected an array");
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            const std::string pw = w + ".pieces[" + std::to_string(i) + "]";
            a.pieces.emplace_back(get_string(field(pieces[i], "name", pw), pw + ".name"),
                                  get_simplices(field(pieces[i], "simplices", pw), pw + ".simplices"));
        }
        s.arrangements[name] = std::move(a);
    });
    each_entry(doc, "weight_inputs", [&](const std::string& name, const json& v, const std::string& w) {
        WeightInputDef d;
        d.input.b = get_int_list(field(v, "b", w), w + ".b");
        d.input.beta = get_int_list(field(v, "beta", w), w + ".beta");
        d.compact_nonsingular = get_bool(v, "compact_nonsingular", w);
        if (v.contains("constraints")) {
            const json& cs = v.at("constraints");
            if (!cs.is_array()) bad(w + ".constraints", "expected an array");
            for (std::size_t i = 0; i < cs.size(); ++i) {
                const std::string cw = w + ".constraints[" + std::to_string(i) + "]";
                if (cs[i].is_string()) {
                    d.constraints.push_back({cs[i].get<std::string>(), {}});
                } else {
                    ConstraintDef c{get_string(field(cs[i], "text", cw), cw + ".text"), {}};
                    if (cs[i].contains("note")) c.note = get_string(cs[i].at("note"), cw + ".note");
                    d.constraints.push_back(std::move(c));
                }
            }
        }
        s.weight_inputs[name] = std::move(d);
    });
    each_entry(doc, "blowups", [&](const std::string& name, const json& v, const std::string& w) {
        BlowupDef b;
        b.x = read_source(field(v, "x", w), w + ".x");
        b.center = read_source(field(v, "center", w), w + ".center");
        b.blowup = read_source(field(v, "blowup", w), w + ".blowup");
        b.exceptional = read_source(field(v, "exceptional", w), w + ".exceptional");
        if (v.contains("expect")) {
            const std::string e = get_string(v.at("expect"), w + ".expect");
            if (e != "holds" && e != "fails") bad(w + ".expect", "expected \"holds\" or \"fails\"");
            b.expect_holds = e == "holds";
        }
        if (v.contains("note")) b.note = get_string(v.at("note"), w + ".note");
        s.blowups[name] = std::move(b);
    });
    static const std::set<std::string> known = {"schema_version", "complexes", "pairs", "atoms", "expressions",
                                                "stratifications", "covers", "arrangements", "weight_inputs", "blowups"};
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (!known.count(it.key())) bad(it.key(), "unknown section");
    return s;
}

// ---- writing ---------------------------------------------------------------

json write_complex(const SimplicialComplex& k) {
    json maximal = json::array();
    for (const auto& s : k.maximal_simplices()) maximal.push_back(k.to_names(s));
    return {{"vertices", k.vertex_names()}, {"maximal_simplices", maximal}};
}

json write_simplices(const std::vector<NamedSimplex>& list) {
    json out = json::array();
    for (const auto& s : list) out.push_back(s);
    return out;
}

json write_source(const PolySource& s) {
    switch (s.kind) {
    case PolySource::Kind::literal: return s.literal.to_string();
    case PolySource::Kind::atom: return {{"atom", s.ref}};
    case PolySource::Kind::complex: return {{"complex", s.ref}};
    case PolySource::Kind::expression: return {{"expression", s.ref}};
    case PolySource::Kind::stratification: return {{"stratification", s.ref}};
    }
    return nullptr;
}

json write_expr(const ScissorExpr& e) {
    using K = ScissorExpr::Kind;
    switch (e.kind()) {
    case K::empty: return {{"op", "empty"}};
    case K::atom: return {{"op", "atom"}, {"name", e.name()}};
    case K::disjoint_union: return {{"op", "union"}, {"args", {write_expr(*e.child(0)), write_expr(*e.child(1))}}};
    case K::product: return {{"op", "product"}, {"args", {write_expr(*e.child(0)), write_expr(*e.child(1))}}};
    case K::closed_difference:
        return {{"op", "difference"}, {"total", write_expr(*e.child(0))}, {"closed", write_expr(*e.child(1))}};
    case K::blowup: {
        json out = {{"op", "blowup"},
                    {"exceptional", write_expr(*e.child(1))},
                    {"center", write_expr(*e.child(3))},
                    {"yields", e.side() == BlowupSide::total ? "total" : "base"}};
        if (e.child(0)) out["blowup_total"] = write_expr(*e.child(0));
        if (e.child(2)) out["base"] = write_expr(*e.child(2));
        return out;
    }
    }
    return nullptr;
}

json write_scene(const Scene& s) {
    json doc = {{"schema_version", kSceneSchemaVersion}};
    for (const auto& [name, k] : s.complexes) doc["complexes"][name] = write_complex(*k);
    for (const auto& [name, p] : s.pairs) doc["pairs"][name] = {{"total", p.total}, {"boundary", write_simplices(p.boundary)}};
    for (const auto& [name, a] : s.atoms) {
        json v;
        switch (a.kind) {
        case AtomDef::Kind::declared: {
            json d = {{"beta", a.beta.to_string()}};
            if (a.chi_c) d["chi_c"] = *a.chi_c;
            if (a.compact_nonsingular) d["compact_nonsingular"] = true;
            v["declared"] = d;
            break;
        }
        case AtomDef::Kind::complex: v["complex"] = a.ref; break;
        case AtomDef::Kind::stratification: v["stratification"] = a.ref; break;
        }
        if (!a.note.empty()) v["note"] = a.note;
        doc["atoms"][name] = v;
    }
    for (const auto& [name, e] : s.expressions) doc["expressions"][name] = write_expr(e);
    for (const auto& [name, st] : s.stratifications) {
        json strata = json::array();
        for (const auto& d : st.strata) {
            json model;
            switch (d.kind) {
            case StratumDef::Kind::compact: model = {{"kind", "compact"}, {"complex", d.complex}}; break;
            case StratumDef::Kind::open:
                model = {{"kind", "open"}, {"pair", d.pair}};
                if (!d.boundary_stratification.empty()) model["boundary_stratification"] = d.boundary_stratification;
                if (d.boundary_nonsingular) model["boundary_nonsingular"] = true;
                break;
            case StratumDef::Kind::declared:
                model = {{"kind", "declared"}, {"beta", d.beta.to_string()}};
                if (d.chi_c) model["chi_c"] = *d.chi_c;
                break;
            }
            strata.push_back({{"name", d.name}, {"dim", d.dim}, {"model", model}});
        }
        json v = {{"strata", strata}};
        if (!st.frontier.empty()) {
            json f = json::object();
            for (const auto& [k, set] : st.frontier) f[k] = std::vector<std::string>(set.begin(), set.end());
            v["frontier"] = f;
        }
        doc["stratifications"][name] = v;
    }
    for (const auto& [name, c] : s.covers) {
        json pieces = json::array();
        for (const auto& [pname, src] : c.pieces) pieces.push_back({{"name", pname}, {"beta", write_source(src)}});
        json xs = json::array();
        for (const auto& [of, src] : c.intersections) xs.push_back({{"of", of}, {"beta", write_source(src)}});
        doc["covers"][name] = {{"pieces", pieces}, {"intersections", xs}};
    }
    for (const auto& [name, a] : s.arrangements) {
        json pieces = json::array();
        for (const auto& [pname, simplices] : a.pieces)
            pieces.push_back({{"name", pname}, {"simplices", write_simplices(simplices)}});
        doc["arrangements"][name] = {{"total", a.total}, {"pieces", pieces}};
    }
    for (const auto& [name, w] : s.weight_inputs) {
        json cs = json::array();
        for (const auto& c : w.constraints) {
            json one = {{"text", c.text}};
            if (!c.note.empty()) one["note"] = c.note;
            cs.push_back(one);
        }
        json v = {{"b", w.input.b}, {"beta", w.input.beta}, {"constraints", cs}};
        if (w.compact_nonsingular) v["compact_nonsingular"] = true;
        doc["weight_inputs"][name] = v;
    }
    for (const auto& [name, b] : s.blowups) {
        json v = {{"x", write_source(b.x)},
                  {"center", write_source(b.center)},
                  {"blowup", write_source(b.blowup)},
                  {"exceptional", write_source(b.exceptional)},
                  {"expect", b.expect_holds ? "holds" : "fails"}};
        if (!b.note.empty()) v["note"] = b.note;
        doc["blowups"][name] = v;
    }
    return doc;
}

} // namespace

// ---- validation --------------------------------------------------------------

void Scene::validate() const {
    auto need = [](const auto& section, const std::string& name, const std::string& what, const std::string& where) {
        if (!section.count(name)) bad(where, "unknown " + what + " '" + name + "'");
    };
    auto need_source = [&](const PolySource& src, const std::string& where) {
        switch (src.kind) {
        case PolySource::Kind::literal: return;
        case PolySource::Kind::atom: need(atoms, src.ref, "atom", where); return;
        case PolySource::Kind::complex: need(complexes, src.ref, "complex", where); return;
        case PolySource::Kind::expression: need(expressions, src.ref, "expression", where); return;
        case PolySource::Kind::stratification: need(stratifications, src.ref, "stratification", where); return;
        }
    };
    auto check_simplices = [&](const std::string& total, const std::vector<NamedSimplex>& list, const std::string& where) {
        try {
            Subcomplex::from_maximal(complexes.at(total), list);
        } catch (const Error& e) {
            bad(where, e.what());
        }
    };

    for (const auto& [name, p] : pairs) {
        need(complexes, p.total, "complex", "pairs." + name + ".total");
        check_simplices(p.total, p.boundary, "pairs." + name + ".boundary");
    }
    for (const auto& [name, a] : atoms) {
        if (a.kind == AtomDef::Kind::complex) need(complexes, a.ref, "complex", "atoms." + name);
        if (a.kind == AtomDef::Kind::stratification) need(stratifications, a.ref, "stratification", "atoms." + name);
    }
    for (const auto& [name, e] : expressions)
        for (const auto& leaf : e.atoms()) need(atoms, leaf, "atom", "expressions." + name);
    for (const auto& [name, st] : stratifications) {
        const std::string w = "stratifications." + name;
        std::set<std::string> names;
        std::map<std::string, std::size_t> dims;
        for (const auto& d : st.strata) {
            if (!names.insert(d.name).second) bad(w, "duplicate stratum '" + d.name + "'");
            dims[d.name] = d.dim;
            if (d.kind == StratumDef::Kind::compact) need(complexes, d.complex, "complex", w + "." + d.name);
            if (d.kind == StratumDef::Kind::open) {
                need(pairs, d.pair, "pair", w + "." + d.name);
                if (!d.boundary_stratification.empty())
                    need(stratifications, d.boundary_stratification, "stratification", w + "." + d.name);
            }
        }
        for (const auto& [top, lower] : st.frontier) {
            if (!dims.count(top)) bad(w + ".frontier", "unknown stratum '" + top + "'");
            for (const auto& l : lower) {
                if (!dims.count(l)) bad(w + ".frontier." + top, "unknown stratum '" + l + "'");
                if (dims[l] >= dims[top])
                    bad(w + ".frontier." + top, "frontier stratum '" + l + "' is not of smaller dimension");
            }
        }
    }
    // Boundary stratifications must not lead back to themselves.
    std::map<std::string, int> state;
    std::function<void(const std::string&)> visit = [&](const std::string& name) {
        if (state[name] == 2) return;
        if (state[name] == 1) bad("stratifications." + name, "boundary stratifications form a cycle");
        state[name] = 1;
        for (const auto& d : stratifications.at(name).strata)
            if (!d.boundary_stratification.empty()) visit(d.boundary_stratification);
        state[name] = 2;
    };
    for (const auto& [name, st] : stratifications) visit(name);

    for (const auto& [name, c] : covers) {
        const std::string w = "covers." + name;
        std::set<std::string> piece_names;
        for (const auto& [pname, src] : c.pieces) {
            if (!piece_names.insert(pname).second) bad(w, "duplicate piece '" + pname + "'");
            need_source(src, w + "." + pname);
        }
        for (const auto& [of, src] : c.intersections) {
            for (const auto& n : of)
                if (!piece_names.count(n)) bad(w + ".intersections", "unknown piece '" + n + "'");
            need_source(src, w + ".intersections");
        }
    }
    for (const auto& [name, a] : arrangements) {
        const std::string w = "arrangements." + name;
        need(complexes, a.total, "complex", w + ".total");
        for (const auto& [pname, simplices] : a.pieces) check_simplices(a.total, simplices, w + "." + pname);
    }
    for (const auto& [name, wi] : weight_inputs) {
        try {
            wi.input.validate();
            for (const auto& c : wi.constraints) LinearConstraint::parse(c.text, c.note);
        } catch (const Error& e) {
            throw Error(e.code(), e.what(), "weight_inputs." + name + (e.context().empty() ? "" : ": " + e.context()));
        }
    }
    for (const auto& [name, b] : blowups) {
        const std::string w = "blowups." + name;
        need_source(b.x, w + ".x");
        need_source(b.center, w + ".center");
        need_source(b.blowup, w + ".blowup");
        need_source(b.exceptional, w + ".exceptional");
    }
}

Scene parse_scene(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
    }
    Scene s;
    try {
        s = read_scene(doc);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidScene, e.what());
    }
    s.validate();
    return s;
}

Scene load_scene_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open scene file", path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str());
}

std::string serialize_scene(const Scene& scene) { return write_scene(scene).dump(2) + "\n"; }

// ---- evaluation --------------------------------------------------------------

namespace {

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const char* what) {
    auto it = m.find(name);
    if (it == m.end()) throw Error(ErrorCode::UnknownName, std::string("no ") + what + " named '" + name + "'", name);
    return it->second;
}

} // namespace

SceneEvaluator::SceneEvaluator(const Scene& scene, EngineOptions options) : scene_(scene), options_(options) {}

ComplexPtr SceneEvaluator::complex(const std::string& name) const { return lookup(scene_.complexes, name, "complex"); }

PairSpace SceneEvaluator::pair(const std::string& name) const {
    const PairDef& d = lookup(scene_.pairs, name, "pair");
    ComplexPtr total = complex(d.total);
    return {total, Subcomplex::from_maximal(total, d.boundary)};
}

std::shared_ptr<const StratifiedSpec> SceneEvaluator::stratification(const std::string& name) {
    if (auto it = strat_cache_.find(name); it != strat_cache_.end()) return it->second;
    const StratificationDef& def = lookup(scene_.stratifications, name, "stratification");
    if (!building_.insert(name).second)
        throw Error(ErrorCode::InvalidScene, "boundary stratifications form a cycle", name);
    auto spec = std::make_shared<StratifiedSpec>();
    spec->name = name;
    spec->frontier = def.frontier;
    for (const auto& d : def.strata) {
        StratumRecord r{d.name, d.dim, DeclaredBeta{}};
        switch (d.kind) {
        case StratumDef::Kind::compact: r.model = CompactModel{complex(d.complex)}; break;
        case StratumDef::Kind::open: {
            OpenModel m{pair(d.pair), nullptr, d.boundary_nonsingular};
            if (!d.boundary_stratification.empty()) m.boundary_stratification = stratification(d.boundary_stratification);
            r.model = std::move(m);
            break;
        }
        case StratumDef::Kind::declared: r.model = DeclaredBeta{d.beta, d.chi_c}; break;
        }
        spec->strata.push_back(std::move(r));
    }
    building_.erase(name);
    spec->validate();
    strat_cache_[name] = spec;
    return spec;
}

const AtomRegistry& SceneEvaluator::registry() {
    if (registry_) return *registry_;
    AtomRegistry reg;
    for (const auto& [name, a] : scene_.atoms) {
        switch (a.kind) {
        case AtomDef::Kind::declared: reg.declare(name, a.beta, a.chi_c, a.compact_nonsingular, a.note); break;
        case AtomDef::Kind::complex: reg.add_compact_model(name, *complex(a.ref), "complex " + a.ref); break;
        case AtomDef::Kind::stratification: {
            const StratumValue v = beta_of_stratified(*stratification(a.ref), options_);
            reg.add(name, {v.beta, v.chi_c, {ProvenanceKind::computed_recursively, "stratification " + a.ref}, false});
            break;
        }
        }
    }
    registry_ = std::move(reg);
    return *registry_;
}

Arrangement SceneEvaluator::arrangement(const std::string& name) const {
    const ArrangementDef& d = lookup(scene_.arrangements, name, "arrangement");
    Arrangement a;
    a.total = complex(d.total);
    for (const auto& [pname, simplices] : d.pieces) {
        a.names.push_back(pname);
        a.pieces.push_back(Subcomplex::from_maximal(a.total, simplices));
    }
    return a;
}

Valued SceneEvaluator::expression(const std::string& name) {
    const ScissorExpr& e = lookup(scene_.expressions, name, "expression");
    Valued v;
    EvaluationTrace trace;
    v.beta = evaluate_beta(e, registry(), &trace);
    v.chi_c = evaluate_chi_c(e, registry());
    v.declared_atoms = std::move(trace.declared_atoms);
    return v;
}

Valued SceneEvaluator::stratified(const std::string& name) {
    StratumValue s = beta_of_stratified(*stratification(name), options_);
    return {std::move(s.beta), s.chi_c, std::move(s.diagnostics), {}};
}

Valued SceneEvaluator::source(const PolySource& s) {
    switch (s.kind) {
    case PolySource::Kind::literal: return {s.literal, s.literal.eval(-1), {}, {}};
    case PolySource::Kind::atom: {
        const AtomRecord& r = registry().at(s.ref);
        Valued v{r.beta, r.chi_c, {}, {}};
        if (r.provenance.kind == ProvenanceKind::declared) v.declared_atoms.insert(s.ref);
        return v;
    }
    case PolySource::Kind::complex: {
        ComplexPtr k = complex(s.ref);
        return {poincare_polynomial(*k), euler_characteristic(*k), {}, {}};
    }
    case PolySource::Kind::expression: return expression(s.ref);
    case PolySource::Kind::stratification: return stratified(s.ref);
    }
    return {};
}

Valued SceneEvaluator::cover(const std::string& name) {
    const CoverDef& c = lookup(scene_.covers, name, "cover");
    std::vector<std::pair<std::string, IntPolynomial>> beta_pieces, chi_pieces;
    std::map<std::string, std::size_t> index;
    Valued out;
    auto absorb = [&out](Valued& v) {
        out.declared_atoms.insert(v.declared_atoms.begin(), v.declared_atoms.end());
        for (auto& d : v.diagnostics) out.diagnostics.push_back(std::move(d));
    };
    for (const auto& [pname, src] : c.pieces) {
        Valued v = source(src);
        index[pname] = beta_pieces.size();
        beta_pieces.emplace_back(pname, v.beta);
        chi_pieces.emplace_back(pname, IntPolynomial::constant(v.chi_c));
        absorb(v);
    }
    std::map<std::vector<std::size_t>, IntPolynomial> beta_x, chi_x;
    for (const auto& [of, src] : c.intersections) {
        std::vector<std::size_t> key;
        for (const auto& n : of) key.push_back(index.at(n));
        std::sort(key.begin(), key.end());
        Valued v = source(src);
        beta_x[key] = v.beta;
        chi_x[key] = IntPolynomial::constant(v.chi_c);
        absorb(v);
    }
    out.beta = inclusion_exclusion(beta_pieces, beta_x);
    out.chi_c = inclusion_exclusion(chi_pieces, chi_x).coeff(0);
    return out;
}

BlowupVerdict SceneEvaluator::blowup(const std::string& name) {
    const BlowupDef& b = lookup(scene_.blowups, name, "blowup");
    return check_blowup_relation(source(b.x).beta, source(b.center).beta, source(b.blowup).beta,
                                 source(b.exceptional).beta);
}

std::string SceneEvaluator::target_kind(const std::string& name) const {
    if (scene_.expressions.count(name)) return "expression";
    if (scene_.stratifications.count(name)) return "stratification";
    if (scene_.covers.count(name)) return "cover";
    if (scene_.atoms.count(name)) return "atom";
    return {};
}

Valued SceneEvaluator::target(const std::string& name) {
    const std::string kind = target_kind(name);
    if (kind == "expression") return expression(name);
    if (kind == "stratification") return stratified(name);
    if (kind == "cover") return cover(name);
    if (kind == "atom") return source(PolySource::named(PolySource::Kind::atom, name));
    throw Error(ErrorCode::UnknownName, "no expression, stratification, cover or atom named '" + name + "'", name);
}

} // namespace vbetti

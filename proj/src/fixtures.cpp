#include "vbetti/fixtures.hpp"

#include <algorithm>
#include <sstream>

#include "vbetti/error.hpp"
#include "vbetti/render.hpp"

namespace vbetti::fixtures {

// ---- model builders ----------------------------------------------------------

SimplicialComplex points(std::size_t count, const std::string& prefix) {
    std::vector<std::string> names;
    std::vector<NamedSimplex> maximal;
    for (std::size_t i = 0; i < count; ++i) {
        names.push_back(prefix + std::to_string(i));
        maximal.push_back({names.back()});
    }
    return SimplicialComplex::from_maximal(names, maximal);
}

SimplicialComplex cycle(const std::vector<std::string>& names) {
    std::vector<NamedSimplex> edges;
    for (std::size_t i = 0; i < names.size(); ++i) edges.push_back({names[i], names[(i + 1) % names.size()]});
    return SimplicialComplex::from_maximal(names, edges);
}

SimplicialComplex circle() { return cycle({"c0", "c1", "c2", "c3"}); }

namespace {

std::string pole(std::size_t axis, bool plus) { return "x" + std::to_string(axis) + (plus ? "+" : "-"); }

std::vector<NamedSimplex> cross_polytope_facets(std::size_t axes) {
    std::vector<NamedSimplex> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << axes); ++mask) {
        NamedSimplex s;
        for (std::size_t i = 0; i < axes; ++i) s.push_back(pole(i, ((mask >> i) & 1u) == 0));
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace

SimplicialComplex sphere(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i <= n; ++i) {
        names.push_back(pole(i, true));
        names.push_back(pole(i, false));
    }
    return SimplicialComplex::from_maximal(names, cross_polytope_facets(n + 1));
}

std::vector<NamedSimplex> sphere_equator(std::size_t n) {
    if (n == 0) return {};
    return cross_polytope_facets(n);
}

namespace {

SimplicialComplex grid_surface(std::size_t size, bool twisted, const std::string& prefix) {
    auto vertex = [&](std::size_t i, std::size_t j) {
        i %= size;
        if (j == size) {
            j = 0;
            if (twisted) i = (size - i) % size;
        }
        return prefix + std::to_string(i) + std::to_string(j);
    };
    std::vector<std::string> names;
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) names.push_back(vertex(i, j));
    std::vector<NamedSimplex> faces;
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
            faces.push_back({vertex(i, j), vertex(i + 1, j), vertex(i + 1, j + 1)});
            faces.push_back({vertex(i, j), vertex(i, j + 1), vertex(i + 1, j + 1)});
        }
    return SimplicialComplex::from_maximal(names, faces);
}

} // namespace

SimplicialComplex torus() { return grid_surface(3, false, "t"); }

SimplicialComplex klein_bottle() { return grid_surface(4, true, "k"); }

SimplicialComplex projective_plane() {
    std::vector<std::string> names = {"r1", "r2", "r3", "r4", "r5", "r6"};
    const int faces[10][3] = {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 6, 2},
                              {2, 3, 5}, {3, 4, 6}, {4, 5, 2}, {5, 6, 3}, {6, 2, 4}};
    std::vector<NamedSimplex> maximal;
    for (const auto& f : faces)
        maximal.push_back({names[f[0] - 1], names[f[1] - 1], names[f[2] - 1]});
    return SimplicialComplex::from_maximal(names, maximal);
}

// ---- the surface -------------------------------------------------------------------

namespace {

std::string mid(const std::string& curve, const std::string& seg) { return curve + "." + seg; }

// Triangles joining `center` to every edge of the closed polygon.
std::vector<NamedSimplex> cone(const std::vector<std::string>& polygon, const std::string& center) {
    std::vector<NamedSimplex> out;
    for (std::size_t i = 0; i < polygon.size(); ++i) out.push_back({center, polygon[i], polygon[(i + 1) % polygon.size()]});
    return out;
}

void append(std::vector<NamedSimplex>& dst, const std::vector<NamedSimplex>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

// Sphere cut by curves P and Q into four lenses and two octagons.
std::vector<NamedSimplex> sphere_piece(const std::string& tag, const std::string& P, const std::string& Q) {
    const std::vector<std::vector<std::string>> polygons = {
        {"p", mid(P, "pq"), "q", mid(Q, "pq")},
        {"q", mid(P, "qr"), "r", mid(Q, "qr")},
        {"r", mid(P, "rs"), "s", mid(Q, "rs")},
        {"s", mid(P, "sp"), "p", mid(Q, "sp")},
        {"p", mid(Q, "pq"), "q", mid(P, "qr"), "r", mid(Q, "rs"), "s", mid(P, "sp")},
        {"p", mid(P, "pq"), "q", mid(Q, "qr"), "r", mid(P, "rs"), "s", mid(Q, "sp")},
    };
    std::vector<NamedSimplex> out;
    for (std::size_t i = 0; i < polygons.size(); ++i) append(out, cone(polygons[i], tag + ".f" + std::to_string(i)));
    return out;
}

// Torus cut by curves Q and R into four disks and one annulus.
std::vector<NamedSimplex> torus_piece(const std::string& tag, const std::string& Q, const std::string& R) {
    const std::vector<std::vector<std::string>> polygons = {
        {"s", mid(Q, "sp"), "p", mid(R, "sp")},
        {"q", mid(Q, "qr"), "r", mid(R, "qr")},
        {"p", mid(Q, "pq"), "q", mid(R, "qr"), "r", mid(Q, "rs"), "s", mid(R, "sp")},
        {"p", mid(R, "pq"), "q", mid(Q, "qr"), "r", mid(R, "rs"), "s", mid(Q, "sp")},
    };
    std::vector<NamedSimplex> out;
    for (std::size_t i = 0; i < polygons.size(); ++i) append(out, cone(polygons[i], tag + ".f" + std::to_string(i)));

    const std::vector<std::string> top = {"p", mid(Q, "pq"), "q", mid(R, "pq")};
    const std::vector<std::string> bottom = {"r", mid(R, "rs"), "s", mid(Q, "rs")};
    std::vector<std::string> middle;
    for (int i = 0; i < 4; ++i) middle.push_back(tag + ".m" + std::to_string(i));
    auto strip = [&out](const std::vector<std::string>& u, const std::vector<std::string>& v) {
        for (std::size_t i = 0; i < 4; ++i) {
            const std::size_t j = (i + 1) % 4;
            out.push_back({u[i], u[j], v[i]});
            out.push_back({u[j], v[i], v[j]});
        }
    };
    strip(top, middle);
    strip(middle, bottom);
    return out;
}

std::vector<NamedSimplex> curve_edges(const std::string& c) {
    const std::string seq[5] = {"p", "q", "r", "s", "p"};
    const std::string segs[4] = {"pq", "qr", "rs", "sp"};
    std::vector<NamedSimplex> out;
    for (int i = 0; i < 4; ++i) {
        out.push_back({seq[i], mid(c, segs[i])});
        out.push_back({mid(c, segs[i]), seq[i + 1]});
    }
    return out;
}

std::vector<std::string> vertices_in_order(const std::vector<NamedSimplex>& simplices) {
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (const auto& s : simplices)
        for (const auto& v : s)
            if (seen.insert(v).second) names.push_back(v);
    return names;
}

std::vector<NamedSimplex> named_maximal(const Subcomplex& s) {
    std::vector<NamedSimplex> out;
    for (const auto& simplex : s.maximal_simplices()) out.push_back(s.parent().to_names(simplex));
    return out;
}

} // namespace

const Surface& surface() {
    static const Surface model = [] {
        const auto x1 = sphere_piece("X1", "c12", "c13");
        const auto x2 = sphere_piece("X2", "c12", "c23");
        const auto x3 = torus_piece("X3", "c13", "c23");
        std::vector<NamedSimplex> all;
        append(all, x1);
        append(all, x2);
        append(all, x3);
        Surface s;
        s.total = share(SimplicialComplex::from_maximal(vertices_in_order(all), all));
        s.x1 = Subcomplex::from_maximal(s.total, x1);
        s.x2 = Subcomplex::from_maximal(s.total, x2);
        s.x3 = Subcomplex::from_maximal(s.total, x3);
        s.c12 = Subcomplex::from_maximal(s.total, curve_edges("c12"));
        s.c13 = Subcomplex::from_maximal(s.total, curve_edges("c13"));
        s.c23 = Subcomplex::from_maximal(s.total, curve_edges("c23"));
        s.curves = s.c12.unite(s.c13).unite(s.c23);
        s.crossings = Subcomplex::from_maximal(s.total, std::vector<NamedSimplex>{{"p"}, {"q"}, {"r"}, {"s"}});
        return s;
    }();
    return model;
}

const TangentCircles& tangent_circles() {
    static const TangentCircles model = [] {
        const std::vector<NamedSimplex> a = {{"P", "a1"}, {"a1", "Q"}, {"Q", "a2"}, {"a2", "P"}};
        const std::vector<NamedSimplex> b = {{"P", "b1"}, {"b1", "Q"}, {"Q", "b2"}, {"b2", "P"}};
        std::vector<NamedSimplex> both = a;
        append(both, b);
        auto x = share(SimplicialComplex::from_maximal({"P", "Q", "a1", "a2", "b1", "b2"}, both));
        auto separated = share(disjoint_union(cycle({"P", "a1", "Q", "a2"}), cycle({"P", "b1", "Q", "b2"})));
        auto collapsed = share(cycle({"P", "r", "Q", "l"}));
        std::map<std::string, std::string> apart;
        for (const auto& name : separated->vertex_names()) apart[name] = name.substr(2);
        const std::map<std::string, std::string> fold = {{"P", "P"},  {"Q", "Q"},  {"a1", "r"},
                                                          {"a2", "r"}, {"b1", "l"}, {"b2", "l"}};
        return TangentCircles{x,
                              Subcomplex::from_maximal(x, a),
                              Subcomplex::from_maximal(x, b),
                              separated,
                              collapsed,
                              SimplicialMap::by_name(separated, x, apart),
                              SimplicialMap::by_name(x, collapsed, fold)};
    }();
    return model;
}

// ---- builtin scene -------------------------------------------------------------

namespace {

PolySource complex_src(const std::string& name) { return PolySource::named(PolySource::Kind::complex, name); }
PolySource atom_src(const std::string& name) { return PolySource::named(PolySource::Kind::atom, name); }
PolySource expr_src(const std::string& name) { return PolySource::named(PolySource::Kind::expression, name); }

StratumDef open_stratum(std::string name, std::size_t dim, std::string pair, std::string boundary_strat = {},
                        bool boundary_nonsingular = false) {
    StratumDef d;
    d.name = std::move(name);
    d.dim = dim;
    d.kind = StratumDef::Kind::open;
    d.pair = std::move(pair);
    d.boundary_stratification = std::move(boundary_strat);
    d.boundary_nonsingular = boundary_nonsingular;
    return d;
}

StratumDef compact_stratum(std::string name, std::size_t dim, std::string complex) {
    StratumDef d;
    d.name = std::move(name);
    d.dim = dim;
    d.kind = StratumDef::Kind::compact;
    d.complex = std::move(complex);
    return d;
}

ScissorExpr atom(const std::string& name) { return ScissorExpr::atom(name); }

void add_complex_atom(Scene& s, const std::string& name, SimplicialComplex k) {
    s.complexes[name] = share(std::move(k));
    AtomDef a;
    a.kind = AtomDef::Kind::complex;
    a.ref = name;
    s.atoms[name] = a;
}

void add_surface(Scene& s) {
    const Surface& m = surface();
    s.complexes["surface-443"] = m.total;
    const std::pair<const char*, const Subcomplex*> pieces[] = {{"X1", &m.x1}, {"X2", &m.x2}, {"X3", &m.x3}};
    const std::pair<const char*, const Subcomplex*> curves[] = {{"c12", &m.c12}, {"c13", &m.c13}, {"c23", &m.c23}};
    for (const auto& [name, sub] : pieces) s.complexes[std::string("surface-") + name] = share(sub->to_complex());
    for (const auto& [name, sub] : curves) {
        const std::string cname = std::string("surface-") + name;
        s.complexes[cname] = share(sub->to_complex());
        s.pairs[cname + "-open"] = {cname, named_maximal(m.crossings)};
    }
    s.complexes["surface-crossings"] = share(m.crossings.to_complex());

    // Each X_i minus the curves it contains, with those curves stratified by the crossings.
    const struct {
        const char* piece;
        const Subcomplex* sub;
        const char* ca;
        const char* cb;
    } opens[] = {{"X1", &m.x1, "c12", "c13"}, {"X2", &m.x2, "c12", "c23"}, {"X3", &m.x3, "c13", "c23"}};
    StratificationDef whole;
    for (const auto& o : opens) {
        const std::string base = std::string("surface-") + o.piece;
        const Subcomplex on_curves = o.sub->intersect(m.curves);
        s.pairs[base + "-open"] = {base, named_maximal(on_curves)};
        StratificationDef boundary;
        boundary.strata = {open_stratum(o.ca, 1, std::string("surface-") + o.ca + "-open"),
                           open_stratum(o.cb, 1, std::string("surface-") + o.cb + "-open"),
                           compact_stratum("crossings", 0, "surface-crossings")};
        boundary.frontier = {{o.ca, {"crossings"}}, {o.cb, {"crossings"}}};
        s.stratifications[base + "-curves"] = boundary;
        whole.strata.push_back(open_stratum(std::string(o.piece) + "-open", 2, base + "-open", base + "-curves"));
    }
    for (const char* c : {"c12", "c13", "c23"})
        whole.strata.push_back(open_stratum(std::string(c) + "-open", 1, std::string("surface-") + c + "-open"));
    whole.strata.push_back(compact_stratum("crossings", 0, "surface-crossings"));
    whole.frontier = {
        {"X1-open", {"c12-open", "c13-open", "crossings"}},
        {"X2-open", {"c12-open", "c23-open", "crossings"}},
        {"X3-open", {"c13-open", "c23-open", "crossings"}},
        {"c12-open", {"crossings"}},
        {"c13-open", {"crossings"}},
        {"c23-open", {"crossings"}},
    };
    s.stratifications["surface-443"] = whole;

    CoverDef cover;
    cover.pieces = {{"X1", complex_src("surface-X1")}, {"X2", complex_src("surface-X2")}, {"X3", complex_src("surface-X3")}};
    cover.intersections = {{{"X1", "X2"}, complex_src("surface-c12")},
                           {{"X1", "X3"}, complex_src("surface-c13")},
                           {{"X2", "X3"}, complex_src("surface-c23")},
                           {{"X1", "X2", "X3"}, complex_src("surface-crossings")}};
    s.covers["surface-443-cover"] = cover;

    ArrangementDef arr{"surface-443", {}};
    for (const auto& [name, sub] : pieces) arr.pieces.emplace_back(name, named_maximal(*sub));
    s.arrangements["surface-443"] = arr;

    // Two-piece sub-arrangements.
    const struct {
        const char* name;
        const Subcomplex* a;
        const char* an;
        const Subcomplex* b;
        const char* bn;
        const char* meet;
    } subs[] = {{"surface-x1x2", &m.x1, "X1", &m.x2, "X2", "surface-c12"},
                {"surface-x1x3", &m.x1, "X1", &m.x3, "X3", "surface-c13"}};
    for (const auto& sub : subs) {
        const Subcomplex both = sub.a->unite(*sub.b);
        s.complexes[sub.name] = share(both.to_complex());
        ArrangementDef a{sub.name, {{sub.an, named_maximal(*sub.a)}, {sub.bn, named_maximal(*sub.b)}}};
        s.arrangements[sub.name] = a;
        CoverDef c;
        c.pieces = {{sub.an, complex_src(std::string("surface-") + sub.an)},
                    {sub.bn, complex_src(std::string("surface-") + sub.bn)}};
        c.intersections = {{{sub.an, sub.bn}, complex_src(sub.meet)}};
        s.covers[std::string(sub.name) + "-cover"] = c;
    }
}

Scene build_scene() {
    Scene s;
    add_complex_atom(s, "point", points(1, "pt"));
    add_complex_atom(s, "two-points", points(2, "pt"));
    add_complex_atom(s, "four-points", points(4, "pt"));
    add_complex_atom(s, "circle", circle());
    add_complex_atom(s, "torus", torus());
    add_complex_atom(s, "rp2", projective_plane());
    add_complex_atom(s, "klein-bottle", klein_bottle());
    for (std::size_t n = 0; n <= 4; ++n) add_complex_atom(s, "sphere-" + std::to_string(n), sphere(n));
    add_complex_atom(s, "ellipse-1", circle());
    add_complex_atom(s, "ellipse-2", circle());
    add_complex_atom(s, "two-circles", disjoint_union(circle(), circle()));
    add_complex_atom(s, "two-spheres", disjoint_union(sphere(2), sphere(2)));
    s.complexes["figure-eight"] = share(SimplicialComplex::from_maximal(
        {"o", "a1", "a2", "b1", "b2"}, {{"o", "a1"}, {"a1", "a2"}, {"a2", "o"}, {"o", "b1"}, {"b1", "b2"}, {"b2", "o"}}));

    // Small pieces and circle strata.
    s.expressions.emplace("empty", ScissorExpr::empty());
    s.pairs["circle-minus-point"] = {"circle", {{"c0"}}};
    s.pairs["circle-minus-two-points"] = {"circle", {{"c0"}, {"c2"}}};
    s.stratifications["circle-minus-point"] = {{open_stratum("arc", 1, "circle-minus-point")}, {}};
    s.complexes["circle-point"] = share(points(1, "c"));
    s.stratifications["circle-refined"] = {
        {open_stratum("arc", 1, "circle-minus-point"), compact_stratum("c0", 0, "circle-point")}, {{"arc", {"c0"}}}};
    s.expressions.emplace("circle-product", ScissorExpr::product(atom("circle"), atom("circle")));

    // Two ellipses meeting in four points.
    s.expressions.emplace("ellipses", ScissorExpr::disjoint_union(
                                          atom("ellipse-1"), ScissorExpr::closed_difference(atom("ellipse-2"), atom("four-points"))));
    s.covers["ellipses-cover"] = {{{"E1", atom_src("ellipse-1")}, {"E2", atom_src("ellipse-2")}},
                                  {{{"E1", "E2"}, atom_src("four-points")}}};

    // Figure eights: X irreducible with a node, Y two circles meeting in a point.
    ScissorExpr::BlowupParts node;
    node.blowup_total = atom("circle");
    node.exceptional = atom("two-points");
    node.center = atom("point");
    node.side = BlowupSide::base;
    s.expressions.emplace("figure-eight-x", ScissorExpr::blowup(node));
    s.expressions.emplace("figure-eight-y", ScissorExpr::disjoint_union(
                                                atom("circle"), ScissorExpr::closed_difference(atom("circle"), atom("point"))));
    s.stratifications["figure-eight-x-strata"] = {
        {open_stratum("branches", 1, "circle-minus-two-points"), compact_stratum("node", 0, "point")},
        {{"branches", {"node"}}}};
    s.stratifications["figure-eight-y-strata"] = {{open_stratum("loop-a", 1, "circle-minus-point"),
                                                   open_stratum("loop-b", 1, "circle-minus-point"),
                                                   compact_stratum("node", 0, "point")},
                                                  {{"loop-a", {"node"}}, {"loop-b", {"node"}}}};
    s.covers["figure-eight-y-cover"] = {{{"A", atom_src("circle")}, {"B", atom_src("circle")}},
                                        {{{"A", "B"}, atom_src("point")}}};

    // Sphere minus an equator, and sphere minus a point.
    for (std::size_t n = 0; n <= 3; ++n) {
        const std::string big = "sphere-" + std::to_string(n + 1);
        const std::string small = "sphere-" + std::to_string(n);
        s.pairs[big + "-minus-equator"] = {big, sphere_equator(n + 1)};
        s.pairs[big + "-minus-pole"] = {big, {{pole(n + 1, true)}}};
        s.stratifications["sphere-complement-" + std::to_string(n)] = {
            {open_stratum("complement", n + 1, big + "-minus-equator", {}, true)}, {}};
        s.stratifications["affine-" + std::to_string(n + 1)] = {
            {open_stratum("chart", n + 1, big + "-minus-pole")}, {}};
        s.expressions.emplace("sphere-difference-" + std::to_string(n),
                              ScissorExpr::closed_difference(atom(big), atom(small)));
        s.expressions.emplace("alexandroff-" + std::to_string(n + 1),
                              ScissorExpr::closed_difference(atom(big), atom("point")));
    }

    add_surface(s);

    // Two circles meeting in two points, as the union of the circles.
    const TangentCircles& tc = tangent_circles();
    s.complexes["tangent-circles"] = tc.x;
    s.arrangements["two-tangent-circles"] = {"tangent-circles", {{"A", named_maximal(tc.a)}, {"B", named_maximal(tc.b)}}};

    auto whole_piece = [&s](const std::string& complex) {
        std::vector<NamedSimplex> out;
        const auto& k = *s.complexes.at(complex);
        for (const auto& simplex : k.maximal_simplices()) out.push_back(k.to_names(simplex));
        return out;
    };
    auto tagged = [&whole_piece](const std::string& complex, const std::string& tag) {
        std::vector<NamedSimplex> out;
        for (auto& simplex : whole_piece(complex))
            if (simplex.front().rfind(tag, 0) == 0) out.push_back(simplex);
        return out;
    };
    s.arrangements["single-piece"] = {"torus", {{"torus", whole_piece("torus")}}};
    s.arrangements["two-disjoint-circles"] = {"two-circles", {{"A", tagged("two-circles", "1.")}, {"B", tagged("two-circles", "2.")}}};
    s.arrangements["two-disjoint-spheres"] = {"two-spheres", {{"A", tagged("two-spheres", "1.")}, {"B", tagged("two-spheres", "2.")}}};

    // Weight systems.
    s.weight_inputs["surface-443"] = {
        {{1, 1, 8}, {4, -1, 3}},
        {{"w21 >= 3", "images of the three curve classes stay independent in the second graded piece"}},
        false};
    s.weight_inputs["surface-443-second-case"] = {
        {{1, 1, 8}, {4, -1, 3}},
        {{"w10 = 1", "case assumption"}, {"w10 <= 0", "H^1 injects into H^1 of the torus piece, which has no weight-0 part"}},
        false};
    s.weight_inputs["surface-x1x2"] = {{{1, 0, 3}, {1, -1, 2}}, {}, false};
    s.weight_inputs["surface-x1x3"] = {
        {{1, 2, 3}, {1, 1, 2}}, {{"w10 = 0", "H^1 injects into H^1 of the torus piece"}}, false};
    s.weight_inputs["torus"] = {{{1, 2, 1}, {1, 2, 1}}, {}, true};
    s.weight_inputs["zero"] = {{{0, 0, 0}, {0, 0, 0}}, {}, false};

    // Blowup quadruples (X, C, Bl_C X, E).
    s.blowups["figure-eight-node"] = {expr_src("figure-eight-x"), atom_src("point"), atom_src("circle"),
                                      atom_src("two-points"), true, "normalization of the node"};
    s.blowups["sphere-at-point"] = {atom_src("sphere-2"), atom_src("point"), atom_src("rp2"), atom_src("circle"), true,
                                    "real blowup of a surface point"};
    s.blowups["rp2-at-point"] = {atom_src("rp2"), atom_src("point"), atom_src("klein-bottle"), atom_src("circle"), true,
                                 "real blowup of a surface point"};
    s.blowups["empty-center"] = {atom_src("torus"), PolySource::of({}), atom_src("torus"), PolySource::of({}), true,
                                 "blowing up nothing changes nothing"};
    s.blowups["component-center"] = {atom_src("two-circles"), atom_src("circle"), atom_src("two-circles"),
                                      atom_src("circle"), true, "center is a whole component"};
    s.blowups["corrupted-torus"] = {atom_src("sphere-2"), atom_src("point"), atom_src("torus"), atom_src("circle"), false,
                                    "negative control: wrong blowup"};

    s.validate();
    return s;
}

} // namespace

const Scene& builtin_scene() {
    static const Scene scene = build_scene();
    return scene;
}

// ---- fixture suite -------------------------------------------------------------

bool FixtureResult::passed() const {
    return error.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok(); });
}

namespace {

std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(bool v) { return v ? "true" : "false"; }

std::string cells(const SpectralPage& page, const std::vector<std::vector<std::size_t>>& blocks) {
    std::ostringstream out;
    for (std::size_t q = 0; q < page.rows(); ++q) {
        std::vector<std::int64_t> row;
        for (std::size_t p = 0; p < page.columns(); ++p)
            if (blocks[p][q] != 0) row.push_back(static_cast<std::int64_t>(page.dims[p][q]));
        if (row.empty()) continue;
        out << (q ? "; " : "") << "q" << q << ": " << render::join(row);
    }
    return out.str();
}

std::string solutions_text(const std::vector<WeightArray>& list) {
    std::string out;
    for (std::size_t i = 0; i < list.size(); ++i) out += (i ? " " : "") + list[i].to_string();
    return out;
}

std::vector<LinearConstraint> constraints_of(const WeightInputDef& d) {
    std::vector<LinearConstraint> out;
    for (const auto& c : d.constraints) out.push_back(LinearConstraint::parse(c.text, c.note));
    return out;
}

std::vector<Check> chi_c(SceneEvaluator& ev) {
    const PairSpace open = ev.pair("circle-minus-point");
    return {
        {"chi_c(circle)", "0", str(euler_characteristic(*ev.complex("circle")))},
        {"chi_c(circle minus point) by counting", "-1", str(euler_compact_supports_by_count(open))},
        {"chi_c(circle minus point) by relative cohomology", "-1", str(euler_compact_supports(open))},
        {"chi_c(point)", "1", str(euler_characteristic(*ev.complex("point")))},
        {"beta(circle minus point)(-1)", "-1", str(ev.stratified("circle-minus-point").beta.eval(-1))},
    };
}

std::vector<Check> ellipses(SceneEvaluator& ev) {
    const Valued v = ev.expression("ellipses");
    const DegreeVerdict deg = degree_report(v.beta, 1);
    return {
        {"beta(ellipses)", "-2 + 2*t", v.beta.to_string()},
        {"beta_0(ellipses)", "-2", str(v.beta.coeff(0))},
        {"degree law, dimension 1", "true", str(deg.holds)},
        {"inclusion-exclusion agrees", "-2 + 2*t", ev.cover("ellipses-cover").beta.to_string()},
    };
}

std::vector<Check> figure_eights(SceneEvaluator& ev) {
    return {
        {"betti(figure-eight model)", "1 2", betti_mod2(*ev.complex("figure-eight")).to_string()},
        {"beta_1(X) via blowup", "1", str(ev.expression("figure-eight-x").beta.coeff(1))},
        {"beta_1(Y) via union of circles", "2", str(ev.expression("figure-eight-y").beta.coeff(1))},
        {"beta(X) via strata", "t", ev.stratified("figure-eight-x-strata").beta.to_string()},
        {"beta(Y) via strata", "1 + 2*t", ev.stratified("figure-eight-y-strata").beta.to_string()},
        {"beta(Y) via cover", "1 + 2*t", ev.cover("figure-eight-y-cover").beta.to_string()},
    };
}

std::vector<Check> alexandroff(SceneEvaluator& ev) {
    std::vector<Check> out;
    for (std::size_t n = 0; n <= 3; ++n) {
        const std::string k = std::to_string(n);
        const IntPolynomial diff = ev.stratified("sphere-complement-" + k).beta;
        const IntPolynomial affine = ev.stratified("affine-" + std::to_string(n + 1)).beta;
        out.push_back({"beta_" + k + "(S^" + std::to_string(n + 1) + " minus S^" + k + ")", "-1", str(diff.coeff(n))});
        out.push_back({"beta_" + k + "(R^" + std::to_string(n + 1) + ")", "0", str(affine.coeff(n))});
        out.push_back({"R^" + std::to_string(n + 1) + " by difference", affine.to_string(),
                       ev.expression("alexandroff-" + std::to_string(n + 1)).beta.to_string()});
        out.push_back({"S^" + std::to_string(n + 1) + " minus S^" + k + " by difference", diff.to_string(),
                       ev.expression("sphere-difference-" + k).beta.to_string()});
    }
    return out;
}

std::vector<Check> surface_homology(SceneEvaluator&) {
    const Surface& m = surface();
    const ComplexPtr sigma = share(m.curves.to_complex());
    const PairSpace arcs{sigma, Subcomplex::from_maximal(sigma, std::vector<NamedSimplex>{{"p"}, {"q"}, {"r"}, {"s"}})};
    return {
        {"b(X)", "1 1 8", betti_mod2(*m.total).to_string()},
        {"b(X1)", "1 0 1", betti_mod2(m.x1.to_complex()).to_string()},
        {"b(X2)", "1 0 1", betti_mod2(m.x2.to_complex()).to_string()},
        {"b(X3)", "1 2 1", betti_mod2(m.x3.to_complex()).to_string()},
        {"X1 meet X2 is c12", "true", str(m.x1.intersect(m.x2) == m.c12)},
        {"X1 meet X3 is c13", "true", str(m.x1.intersect(m.x3) == m.c13)},
        {"X2 meet X3 is c23", "true", str(m.x2.intersect(m.x3) == m.c23)},
        {"triple intersection", "true", str(m.x1.intersect(m.x2).intersect(m.x3) == m.crossings)},
        {"b(c12)", "1 1", betti_mod2(m.c12.to_complex()).to_string()},
        {"components of X minus curves", "17", str(static_cast<std::int64_t>(open_components({m.total, m.curves}).size()))},
        {"arcs of curves minus crossings", "12", str(static_cast<std::int64_t>(open_components(arcs).size()))},
    };
}

std::vector<Check> surface_beta(SceneEvaluator& ev) {
    return {
        {"beta by inclusion-exclusion", "4 - t + 3*t^2", ev.cover("surface-443-cover").beta.to_string()},
        {"beta by strata", "4 - t + 3*t^2", ev.stratified("surface-443").beta.to_string()},
        {"chi_c by strata", "8", str(ev.stratified("surface-443").chi_c)},
        {"chi(X)", "8", str(euler_characteristic(*ev.complex("surface-443")))},
    };
}

std::vector<Check> surface_pages(SceneEvaluator& ev) {
    const SpectralSequence ss = spectral_sequence(ev.arrangement("surface-443"), 3);
    std::size_t nonzero = 0;
    for (const auto& d : ss.certificate) nonzero += d.rank != 0;
    return {
        {"E_1", "q0: 3 3 4; q1: 2 3; q2: 3", cells(ss.page(1), ss.block_dims)},
        {"E_2", "q0: 1 0 3; q1: 2 3; q2: 3", cells(ss.page(2), ss.block_dims)},
        {"E_3", "q0: 1 0 2; q1: 1 3; q2: 3", cells(ss.page(3), ss.block_dims)},
        {"rank d_2 from (0,1)", "1", str(static_cast<std::int64_t>(ss.rank(2, 0, 1)))},
        {"stabilization page", "3", str(static_cast<std::int64_t>(ss.stabilization_page))},
        {"E_3 is E_infinity", "true", str(ss.page(3) == ss.e_infinity)},
        {"certificate size", "9", str(static_cast<std::int64_t>(ss.certificate.size()))},
        {"nonzero ranks in certificate", "0", str(static_cast<std::int64_t>(nonzero))},
        {"converged b", "1 1 8", converged_betti(ss, *ev.complex("surface-443")).to_string()},
    };
}

std::vector<Check> surface_row_sums(SceneEvaluator& ev) {
    const SpectralSequence ss = spectral_sequence(ev.arrangement("surface-443"), 3);
    const ProfileVerdict v = mv_profile_vs_virtual_betti(mv_filtration(ss), {4, -1, 3});
    std::string first;
    if (!v.failures.empty())
        first = "row " + str(static_cast<std::int64_t>(v.failures[0].row)) + ": " + str(v.failures[0].actual) +
                " != " + str(v.failures[0].expected);
    return {
        {"row sums E_1", "4 -1 3", render::join(row_alternating_sums(ss.page(1)))},
        {"row sums E_2", "4 -1 3", render::join(row_alternating_sums(ss.page(2)))},
        {"row sums E_3", "3 -2 3", render::join(row_alternating_sums(ss.page(3)))},
        {"profile", "{1; 0,1; 2,3,3}", mv_filtration(ss).to_string()},
        {"profile satisfies virtual Betti rows", "false", str(v.holds)},
        {"first failing row", "row 0: 3 != 4", first},
    };
}

std::vector<Check> surface_weights(SceneEvaluator& ev) {
    const WeightInputDef& main = ev.scene().weight_inputs.at("surface-443");
    const WeightInputDef& second = ev.scene().weight_inputs.at("surface-443-second-case");
    const auto sols = solve_weight_system(main.input);
    const ConditionReport first = check_conditions(sols.at(0), main.input);
    return {
        {"solutions", "{1; 0,1; 3,2,3} {1; 1,0; 4,1,3}", solutions_text(sols)},
        {"with w21 >= 3", "INFEASIBLE (violates: w21 >= 3)", constraint_filter(sols, constraints_of(main)).summary()},
        {"case w10 = 1", "INFEASIBLE (violates: w10 <= 0)",
         constraint_filter(solve_weight_system(second.input), constraints_of(second)).summary()},
        {"manifold condition on first solution", "false", str(first.manifold)},
    };
}

std::vector<Check> sub_arrangements(SceneEvaluator& ev) {
    const auto& x12 = ev.scene().weight_inputs.at("surface-x1x2");
    const auto& x13 = ev.scene().weight_inputs.at("surface-x1x3");
    return {
        {"b(X1 u X2)", "1 0 3", betti_mod2(*ev.complex("surface-x1x2")).to_string()},
        {"beta(X1 u X2)", "1 - t + 2*t^2", ev.cover("surface-x1x2-cover").beta.to_string()},
        {"weights X1 u X2", "{1; 0,0; 0,1,2}", solutions_text(solve_weight_system(x12.input))},
        {"b(X1 u X3)", "1 2 3", betti_mod2(*ev.complex("surface-x1x3")).to_string()},
        {"beta(X1 u X3)", "1 + t + 2*t^2", ev.cover("surface-x1x3-cover").beta.to_string()},
        {"weights X1 u X3 with w10 = 0", "{1; 0,2; 0,1,2}",
         solutions_text(constraint_filter(solve_weight_system(x13.input), constraints_of(x13)).kept)},
    };
}

std::vector<Check> tangent(SceneEvaluator& ev) {
    const TangentCircles& tc = tangent_circles();
    const SpectralSequence ss = spectral_sequence(ev.arrangement("two-tangent-circles"), 2);
    return {
        {"dim H^1(X)", "3", str(static_cast<std::int64_t>(betti_mod2(*tc.x)[1]))},
        {"rank of pullback from the collapsed circle", "1", str(static_cast<std::int64_t>(cohomology_rank(tc.collapse, 1)))},
        {"rank of pullback to the separated circles", "2", str(static_cast<std::int64_t>(cohomology_rank(tc.separate, 1)))},
        {"image equals kernel", "true", str(cohomology_image(tc.collapse, 1) == cohomology_kernel(tc.separate, 1))},
        {"E_1", "q0: 2 2; q1: 2", cells(ss.page(1), ss.block_dims)},
        {"converged b", "1 3", converged_betti(ss, *tc.x).to_string()},
    };
}

std::vector<Check> blowups(SceneEvaluator& ev) {
    std::vector<Check> out;
    for (const auto& [name, def] : ev.scene().blowups)
        out.push_back({name, def.expect_holds ? "holds" : "fails", ev.blowup(name).holds ? "holds" : "fails"});
    return out;
}

std::vector<Check> chi_consistency(SceneEvaluator& ev) {
    std::vector<Check> out;
    auto add = [&out](const std::string& what, const Valued& v) {
        out.push_back({what, str(v.chi_c), str(v.beta.eval(-1))});
    };
    const Scene& s = ev.scene();
    for (const auto& [name, e] : s.expressions) add("expression " + name, ev.expression(name));
    for (const auto& [name, st] : s.stratifications) add("stratification " + name, ev.stratified(name));
    for (const auto& [name, c] : s.covers) add("cover " + name, ev.cover(name));
    for (const auto& [name, a] : s.atoms) add("atom " + name, ev.target(name));
    return out;
}

std::vector<Check> page_euler_all(SceneEvaluator& ev) {
    std::vector<Check> out;
    for (const auto& [name, def] : ev.scene().arrangements) {
        const Arrangement a = ev.arrangement(name);
        const SpectralSequence ss = spectral_sequence(a, a.size() + 1);
        const std::string chi = str(euler_characteristic(*a.total));
        for (const auto& page : ss.pages)
            out.push_back({name + " E_" + std::to_string(page.r) + " Euler", chi, str(page_euler(page))});
        out.push_back({name + " converged b", betti_mod2(*a.total).to_string(), converged_betti(ss, *a.total).to_string()});
    }
    return out;
}

std::vector<Check> kunneth(SceneEvaluator& ev) {
    return {
        {"beta(circle x circle)", ev.target("torus").beta.to_string(), ev.expression("circle-product").beta.to_string()},
        {"b(circle x circle model)", "1 2 1", betti_mod2(product_complex(circle(), circle())).to_string()},
        {"b(klein bottle)", "1 2 1", betti_mod2(*ev.complex("klein-bottle")).to_string()},
        {"b(projective plane)", "1 1 1", betti_mod2(*ev.complex("rp2")).to_string()},
    };
}

} // namespace

const std::vector<Fixture>& suite() {
    static const std::vector<Fixture> all = {
        {"chi-c", "compactly supported Euler characteristics of circle, circle minus point, point", chi_c},
        {"ellipses", "two ellipses meeting in four points", ellipses},
        {"figure-eights", "homeomorphic curves with different virtual Betti numbers", figure_eights},
        {"alexandroff", "sphere minus equator and affine space, dimensions 1 to 4", alexandroff},
        {"surface-homology", "mod 2 homology of the two-spheres-and-torus surface", surface_homology},
        {"surface-beta", "virtual Poincare polynomial of the surface, two ways", surface_beta},
        {"surface-pages", "Mayer-Vietoris pages of the surface", surface_pages},
        {"surface-row-sums", "row alternating sums and the converged profile", surface_row_sums},
        {"surface-weights", "weight arrays for the surface and their contradictions", surface_weights},
        {"sub-arrangements", "weights of X1 u X2 and X1 u X3", sub_arrangements},
        {"tangent-circles", "two circles meeting in two points", tangent},
        {"blowups", "blowup relation on every blowup quadruple", blowups},
        {"chi-consistency", "beta(-1) against chi_c for every target", chi_consistency},
        {"page-euler", "Euler characteristic of every page of every arrangement", page_euler_all},
        {"kunneth", "products and small surfaces", kunneth},
    };
    return all;
}

const Fixture& find(const std::string& name) {
    for (const auto& f : suite())
        if (f.name == name) return f;
    throw Error(ErrorCode::UnknownName, "no fixture named '" + name + "'", name);
}

FixtureResult run(const Fixture& f, const EngineOptions& options) {
    FixtureResult r;
    r.name = f.name;
    try {
        SceneEvaluator ev(builtin_scene(), options);
        r.checks = f.run(ev);
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

} // namespace vbetti::fixtures

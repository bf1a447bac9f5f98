#ifndef VBETTI_FIXTURES_HPP
#define VBETTI_FIXTURES_HPP

#include <functional>
#include <string>
#include <vector>

#include "vbetti/complex.hpp"
#include "vbetti/mvss.hpp"
#include "vbetti/scene.hpp"

namespace vbetti::fixtures {

// ---- model builders ----------------------------------------------------------

/// `count` isolated vertices named prefix0, prefix1, ...
SimplicialComplex points(std::size_t count, const std::string& prefix = "v");
/// Cycle through the given vertex names in order.
SimplicialComplex cycle(const std::vector<std::string>& names);
/// Square circle c0-c1-c2-c3.
SimplicialComplex circle();
/// Boundary of the (n+1)-dimensional cross-polytope. Vertices x0+, x0-, ...;
/// the sphere of one dimension less is the subcomplex avoiding x{n}+ and x{n}-.
SimplicialComplex sphere(std::size_t n);
/// Maximal simplices of the equator sphere(n-1) inside sphere(n).
std::vector<NamedSimplex> sphere_equator(std::size_t n);
/// 3x3 grid quotient.
SimplicialComplex torus();
/// Six-vertex triangulation.
SimplicialComplex projective_plane();
/// 4x4 grid with one twisted identification.
SimplicialComplex klein_bottle();

/// Two spheres X1, X2 and a torus X3 glued along three circles c12, c13,
/// c23 that pass through four common points p, q, r, s.
struct Surface {
    ComplexPtr total;
    Subcomplex x1, x2, x3;
    Subcomplex curves;     // c12 + c13 + c23
    Subcomplex crossings;  // p, q, r, s
    Subcomplex c12, c13, c23;
};
const Surface& surface();

/// Two circles A and B meeting in the two points P and Q.
struct TangentCircles {
    ComplexPtr x;
    Subcomplex a, b;
    ComplexPtr separated;  // A and B pulled apart; names "1.*" and "2.*"
    ComplexPtr collapsed;  // circle P-r-Q-l
    SimplicialMap separate;  // separated -> x
    SimplicialMap collapse;  // x -> collapsed
};
const TangentCircles& tangent_circles();

/// Scene holding every built-in model, expression, stratification, cover,
/// arrangement, weight input and blowup check.
const Scene& builtin_scene();

// ---- fixture suite -------------------------------------------------------------

struct Check {
    std::string what;
    std::string expected;
    std::string actual;
    bool ok() const { return expected == actual; }
};

struct FixtureResult {
    std::string name;
    std::vector<Check> checks;
    /// Set when the fixture threw instead of producing checks.
    std::string error;
    bool passed() const;
};

struct Fixture {
    std::string name;
    std::string summary;
    std::function<std::vector<Check>(SceneEvaluator&)> run;
};

const std::vector<Fixture>& suite();
/// Throws UnknownName.
const Fixture& find(const std::string& name);
FixtureResult run(const Fixture& f, const EngineOptions& options = {});

} // namespace vbetti::fixtures

#endif

#include <fstream>

#include "catch_amalgamated.hpp"

#include "support.hpp"
#include "vbetti/fixtures.hpp"
#include "vbetti/scene.hpp"

using namespace vbetti;

namespace {

const char* kSmall = R"({
  "schema_version": 1,
  "complexes": {
    "circle": {"vertices": ["a", "b", "c"], "maximal_simplices": [["a", "b"], ["b", "c"], ["a", "c"]]},
    "point": {"vertices": ["p"], "maximal_simplices": [["p"]]}
  },
  "pairs": {"line": {"total": "circle", "boundary": [["a"]]}},
  "atoms": {
    "circle": {"complex": "circle"},
    "point": {"complex": "point"},
    "plane": {"declared": {"beta": "t^2"}, "note": "known analytically"}
  },
  "expressions": {
    "line": {"op": "difference", "total": "circle", "closed": "point"},
    "cylinder": {"op": "product", "args": ["circle", {"op": "difference", "total": "circle", "closed": "point"}]},
    "with-plane": {"op": "union", "args": ["plane", "point"]}
  },
  "stratifications": {
    "circle-strata": {
      "strata": [
        {"name": "arc", "dim": 1, "model": {"kind": "open", "pair": "line"}},
        {"name": "vertex", "dim": 0, "model": {"kind": "compact", "complex": "point"}}
      ],
      "frontier": {"arc": ["vertex"]}
    }
  },
  "weight_inputs": {"circle": {"b": [1, 1], "beta": [1, 1], "compact_nonsingular": true}}
})";

Scene with_change(const std::string& from, const std::string& to) {
    std::string text = kSmall;
    const auto at = text.find(from);
    REQUIRE(at != std::string::npos);
    text.replace(at, from.size(), to);
    return parse_scene(text);
}

} // namespace

TEST_CASE("a small scene evaluates") {
    const Scene s = parse_scene(kSmall);
    SceneEvaluator ev(s);
    CHECK(ev.expression("line").beta.to_string() == "t");
    CHECK(ev.expression("line").chi_c == -1);
    CHECK(ev.expression("cylinder").beta.to_string() == "t + t^2");
    CHECK(ev.stratified("circle-strata").beta.to_string() == "1 + t");
    const Valued plane = ev.expression("with-plane");
    CHECK(plane.beta.to_string() == "1 + t^2");
    CHECK(plane.declared_atoms == std::set<std::string>{"plane"});
    CHECK(ev.target_kind("line") == "expression");
    CHECK(ev.target_kind("circle-strata") == "stratification");
    CHECK(ev.target_kind("plane") == "atom");
    CHECK(ev.target_kind("nothing").empty());
    CHECK(error_code_of([&] { (void)ev.target("nothing"); }) == ErrorCode::UnknownName);
    CHECK(error_code_of([&] { (void)ev.complex("nothing"); }) == ErrorCode::UnknownName);
}

TEST_CASE("malformed JSON is a parse error") {
    CHECK(error_code_of([] { (void)parse_scene("{"); }) == ErrorCode::ParseError);
    CHECK(error_code_of([] { (void)parse_scene("[1, 2"); }) == ErrorCode::ParseError);
}

TEST_CASE("schema violations are invalid scenes") {
    CHECK(error_code_of([] { (void)parse_scene("[]"); }) == ErrorCode::InvalidScene);
    CHECK(error_code_of([] { (void)parse_scene(R"({"schema_version": 2})"); }) == ErrorCode::InvalidScene);
    CHECK(error_code_of([] { (void)parse_scene(R"({"schema_version": 1, "extras": {}})"); }) == ErrorCode::InvalidScene);
    CHECK(error_code_of([] { (void)with_change(R"("total": "circle", "boundary")", R"("total": "ghost", "boundary")"); }) ==
          ErrorCode::InvalidScene);
    CHECK(error_code_of([] { (void)with_change(R"("closed": "point"},)", R"("closed": "ghost"},)"); }) ==
          ErrorCode::InvalidScene);
    CHECK(error_code_of([] { (void)with_change(R"({"arc": ["vertex"]})", R"({"arc": ["nowhere"]})"); }) ==
          ErrorCode::InvalidScene);
    CHECK(error_code_of([] { (void)with_change(R"("boundary": [["a"]])", R"("boundary": [["z"]])"); }) ==
          ErrorCode::InvalidScene);
    CHECK(error_code_of([] { (void)with_change(R"("beta": "t^2")", R"("beta": "t^^2")"); }) ==
          ErrorCode::ParseError);
    CHECK(error_code_of([] { (void)with_change(R"(["a", "b"], ["b", "c"])", R"(["a", "q"], ["b", "c"])"); }) ==
          ErrorCode::UnknownVertex);
}

TEST_CASE("the built-in scene survives a round trip") {
    const Scene& s = fixtures::builtin_scene();
    const std::string text = serialize_scene(s);
    const Scene back = parse_scene(text);
    CHECK(back == s);
    CHECK(serialize_scene(back) == text);
}

TEST_CASE("serialization is deterministic") {
    const Scene a = parse_scene(kSmall);
    const Scene b = parse_scene(kSmall);
    CHECK(serialize_scene(a) == serialize_scene(b));
    CHECK(serialize_scene(a).back() == '\n');
}

TEST_CASE("scenes load from files") {
    const std::string path = "scene_roundtrip_test.json";
    {
        std::ofstream out(path);
        out << serialize_scene(fixtures::builtin_scene());
    }
    CHECK(load_scene_file(path) == fixtures::builtin_scene());
    std::remove(path.c_str());
    CHECK(error_code_of([] { (void)load_scene_file("does/not/exist.json"); }).has_value());
}

TEST_CASE("evaluations through a loaded scene match the built-in one") {
    const Scene back = parse_scene(serialize_scene(fixtures::builtin_scene()));
    SceneEvaluator ev(back);
    CHECK(ev.cover("surface-443-cover").beta.to_string() == "4 - t + 3*t^2");
    CHECK(ev.stratified("surface-443").beta.to_string() == "4 - t + 3*t^2");
    CHECK(ev.expression("figure-eight-x").beta.to_string() == "t");
    CHECK(ev.blowup("corrupted-torus").holds == false);
}

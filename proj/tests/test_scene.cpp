#include <doctest.h>

#include <sstream>

#include "coco/scene.hpp"
#include "support.hpp"

using namespace coco;
using namespace testsupport;

namespace {

const char* kSceneText = R"({
  "cone": {"generators": [[1, 0], [0, 1]]},
  "bodies": {
    "notch": {"constraints": [{"u": [-0.7071067811865476, -0.7071067811865476], "f": 1.0}]}
  },
  "measures": {
    "phi": {"atoms": [{"u": [-0.7071067811865476, -0.7071067811865476], "mass": 2.0}]}
  },
  "config": {"max_iters": 400, "tol": 1e-9, "seed": 7}
})";

}  // namespace

TEST_CASE("scene parsing") {
  Scene scene = parse_scene(kSceneText);
  CHECK(scene.cone.dim == 2);
  REQUIRE(scene.bodies.count("notch") == 1);
  CHECK(coconvex_volume(scene.bodies.at("notch")) == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(scene.measures.count("phi") == 1);
  CHECK(scene.measures.at("phi").total() == doctest::Approx(2.0));
  CHECK(scene.config.max_iters == 400);
  CHECK(scene.config.tol_residual == doctest::Approx(1e-9));
  CHECK(scene.config.seed == 7);
  CHECK(scene.warnings.empty());
}

TEST_CASE("serialization is idempotent") {
  Scene scene = parse_scene(kSceneText);
  std::string once = serialize_scene(scene);
  Scene reparsed = parse_scene(once);
  std::string twice = serialize_scene(reparsed);
  CHECK(once == twice);
}

TEST_CASE("non-unit directions are renormalized with a warning") {
  Scene scene = parse_scene(R"({
    "cone": {"generators": [[1, 0], [0, 1]]},
    "bodies": {"b": {"constraints": [{"u": [-1, -1], "f": 1.0}]}}
  })");
  CHECK(scene.warnings.size() == 1);
  CHECK(std::abs(scene.bodies.at("b").dirs[0].norm() - 1.0) < 1e-15);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_scene("not json"), ParseError);
  CHECK_THROWS_AS(parse_scene(R"({"bodies": {}})"), ParseError);
  CHECK_THROWS_AS(parse_scene(R"({"cone": {"generators": [[1, 0], [0, 1]]},
    "measures": {"m": {"atoms": [{"u": [-1, 0], "mass": 1}]}}})"),
                  ParseError);  // atom direction not in Omega
  CHECK_THROWS_AS(parse_scene(R"({"cone": {"generators": [[1, 0], [0, 1]]},
    "measures": {"m": {"atoms": [{"u": [-1, -1], "mass": -1}]}}})"),
                  ParseError);  // nonpositive mass
  CHECK_THROWS_AS(parse_scene(R"({"cone": {"generators": [[1, 0], [0, 1]]},
    "bodies": {"b": {}}})"),
                  ParseError);  // missing constraints
}

TEST_CASE("measure csv format") {
  DiscreteMeasure mu;
  mu.atoms.push_back({vec2(-1, 0), 1.5});
  std::string csv = measure_csv(mu);
  CHECK(csv.rfind("direction_0,direction_1,mass\n", 0) == 0);
  CHECK(csv.find("1.5") != std::string::npos);
}

TEST_CASE("off export of the corner notch") {
  std::string off = export_off(corner_notch(), 3.0);
  std::istringstream in(off);
  std::string magic;
  int nv = 0, nf = 0, ne = 0;
  in >> magic >> nv >> nf >> ne;
  CHECK(magic == "OFF");
  // truncated simplex piece: 4 boundary vertices + 3 on the top
  CHECK(nv >= 6);
  CHECK(nf >= 4);
  CHECK_THROWS_AS(export_off(diag_notch(), 3.0), DegenerateInput);
}

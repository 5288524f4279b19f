#pragma once

#include <map>
#include <string>

#include "coco/body.hpp"
#include "coco/solver.hpp"

namespace coco {

struct ParseError : error { using error::error; };

// Declarative input: one cone, named bodies (Wulff constraints) and named
// measures, plus solver config overrides.
struct Scene {
  PolyhedralCone cone;
  std::map<std::string, CFullBody> bodies;
  std::map<std::string, DiscreteMeasure> measures;
  SolverConfig config;
  std::vector<std::string> warnings;  // e.g. directions renormalized on load
};

Scene parse_scene(const std::string& text);
Scene load_scene(const std::string& path);

// Canonical serialization; idempotent after the first normalization pass.
std::string serialize_scene(const Scene& scene);

// CSV table with header "direction_0,...,direction_{n-1},mass".
std::string measure_csv(const DiscreteMeasure& mu);

// OFF mesh of the boundary of K ∩ C_t (3D only).
std::string export_off(const CFullBody& body, double t);

}  // namespace coco

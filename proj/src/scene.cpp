#include "coco/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace coco {

using nlohmann::json;

namespace {

Vec parse_vec(const json& j) {
  if (!j.is_array() || j.size() < 2) throw ParseError("vector must be an array of >= 2 numbers");
  Vec v(static_cast<int>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError("vector entries must be numbers");
    v(static_cast<int>(i)) = j[i].get<double>();
  }
  return v;
}

Vec normalize_dir(const Vec& u, const std::string& what, std::vector<std::string>* warnings) {
  double nrm = u.norm();
  if (nrm <= kEpsGeo) throw ParseError("zero direction in " + what);
  if (std::abs(nrm - 1.0) > 1e-12) {
    if (warnings)
      warnings->push_back("direction in " + what + " renormalized (|u| deviated by " +
                          std::to_string(std::abs(nrm - 1.0)) + ")");
    return u / nrm;
  }
  return u;
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

}  // namespace

Scene parse_scene(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid scene file: ") + e.what());
  }
  Scene scene;
  if (!j.contains("cone") || !j["cone"].contains("generators"))
    throw ParseError("scene must define cone.generators");
  std::vector<Vec> gens;
  for (const auto& g : j["cone"]["generators"]) gens.push_back(parse_vec(g));
  scene.cone = validate_cone(gens);

  if (j.contains("bodies")) {
    for (auto it = j["bodies"].begin(); it != j["bodies"].end(); ++it) {
      std::vector<Vec> dirs;
      std::vector<double> offsets;
      if (!it.value().contains("constraints"))
        throw ParseError("body '" + it.key() + "' has no constraints");
      for (const auto& c : it.value()["constraints"]) {
        if (!c.contains("u") || !c.contains("f"))
          throw ParseError("constraint needs fields u and f");
        dirs.push_back(normalize_dir(parse_vec(c["u"]), "body '" + it.key() + "'",
                                     &scene.warnings));
        offsets.push_back(c["f"].get<double>());
      }
      scene.bodies.emplace(it.key(), wulff_shape(scene.cone, dirs, offsets));
    }
  }
  if (j.contains("measures")) {
    for (auto it = j["measures"].begin(); it != j["measures"].end(); ++it) {
      DiscreteMeasure mu;
      if (!it.value().contains("atoms"))
        throw ParseError("measure '" + it.key() + "' has no atoms");
      for (const auto& a : it.value()["atoms"]) {
        if (!a.contains("u") || !a.contains("mass"))
          throw ParseError("atom needs fields u and mass");
        Vec u = normalize_dir(parse_vec(a["u"]), "measure '" + it.key() + "'",
                              &scene.warnings);
        if (!in_omega(scene.cone, u))
          throw ParseError("atom direction in measure '" + it.key() + "' not in Omega_C");
        double mass = a["mass"].get<double>();
        if (!(mass > 0.0)) throw ParseError("atom mass must be positive");
        mu.atoms.push_back({u, mass});
      }
      scene.measures.emplace(it.key(), std::move(mu));
    }
  }
  if (j.contains("config")) {
    const auto& c = j["config"];
    if (c.contains("max_iters")) scene.config.max_iters = c["max_iters"].get<int>();
    if (c.contains("tol")) scene.config.tol_residual = c["tol"].get<double>();
    if (c.contains("step0")) scene.config.step0 = c["step0"].get<double>();
    if (c.contains("backtrack")) scene.config.backtrack = c["backtrack"].get<double>();
    if (c.contains("armijo")) scene.config.armijo = c["armijo"].get<double>();
    if (c.contains("seed")) scene.config.seed = c["seed"].get<unsigned long long>();
  }
  return scene;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scene file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

std::string serialize_scene(const Scene& scene) {
  json j;
  json gens = json::array();
  for (const Vec& g : scene.cone.generators) gens.push_back(vec_to_json(g));
  j["cone"]["generators"] = gens;
  for (const auto& [name, body] : scene.bodies) {
    json cs = json::array();
    for (size_t i = 0; i < body.dirs.size(); ++i)
      cs.push_back({{"u", vec_to_json(body.dirs[i])}, {"f", body.offsets[i]}});
    j["bodies"][name]["constraints"] = cs;
  }
  for (const auto& [name, mu] : scene.measures) {
    json atoms = json::array();
    for (const auto& a : mu.atoms)
      atoms.push_back({{"u", vec_to_json(a.u)}, {"mass", a.mass}});
    j["measures"][name]["atoms"] = atoms;
  }
  j["config"] = {{"max_iters", scene.config.max_iters},
                 {"tol", scene.config.tol_residual},
                 {"step0", scene.config.step0},
                 {"backtrack", scene.config.backtrack},
                 {"armijo", scene.config.armijo},
                 {"seed", scene.config.seed}};
  return j.dump(2) + "\n";
}

std::string measure_csv(const DiscreteMeasure& mu) {
  std::ostringstream out;
  out.precision(17);
  int n = mu.atoms.empty() ? 0 : static_cast<int>(mu.atoms[0].u.size());
  for (int d = 0; d < n; ++d) out << "direction_" << d << ",";
  out << "mass\n";
  for (const auto& a : mu.atoms) {
    for (int d = 0; d < n; ++d) out << a.u(d) << ",";
    out << a.mass << "\n";
  }
  return out.str();
}

std::string export_off(const CFullBody& body, double t) {
  if (body.cone.dim != 3) throw DegenerateInput("OFF export is 3D only");
  TruncatedPolytope poly = truncate_body(body, t);
  std::ostringstream out;
  out.precision(17);
  size_t nfaces = 0;
  std::vector<std::vector<int>> faces;
  for (const auto& f : poly.facets) {
    if (f.vertex_ids.size() < 3) continue;
    // order the polygon counterclockwise as seen from outside
    Vec c = Vec::Zero(3);
    for (int id : f.vertex_ids) c += poly.vertices[id];
    c /= static_cast<double>(f.vertex_ids.size());
    Vec e1 = (poly.vertices[f.vertex_ids[0]] - c).normalized();
    Vec e2(3);
    e2 << f.normal(1) * e1(2) - f.normal(2) * e1(1),
        f.normal(2) * e1(0) - f.normal(0) * e1(2),
        f.normal(0) * e1(1) - f.normal(1) * e1(0);
    std::vector<std::pair<double, int>> ang;
    for (int id : f.vertex_ids) {
      Vec d = poly.vertices[id] - c;
      ang.push_back({std::atan2(e2.dot(d), e1.dot(d)), id});
    }
    std::sort(ang.begin(), ang.end());
    std::vector<int> face;
    for (const auto& [a, id] : ang) face.push_back(id);
    faces.push_back(std::move(face));
    ++nfaces;
  }
  out << "OFF\n" << poly.vertices.size() << " " << nfaces << " 0\n";
  for (const Vec& v : poly.vertices) out << v(0) << " " << v(1) << " " << v(2) << "\n";
  for (const auto& face : faces) {
    out << face.size();
    for (int id : face) out << " " << id;
    out << "\n";
  }
  return out.str();
}

}  // namespace coco

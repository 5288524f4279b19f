#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "coco/inequalities.hpp"
#include "coco/oracles.hpp"
#include "coco/scene.hpp"
#include "coco/solver.hpp"

using nlohmann::json;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNonConvergence = 4;

const coco::CFullBody& get_body(const coco::Scene& scene, const std::string& name) {
  auto it = scene.bodies.find(name);
  if (it == scene.bodies.end()) throw coco::DegenerateInput("unknown body: " + name);
  return it->second;
}

const coco::DiscreteMeasure& get_measure(const coco::Scene& scene, const std::string& name) {
  auto it = scene.measures.find(name);
  if (it == scene.measures.end()) throw coco::DegenerateInput("unknown measure: " + name);
  return it->second;
}

json vec_json(const coco::Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json measure_json(const coco::DiscreteMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms) atoms.push_back({{"u", vec_json(a.u)}, {"mass", a.mass}});
  return atoms;
}

json body_json(const coco::CFullBody& body) {
  json cs = json::array();
  for (size_t i = 0; i < body.dirs.size(); ++i)
    cs.push_back({{"u", vec_json(body.dirs[i])}, {"f", body.offsets[i]}});
  return cs;
}

void print_measure_table(const std::string& title, const coco::DiscreteMeasure& mu) {
  std::cout << title << "\n";
  for (const auto& a : mu.atoms) {
    std::cout << "  u = [";
    for (int i = 0; i < a.u.size(); ++i) std::cout << (i ? ", " : "") << a.u(i);
    std::cout << "]  mass = " << a.mass << "\n";
  }
  std::cout << "  total = " << mu.total() << "\n";
}

void print_verdict(const std::string& name, const coco::InequalityVerdict& v) {
  std::cout << name << ": lhs = " << v.lhs << "  rhs = " << v.rhs << "  slack = " << v.slack
            << "  holds = " << (v.holds ? "yes" : "no")
            << "  equality = " << (v.equality ? "yes" : "no") << "\n";
}

void print_report(const coco::SolverReport& rep) {
  std::cout << "converged = " << (rep.converged ? "yes" : "no")
            << "  iterations = " << rep.iterations << "  residual = " << rep.residual
            << "  scale = " << rep.scale_factor << "\n";
  for (size_t i = 0; i < rep.body.dirs.size(); ++i) {
    std::cout << "  u = [";
    for (int d = 0; d < rep.body.dirs[i].size(); ++d)
      std::cout << (d ? ", " : "") << rep.body.dirs[i](d);
    std::cout << "]  f = " << rep.body.offsets[i] << "\n";
  }
}

json report_json(const coco::SolverReport& rep) {
  return {{"converged", rep.converged},
          {"iterations", rep.iterations},
          {"residual", rep.residual},
          {"scale", rep.scale_factor},
          {"body", body_json(rep.body)}};
}

std::vector<std::vector<int>> parse_stages(const std::string& spec) {
  std::vector<std::vector<int>> stages;
  std::stringstream ss(spec);
  std::string stage;
  while (std::getline(ss, stage, ';')) {
    std::vector<int> idx;
    std::stringstream st(stage);
    std::string tok;
    while (std::getline(st, tok, ','))
      if (!tok.empty()) idx.push_back(std::stoi(tok));
    stages.push_back(std::move(idx));
  }
  return stages;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coconvex geometry toolkit: Wulff shapes, coconvex volumes, "
               "Minkowski-type solvers"};
  app.require_subcommand(1);

  std::string scene_path;
  app.add_option("-s,--scene", scene_path, "scene file (JSON)")->required();

  std::string body_a, body_b, measure_name, body_list, csv_path, out_path, stages_spec;
  double lambda = 0.5, height = 0.0;
  long long samples = 1000000;
  unsigned long long seed = 0;
  double tol = -1.0;
  int max_iters = -1;
  bool random_init = false;

  auto* cmd_volume = app.add_subcommand("volume", "coconvex volume of a body");
  cmd_volume->add_option("body", body_a)->required();

  auto* cmd_measures = app.add_subcommand("measures", "surface area and cone-volume measures");
  cmd_measures->add_option("body", body_a)->required();
  cmd_measures->add_option("--csv", csv_path, "write the tables as CSV");

  auto* cmd_cosum = app.add_subcommand("cosum", "co-sum of two bodies");
  cmd_cosum->add_option("a", body_a)->required();
  cmd_cosum->add_option("b", body_b)->required();

  auto* cmd_mixed = app.add_subcommand("mixedvol", "mixed volume of n bodies");
  cmd_mixed->add_option("bodies", body_list, "comma-separated body names")->required();

  auto* cmd_check = app.add_subcommand("check", "inequality checks");
  auto* cmd_bm = cmd_check->add_subcommand("bm", "complemented Brunn-Minkowski");
  cmd_bm->add_option("a", body_a)->required();
  cmd_bm->add_option("b", body_b)->required();
  cmd_bm->add_option("--lambda", lambda)->check(CLI::Range(0.0, 1.0));
  auto* cmd_mink = cmd_check->add_subcommand("mink1", "Minkowski's first inequality");
  cmd_mink->add_option("a", body_a)->required();
  cmd_mink->add_option("b", body_b)->required();

  auto* cmd_solve = app.add_subcommand("solve", "Minkowski-type existence solvers");
  auto* cmd_surf = cmd_solve->add_subcommand("surface", "prescribed surface area measure");
  auto* cmd_cv = cmd_solve->add_subcommand("conevolume", "prescribed cone-volume measure");
  for (auto* c : {cmd_surf, cmd_cv}) {
    c->add_option("--measure", measure_name)->required();
    c->add_option("--tol", tol);
    c->add_option("--max-iters", max_iters);
    c->add_option("--seed", seed)->envname("COCO_SEED");
    c->add_flag("--random-init", random_init);
  }

  auto* cmd_exhaust = app.add_subcommand("exhaust", "staged cone-volume exhaustion");
  cmd_exhaust->add_option("--measure", measure_name)->required();
  cmd_exhaust->add_option("--stages", stages_spec, "e.g. \"0;0,1;0,1,2\"")->required();

  auto* cmd_oracle = app.add_subcommand("oracle", "independent verification oracles");
  auto* cmd_mc = cmd_oracle->add_subcommand("mc", "Monte-Carlo volume estimate");
  cmd_mc->add_option("body", body_a)->required();
  cmd_mc->add_option("--samples", samples);
  cmd_mc->add_option("--seed", seed)->envname("COCO_SEED");

  auto* cmd_export = app.add_subcommand("export", "mesh export");
  auto* cmd_off = cmd_export->add_subcommand("off", "OFF mesh of the truncated body");
  cmd_off->add_option("body", body_a)->required();
  cmd_off->add_option("--t", height, "truncation height (default min enclosing)");
  cmd_off->add_option("-o,--out", out_path, "output path (default stdout)");

  auto* cmd_norm = app.add_subcommand("normalize", "print the canonical scene");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    coco::Scene scene = coco::load_scene(scene_path);
    for (const auto& w : scene.warnings) std::cerr << "warning: " << w << "\n";
    if (tol > 0.0) scene.config.tol_residual = tol;
    if (max_iters > 0) scene.config.max_iters = max_iters;
    scene.config.seed = seed;
    scene.config.randomized_init = random_init;
    std::cout.precision(12);

    if (*cmd_volume) {
      auto v = coco::coconvex_volume_detail(get_body(scene, body_a));
      std::cout << "volume = " << v.integral << "\n"
                << "truncation-difference cross-check = " << v.difference << "\n";
      std::cout << json({{"volume", v.integral}, {"cross_check", v.difference}}).dump() << "\n";
    } else if (*cmd_measures) {
      const auto& body = get_body(scene, body_a);
      auto surf = coco::surface_area_measure(body);
      auto cv = coco::cone_volume_measure(body);
      print_measure_table("surface area measure", surf);
      print_measure_table("cone-volume measure", cv);
      if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        out << coco::measure_csv(surf) << "\n" << coco::measure_csv(cv);
      }
      std::cout << json({{"surface", measure_json(surf)}, {"cone_volume", measure_json(cv)}}).dump()
                << "\n";
    } else if (*cmd_cosum) {
      auto s = coco::co_sum(get_body(scene, body_a), get_body(scene, body_b));
      std::cout << "co-sum has " << s.dirs.size() << " constraints, volume = "
                << coco::coconvex_volume(s) << "\n";
      for (size_t i = 0; i < s.dirs.size(); ++i) {
        std::cout << "  u = [";
        for (int d = 0; d < s.dirs[i].size(); ++d) std::cout << (d ? ", " : "") << s.dirs[i](d);
        std::cout << "]  f = " << s.offsets[i] << "\n";
      }
      std::cout << json({{"body", body_json(s)}, {"volume", coco::coconvex_volume(s)}}).dump()
                << "\n";
    } else if (*cmd_mixed) {
      std::vector<coco::CFullBody> bodies;
      std::stringstream ss(body_list);
      std::string name;
      while (std::getline(ss, name, ','))
        if (!name.empty()) bodies.push_back(get_body(scene, name));
      double mv = coco::mixed_volume(bodies);
      std::cout << "mixed volume = " << mv << "\n";
      std::cout << json({{"mixed_volume", mv}}).dump() << "\n";
    } else if (*cmd_bm) {
      auto v = coco::bm_check(get_body(scene, body_a), get_body(scene, body_b), lambda);
      print_verdict("brunn-minkowski", v);
      std::cout << json({{"lhs", v.lhs}, {"rhs", v.rhs}, {"holds", v.holds},
                         {"equality", v.equality}}).dump()
                << "\n";
      if (!v.holds) return kExitViolation;
    } else if (*cmd_mink) {
      auto v = coco::minkowski_first_check(get_body(scene, body_a), get_body(scene, body_b));
      print_verdict("minkowski-first", v);
      std::cout << json({{"lhs", v.lhs}, {"rhs", v.rhs}, {"holds", v.holds},
                         {"equality", v.equality}}).dump()
                << "\n";
      if (!v.holds) return kExitViolation;
    } else if (*cmd_surf || *cmd_cv) {
      const auto& phi = get_measure(scene, measure_name);
      auto rep = *cmd_surf ? coco::solve_surface(scene.cone, phi, scene.config)
                           : coco::solve_cone_volume(scene.cone, phi, scene.config);
      print_report(rep);
      std::cout << report_json(rep).dump() << "\n";
      if (!rep.converged) return kExitNonConvergence;
    } else if (*cmd_exhaust) {
      auto res = coco::exhaustion_experiment(scene.cone, get_measure(scene, measure_name),
                                             parse_stages(stages_spec), scene.config);
      json stages = json::array();
      bool all_converged = true;
      for (size_t i = 0; i < res.reports.size(); ++i) {
        std::cout << "stage " << i << ": ";
        print_report(res.reports[i]);
        stages.push_back(report_json(res.reports[i]));
        all_converged = all_converged && res.reports[i].converged;
      }
      for (size_t i = 0; i < res.support_distances.size(); ++i)
        std::cout << "support distance " << i << " -> " << i + 1 << ": "
                  << res.support_distances[i] << "\n";
      std::cout << json({{"stages", stages}, {"support_distances", res.support_distances}}).dump()
                << "\n";
      if (!all_converged) return kExitNonConvergence;
    } else if (*cmd_mc) {
      auto est = coco::mc_volume(get_body(scene, body_a), samples, seed);
      std::cout << "mc estimate = " << est.estimate << " +- " << est.stderr_ << " ("
                << est.samples << " samples, seed " << est.seed << ")\n";
      std::cout << json({{"estimate", est.estimate}, {"stderr", est.stderr_},
                         {"samples", est.samples}, {"seed", est.seed}}).dump()
                << "\n";
    } else if (*cmd_off) {
      const auto& body = get_body(scene, body_a);
      double t = height > 0.0 ? height : coco::min_enclosing_t(body);
      std::string off = coco::export_off(body, t);
      if (out_path.empty()) {
        std::cout << off;
      } else {
        std::ofstream out(out_path);
        out << off;
        std::cout << "wrote " << out_path << "\n";
      }
    } else if (*cmd_norm) {
      std::cout << coco::serialize_scene(scene);
    }
  } catch (const coco::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const coco::error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  }
  return 0;
}

#pragma once

#include "coco/body.hpp"

namespace coco {

struct SolverConfig {
  int max_iters = 5000;
  double tol_residual = 1e-8;   // relative, on the target measure
  double step0 = 1.0;
  double backtrack = 0.5;       // in (0,1)
  double armijo = 1e-4;
  bool randomized_init = false; // all-ones init unless set
  unsigned long long seed = 0;
};

struct SolverReport {
  CFullBody body;               // rescaled so its measure matches the target
  std::vector<double> offsets;  // final (pre-rescale) Wulff offsets
  double scale_factor = 1.0;    // post-solve rescale applied to the body
  double residual = 0.0;        // max relative atom error
  int iterations = 0;
  std::vector<double> objective_trace;
  bool converged = false;
};

// Volume of C \ Wulff(C, dirs, f) and its gradient (facet areas, zero at
// slack constraints).
double volume_functional(const PolyhedralCone& cone, const std::vector<Vec>& dirs,
                         const std::vector<double>& f);
std::vector<double> volume_gradient(const PolyhedralCone& cone, const std::vector<Vec>& dirs,
                                    const std::vector<double>& f);

// Variational solve of the Minkowski problem for surface area measures:
// returns a body with surface_area_measure(body) ≈ phi.
SolverReport solve_surface(const PolyhedralCone& cone, const DiscreteMeasure& phi,
                           const SolverConfig& cfg = {});

// Variational solve of the existence problem for cone-volume measures.
SolverReport solve_cone_volume(const PolyhedralCone& cone, const DiscreteMeasure& phi,
                               const SolverConfig& cfg = {});

struct ExhaustionResult {
  std::vector<SolverReport> reports;
  // sup over the shared (earlier-stage) directions of |h_j - h_{j+1}|
  std::vector<double> support_distances;
};

// Solves the cone-volume problem along a nested chain of atom subsets.
ExhaustionResult exhaustion_experiment(const PolyhedralCone& cone, const DiscreteMeasure& phi,
                                       const std::vector<std::vector<int>>& stages,
                                       const SolverConfig& cfg = {});

}  // namespace coco

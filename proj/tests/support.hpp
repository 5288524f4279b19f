#pragma once

// Shared random-instance helpers for property tests.  Cones are built around
// a random axis so that Omega_C is comfortably nonempty; everything retries
// until the instance is well-conditioned.

#include <random>
#include <vector>

#include "coco/body.hpp"

namespace testsupport {

using coco::Vec;

inline Vec rand_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = gauss(rng);
  } while (v.norm() < 1e-6);
  return v.normalized();
}

// Unit vector orthogonal to w.
inline Vec rand_perp(std::mt19937_64& rng, const Vec& w) {
  for (;;) {
    Vec p = rand_unit(rng, static_cast<int>(w.size()));
    p -= p.dot(w) * w;
    if (p.norm() > 1e-3) return p.normalized();
  }
}

// Pointed full-dimensional cone with m generators clustered around a random
// axis (angle < ~45 degrees), so directions near the negative axis are in
// Omega_C with margin to spare.
inline coco::PolyhedralCone random_cone(std::mt19937_64& rng, int n, int m) {
  std::uniform_real_distribution<double> spread(0.3, 0.9);
  for (;;) {
    Vec w = rand_unit(rng, n);
    std::vector<Vec> gens;
    for (int i = 0; i < m; ++i)
      gens.push_back((w + spread(rng) * rand_perp(rng, w)).normalized());
    Eigen::MatrixXd G(n, m);
    for (int i = 0; i < m; ++i) G.col(i) = gens[i];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
    if (svd.singularValues()(n - 1) < 0.1) continue;  // nearly lower-dimensional
    bool separated = true;
    for (size_t i = 0; i < gens.size() && separated; ++i)
      for (size_t j = i + 1; j < gens.size(); ++j)
        if ((gens[i] - gens[j]).norm() < 0.1) { separated = false; break; }
    if (!separated) continue;
    try {
      coco::PolyhedralCone cone = coco::validate_cone(gens);
      if (static_cast<int>(cone.generators.size()) >= n) return cone;
    } catch (const coco::error&) {
      // retry on degenerate draws
    }
  }
}

// Direction in Omega_C with margin: <g, u> < -margin for every generator.
inline Vec random_omega_dir(std::mt19937_64& rng, const coco::PolyhedralCone& cone,
                            double margin = 0.05) {
  std::uniform_real_distribution<double> tilt(0.0, 0.6);
  for (;;) {
    Vec u = (-(cone.w + tilt(rng) * rand_perp(rng, cone.w))).normalized();
    double worst = -1.0;
    for (const Vec& g : cone.generators) worst = std::max(worst, g.dot(u));
    if (worst < -margin) return u;
  }
}

// Wulff body with k pairwise-distinct constraint directions, offsets in
// [0.5, 2].
inline coco::CFullBody random_body(std::mt19937_64& rng, const coco::PolyhedralCone& cone,
                                   int k) {
  std::uniform_real_distribution<double> off(0.5, 2.0);
  std::vector<Vec> dirs;
  std::vector<double> fs;
  while (static_cast<int>(dirs.size()) < k) {
    Vec u = random_omega_dir(rng, cone);
    bool dup = false;
    for (const Vec& d : dirs)
      if ((d - u).norm() < 0.05) { dup = true; break; }
    if (dup) continue;
    dirs.push_back(u);
    fs.push_back(off(rng));
  }
  return coco::wulff_shape(cone, dirs, fs);
}

// Discrete measure supported on k well-separated Omega directions.
inline coco::DiscreteMeasure random_measure(std::mt19937_64& rng,
                                            const coco::PolyhedralCone& cone, int k,
                                            double lo = 0.2, double hi = 2.0) {
  std::uniform_real_distribution<double> mass(lo, hi);
  coco::DiscreteMeasure mu;
  while (static_cast<int>(mu.atoms.size()) < k) {
    Vec u = random_omega_dir(rng, cone, 0.08);
    bool dup = false;
    for (const auto& a : mu.atoms)
      if ((a.u - u).norm() < 0.15) { dup = true; break; }
    if (dup) continue;
    mu.atoms.push_back({u, mass(rng)});
  }
  return mu;
}

// --- fixed hand-checked fixtures ---

inline Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

inline Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

inline coco::PolyhedralCone quadrant() {
  return coco::validate_cone({vec2(1, 0), vec2(0, 1)});
}

inline coco::PolyhedralCone octant() {
  return coco::validate_cone({vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)});
}

// Quadrant cut by the antidiagonal at offset 1: the removed set is the
// triangle {x, y >= 0, x + y < sqrt(2)}, area 1.
inline coco::CFullBody diag_notch() {
  const double s = 1.0 / std::sqrt(2.0);
  return coco::wulff_shape(quadrant(), {vec2(-s, -s)}, {1.0});
}

// Two oblique constraints; removed area 5/3, both facet lengths 5/3.
inline coco::CFullBody two_notch() {
  const double s = 1.0 / std::sqrt(5.0);
  return coco::wulff_shape(quadrant(), {vec2(-2 * s, -s), vec2(-s, -2 * s)}, {1.0, 1.0});
}

// Octant cut by the antidiagonal plane at offset 1: removed volume sqrt(3)/2.
inline coco::CFullBody corner_notch() {
  const double s = 1.0 / std::sqrt(3.0);
  return coco::wulff_shape(octant(), {vec3(-s, -s, -s)}, {1.0});
}

}  // namespace testsupport

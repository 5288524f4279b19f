#pragma once

#include "coco/geometry.hpp"

namespace coco {

// Wulff data over a fixed cone: K = C  ∩  ⋂_i {x : <x, u_i> <= -f_i} with
// u_i in Omega_C and f_i > 0.  A = C \ K is the bounded coconvex set.
struct CFullBody {
  PolyhedralCone cone;
  std::vector<Vec> dirs;    // unit directions in Omega_C
  std::vector<double> offsets;  // positive f_i
};

struct Atom {
  Vec u;
  double mass;
};

struct DiscreteMeasure {
  std::vector<Atom> atoms;

  double total() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.mass;
    return s;
  }
  // Mass at direction u (0 if absent); directions matched within tolerance.
  double mass_at(const Vec& u, double tol = 1e-7) const {
    for (const auto& a : atoms)
      if ((a.u - u).norm() <= tol) return a.mass;
    return 0.0;
  }
  void add(const Vec& u, double mass, double tol = 1e-7) {
    for (auto& a : atoms)
      if ((a.u - u).norm() <= tol) {
        a.mass += mass;
        return;
      }
    atoms.push_back({u, mass});
  }
};

bool same_cone(const PolyhedralCone& a, const PolyhedralCone& b);

CFullBody wulff_shape(const PolyhedralCone& cone, const std::vector<Vec>& dirs,
                      const std::vector<double>& offsets);

// Height bound: C \ K lies strictly inside C_t for the returned t.
double min_enclosing_t(const CFullBody& body);

// K ∩ C_t as a tagged polytope (facets marked Cone / Omega / Top).
TruncatedPolytope truncate_body(const CFullBody& body, double t);

// h_K(u) for u in Omega_C; finite and negative.
double support_value(const CFullBody& body, const Vec& u);

// Re-derive Wulff data from the Omega facets of a truncation: drops
// redundant constraints and sets f = -h_K(u).
CFullBody canonicalize(const CFullBody& body);

struct CoconvexVolume {
  double integral;     // (1/n) sum (-offset) * area over Omega facets
  double difference;   // V(C_t) - V(K ∩ C_t) cross-check
};

CoconvexVolume coconvex_volume_detail(const CFullBody& body);
double coconvex_volume(const CFullBody& body);

DiscreteMeasure surface_area_measure(const CFullBody& body);
DiscreteMeasure cone_volume_measure(const CFullBody& body);

CFullBody co_sum(const CFullBody& a, const CFullBody& b);
CFullBody scale(const CFullBody& a, double lambda);
CFullBody restrict_to_normals(const CFullBody& a, const std::vector<int>& selection);

// Polarization of the volume polynomial of co-sums; bodies.size() == n.
double mixed_volume(const std::vector<CFullBody>& bodies);

// Polarization of the surface area measure; bodies.size() == n - 1.
DiscreteMeasure mixed_area_measure(const std::vector<CFullBody>& bodies);

}  // namespace coco

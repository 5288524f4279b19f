#include "coco/body.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace coco {

namespace {

double body_a0(const CFullBody& body, const Vec* extra = nullptr) {
  double a0 = 1e300;
  for (const Vec& g : body.cone.generators) {
    for (const Vec& u : body.dirs) a0 = std::min(a0, -g.dot(u));
    if (extra) a0 = std::min(a0, -g.dot(*extra));
  }
  return a0;
}

double max_offset(const CFullBody& body) {
  double r = 0.0;
  for (double f : body.offsets) r = std::max(r, f);
  return r;
}

}  // namespace

bool same_cone(const PolyhedralCone& a, const PolyhedralCone& b) {
  if (a.dim != b.dim || a.generators.size() != b.generators.size()) return false;
  for (const Vec& g : a.generators) {
    bool found = false;
    for (const Vec& h : b.generators)
      if ((g - h).norm() <= 1e-8) { found = true; break; }
    if (!found) return false;
  }
  return true;
}

CFullBody wulff_shape(const PolyhedralCone& cone, const std::vector<Vec>& dirs,
                      const std::vector<double>& offsets) {
  if (dirs.size() != offsets.size()) throw WrongArity("dirs and offsets differ in length");
  if (dirs.empty()) throw DegenerateInput("a Wulff shape needs at least one constraint");
  CFullBody body;
  body.cone = cone;
  for (size_t i = 0; i < dirs.size(); ++i) {
    Vec u = dirs[i];
    double nrm = u.norm();
    if (nrm <= kEpsGeo) throw DegenerateInput("zero direction");
    if (std::abs(nrm - 1.0) > 1e-12) u /= nrm;
    if (!in_omega(cone, u)) throw DirectionOutsideOmega("constraint direction not in Omega_C");
    if (!(offsets[i] > 0.0)) throw NonpositiveOffset("constraint offset must be positive");
    for (const Vec& v : body.dirs)
      if ((u - v).norm() <= kEpsGeo) throw DegenerateInput("duplicate constraint direction");
    body.dirs.push_back(u);
    body.offsets.push_back(offsets[i]);
  }
  return body;
}

double min_enclosing_t(const CFullBody& body) {
  return 2.0 * max_offset(body) / body_a0(body);
}

TruncatedPolytope truncate_body(const CFullBody& body, double t) {
  const int n = body.cone.dim;
  std::vector<Halfspace> hs;
  for (const Vec& nu : body.cone.facet_normals) hs.push_back({nu, 0.0});
  for (size_t i = 0; i < body.dirs.size(); ++i) hs.push_back({body.dirs[i], -body.offsets[i]});
  hs.push_back({body.cone.w, t});
  TruncatedPolytope poly = halfspace_to_vertices(hs);
  poly.t = t;
  const double tol = kEpsGeo * std::max(1.0, t);
  for (auto& f : poly.facets) {
    if (f.normal.dot(body.cone.w) > 1.0 - 1e-9 && std::abs(f.offset - t) <= tol)
      f.tag = FacetTag::Top;
    else if (std::abs(f.offset) <= tol)
      f.tag = FacetTag::Cone;
    else
      f.tag = FacetTag::Omega;
  }
  (void)n;
  return poly;
}

double support_value(const CFullBody& body, const Vec& u) {
  Vec uu = u;
  double nrm = uu.norm();
  if (std::abs(nrm - 1.0) > 1e-6) throw NotUnit("query direction is not unit length");
  uu /= nrm;
  if (!in_omega(body.cone, uu)) throw DirectionOutsideOmega("query direction not in Omega_C");
  double a0 = body_a0(body, &uu);
  double t = 2.0 * max_offset(body) / (a0 * a0);
  TruncatedPolytope poly = truncate_body(body, t);
  const double tol = kEpsGeo * std::max(1.0, t);
  double best = -1e300;
  for (const Vec& v : poly.vertices) {
    if (v.dot(body.cone.w) >= t - tol) continue;  // TOP-facet artifact
    best = std::max(best, uu.dot(v));
  }
  return best;
}

CFullBody canonicalize(const CFullBody& body) {
  TruncatedPolytope poly = truncate_body(body, min_enclosing_t(body));
  CFullBody out;
  out.cone = body.cone;
  for (const auto& f : poly.facets) {
    if (f.tag != FacetTag::Omega || f.area <= kEpsGeo) continue;
    out.dirs.push_back(f.normal);
    out.offsets.push_back(-f.offset);
  }
  if (out.dirs.empty()) throw DegenerateInput("body has no Omega facets");
  return out;
}

CoconvexVolume coconvex_volume_detail(const CFullBody& body) {
  const int n = body.cone.dim;
  double t = min_enclosing_t(body);
  TruncatedPolytope poly = truncate_body(body, t);
  double integral = 0.0;
  for (const auto& f : poly.facets) {
    if (f.tag != FacetTag::Omega || f.area <= kEpsGeo) continue;
    integral += (-f.offset) * f.area / n;
  }
  std::vector<Halfspace> cone_hs;
  for (const Vec& nu : body.cone.facet_normals) cone_hs.push_back({nu, 0.0});
  cone_hs.push_back({body.cone.w, t});
  TruncatedPolytope cone_t = halfspace_to_vertices(cone_hs);
  double difference = polytope_volume(cone_t) - polytope_volume(poly);
  return {integral, difference};
}

double coconvex_volume(const CFullBody& body) {
  return coconvex_volume_detail(body).integral;
}

DiscreteMeasure surface_area_measure(const CFullBody& body) {
  TruncatedPolytope poly = truncate_body(body, min_enclosing_t(body));
  DiscreteMeasure mu;
  for (const auto& f : poly.facets) {
    if (f.tag != FacetTag::Omega || f.area <= kEpsGeo) continue;
    mu.atoms.push_back({f.normal, f.area});
  }
  return mu;
}

DiscreteMeasure cone_volume_measure(const CFullBody& body) {
  const int n = body.cone.dim;
  TruncatedPolytope poly = truncate_body(body, min_enclosing_t(body));
  DiscreteMeasure mu;
  for (const auto& f : poly.facets) {
    if (f.tag != FacetTag::Omega || f.area <= kEpsGeo) continue;
    mu.atoms.push_back({f.normal, (-f.offset) * f.area / n});
  }
  return mu;
}

CFullBody co_sum(const CFullBody& a, const CFullBody& b) {
  if (!same_cone(a.cone, b.cone)) throw ConeMismatch("co-sum of bodies over different cones");
  const int n = a.cone.dim;
  const PolyhedralCone& cone = a.cone;

  auto body_vertices = [&](const CFullBody& body) {
    double t = min_enclosing_t(body);
    TruncatedPolytope poly = truncate_body(body, t);
    const double tol = kEpsGeo * std::max(1.0, t);
    std::vector<Vec> out;
    for (const Vec& v : poly.vertices)
      if (v.dot(cone.w) < t - tol) out.push_back(v);
    return out;
  };
  std::vector<Vec> va = body_vertices(a);
  std::vector<Vec> vb = body_vertices(b);

  std::vector<Vec> sums;
  sums.reserve(va.size() * vb.size());
  double scale = 0.0;
  for (const Vec& x : va)
    for (const Vec& y : vb) {
      Vec s = x + y;
      scale = std::max(scale, s.lpNorm<Eigen::Infinity>());
      bool dup = false;
      for (const Vec& z : sums)
        if ((z - s).lpNorm<Eigen::Infinity>() <= 1e-12 * std::max(1.0, scale)) { dup = true; break; }
      if (!dup) sums.push_back(s);
    }
  const double tol = kEpsGeo * std::max(1.0, scale);

  // Drop points of the form s' + c with c in C: they cannot be vertices of
  // conv(sums) + C.
  auto in_cone = [&](const Vec& x) {
    for (const Vec& nu : cone.facet_normals)
      if (nu.dot(x) > tol) return false;
    return true;
  };
  std::vector<Vec> pts;
  for (size_t i = 0; i < sums.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < sums.size() && !dominated; ++j) {
      if (i == j) continue;
      Vec d = sums[i] - sums[j];
      if (d.lpNorm<Eigen::Infinity>() <= tol) {
        dominated = j < i;  // exact duplicates keep the first
        continue;
      }
      if (in_cone(d)) dominated = true;
    }
    if (!dominated) pts.push_back(sums[i]);
  }

  // Omega-normal supporting hyperplanes of conv(pts) + C are exactly the
  // Wulff constraints of K_a + K_b.
  std::vector<Vec> dirs;
  std::vector<double> offsets;
  const int m = static_cast<int>(pts.size());
  std::vector<int> idx(n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      Eigen::MatrixXd rows(n - 1, n);
      for (int i = 1; i < n; ++i) rows.row(i - 1) = (pts[idx[i]] - pts[idx[0]]).transpose();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      double smax = sv.size() > 0 ? sv(0) : 0.0;
      int rank = 0;
      for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-9 * std::max(1.0, smax)) ++rank;
      if (rank != n - 1) return;
      Vec v = svd.matrixV().col(n - 1).normalized();
      if (!in_omega(cone, v)) {
        v = -v;
        if (!in_omega(cone, v)) return;
      }
      double off = v.dot(pts[idx[0]]);
      for (const Vec& p : pts)
        if (v.dot(p) > off + tol) return;
      if (-off <= 0.0) return;
      for (const Vec& u : dirs)
        if ((u - v).norm() <= 1e-9) return;
      dirs.push_back(v);
      offsets.push_back(-off);
      return;
    }
    for (int i = start; i <= m - (n - depth); ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);

  CFullBody body = wulff_shape(cone, dirs, offsets);
  return canonicalize(body);
}

CFullBody scale(const CFullBody& a, double lambda) {
  if (!(lambda > 0.0)) throw NonpositiveScale("scale factor must be positive");
  CFullBody out = a;
  for (double& f : out.offsets) f *= lambda;
  return out;
}

CFullBody restrict_to_normals(const CFullBody& a, const std::vector<int>& selection) {
  if (selection.empty()) throw EmptySelection("no constraint directions selected");
  std::vector<Vec> dirs;
  std::vector<double> offsets;
  for (int i : selection) {
    if (i < 0 || i >= static_cast<int>(a.dirs.size()))
      throw DegenerateInput("selection index out of range");
    dirs.push_back(a.dirs[i]);
    offsets.push_back(-support_value(a, a.dirs[i]));
  }
  return canonicalize(wulff_shape(a.cone, dirs, offsets));
}

double mixed_volume(const std::vector<CFullBody>& bodies) {
  if (bodies.empty()) throw WrongArity("mixed volume needs n bodies");
  const int n = bodies[0].cone.dim;
  if (static_cast<int>(bodies.size()) != n)
    throw WrongArity("mixed volume needs exactly n bodies");
  for (const auto& b : bodies)
    if (!same_cone(b.cone, bodies[0].cone)) throw ConeMismatch("bodies over different cones");
  double fact = 1.0;
  for (int i = 2; i <= n; ++i) fact *= i;
  double acc = 0.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::optional<CFullBody> s;
    int count = 0;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      ++count;
      s = s ? co_sum(*s, bodies[i]) : bodies[i];
    }
    double sign = ((n - count) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * coconvex_volume(*s);
  }
  return acc / fact;
}

DiscreteMeasure mixed_area_measure(const std::vector<CFullBody>& bodies) {
  if (bodies.empty()) throw WrongArity("mixed area measure needs n-1 bodies");
  const int n = bodies[0].cone.dim;
  if (static_cast<int>(bodies.size()) != n - 1)
    throw WrongArity("mixed area measure needs exactly n-1 bodies");
  for (const auto& b : bodies)
    if (!same_cone(b.cone, bodies[0].cone)) throw ConeMismatch("bodies over different cones");
  const int k = n - 1;
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  DiscreteMeasure acc;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::optional<CFullBody> s;
    int count = 0;
    for (int i = 0; i < k; ++i) {
      if (!(mask & (1u << i))) continue;
      ++count;
      s = s ? co_sum(*s, bodies[i]) : bodies[i];
    }
    double sign = ((k - count) % 2 == 0) ? 1.0 : -1.0;
    DiscreteMeasure mu = surface_area_measure(*s);
    for (const auto& atom : mu.atoms) acc.add(atom.u, sign * atom.mass);
  }
  DiscreteMeasure out;
  for (const auto& atom : acc.atoms) {
    double mass = atom.mass / fact;
    if (std::abs(mass) > kEpsGeo) out.atoms.push_back({atom.u, mass});
  }
  return out;
}

}  // namespace coco

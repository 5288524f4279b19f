#include "coco/geometry.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>

namespace coco {

namespace {

double scale_tol(double scale) { return kEpsGeo * std::max(1.0, scale); }

// Visit all k-subsets of {0,...,m-1}.
void for_each_subset(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k > m || k <= 0) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// One-dimensional kernel vector of the rows, or empty if rank != rows-1.
std::optional<Vec> unit_kernel(const Eigen::MatrixXd& rows) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const int n = static_cast<int>(rows.cols());
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  double tol = 1e-9 * std::max(1.0, smax);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  if (rank != n - 1) return std::nullopt;
  Vec v = svd.matrixV().col(n - 1);
  return v.normalized();
}

}  // namespace

int affine_coordinates(const std::vector<Vec>& points, std::vector<Vec>& coords) {
  const int m = static_cast<int>(points.size());
  if (m == 0) return -1;
  const int d = static_cast<int>(points[0].size());
  if (m == 1) {
    coords.assign(1, Vec::Zero(0));
    return 0;
  }
  Eigen::MatrixXd M(d, m - 1);
  for (int i = 1; i < m; ++i) M.col(i - 1) = points[i] - points[0];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  double tol = 1e-9 * std::max(1.0, smax);
  int k = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++k;
  Eigen::MatrixXd basis = svd.matrixU().leftCols(k);
  coords.assign(m, Vec::Zero(k));
  for (int i = 0; i < m; ++i) coords[i] = basis.transpose() * (points[i] - points[0]);
  return k;
}

double simplex_measure(const std::vector<Vec>& points, const std::vector<int>& ids) {
  const int k = static_cast<int>(ids.size()) - 1;
  if (k <= 0) return 0.0;
  const int d = static_cast<int>(points[ids[0]].size());
  Eigen::MatrixXd M(d, k);
  for (int i = 1; i <= k; ++i) M.col(i - 1) = points[ids[i]] - points[ids[0]];
  double g = (M.transpose() * M).determinant();
  if (g <= 0.0) return 0.0;
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return std::sqrt(g) / fact;
}

std::vector<HullFacet> convex_hull_facets(const std::vector<Vec>& points) {
  const int m = static_cast<int>(points.size());
  const int d = m > 0 ? static_cast<int>(points[0].size()) : 0;
  std::vector<HullFacet> facets;
  if (m == 0 || d == 0) return facets;

  double scale = 0.0;
  for (const Vec& p : points) scale = std::max(scale, p.lpNorm<Eigen::Infinity>());
  const double tol = scale_tol(scale);

  if (d == 1) {
    int lo = 0, hi = 0;
    for (int i = 1; i < m; ++i) {
      if (points[i](0) < points[lo](0)) lo = i;
      if (points[i](0) > points[hi](0)) hi = i;
    }
    HullFacet fl, fh;
    fl.normal = Vec::Constant(1, -1.0);
    fl.offset = -points[lo](0);
    fh.normal = Vec::Constant(1, 1.0);
    fh.offset = points[hi](0);
    for (int i = 0; i < m; ++i) {
      if (std::abs(points[i](0) - points[lo](0)) <= tol) fl.vertex_ids.push_back(i);
      if (std::abs(points[i](0) - points[hi](0)) <= tol) fh.vertex_ids.push_back(i);
    }
    facets.push_back(fl);
    if (hi != lo) facets.push_back(fh);
    return facets;
  }

  for_each_subset(m, d, [&](const std::vector<int>& idx) {
    Eigen::MatrixXd rows(d - 1, d);
    for (int i = 1; i < d; ++i) rows.row(i - 1) = (points[idx[i]] - points[idx[0]]).transpose();
    auto kv = unit_kernel(rows);
    if (!kv) return;
    Vec v = *kv;
    double off = v.dot(points[idx[0]]);
    double mx = -1e300, mn = 1e300;
    for (const Vec& p : points) {
      double s = v.dot(p);
      mx = std::max(mx, s);
      mn = std::min(mn, s);
    }
    if (mx <= off + tol) {
      // v is outward
    } else if (mn >= off - tol) {
      v = -v;
      off = -off;
    } else {
      return;
    }
    for (const auto& f : facets)
      if (f.normal.dot(v) > 1.0 - 1e-9 && std::abs(f.offset - off) <= tol) return;
    HullFacet f;
    f.normal = v;
    f.offset = off;
    for (int i = 0; i < m; ++i)
      if (v.dot(points[i]) >= off - tol) f.vertex_ids.push_back(i);
    facets.push_back(f);
  });
  return facets;
}

double convex_hull_measure(const std::vector<Vec>& points, int k) {
  if (k <= 0 || points.empty()) return 0.0;
  std::vector<Vec> coords;
  int ka = affine_coordinates(points, coords);
  if (ka < k) return 0.0;
  if (k == 1) {
    double lo = coords[0](0), hi = coords[0](0);
    for (const Vec& c : coords) {
      lo = std::min(lo, c(0));
      hi = std::max(hi, c(0));
    }
    return hi - lo;
  }
  auto facets = convex_hull_facets(coords);
  Vec c = Vec::Zero(k);
  for (const Vec& p : coords) c += p;
  c /= static_cast<double>(coords.size());
  double vol = 0.0;
  for (const auto& f : facets) {
    std::vector<Vec> fpts;
    fpts.reserve(f.vertex_ids.size());
    for (int id : f.vertex_ids) fpts.push_back(coords[id]);
    double area = convex_hull_measure(fpts, k - 1);
    vol += (f.offset - f.normal.dot(c)) * area / k;
  }
  return vol;
}

std::vector<std::vector<int>> triangulate_hull(const std::vector<Vec>& points, int k) {
  std::vector<std::vector<int>> out;
  const int m = static_cast<int>(points.size());
  if (m < k + 1) return out;
  if (k == 1) {
    int lo = 0, hi = 0;
    for (int i = 1; i < m; ++i) {
      if (points[i](0) < points[lo](0)) lo = i;
      if (points[i](0) > points[hi](0)) hi = i;
    }
    if (lo != hi) out.push_back({lo, hi});
    return out;
  }
  double scale = 0.0;
  for (const Vec& p : points) scale = std::max(scale, p.lpNorm<Eigen::Infinity>());
  const double tol = scale_tol(scale);
  auto facets = convex_hull_facets(points);
  const int apex = 0;
  for (const auto& f : facets) {
    if (f.normal.dot(points[apex]) >= f.offset - tol) continue;  // apex on facet
    std::vector<Vec> fpts;
    for (int id : f.vertex_ids) fpts.push_back(points[id]);
    std::vector<Vec> fcoords;
    int kf = affine_coordinates(fpts, fcoords);
    if (kf != k - 1) continue;
    auto sub = triangulate_hull(fcoords, k - 1);
    for (const auto& s : sub) {
      std::vector<int> simplex;
      simplex.push_back(apex);
      for (int li : s) simplex.push_back(f.vertex_ids[li]);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

PolyhedralCone validate_cone(const std::vector<Vec>& generators_in) {
  if (generators_in.empty()) throw DegenerateInput("no generators");
  const int n = static_cast<int>(generators_in[0].size());
  if (n < 2) throw DegenerateInput("dimension must be >= 2");

  std::vector<Vec> gens;
  for (const Vec& g : generators_in) {
    if (static_cast<int>(g.size()) != n) throw DegenerateInput("mixed dimensions");
    double nrm = g.norm();
    if (nrm <= kEpsGeo) throw DegenerateInput("zero generator");
    Vec u = (std::abs(nrm - 1.0) > 1e-12) ? Vec(g / nrm) : g;
    bool dup = false;
    for (const Vec& h : gens)
      if ((u - h).norm() <= 1e-9) { dup = true; break; }
    if (!dup) gens.push_back(u);
  }

  {
    Eigen::MatrixXd M(static_cast<int>(gens.size()), n);
    for (size_t i = 0; i < gens.size(); ++i) M.row(static_cast<int>(i)) = gens[i].transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-9 * sv(0)) ++rank;
    if (rank < n) throw NotFullDimensional("generators do not span the space");
  }

  auto positive_on_all = [&](const Vec& w) {
    for (const Vec& g : gens)
      if (g.dot(w) <= 1e-12) return false;
    return true;
  };
  Vec w = Vec::Zero(n);
  for (const Vec& g : gens) w += g;
  if (w.norm() > kEpsGeo) w.normalize();
  if (!positive_on_all(w)) {
    // Least-norm solution of <g_i, w> = 1: a strictly positive functional
    // exists iff the cone is pointed.
    Eigen::MatrixXd M(static_cast<int>(gens.size()), n);
    for (size_t i = 0; i < gens.size(); ++i) M.row(static_cast<int>(i)) = gens[i].transpose();
    Vec rhs = Vec::Ones(static_cast<int>(gens.size()));
    Vec cand = M.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
    if (cand.norm() > kEpsGeo) cand.normalize();
    if (!positive_on_all(cand)) throw NotPointed("no strictly positive functional on the generators");
    w = cand;
  }

  std::vector<Vec> normals;
  const int m = static_cast<int>(gens.size());
  for_each_subset(m, n - 1, [&](const std::vector<int>& idx) {
    Eigen::MatrixXd rows(n - 1, n);
    for (int i = 0; i < n - 1; ++i) rows.row(i) = gens[idx[i]].transpose();
    auto kv = unit_kernel(rows);
    if (!kv) return;
    Vec v = *kv;
    double mx = -1e300, mn = 1e300;
    for (const Vec& g : gens) {
      double s = v.dot(g);
      mx = std::max(mx, s);
      mn = std::min(mn, s);
    }
    if (mx <= kEpsGeo) {
      // keep v
    } else if (mn >= -kEpsGeo) {
      v = -v;
    } else {
      return;
    }
    for (const Vec& h : normals)
      if ((v - h).norm() <= 1e-9) return;
    normals.push_back(v);
  });
  if (static_cast<int>(normals.size()) < n)
    throw NotFullDimensional("cone has too few facets");

  // Keep only extreme rays: a generator must be tight on n-1 independent facets.
  std::vector<Vec> extreme;
  for (const Vec& g : gens) {
    std::vector<Vec> tight;
    for (const Vec& v : normals)
      if (std::abs(v.dot(g)) <= 1e-9) tight.push_back(v);
    if (static_cast<int>(tight.size()) < n - 1) continue;
    Eigen::MatrixXd M(static_cast<int>(tight.size()), n);
    for (size_t i = 0; i < tight.size(); ++i) M.row(static_cast<int>(i)) = tight[i].transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-9 * sv(0)) ++rank;
    if (rank >= n - 1) extreme.push_back(g);
  }
  if (extreme.empty()) extreme = gens;

  PolyhedralCone cone;
  cone.dim = n;
  cone.generators = std::move(extreme);
  cone.facet_normals = std::move(normals);
  cone.w = w;
  return cone;
}

PolyhedralCone polar_cone(const PolyhedralCone& cone) {
  return validate_cone(cone.facet_normals);
}

bool in_omega(const PolyhedralCone& cone, const Vec& u) {
  if (std::abs(u.norm() - 1.0) > 1e-6) throw NotUnit("direction is not unit length");
  for (const Vec& g : cone.generators)
    if (g.dot(u) >= -kEpsGeo) return false;
  return true;
}

TruncatedPolytope halfspace_to_vertices(const std::vector<Halfspace>& halfspaces_in) {
  if (halfspaces_in.empty()) throw DegenerateInput("no halfspaces");
  const int n = static_cast<int>(halfspaces_in[0].normal.size());
  std::vector<Halfspace> hs;
  hs.reserve(halfspaces_in.size());
  for (const auto& h : halfspaces_in) {
    double nrm = h.normal.norm();
    if (nrm <= kEpsGeo) throw DegenerateInput("zero halfspace normal");
    hs.push_back({h.normal / nrm, h.offset / nrm});
  }
  const int m = static_cast<int>(hs.size());
  if (m < n + 1) throw Unbounded("too few halfspaces to bound a polytope");

  Eigen::MatrixXd A(m, n);
  for (int i = 0; i < m; ++i) A.row(i) = hs[i].normal.transpose();
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-9 * sv(0)) ++rank;
    if (rank < n) throw Unbounded("halfspace normals do not span the space");
  }
  // A nonzero recession direction shows up as the kernel of n-1 tight rows.
  {
    bool unbounded = false;
    for_each_subset(m, n - 1, [&](const std::vector<int>& idx) {
      if (unbounded) return;
      Eigen::MatrixXd rows(n - 1, n);
      for (int i = 0; i < n - 1; ++i) rows.row(i) = hs[idx[i]].normal.transpose();
      auto kv = unit_kernel(rows);
      if (!kv) return;
      for (int s = 0; s < 2; ++s) {
        Vec d = (s == 0) ? *kv : Vec(-*kv);
        bool feas = true;
        for (const auto& h : hs)
          if (h.normal.dot(d) > 1e-10) { feas = false; break; }
        if (feas) { unbounded = true; return; }
      }
    });
    if (unbounded) throw Unbounded("halfspace intersection has a recession direction");
  }

  std::vector<Vec> verts;
  for_each_subset(m, n, [&](const std::vector<int>& idx) {
    Eigen::MatrixXd M(n, n);
    Vec b(n);
    for (int i = 0; i < n; ++i) {
      M.row(i) = hs[idx[i]].normal.transpose();
      b(i) = hs[idx[i]].offset;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    lu.setThreshold(1e-9);
    if (lu.rank() < n) return;
    Vec x = lu.solve(b);
    const double tol = scale_tol(x.lpNorm<Eigen::Infinity>());
    for (const auto& h : hs)
      if (h.normal.dot(x) > h.offset + tol) return;
    for (const Vec& v : verts)
      if ((v - x).lpNorm<Eigen::Infinity>() <= tol) return;
    verts.push_back(x);
  });
  if (verts.empty()) throw Empty("halfspace intersection is empty");

  double scale = 0.0;
  for (const Vec& v : verts) scale = std::max(scale, v.lpNorm<Eigen::Infinity>());
  const double tol = scale_tol(scale);

  {
    std::vector<Vec> coords;
    int k = affine_coordinates(verts, coords);
    if (k < n) throw LowerDimensional("halfspace intersection is not full-dimensional");
  }

  TruncatedPolytope poly;
  poly.vertices = verts;
  for (const auto& h : hs) {
    std::vector<int> incident;
    for (int i = 0; i < static_cast<int>(verts.size()); ++i)
      if (std::abs(h.normal.dot(verts[i]) - h.offset) <= tol) incident.push_back(i);
    if (static_cast<int>(incident.size()) < n) continue;
    std::vector<Vec> pts;
    for (int id : incident) pts.push_back(verts[id]);
    std::vector<Vec> coords;
    if (affine_coordinates(pts, coords) != n - 1) continue;
    bool dup = false;
    for (const auto& f : poly.facets)
      if (f.normal.dot(h.normal) > 1.0 - 1e-9 && std::abs(f.offset - h.offset) <= tol) {
        dup = true;
        break;
      }
    if (dup) continue;
    Facet f;
    f.normal = h.normal;
    f.offset = h.offset;
    f.vertex_ids = incident;
    f.area = convex_hull_measure(pts, n - 1);
    poly.facets.push_back(std::move(f));
  }
  return poly;
}

double polytope_volume(const TruncatedPolytope& poly) {
  if (poly.vertices.empty()) return 0.0;
  const int n = static_cast<int>(poly.vertices[0].size());
  double vol = 0.0;
  for (const auto& f : poly.facets) vol += f.offset * f.area;
  return vol / n;
}

double simplicial_volume(const TruncatedPolytope& poly) {
  if (poly.vertices.empty()) return 0.0;
  const int n = static_cast<int>(poly.vertices[0].size());
  auto simplices = triangulate_hull(poly.vertices, n);
  double vol = 0.0;
  for (const auto& s : simplices) vol += simplex_measure(poly.vertices, s);
  return vol;
}

}  // namespace coco

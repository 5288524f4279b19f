#include "coco/oracles.hpp"

#include <cmath>
#include <cstdint>

namespace coco {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double counter_uniform(unsigned long long seed, unsigned long long stream,
                       unsigned long long counter) {
  uint64_t h = splitmix64(splitmix64(seed ^ 0x5851f42d4c957f2dULL) ^ stream);
  h = splitmix64(h ^ counter);
  return (h >> 11) * 0x1.0p-53;  // uniform in [0,1)
}

MCEstimate mc_volume(const CFullBody& body, long long samples, unsigned long long seed) {
  if (samples < 1) throw DegenerateInput("need at least one sample");
  const int n = body.cone.dim;
  double t = min_enclosing_t(body);

  std::vector<Halfspace> cone_hs;
  for (const Vec& nu : body.cone.facet_normals) cone_hs.push_back({nu, 0.0});
  cone_hs.push_back({body.cone.w, t});
  TruncatedPolytope cone_t = halfspace_to_vertices(cone_hs);
  Vec lo = cone_t.vertices[0], hi = cone_t.vertices[0];
  for (const Vec& v : cone_t.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  double box_vol = 1.0;
  for (int d = 0; d < n; ++d) box_vol *= hi(d) - lo(d);

  long long hits = 0;
  Vec x(n);
  for (long long s = 0; s < samples; ++s) {
    for (int d = 0; d < n; ++d)
      x(d) = lo(d) + (hi(d) - lo(d)) *
                         counter_uniform(seed, static_cast<unsigned long long>(d),
                                         static_cast<unsigned long long>(s));
    bool in_c = true;
    for (const Vec& nu : body.cone.facet_normals)
      if (nu.dot(x) > 0.0) { in_c = false; break; }
    if (!in_c) continue;
    bool in_k = true;
    for (size_t i = 0; i < body.dirs.size(); ++i)
      if (body.dirs[i].dot(x) > -body.offsets[i]) { in_k = false; break; }
    if (!in_k) ++hits;  // x in C \ K
  }
  double p = static_cast<double>(hits) / static_cast<double>(samples);
  MCEstimate est;
  est.estimate = p * box_vol;
  est.stderr_ = std::sqrt(p * (1.0 - p) / static_cast<double>(samples)) * box_vol;
  est.samples = samples;
  est.seed = seed;
  return est;
}

DiscreteMeasure brute_cone_volume(const CFullBody& body) {
  const int n = body.cone.dim;
  TruncatedPolytope poly = truncate_body(body, min_enclosing_t(body));
  double fact = 1.0;
  for (int i = 2; i <= n; ++i) fact *= i;
  DiscreteMeasure mu;
  for (const auto& f : poly.facets) {
    if (f.tag != FacetTag::Omega || f.area <= kEpsGeo) continue;
    std::vector<Vec> pts;
    for (int id : f.vertex_ids) pts.push_back(poly.vertices[id]);
    std::vector<Vec> coords;
    if (affine_coordinates(pts, coords) != n - 1) continue;
    auto tris = triangulate_hull(coords, n - 1);
    double mass = 0.0;
    for (const auto& tri : tris) {
      Eigen::MatrixXd M(n, n);
      for (int i = 0; i < n; ++i) M.col(i) = pts[tri[i]];
      mass += std::abs(M.determinant()) / fact;
    }
    mu.atoms.push_back({f.normal, mass});
  }
  return mu;
}

std::vector<double> fd_gradient(const PolyhedralCone& cone, const std::vector<Vec>& dirs,
                                const std::vector<double>& f, double step) {
  if (!(step > 0.0)) throw StepTooLarge("step must be positive");
  for (double fi : f)
    if (fi - step <= 0.0) throw StepTooLarge("step would make an offset nonpositive");
  std::vector<double> grad(f.size(), 0.0);
  for (size_t i = 0; i < f.size(); ++i) {
    std::vector<double> fp = f, fm = f;
    fp[i] += step;
    fm[i] -= step;
    double vp = coconvex_volume(wulff_shape(cone, dirs, fp));
    double vm = coconvex_volume(wulff_shape(cone, dirs, fm));
    grad[i] = (vp - vm) / (2.0 * step);
  }
  return grad;
}

}  // namespace coco

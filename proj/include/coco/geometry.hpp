#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace coco {

using Vec = Eigen::VectorXd;

// Tolerance for vertex dedup, facet tightness and Omega-membership margin.
inline constexpr double kEpsGeo = 1e-9;

struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotPointed : error { using error::error; };
struct NotFullDimensional : error { using error::error; };
struct DegenerateInput : error { using error::error; };
struct NotUnit : error { using error::error; };
struct Unbounded : error { using error::error; };
struct Empty : error { using error::error; };
struct LowerDimensional : error { using error::error; };
struct DirectionOutsideOmega : error { using error::error; };
struct NonpositiveOffset : error { using error::error; };
struct ConeMismatch : error { using error::error; };
struct LambdaOutOfRange : error { using error::error; };
struct WrongArity : error { using error::error; };
struct EmptySelection : error { using error::error; };
struct NonpositiveScale : error { using error::error; };
struct InvalidMeasure : error { using error::error; };
struct StepTooLarge : error { using error::error; };

// Pointed, full-dimensional polyhedral cone with both generator (V) and
// facet-inequality (H) descriptions.  C = {x : <x, nu> <= 0 for all facet
// normals nu}; generators are the unit extreme rays.  w is a unit vector
// with <x, w> > 0 on C \ {o}.
struct PolyhedralCone {
  int dim = 0;
  std::vector<Vec> generators;
  std::vector<Vec> facet_normals;
  Vec w;
};

enum class FacetTag { Cone, Omega, Top };

struct Facet {
  Vec normal;               // unit outer normal
  double offset = 0.0;      // support value: <x, normal> = offset on the facet
  std::vector<int> vertex_ids;
  double area = 0.0;        // (n-1)-volume
  FacetTag tag = FacetTag::Omega;
};

struct TruncatedPolytope {
  double t = 0.0;
  std::vector<Vec> vertices;
  std::vector<Facet> facets;
};

struct Halfspace {
  Vec normal;      // need not be unit on input; normalized internally
  double offset;   // <x, normal> <= offset
};

PolyhedralCone validate_cone(const std::vector<Vec>& generators);
PolyhedralCone polar_cone(const PolyhedralCone& cone);
bool in_omega(const PolyhedralCone& cone, const Vec& u);

// Exhaustive small-scale H->V conversion.  The intersection must be bounded
// and full-dimensional.  Facet areas are filled in; the truncation height t
// and facet tags are left for the caller.
TruncatedPolytope halfspace_to_vertices(const std::vector<Halfspace>& halfspaces);

// Divergence-theorem volume: (1/n) sum offset(F) * area(F).
double polytope_volume(const TruncatedPolytope& poly);

// Independent route: sum of simplex volumes over a triangulation of the
// vertex hull.
double simplicial_volume(const TruncatedPolytope& poly);

// --- hull utilities (vertex sets in convex position, desk scale) ---

struct HullFacet {
  Vec normal;      // unit outer normal
  double offset;
  std::vector<int> vertex_ids;
};

// Facets of conv(points) for a full-dimensional point set in R^d, found by
// exhaustive hyperplane enumeration over d-subsets.
std::vector<HullFacet> convex_hull_facets(const std::vector<Vec>& points);

// k-dimensional measure of conv(points), points living in R^d with affine
// hull of dimension k.
double convex_hull_measure(const std::vector<Vec>& points, int k);

// Triangulation of conv(points) (full-dimensional in R^k coordinates) into
// k-simplices, returned as index tuples of size k+1.
std::vector<std::vector<int>> triangulate_hull(const std::vector<Vec>& points, int k);

// Orthonormal coordinates on the affine hull of a point set.  Returns the
// affine dimension and writes k-dimensional coordinates of every point.
int affine_coordinates(const std::vector<Vec>& points, std::vector<Vec>& coords);

// k-volume of the simplex spanned by k+1 points in R^d (Gram determinant).
double simplex_measure(const std::vector<Vec>& points, const std::vector<int>& ids);

}  // namespace coco

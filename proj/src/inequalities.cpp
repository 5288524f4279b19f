#include "coco/inequalities.hpp"

#include <cmath>

namespace coco {

namespace {

InequalityVerdict verdict_from(double lhs, double rhs, const InequalityTols& tols) {
  InequalityVerdict v;
  v.lhs = lhs;
  v.rhs = rhs;
  v.slack = rhs - lhs;
  v.tol_eq = tols.rel_eq * std::abs(rhs);
  v.holds = v.slack >= -tols.rel_ineq * std::abs(rhs);
  v.equality = std::abs(v.slack) <= v.tol_eq;
  if (v.equality) v.holds = true;
  return v;
}

}  // namespace

InequalityVerdict bm_check(const CFullBody& a0, const CFullBody& a1, double lambda,
                           const InequalityTols& tols) {
  if (!same_cone(a0.cone, a1.cone)) throw ConeMismatch("bm_check over different cones");
  if (!(lambda > 0.0 && lambda < 1.0)) throw LambdaOutOfRange("lambda must be in (0,1)");
  const int n = a0.cone.dim;
  CFullBody combo = co_sum(scale(a0, 1.0 - lambda), scale(a1, lambda));
  double lhs = std::pow(coconvex_volume(combo), 1.0 / n);
  double rhs = (1.0 - lambda) * std::pow(coconvex_volume(a0), 1.0 / n) +
               lambda * std::pow(coconvex_volume(a1), 1.0 / n);
  return verdict_from(lhs, rhs, tols);
}

InequalityVerdict minkowski_first_check(const CFullBody& a0, const CFullBody& a1,
                                        const InequalityTols& tols) {
  if (!same_cone(a0.cone, a1.cone)) throw ConeMismatch("minkowski_first_check over different cones");
  const int n = a0.cone.dim;
  std::vector<CFullBody> args(static_cast<size_t>(n), a0);
  args.back() = a1;
  double mv = mixed_volume(args);
  double lhs = std::pow(mv, n);
  double rhs = std::pow(coconvex_volume(a0), n - 1) * coconvex_volume(a1);
  return verdict_from(lhs, rhs, tols);
}

bool homothetic(const CFullBody& a0, const CFullBody& a1, double rel_tol) {
  if (!same_cone(a0.cone, a1.cone)) return false;
  const int n = a0.cone.dim;
  CFullBody c0 = canonicalize(a0);
  CFullBody c1 = canonicalize(a1);
  if (c0.dirs.size() != c1.dirs.size()) return false;
  double alpha = std::pow(coconvex_volume(c0) / coconvex_volume(c1), 1.0 / n);
  for (size_t i = 0; i < c0.dirs.size(); ++i) {
    bool found = false;
    for (size_t j = 0; j < c1.dirs.size(); ++j) {
      if ((c0.dirs[i] - c1.dirs[j]).norm() > 1e-7) continue;
      found = std::abs(c0.offsets[i] - alpha * c1.offsets[j]) <=
              rel_tol * std::max(1.0, std::abs(c0.offsets[i]));
      break;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace coco

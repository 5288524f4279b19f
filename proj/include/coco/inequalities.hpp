#pragma once

#include "coco/body.hpp"

namespace coco {

struct InequalityVerdict {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;   // rhs - lhs
  bool holds = false;
  bool equality = false;
  double tol_eq = 0.0;
};

struct InequalityTols {
  double rel_ineq = 1e-9;  // holds iff slack >= -rel_ineq * rhs
  double rel_eq = 1e-8;    // equality iff |slack| <= rel_eq * rhs
};

// Complemented Brunn-Minkowski: V((1-l)A0 ⊕ lA1)^{1/n} <= (1-l)V(A0)^{1/n} + lV(A1)^{1/n}.
InequalityVerdict bm_check(const CFullBody& a0, const CFullBody& a1, double lambda,
                           const InequalityTols& tols = {});

// Minkowski's first inequality: Vbar(A0,...,A0,A1)^n <= V(A0)^{n-1} V(A1).
InequalityVerdict minkowski_first_check(const CFullBody& a0, const CFullBody& a1,
                                        const InequalityTols& tols = {});

// Cross-check of the equality case: A0 = alpha * A1 on canonical Wulff data
// with alpha = (V0/V1)^{1/n}.
bool homothetic(const CFullBody& a0, const CFullBody& a1, double rel_tol = 1e-6);

}  // namespace coco

#pragma once

#include "coco/body.hpp"

namespace coco {

struct MCEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  long long samples = 0;
  unsigned long long seed = 0;
};

// Counter-based deterministic stream: value depends only on (seed, stream,
// counter), independent of call interleaving.
double counter_uniform(unsigned long long seed, unsigned long long stream,
                       unsigned long long counter);

// Rejection sampling in the bounding box of C_t, t = min_enclosing_t(body).
MCEstimate mc_volume(const CFullBody& body, long long samples, unsigned long long seed);

// Cone-volume atoms recomputed as sums of apex-o simplices over facet
// triangulations (independent of the support-value route).
DiscreteMeasure brute_cone_volume(const CFullBody& body);

// Central finite differences of the volume functional.
std::vector<double> fd_gradient(const PolyhedralCone& cone, const std::vector<Vec>& dirs,
                                const std::vector<double>& f, double step);

}  // namespace coco

#include "coco/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace coco {

namespace {

constexpr double kOffsetFloor = 1e-8;

void check_measure(const PolyhedralCone& cone, const DiscreteMeasure& phi) {
  if (phi.atoms.empty()) throw InvalidMeasure("measure has no atoms");
  for (const auto& a : phi.atoms) {
    if (!(a.mass > 0.0)) throw InvalidMeasure("atom mass must be positive");
    if (!in_omega(cone, a.u)) throw InvalidMeasure("atom direction not in Omega_C");
  }
}

std::vector<double> initial_offsets(size_t k, const SolverConfig& cfg) {
  std::vector<double> f(k, 1.0);
  if (cfg.randomized_init) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (double& fi : f) fi = std::exp(u(rng));
  }
  return f;
}

enum class Problem { Surface, ConeVolume };

// Ascent on log Phi over log-offsets.  For the surface problem
// Phi(f) = V(f)^{-1/n} * sum c_i f_i, for the cone-volume problem
// Phi(f) = V(f)^{-1/n} * exp(sum c_i log f_i) with sum c_i = 1.
SolverReport run_ascent(const PolyhedralCone& cone, const DiscreteMeasure& phi,
                        Problem problem, const SolverConfig& cfg) {
  check_measure(cone, phi);
  const int n = cone.dim;
  const size_t k = phi.atoms.size();
  std::vector<Vec> dirs;
  std::vector<double> c;
  for (const auto& a : phi.atoms) {
    dirs.push_back(a.u);
    c.push_back(a.mass);
  }
  const double total_mass = phi.total();
  if (problem == Problem::ConeVolume)
    for (double& ci : c) ci /= total_mass;

  std::vector<double> f = initial_offsets(k, cfg);

  auto evaluate = [&](const std::vector<double>& fv, std::vector<double>* grad_log) {
    CFullBody body = wulff_shape(cone, dirs, fv);
    TruncatedPolytope poly = truncate_body(body, min_enclosing_t(body));
    double vol = 0.0;
    std::vector<double> area(k, 0.0);
    for (const auto& fc : poly.facets) {
      if (fc.tag != FacetTag::Omega || fc.area <= kEpsGeo) continue;
      vol += (-fc.offset) * fc.area / n;
      for (size_t i = 0; i < k; ++i)
        if ((fc.normal - dirs[i]).norm() <= 1e-7) { area[i] = fc.area; break; }
    }
    double value;
    if (problem == Problem::Surface) {
      double cf = 0.0;
      for (size_t i = 0; i < k; ++i) cf += c[i] * fv[i];
      value = std::log(cf) - std::log(vol) / n;
      if (grad_log)
        for (size_t i = 0; i < k; ++i)
          (*grad_log)[i] = c[i] * fv[i] / cf - fv[i] * area[i] / (n * vol);
    } else {
      double lf = 0.0;
      for (size_t i = 0; i < k; ++i) lf += c[i] * std::log(fv[i]);
      value = lf - std::log(vol) / n;
      if (grad_log)
        for (size_t i = 0; i < k; ++i)
          (*grad_log)[i] = c[i] - fv[i] * area[i] / (n * vol);
    }
    return value;
  };

  // Rescale the current iterate so that the relevant measure reproduces phi,
  // then report the worst relative atom error.
  auto rescaled_candidate = [&](const std::vector<double>& fv, double* residual) {
    CFullBody body = wulff_shape(cone, dirs, fv);
    CFullBody canon = canonicalize(body);
    double vol = coconvex_volume(canon);
    double beta;
    if (problem == Problem::Surface) {
      double mu = 0.0;
      for (size_t i = 0; i < k; ++i) mu += c[i] * (-support_value(body, dirs[i]));
      beta = std::pow(mu / (n * vol), 1.0 / (n - 1));
    } else {
      beta = std::pow(total_mass / vol, 1.0 / n);
    }
    CFullBody out = scale(canon, beta);
    DiscreteMeasure got = (problem == Problem::Surface) ? surface_area_measure(out)
                                                        : cone_volume_measure(out);
    double res = 0.0;
    for (const auto& a : phi.atoms)
      res = std::max(res, std::abs(got.mass_at(a.u) - a.mass) / a.mass);
    *residual = res;
    return std::pair<CFullBody, double>(out, beta);
  };

  SolverReport report;
  std::vector<double> grad(k, 0.0);
  double value = evaluate(f, &grad);
  double alpha = cfg.step0;
  report.objective_trace.push_back(value);

  // The objective is invariant under scaling of f, so keep the iterate at
  // unit scale: the geometric tolerances are absolute and degrade for tiny
  // bodies.
  auto normalize = [&](std::vector<double>& fv) {
    double fmax = *std::max_element(fv.begin(), fv.end());
    for (double& fi : fv) fi /= fmax;
  };

  const int ascent_budget = std::min(cfg.max_iters / 2, 1000);
  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    report.iterations = iter;
    double residual = 0.0;
    auto cand = rescaled_candidate(f, &residual);
    if (residual <= cfg.tol_residual) {
      report.body = cand.first;
      report.scale_factor = cand.second;
      report.residual = residual;
      report.offsets = f;
      report.converged = true;
      return report;
    }
    // hand over to the Newton polish once the iterate is in its basin or the
    // ascent has had a fair share of the budget; the ascent cannot resolve
    // objective gains below double precision
    if (residual < 1e-2 || iter >= ascent_budget) break;
    double g2 = 0.0;
    for (double gi : grad) g2 += gi * gi;
    bool accepted = false;
    while (alpha > 1e-14) {
      std::vector<double> fn(k);
      for (size_t i = 0; i < k; ++i)
        fn[i] = std::max(kOffsetFloor, f[i] * std::exp(alpha * grad[i]));
      double vn = evaluate(fn, nullptr);
      if (vn >= value + cfg.armijo * alpha * g2) {
        f = std::move(fn);
        normalize(f);
        value = evaluate(f, &grad);
        report.objective_trace.push_back(value);
        alpha = std::min(alpha * 1.5, 16.0);
        accepted = true;
        break;
      }
      alpha *= cfg.backtrack;
    }
    if (!accepted) break;  // stalled line search
  }

  // Move the iterate to absolute scale: the variational phase fixes the
  // shape, the rescale fixes the size, and from here on the offsets are the
  // actual unknowns of m(f) = c.
  {
    double residual = 0.0;
    auto cand = rescaled_candidate(f, &residual);
    for (size_t i = 0; i < k; ++i) f[i] *= cand.second;
  }

  // Polish by root-finding on the per-atom masses directly.  Unlike the
  // objective, the residual map has no double-precision floor; and every
  // mass is nondecreasing in its own offset, which gives a safe per-
  // coordinate bisection fallback when the Newton step stalls near a
  // facet-birth kink.
  const int ki = static_cast<int>(k);
  auto atom_masses = [&](const std::vector<double>& fv, Eigen::VectorXd& m) {
    try {
      CFullBody body = wulff_shape(cone, dirs, fv);
      DiscreteMeasure got = (problem == Problem::Surface) ? surface_area_measure(body)
                                                          : cone_volume_measure(body);
      for (int i = 0; i < ki; ++i) m(i) = got.mass_at(dirs[i]);
      return true;
    } catch (const error&) {
      return false;
    }
  };
  auto log_residuals = [&](const std::vector<double>& fv, Eigen::VectorXd& r) {
    if (!atom_masses(fv, r)) return false;
    for (int i = 0; i < ki; ++i) {
      if (!(r(i) > 0.0)) return false;
      r(i) = std::log(r(i) / phi.atoms[i].mass);
    }
    return true;
  };
  auto max_rel_residual = [&](const std::vector<double>& fv) {
    Eigen::VectorXd m(ki);
    if (!atom_masses(fv, m)) return std::numeric_limits<double>::infinity();
    double res = 0.0;
    for (int i = 0; i < ki; ++i)
      res = std::max(res, std::abs(m(i) - phi.atoms[i].mass) / phi.atoms[i].mass);
    return res;
  };

  const double fd_step = 1e-6;
  double best_residual = std::numeric_limits<double>::infinity();
  std::vector<double> best_f = f;
  Eigen::VectorXd r(ki), rp(ki), rm(ki);
  int stalls = 0;
  for (; iter < cfg.max_iters; ++iter) {
    report.iterations = iter;
    double residual = max_rel_residual(f);
    if (residual < best_residual) {
      best_residual = residual;
      best_f = f;
      stalls = 0;
    } else if (++stalls > 5) {
      break;
    }
    if (residual <= cfg.tol_residual) break;

    bool newton_ok = false;
    if (log_residuals(f, r)) {
      Eigen::MatrixXd J(ki, ki);
      bool jac_ok = true;
      for (int j = 0; j < ki && jac_ok; ++j) {
        std::vector<double> fp = f, fm = f;
        fp[j] *= std::exp(fd_step);
        fm[j] *= std::exp(-fd_step);
        jac_ok = log_residuals(fp, rp) && log_residuals(fm, rm);
        if (jac_ok) J.col(j) = (rp - rm) / (2.0 * fd_step);
      }
      if (jac_ok) {
        Eigen::VectorXd delta = J.colPivHouseholderQr().solve(-r);
        double base = r.norm();
        double step = 1.0;
        for (int bt = 0; bt < 30; ++bt, step *= cfg.backtrack) {
          std::vector<double> fn(k);
          for (int i = 0; i < ki; ++i)
            fn[i] = std::max(kOffsetFloor, f[i] * std::exp(step * delta(i)));
          if (!log_residuals(fn, rp)) continue;
          if (rp.norm() < base) {
            f = std::move(fn);
            newton_ok = true;
            break;
          }
        }
      }
    }
    if (newton_ok) continue;

    // Gauss-Seidel sweep: solve m_i(f_i) = c_i one coordinate at a time by
    // bracketing and bisection in log f_i (monotone in f_i).
    Eigen::VectorXd m(ki);
    for (int i = 0; i < ki; ++i) {
      const double target = phi.atoms[i].mass;
      auto mass_i = [&](double x) {
        std::vector<double> fv = f;
        fv[i] = x;
        return atom_masses(fv, m) ? m(i) : -1.0;
      };
      double lo = f[i], hi = f[i];
      double mv = mass_i(f[i]);
      if (mv < target) {
        for (int e = 0; e < 60 && mv < target; ++e) {
          lo = hi;
          hi *= 1.5;
          mv = mass_i(hi);
        }
      } else {
        for (int e = 0; e < 60 && mv >= target; ++e) {
          hi = lo;
          lo /= 1.5;
          mv = mass_i(lo);
          if (lo < kOffsetFloor) break;
        }
      }
      for (int b = 0; b < 80; ++b) {
        double mid = std::sqrt(lo * hi);
        double mmid = mass_i(mid);
        if (mmid < target)
          lo = mid;
        else
          hi = mid;
      }
      f[i] = std::sqrt(lo * hi);
    }
  }

  double residual = max_rel_residual(best_f);
  CFullBody solved = canonicalize(wulff_shape(cone, dirs, best_f));
  report.body = solved;
  report.scale_factor = 1.0;
  report.residual = residual;
  report.offsets = best_f;
  report.converged = residual <= cfg.tol_residual;
  return report;
}

}  // namespace

double volume_functional(const PolyhedralCone& cone, const std::vector<Vec>& dirs,
                         const std::vector<double>& f) {
  return coconvex_volume(wulff_shape(cone, dirs, f));
}

std::vector<double> volume_gradient(const PolyhedralCone& cone, const std::vector<Vec>& dirs,
                                    const std::vector<double>& f) {
  CFullBody body = wulff_shape(cone, dirs, f);
  DiscreteMeasure mu = surface_area_measure(body);
  std::vector<double> grad(dirs.size(), 0.0);
  for (size_t i = 0; i < dirs.size(); ++i) grad[i] = mu.mass_at(body.dirs[i]);
  return grad;
}

SolverReport solve_surface(const PolyhedralCone& cone, const DiscreteMeasure& phi,
                           const SolverConfig& cfg) {
  return run_ascent(cone, phi, Problem::Surface, cfg);
}

SolverReport solve_cone_volume(const PolyhedralCone& cone, const DiscreteMeasure& phi,
                               const SolverConfig& cfg) {
  return run_ascent(cone, phi, Problem::ConeVolume, cfg);
}

ExhaustionResult exhaustion_experiment(const PolyhedralCone& cone, const DiscreteMeasure& phi,
                                       const std::vector<std::vector<int>>& stages,
                                       const SolverConfig& cfg) {
  if (stages.empty()) throw DegenerateInput("no exhaustion stages");
  std::vector<bool> seen(phi.atoms.size(), false);
  for (size_t s = 0; s < stages.size(); ++s) {
    for (int i : stages[s]) {
      if (i < 0 || i >= static_cast<int>(phi.atoms.size()))
        throw DegenerateInput("stage index out of range");
      seen[i] = true;
    }
    if (s + 1 < stages.size())
      for (int i : stages[s]) {
        bool in_next = std::find(stages[s + 1].begin(), stages[s + 1].end(), i) !=
                       stages[s + 1].end();
        if (!in_next) throw DegenerateInput("stages must be nested");
      }
  }
  for (bool b : seen)
    if (!b) throw DegenerateInput("stage union must cover all atoms");

  ExhaustionResult result;
  for (const auto& stage : stages) {
    DiscreteMeasure sub;
    for (int i : stage) sub.atoms.push_back(phi.atoms[i]);
    result.reports.push_back(solve_cone_volume(cone, sub, cfg));
  }
  for (size_t s = 0; s + 1 < result.reports.size(); ++s) {
    double d = 0.0;
    for (int i : stages[s]) {
      const Vec& u = phi.atoms[i].u;
      d = std::max(d, std::abs(support_value(result.reports[s].body, u) -
                               support_value(result.reports[s + 1].body, u)));
    }
    result.support_distances.push_back(d);
  }
  return result;
}

}  // namespace coco

// Copyright 2026 The ifsfit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Moment-matching inverse problem. Given target moments g and a map family
// with transfer matrix A, the collage distance
//
//   S(p) = sum_{k=1..M} (h_k - g_k)^2 / k^2 = p'Qp + B'p + C
//
// is minimized over the probability simplex. The simplex constraint is
// replaced by the penalty lambda (1 - sum p)^2 and the remaining box problem
// 0 <= p_i <= 1 is solved by a projected limited-memory BFGS iteration. The
// penalty is escalated until the sum constraint holds and the result is then
// renormalized onto the simplex.

#ifndef IFS_INVERSE_PROBLEM_HPP
#define IFS_INVERSE_PROBLEM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ifs/errors.hpp"
#include "ifs/matrix.hpp"
#include "ifs/moments.hpp"

namespace ifs {

// S(p) = p'Qp + B'p + C. When assembled from a transfer matrix the problem
// also keeps the weighted factor R = diag(1/k) A and target t_k = g_k / k, so
// that S = |Rp - t|^2 can be evaluated without the cancellation the expanded
// form suffers near the minimum.
struct QuadraticProblem {
  Matrix q;
  std::vector<double> b;
  double c = 0.0;
  int order = 0;
  Matrix residual_map;
  std::vector<double> residual_target;

  std::size_t size() const { return b.size(); }
  bool has_residual_form() const { return residual_map.rows() > 0; }
};

// q_ij = sum_k A_ki A_kj / k^2,  B_i = -2 sum_k g_k A_ki / k^2,  C = sum_k g_k^2 / k^2
inline QuadraticProblem assemble_quadratic_problem(const TransferMatrix& a, const MomentVector& g) {
  if (a.order() != g.order()) {
    throw InvalidArgument("transfer matrix has order " + std::to_string(a.order()) +
                          " but moment vector has order " + std::to_string(g.order()));
  }
  const std::size_t n = a.num_maps();
  QuadraticProblem qp{Matrix(n, n), std::vector<double>(n, 0.0), 0.0, a.order(),
                      Matrix(a.order(), n), std::vector<double>(a.order())};
  for (int k = 1; k <= a.order(); ++k) {
    const double w = 1.0 / (static_cast<double>(k) * k);
    const auto row = a.matrix().row(k - 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double wi = w * row[i];
      for (std::size_t j = i; j < n; ++j) qp.q(i, j) += wi * row[j];
      qp.b[i] -= 2.0 * w * g[k] * row[i];
      qp.residual_map(k - 1, i) = row[i] / k;
    }
    qp.c += w * g[k] * g[k];
    qp.residual_target[k - 1] = g[k] / k;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) qp.q(i, j) = qp.q(j, i);
  return qp;
}

inline double collage_objective(const QuadraticProblem& qp, std::span<const double> p) {
  if (p.size() != qp.size()) throw InvalidArgument("collage_objective: dimension mismatch");
  double quad = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) quad += p[i] * dot(qp.q.row(i), p);
  return quad + dot(qp.b, p) + qp.c;
}

struct PenalizedValue {
  double value = 0.0;
  std::vector<double> gradient;
};

// L(p) = S(p) + lambda (1 - sum p)^2,  grad = 2Qp + B - 2 lambda (1 - sum p) 1
inline PenalizedValue penalized_objective_with_gradient(const QuadraticProblem& qp,
                                                        std::span<const double> p, double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("penalty weight must be positive");
  if (p.size() != qp.size()) throw InvalidArgument("penalized objective: dimension mismatch");
  const std::size_t n = p.size();
  PenalizedValue out{0.0, std::vector<double>(n, 0.0)};
  double s_value = 0.0;
  if (qp.has_residual_form()) {
    // grad S = 2 R'(Rp - t)
    for (std::size_t k = 0; k < qp.residual_map.rows(); ++k) {
      const auto row = qp.residual_map.row(k);
      const double r = dot(row, p) - qp.residual_target[k];
      s_value += r * r;
      for (std::size_t i = 0; i < n; ++i) out.gradient[i] += 2.0 * r * row[i];
    }
  } else {
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double qpi = dot(qp.q.row(i), p);
      quad += p[i] * qpi;
      out.gradient[i] = 2.0 * qpi + qp.b[i];
    }
    s_value = quad + dot(qp.b, p) + qp.c;
  }
  const double slack = 1.0 - std::accumulate(p.begin(), p.end(), 0.0);
  out.value = s_value + lambda * slack * slack;
  for (auto& gi : out.gradient) gi -= 2.0 * lambda * slack;
  return out;
}

// S(p) through the residual factor when available; same value as
// collage_objective up to rounding, but accurate down to S ~ 1e-30.
inline double collage_objective_stable(const QuadraticProblem& qp, std::span<const double> p) {
  if (!qp.has_residual_form()) return collage_objective(qp, p);
  if (p.size() != qp.size()) throw InvalidArgument("collage_objective: dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < qp.residual_map.rows(); ++k) {
    const double r = dot(qp.residual_map.row(k), p) - qp.residual_target[k];
    s += r * r;
  }
  return s;
}

// Nonnegative entries summing to one (within 1e-9).
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw InvalidArgument("probability vector must be nonempty");
    double sum = 0.0;
    for (double v : p_) {
      if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("probability outside [0, 1]");
      sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9) throw InvalidArgument("probabilities must sum to 1");
  }

  static ProbabilityVector uniform(std::size_t n) {
    return ProbabilityVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const { return p_; }

 private:
  std::vector<double> p_;
};

// The default stopping rule is the L-BFGS-B relative-reduction test
//   (f_k - f_{k+1}) / max(|f_k|, |f_{k+1}|, 1) <= factr * eps,  factr = 1e7.
// Collage distances are far below 1, so this stops the descent from the
// uniform start early; the estimators' small-sample behaviour depends on it.
// precise() drives the minimization to convergence instead.
struct SolverConfig {
  double lambda_init = 1e3;
  double lambda_factor = 10.0;
  int lambda_steps = 6;  // lambda_init * factor^e, e = 0..lambda_steps-1
  double tol_grad = 1e-8;
  double tol_rel_objective = 1e7 * std::numeric_limits<double>::epsilon();
  double objective_scale_floor = 1.0;
  int max_iter = 500;
  int history = 10;
  double sum_tol = 1e-6;       // escalate the penalty while |1 - sum p| exceeds this
  double sum_fail_tol = 1e-3;  // give up when the final residual still exceeds this

  static SolverConfig precise() {
    SolverConfig c;
    c.tol_rel_objective = 1e-12;
    c.objective_scale_floor = 0.0;
    return c;
  }
};

struct SolverReport {
  ProbabilityVector solution = ProbabilityVector::uniform(1);
  double objective = 0.0;         // S at the returned solution
  double penalty_residual = 0.0;  // |1 - sum p| before renormalization
  int iterations = 0;
  bool converged = false;
  double lambda = 0.0;
  int escalations = 0;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, SolverReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const SolverReport& report() const { return report_; }

 private:
  SolverReport report_;
};

namespace detail {

// d' (Hessian of L) d / 2 = d'Qd + lambda (sum d)^2
inline double directional_curvature(const QuadraticProblem& qp, std::span<const double> d, double lambda) {
  double c = 0.0;
  if (qp.has_residual_form()) {
    for (std::size_t k = 0; k < qp.residual_map.rows(); ++k) {
      const double r = dot(qp.residual_map.row(k), d);
      c += r * r;
    }
  } else {
    for (std::size_t i = 0; i < d.size(); ++i) c += d[i] * dot(qp.q.row(i), d);
  }
  const double sum = std::accumulate(d.begin(), d.end(), 0.0);
  return c + lambda * sum * sum;
}

struct BoxSolveResult {
  int iterations = 0;
  bool converged = false;
};

inline void require_finite(const PenalizedValue& v) {
  if (!std::isfinite(v.value)) throw NumericalFailure("objective is not finite");
  for (double g : v.gradient)
    if (!std::isfinite(g)) throw NumericalFailure("gradient is not finite");
}

inline double projected_gradient_norm(std::span<const double> x, std::span<const double> g) {
  double norm = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double step = std::clamp(x[i] - g[i], 0.0, 1.0) - x[i];
    norm = std::max(norm, std::fabs(step));
  }
  return norm;
}

// Projected L-BFGS on [0,1]^n for a fixed penalty weight. Variables held at a
// bound by the gradient are frozen for the step; the two-loop recursion acts
// on the free ones. Falls back to a projected steepest-descent step when the
// quasi-Newton direction is not a descent direction or its line search fails.
inline BoxSolveResult minimize_on_box(const QuadraticProblem& qp, double lambda,
                                      std::vector<double>& x, const SolverConfig& cfg) {
  const std::size_t n = x.size();
  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Pair> memory;
  auto current = penalized_objective_with_gradient(qp, x, lambda);
  require_finite(current);

  std::vector<double> d(n), q(n), trial(n);
  std::vector<char> free(n);
  std::vector<double> alpha_buf;
  BoxSolveResult result;

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    result.iterations = iter + 1;
    const auto& g = current.gradient;
    if (projected_gradient_norm(x, g) < cfg.tol_grad) {
      result.converged = true;
      return result;
    }
    for (std::size_t i = 0; i < n; ++i) {
      free[i] = !((x[i] <= 0.0 && g[i] > 0.0) || (x[i] >= 1.0 && g[i] < 0.0));
    }

    bool accepted = false;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      const bool quasi_newton = attempt == 0 && !memory.empty();
      for (std::size_t i = 0; i < n; ++i) q[i] = free[i] ? g[i] : 0.0;
      if (quasi_newton) {
        alpha_buf.assign(memory.size(), 0.0);
        for (std::size_t m = memory.size(); m-- > 0;) {
          const auto& pr = memory[m];
          double sq = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            if (free[i]) sq += pr.s[i] * q[i];
          alpha_buf[m] = pr.rho * sq;
          for (std::size_t i = 0; i < n; ++i)
            if (free[i]) q[i] -= alpha_buf[m] * pr.y[i];
        }
        const auto& last = memory.back();
        const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
        for (auto& v : q) v *= gamma;
        for (std::size_t m = 0; m < memory.size(); ++m) {
          const auto& pr = memory[m];
          double yr = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            if (free[i]) yr += pr.y[i] * q[i];
          const double beta = pr.rho * yr;
          for (std::size_t i = 0; i < n; ++i)
            if (free[i]) q[i] += (alpha_buf[m] - beta) * pr.s[i];
        }
      }
      double slope = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        d[i] = free[i] ? -q[i] : 0.0;
        slope += g[i] * d[i];
      }
      if (!(slope < 0.0)) {
        if (quasi_newton) continue;
        break;
      }
      // The objective is quadratic: start from the exact minimizer along d and
      // let the projected backtracking handle the bounds.
      double step = 1.0;
      const double curvature = directional_curvature(qp, d, lambda);
      if (curvature > 0.0 && std::isfinite(curvature)) {
        step = -slope / (2.0 * curvature);
      } else if (!quasi_newton) {
        double dmax = 0.0;
        for (double v : d) dmax = std::max(dmax, std::fabs(v));
        step = std::min(1.0, 1.0 / dmax);
      }
      for (int ls = 0; ls < 60; ++ls) {
        for (std::size_t i = 0; i < n; ++i) trial[i] = std::clamp(x[i] + step * d[i], 0.0, 1.0);
        double decrease = 0.0;
        for (std::size_t i = 0; i < n; ++i) decrease += g[i] * (trial[i] - x[i]);
        auto candidate = penalized_objective_with_gradient(qp, trial, lambda);
        require_finite(candidate);
        if (candidate.value <= current.value + 1e-4 * decrease && decrease < 0.0) {
          Pair pr{std::vector<double>(n), std::vector<double>(n), 0.0};
          for (std::size_t i = 0; i < n; ++i) {
            pr.s[i] = trial[i] - x[i];
            pr.y[i] = candidate.gradient[i] - g[i];
          }
          const double sy = dot(pr.s, pr.y);
          const double change = current.value - candidate.value;
          const double scale = std::max({std::fabs(current.value), std::fabs(candidate.value),
                                         cfg.objective_scale_floor, std::numeric_limits<double>::min()});
          x = trial;
          current = std::move(candidate);
          if (sy > 1e-14 * dot(pr.y, pr.y) && sy > 0.0) {
            pr.rho = 1.0 / sy;
            memory.push_back(std::move(pr));
            if (static_cast<int>(memory.size()) > cfg.history) memory.pop_front();
          }
          accepted = true;
          if (change <= cfg.tol_rel_objective * scale) {
            result.converged = true;
            return result;
          }
          break;
        }
        step *= 0.5;
      }
      if (!accepted && quasi_newton) memory.clear();
    }
    if (!accepted) return result;  // stalled: no descent at floating precision
  }
  return result;
}

}  // namespace detail

// Minimizes the penalized collage objective over the box starting from the
// uniform probability vector, escalating the penalty until sum p = 1 to
// sum_tol, then renormalizes onto the simplex. Never returns a point with a
// larger collage distance than the uniform start.
inline SolverReport solve_box_constrained(const QuadraticProblem& qp, const SolverConfig& config = {}) {
  const std::size_t n = qp.size();
  if (n == 0) throw InvalidArgument("empty map family");
  if (!(config.lambda_init > 0.0) || config.lambda_steps < 1 || config.max_iter < 1 ||
      config.history < 1) {
    throw InvalidArgument("invalid solver configuration");
  }
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  const double start_objective = collage_objective_stable(qp, x);
  if (!std::isfinite(start_objective)) throw NumericalFailure("objective is not finite");

  SolverReport report;
  double lambda = config.lambda_init;
  double residual = 0.0;
  bool inner_converged = false;
  for (int e = 0; e < config.lambda_steps; ++e) {
    lambda = config.lambda_init * std::pow(config.lambda_factor, e);
    auto r = detail::minimize_on_box(qp, lambda, x, config);
    report.iterations += r.iterations;
    report.escalations = e;
    inner_converged = r.converged;
    residual = std::fabs(1.0 - std::accumulate(x.begin(), x.end(), 0.0));
    if (residual <= config.sum_tol) break;
  }
  report.lambda = lambda;
  report.penalty_residual = residual;
  report.converged = inner_converged && residual <= config.sum_tol;

  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  if (residual > config.sum_fail_tol || !(total > 0.0)) {
    report.solution = ProbabilityVector::uniform(n);
    report.objective = start_objective;
    report.converged = false;
    throw NonConvergence("penalty escalation exhausted with |1 - sum p| = " +
                             std::to_string(residual),
                         report);
  }
  for (auto& v : x) v = std::clamp(v / total, 0.0, 1.0);
  // Absorb the last ulps of the renormalization so the sum is exact to 1e-15.
  const double drift = 1.0 - std::accumulate(x.begin(), x.end(), 0.0);
  auto largest = std::max_element(x.begin(), x.end());
  *largest = std::clamp(*largest + drift, 0.0, 1.0);

  double objective = collage_objective_stable(qp, x);
  if (objective > start_objective) {
    std::fill(x.begin(), x.end(), 1.0 / static_cast<double>(n));
    objective = start_objective;
  }
  report.solution = ProbabilityVector(std::move(x));
  report.objective = std::max(objective, 0.0);
  return report;
}

}  // namespace ifs

#endif  // IFS_INVERSE_PROBLEM_HPP

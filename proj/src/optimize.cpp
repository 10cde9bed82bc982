// Copyright 2026 The regvqe Authors.
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

#include "regvqe/optimize.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace regvqe {

namespace {

using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double two_norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

struct NonFiniteValue {};

// One point evaluated along the search ray.
struct RayPoint {
  double alpha = 0.0;
  double phi = 0.0;   // f(x + alpha d)
  double dphi = 0.0;  // g(x + alpha d) . d
  Vec x;
  Vec grad;
};

class Ray {
 public:
  Ray(MinimizationProblem& problem, std::span<const double> x0, std::span<const double> dir)
      : problem_(problem), x0_(x0.begin(), x0.end()), dir_(dir.begin(), dir.end()) {}

  RayPoint eval(double alpha) {
    RayPoint p;
    p.alpha = alpha;
    p.x.resize(x0_.size());
    for (std::size_t i = 0; i < x0_.size(); ++i) p.x[i] = x0_[i] + alpha * dir_[i];
    p.phi = problem_.value_and_gradient(p.x, p.grad);
    if (!std::isfinite(p.phi) || !all_finite(p.grad)) throw NonFiniteValue{};
    p.dphi = dot(p.grad, dir_);
    return p;
  }

 private:
  MinimizationProblem& problem_;
  Vec x0_;
  Vec dir_;
};

// Minimizer of the cubic Hermite interpolant through two ray points,
// safeguarded to the interior of the bracket.
double cubic_step(const RayPoint& a, const RayPoint& b) {
  const double d1 = a.dphi + b.dphi - 3.0 * (a.phi - b.phi) / (a.alpha - b.alpha);
  const double disc = d1 * d1 - a.dphi * b.dphi;
  double lo = std::min(a.alpha, b.alpha);
  double hi = std::max(a.alpha, b.alpha);
  const double guard = 0.1 * (hi - lo);
  double cand = 0.5 * (lo + hi);
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
    const double denom = b.dphi - a.dphi + 2.0 * d2;
    if (denom != 0.0) {
      cand = b.alpha - (b.alpha - a.alpha) * (b.dphi + d2 - d1) / denom;
    }
  }
  if (!std::isfinite(cand) || cand < lo + guard || cand > hi - guard) {
    cand = 0.5 * (lo + hi);
  }
  return cand;
}

struct LineSearchOutcome {
  bool ok = false;
  RayPoint point;
};

// Strong Wolfe line search (bracket + zoom). The accepted point is always
// the most recently evaluated one, so callers may reuse its value/gradient.
LineSearchOutcome wolfe_line_search(Ray& ray, const RayPoint& origin, double alpha1, double c1,
                                    double c2, int max_trials) {
  constexpr double kAlphaMax = 1e10;
  const double phi0 = origin.phi;
  const double dphi0 = origin.dphi;
  assert(dphi0 < 0.0);

  auto zoom = [&](RayPoint lo, RayPoint hi) -> LineSearchOutcome {
    for (int j = 0; j < max_trials; ++j) {
      if (std::abs(hi.alpha - lo.alpha) < 1e-18 * std::max(1.0, std::abs(lo.alpha))) break;
      const double alpha = cubic_step(lo, hi);
      RayPoint p = ray.eval(alpha);
      if (p.phi > phi0 + c1 * alpha * dphi0 || p.phi >= lo.phi) {
        hi = std::move(p);
        continue;
      }
      if (std::abs(p.dphi) <= -c2 * dphi0) {
        return {true, std::move(p)};
      }
      if (p.dphi * (hi.alpha - lo.alpha) >= 0.0) hi = std::move(lo);
      lo = std::move(p);
    }
    return {};
  };

  RayPoint prev = origin;
  double alpha = std::min(alpha1, kAlphaMax);
  for (int i = 0; i < max_trials; ++i) {
    RayPoint p = ray.eval(alpha);
    if (p.phi > phi0 + c1 * alpha * dphi0 || (i > 0 && p.phi >= prev.phi)) {
      return zoom(std::move(prev), std::move(p));
    }
    if (std::abs(p.dphi) <= -c2 * dphi0) {
      return {true, std::move(p)};
    }
    if (p.dphi >= 0.0) {
      return zoom(std::move(p), std::move(prev));
    }
    if (alpha >= kAlphaMax) break;
    prev = std::move(p);
    alpha = std::min(2.0 * alpha, kAlphaMax);
  }
  return {};
}

class Recorder {
 public:
  Recorder(const OptimizerConfig& cfg, StageResult& result) : cfg_(cfg), result_(result) {}

  void record(std::span<const double> x, double f) {
    const double raw = cfg_.raw_value ? cfg_.raw_value(x, f) : f;
    result_.trajectory.push_back({raw, f, two_norm(x)});
    if (raw < best_raw_) {
      best_raw_ = raw;
      result_.best_theta.assign(x.begin(), x.end());
      result_.best_value = raw;
    }
  }

 private:
  const OptimizerConfig& cfg_;
  StageResult& result_;
  double best_raw_ = std::numeric_limits<double>::infinity();
};

double initial_step(int iter, double f_prev, double f, double dphi0, bool conservative_first,
                    double grad_norm) {
  if (iter == 0) {
    return conservative_first ? 1.0 / std::max(1.0, grad_norm) : 1.0;
  }
  // scipy-style warm start from the previous decrease
  const double guess = 2.02 * (f_prev - f) / (-dphi0);
  if (!std::isfinite(guess) || guess <= 0.0) return 1.0;
  return std::min(1.0, guess);
}

}  // namespace

OptimizerConfig OptimizerConfig::cg(int max_iters, double gtol) {
  OptimizerConfig cfg;
  cfg.method = OptMethod::CG;
  cfg.max_iters = max_iters;
  cfg.grad_tolerance = gtol;
  cfg.wolfe_c2 = 0.4;
  return cfg;
}

OptimizerConfig OptimizerConfig::lbfgs(int max_iters, double gtol, int memory) {
  OptimizerConfig cfg;
  cfg.method = OptMethod::LBFGS;
  cfg.max_iters = max_iters;
  cfg.grad_tolerance = gtol;
  cfg.lbfgs_memory = memory;
  cfg.wolfe_c2 = 0.9;
  return cfg;
}

StageResult minimize_cg(MinimizationProblem& problem, std::span<const double> theta0,
                        OptimizerConfig cfg) {
  StageResult result;
  Recorder recorder(cfg, result);
  const std::int64_t evals0 = problem.evals();
  Vec x(theta0.begin(), theta0.end());
  Vec grad;

  try {
    double f = problem.value_and_gradient(x, grad);
    if (!std::isfinite(f) || !all_finite(grad)) throw NonFiniteValue{};
    if (cfg.gradient_check) {
      auto fd = finite_difference(
          [&](std::span<const double> y) {
            Vec g;
            return problem.value_and_gradient(y, g);
          },
          x, 1e-6);
      for (std::size_t i = 0; i < fd.size(); ++i) {
        if (std::abs(fd[i] - grad[i]) > 1e-4 * (1.0 + std::abs(fd[i])))
          throw std::logic_error("gradient check failed at component " + std::to_string(i));
      }
    }
    recorder.record(x, f);

    Vec dir(x.size());
    Vec grad_prev;
    double f_prev = f;
    bool fallback_used = false;
    result.stop = StopReason::MaxIterations;

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
      if (cfg.on_iteration_start && cfg.on_iteration_start(iter)) {
        f = problem.value_and_gradient(x, grad);
        if (!std::isfinite(f) || !all_finite(grad)) throw NonFiniteValue{};
      }
      if (inf_norm(grad) <= cfg.grad_tolerance) {
        result.stop = StopReason::GradTolerance;
        break;
      }

      if (iter == 0 || grad_prev.empty()) {
        for (std::size_t i = 0; i < x.size(); ++i) dir[i] = -grad[i];
      } else {
        const double denom = dot(grad_prev, grad_prev);
        double beta = 0.0;
        if (denom > 0.0) {
          double num = 0.0;
          for (std::size_t i = 0; i < x.size(); ++i) num += grad[i] * (grad[i] - grad_prev[i]);
          beta = std::max(0.0, num / denom);  // Polak-Ribiere+
        }
        for (std::size_t i = 0; i < x.size(); ++i) dir[i] = -grad[i] + beta * dir[i];
        if (dot(dir, grad) >= 0.0) {
          for (std::size_t i = 0; i < x.size(); ++i) dir[i] = -grad[i];
        }
      }

      Ray ray(problem, x, dir);
      RayPoint origin{0.0, f, dot(grad, dir), x, grad};
      const double a1 = initial_step(iter, f_prev, f, origin.dphi, true, two_norm(grad));
      auto ls = wolfe_line_search(ray, origin, a1, cfg.wolfe_c1, cfg.wolfe_c2, cfg.max_linesearch);

      if (!ls.ok) {
        // one steepest-descent restart, then give up
        if (!fallback_used && dot(dir, grad) != -dot(grad, grad)) {
          fallback_used = true;
          for (std::size_t i = 0; i < x.size(); ++i) dir[i] = -grad[i];
          Ray ray2(problem, x, dir);
          RayPoint origin2{0.0, f, dot(grad, dir), x, grad};
          ls = wolfe_line_search(ray2, origin2, 1.0 / std::max(1.0, two_norm(grad)), cfg.wolfe_c1,
                                 cfg.wolfe_c2, cfg.max_linesearch);
        }
        if (!ls.ok) {
          result.stop = StopReason::LineSearchFailure;
          break;
        }
      }

      assert(ls.point.phi <= f + cfg.wolfe_c1 * ls.point.alpha * origin.dphi);
      assert(std::abs(ls.point.dphi) <= -cfg.wolfe_c2 * origin.dphi);

      f_prev = f;
      grad_prev = grad;
      x = ls.point.x;
      f = ls.point.phi;
      grad = ls.point.grad;
      ++result.iterations_used;
      recorder.record(x, f);
    }
  } catch (const EvalBudgetExhausted&) {
    result.stop = StopReason::EvalBudget;
  } catch (const NonFiniteValue&) {
    result.stop = StopReason::NonFinite;
  }

  if (result.best_theta.empty()) {
    result.best_theta.assign(theta0.begin(), theta0.end());
  }
  result.evals_used = problem.evals() - evals0;
  return result;
}

StageResult minimize_lbfgs(MinimizationProblem& problem, std::span<const double> theta0,
                           OptimizerConfig cfg) {
  StageResult result;
  Recorder recorder(cfg, result);
  const std::int64_t evals0 = problem.evals();
  const std::size_t n = theta0.size();
  Vec x(theta0.begin(), theta0.end());
  Vec grad;

  std::deque<Vec> s_hist, y_hist;
  std::deque<double> rho_hist;

  try {
    double f = problem.value_and_gradient(x, grad);
    if (!std::isfinite(f) || !all_finite(grad)) throw NonFiniteValue{};
    recorder.record(x, f);

    double f_prev = f;
    result.stop = StopReason::MaxIterations;

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
      if (cfg.on_iteration_start && cfg.on_iteration_start(iter)) {
        f = problem.value_and_gradient(x, grad);
        if (!std::isfinite(f) || !all_finite(grad)) throw NonFiniteValue{};
      }
      if (inf_norm(grad) <= cfg.grad_tolerance) {
        result.stop = StopReason::GradTolerance;
        break;
      }

      // two-loop recursion
      Vec q = grad;
      std::vector<double> alpha_coefs(s_hist.size());
      for (std::size_t h = s_hist.size(); h-- > 0;) {
        const double a = rho_hist[h] * dot(s_hist[h], q);
        alpha_coefs[h] = a;
        for (std::size_t i = 0; i < n; ++i) q[i] -= a * y_hist[h][i];
      }
      double gamma = 1.0;
      if (!s_hist.empty()) {
        const double yy = dot(y_hist.back(), y_hist.back());
        if (yy > 0.0) gamma = dot(s_hist.back(), y_hist.back()) / yy;
      }
      for (std::size_t i = 0; i < n; ++i) q[i] *= gamma;
      for (std::size_t h = 0; h < s_hist.size(); ++h) {
        const double b = rho_hist[h] * dot(y_hist[h], q);
        for (std::size_t i = 0; i < n; ++i) q[i] += (alpha_coefs[h] - b) * s_hist[h][i];
      }
      Vec dir(n);
      for (std::size_t i = 0; i < n; ++i) dir[i] = -q[i];
      if (dot(dir, grad) >= 0.0) {
        for (std::size_t i = 0; i < n; ++i) dir[i] = -grad[i];
        s_hist.clear();
        y_hist.clear();
        rho_hist.clear();
      }

      Ray ray(problem, x, dir);
      RayPoint origin{0.0, f, dot(grad, dir), x, grad};
      const double a1 =
          s_hist.empty() ? std::min(1.0, 1.0 / std::max(1.0, two_norm(grad))) : 1.0;
      auto ls = wolfe_line_search(ray, origin, a1, cfg.wolfe_c1, cfg.wolfe_c2, cfg.max_linesearch);
      if (!ls.ok) {
        result.stop = StopReason::LineSearchFailure;
        break;
      }

      assert(ls.point.phi <= f + cfg.wolfe_c1 * ls.point.alpha * origin.dphi);
      assert(std::abs(ls.point.dphi) <= -cfg.wolfe_c2 * origin.dphi);

      Vec s(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        s[i] = ls.point.x[i] - x[i];
        y[i] = ls.point.grad[i] - grad[i];
      }
      const double ys = dot(y, s);
      if (ys > 1e-10) {
        s_hist.push_back(std::move(s));
        y_hist.push_back(std::move(y));
        rho_hist.push_back(1.0 / ys);
        if (static_cast<int>(s_hist.size()) > cfg.lbfgs_memory) {
          s_hist.pop_front();
          y_hist.pop_front();
          rho_hist.pop_front();
        }
      } else {
        ++result.skipped_curvature_pairs;
      }

      f_prev = f;
      (void)f_prev;
      x = ls.point.x;
      f = ls.point.phi;
      grad = ls.point.grad;
      ++result.iterations_used;
      recorder.record(x, f);
    }
  } catch (const EvalBudgetExhausted&) {
    result.stop = StopReason::EvalBudget;
  } catch (const NonFiniteValue&) {
    result.stop = StopReason::NonFinite;
  }

  if (result.best_theta.empty()) {
    result.best_theta.assign(theta0.begin(), theta0.end());
  }
  result.evals_used = problem.evals() - evals0;
  return result;
}

StageResult minimize(MinimizationProblem& problem, std::span<const double> theta0,
                     const OptimizerConfig& cfg) {
  return cfg.method == OptMethod::CG ? minimize_cg(problem, theta0, cfg)
                                     : minimize_lbfgs(problem, theta0, cfg);
}

double StageProblem::value_and_gradient(std::span<const double> x, std::vector<double>& grad) {
  const bool hit = has_cache_ && cached_x_.size() == x.size() &&
                   std::equal(x.begin(), x.end(), cached_x_.begin());
  if (!hit) {
    cached_x_.assign(x.begin(), x.end());
    cached_energy_ = obj_.energy(x);
    cached_grad_ = obj_.energy_gradient(x);
    has_cache_ = true;
  }
  grad = cached_grad_;
  for (std::size_t i = 0; i < x.size(); ++i) grad[i] += 2.0 * lambda_ * x[i];
  return cached_energy_ + lambda_ * squared_norm(x);
}

TwoStageResult run_two_stage(const PipelineConfig& cfg, Objective& objective,
                             std::span<const double> theta0) {
  if (cfg.schedule.t_a != cfg.stage_a.max_iters)
    throw std::invalid_argument("schedule.t_a must equal Stage A max_iters");
  if (cfg.eval_budget < 1) throw std::invalid_argument("eval budget must be positive");

  objective.set_eval_budget(cfg.eval_budget);

  auto lambda_of = [&cfg](int t) {
    switch (cfg.schedule_kind) {
      case ScheduleKind::Cosine: return lambda_at(cfg.schedule, t);
      case ScheduleKind::Constant: return cfg.schedule.lambda0;
      case ScheduleKind::Off: return 0.0;
    }
    return 0.0;
  };

  TwoStageResult out;

  StageProblem stage_a(objective);
  stage_a.set_lambda(lambda_of(0));
  objective.set_lambda(stage_a.lambda());
  OptimizerConfig cfg_a = cfg.stage_a;
  cfg_a.on_iteration_start = [&](int t) {
    const double l = lambda_of(t);
    const bool changed = l != stage_a.lambda();
    stage_a.set_lambda(l);
    objective.set_lambda(l);
    return changed;
  };
  cfg_a.raw_value = [&](std::span<const double> x, double f) {
    return f - stage_a.lambda() * squared_norm(x);
  };
  out.stage_a = minimize(stage_a, theta0, cfg_a);

  StageProblem stage_b(objective);
  stage_b.set_lambda(0.0);
  objective.set_lambda(0.0);
  OptimizerConfig cfg_b = cfg.stage_b;
  out.stage_b = minimize(stage_b, out.stage_a.best_theta, cfg_b);
  return out;
}

}  // namespace regvqe

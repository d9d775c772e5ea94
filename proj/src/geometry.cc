// Copyright 2026 The Authors.
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

#include "knnpoison/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "knnpoison/errors.h"

namespace knnpoison {

NormSpec NormSpec::Lp(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw InputError("norm exponent must be finite and > 1");
  }
  return NormSpec(Kind::kLp, p);
}

NormSpec NormSpec::Parse(const std::string& text) {
  if (text == "l2" || text == "L2") return L2();
  if (text == "linf" || text == "Linf" || text == "inf") return LInf();
  std::string body;
  if (text.rfind("lp:", 0) == 0) {
    body = text.substr(3);
  } else if (text.size() > 1 && (text[0] == 'l' || text[0] == 'L')) {
    body = text.substr(1);
  } else {
    throw InputError("unknown norm '" + text + "'");
  }
  try {
    size_t used = 0;
    double p = std::stod(body, &used);
    if (used != body.size()) throw InputError("bad norm exponent");
    return Lp(p);
  } catch (const std::logic_error&) {
    throw InputError("unknown norm '" + text + "'");
  }
}

std::string NormSpec::ToString() const {
  if (is_inf()) return "linf";
  if (p_ == 2.0) return "l2";
  std::ostringstream out;
  out << "lp:" << p_;
  return out.str();
}

double Distance(std::span<const double> a, std::span<const double> b,
                const NormSpec& norm) {
  if (a.size() != b.size()) {
    throw InputError("dimension mismatch in distance");
  }
  if (norm.is_inf()) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
  }
  const double p = norm.p();
  if (p == 2.0) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
      const double t = a[i] - b[i];
      s += t * t;
    }
    return std::sqrt(s);
  }
  // Scale by the largest gap so |t|^p cannot overflow.
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::pow(std::abs(a[i] - b[i]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double StrictMargin(std::span<const Ball> balls) {
  double r = std::numeric_limits<double>::infinity();
  for (const Ball& b : balls) r = std::min(r, b.radius);
  return std::isfinite(r) ? kStrictFactor * r : 0.0;
}

bool PairwiseIntersects(const Ball& b1, const Ball& b2, const NormSpec& norm,
                        double margin) {
  if (margin < 0.0) margin = kStrictFactor * std::min(b1.radius, b2.radius);
  return Distance(b1.center, b2.center, norm) < b1.radius + b2.radius - margin;
}

double Residual(std::span<const double> x, std::span<const Ball> balls,
                const NormSpec& norm) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const Ball& b : balls) {
    worst = std::max(worst, Distance(x, b.center, norm) - b.radius);
  }
  return worst;
}

namespace {

void ValidateQuery(std::span<const Ball> balls) {
  if (balls.empty()) throw InputError("feasibility query needs at least one ball");
  const size_t d = balls.front().dim();
  for (const Ball& b : balls) {
    if (b.dim() != d) throw InputError("balls of mixed dimension");
    if (!(b.radius > 0.0)) throw InputError("feasibility query needs radii > 0");
  }
}

std::vector<Ball> Dedup(std::span<const Ball> balls) {
  std::vector<Ball> out(balls.begin(), balls.end());
  auto less = [](const Ball& a, const Ball& b) {
    if (a.radius != b.radius) return a.radius < b.radius;
    return a.center < b.center;
  };
  std::sort(out.begin(), out.end(), less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FeasibilityResult IntervalIntersection(std::span<const Ball> balls,
                                       double margin) {
  const size_t d = balls.front().dim();
  FeasibilityResult result;
  result.margin = margin;
  result.point.assign(d, 0.0);
  double min_half = std::numeric_limits<double>::infinity();
  for (size_t axis = 0; axis < d; ++axis) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const Ball& b : balls) {
      lo = std::max(lo, b.center[axis] - b.radius);
      hi = std::min(hi, b.center[axis] + b.radius);
    }
    result.point[axis] = 0.5 * (lo + hi);
    min_half = std::min(min_half, 0.5 * (hi - lo));
  }
  if (d == 0) min_half = balls.front().radius;
  result.residual = Residual(result.point, balls, NormSpec::LInf());
  result.status = (min_half > 0.0 && result.residual <= -margin)
                      ? FeasibilityResult::Status::kWitness
                      : FeasibilityResult::Status::kEmpty;
  return result;
}

// Subgradient of ||x - c||_p at x (zero at the center).
void NormGradient(std::span<const double> x, std::span<const double> c,
                  double p, Vector& g) {
  const size_t d = x.size();
  g.assign(d, 0.0);
  if (p == 2.0) {
    double s = 0.0;
    for (size_t i = 0; i < d; ++i) {
      g[i] = x[i] - c[i];
      s += g[i] * g[i];
    }
    s = std::sqrt(s);
    if (s == 0.0) return;
    for (double& v : g) v /= s;
    return;
  }
  double m = 0.0;
  for (size_t i = 0; i < d; ++i) m = std::max(m, std::abs(x[i] - c[i]));
  if (m == 0.0) return;
  double s = 0.0;
  for (size_t i = 0; i < d; ++i) {
    const double u = (x[i] - c[i]) / m;
    g[i] = std::copysign(std::pow(std::abs(u), p - 1.0), u);
    s += std::pow(std::abs(u), p);
  }
  const double denom = std::pow(s, (p - 1.0) / p);
  for (double& v : g) v /= denom;
}

struct Minimum {
  Vector x;
  double value;
};

// Minimizes phi(x) = max_i (||x - c_i|| - r_i) with Polyak steps towards a
// target level best - delta; delta halves whenever ten consecutive steps fail
// to improve the reference value by delta / 2.
Minimum MinimizeResidual(Vector x, std::span<const Ball> balls,
                         const NormSpec& norm, int max_iterations,
                         double scale) {
  const double p = norm.p();
  Vector g;
  Minimum best{x, Residual(x, balls, norm)};
  double reference = best.value;
  double delta = 0.5 * scale;
  const double tolerance = 1e-11 * scale;
  int stalled = 0;
  for (int it = 0; it < max_iterations; ++it) {
    double f = -std::numeric_limits<double>::infinity();
    size_t active = 0;
    for (size_t i = 0; i < balls.size(); ++i) {
      const double v = Distance(x, balls[i].center, norm) - balls[i].radius;
      if (v > f) {
        f = v;
        active = i;
      }
    }
    if (f < best.value) {
      best.value = f;
      best.x = x;
    }
    if (f <= reference - 0.5 * delta) {
      reference = f;
      stalled = 0;
    } else if (++stalled >= 10) {
      delta *= 0.5;
      stalled = 0;
      reference = best.value;
      x = best.x;
      if (delta < tolerance) break;
      continue;
    }
    NormGradient(x, balls[active].center, p, g);
    double gn2 = 0.0;
    for (double v : g) gn2 += v * v;
    // At the center of the active ball zero is a subgradient: x is optimal.
    if (gn2 == 0.0) break;
    const double step = (f - (best.value - delta)) / gn2;
    for (size_t i = 0; i < x.size(); ++i) x[i] -= step * g[i];
  }
  return best;
}

// Euclidean case: minimizes the log-sum-exp smoothing
//   phi_t(x) = t log sum_i exp((||x - c_i|| - r_i) / t),
// which lies within t log m of phi, by damped Newton steps while t shrinks
// geometrically. Stops as soon as phi(x) <= -margin, or once the smoothed
// minimum certifies (up to the Newton decrement) that phi stays above it.
Minimum MinimizeResidualL2(Vector start, std::span<const Ball> balls,
                           double margin, double scale) {
  const int d = static_cast<int>(start.size());
  const int m = static_cast<int>(balls.size());
  Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(start.data(), d);
  std::vector<Eigen::VectorXd> centers;
  for (const Ball& b : balls) {
    centers.push_back(Eigen::Map<const Eigen::VectorXd>(b.center.data(), d));
  }
  Eigen::VectorXd v(m), w(m), g(d), step(d), trial(d);
  std::vector<Eigen::VectorXd> u(m, Eigen::VectorXd::Zero(d));
  Eigen::VectorXd dist(m);
  Eigen::MatrixXd H(d, d);

  auto evaluate = [&](const Eigen::VectorXd& y, double t, double& hard) {
    double top = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      v[i] = (y - centers[i]).norm() - balls[i].radius;
      top = std::max(top, v[i]);
    }
    hard = top;
    double sum = 0.0;
    for (int i = 0; i < m; ++i) sum += std::exp((v[i] - top) / t);
    return top + t * std::log(sum);
  };

  Minimum best{start, std::numeric_limits<double>::infinity()};
  auto record = [&](const Eigen::VectorXd& y, double hard) {
    if (hard < best.value) {
      best.value = hard;
      best.x.assign(y.data(), y.data() + d);
    }
  };
  const double log_m = std::log(static_cast<double>(m));
  for (double t = 0.1 * scale; t >= 1e-12 * scale; t *= 0.1) {
    for (int it = 0; it < 60; ++it) {
      double hard = 0.0;
      const double f = evaluate(x, t, hard);
      record(x, hard);
      if (hard <= -margin) return best;
      double top = hard, sum = 0.0;
      for (int i = 0; i < m; ++i) {
        w[i] = std::exp((v[i] - top) / t);
        sum += w[i];
      }
      w /= sum;
      g.setZero();
      H.setZero();
      for (int i = 0; i < m; ++i) {
        const Eigen::VectorXd diff = x - centers[i];
        dist[i] = diff.norm();
        if (dist[i] > 1e-300) {
          u[i] = diff / dist[i];
          H.noalias() += (w[i] / dist[i]) *
                         (Eigen::MatrixXd::Identity(d, d) - u[i] * u[i].transpose());
        } else {
          u[i].setZero();
        }
        g += w[i] * u[i];
        H.noalias() += (w[i] / t) * u[i] * u[i].transpose();
      }
      H.noalias() -= (1.0 / t) * g * g.transpose();
      const double ridge = 1e-12 * (H.trace() / d) + 1e-12 / scale;
      H.diagonal().array() += ridge;
      step = H.ldlt().solve(-g);
      if (!step.allFinite() || g.dot(step) >= 0.0) step = -g * scale;
      if (step.norm() > scale) step *= scale / step.norm();
      const double decrement = -g.dot(step);
      // Converged at this smoothing level: check the lower bound.
      if (decrement <= 1e-13 * scale) {
        if (f - t * log_m - decrement > -margin) return best;
        break;
      }
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        trial = x + alpha * step;
        double trial_hard = 0.0;
        const double ft = evaluate(trial, t, trial_hard);
        if (ft <= f - 1e-4 * alpha * decrement) {
          x = trial;
          record(x, trial_hard);
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
  }
  return best;
}

}  // namespace

FeasibilityResult IntersectWitness(std::span<const Ball> query,
                                   const NormSpec& norm,
                                   const FeasibilityOptions& options) {
  ValidateQuery(query);
  const std::vector<Ball> balls = Dedup(query);
  const double margin =
      options.margin >= 0.0 ? options.margin : StrictMargin(balls);
  if (norm.is_inf()) return IntervalIntersection(balls, margin);

  const size_t d = balls.front().dim();
  FeasibilityResult result;
  result.margin = margin;
  if (balls.size() == 1) {
    result.point = balls.front().center;
    result.residual = -balls.front().radius;
    result.status = result.residual <= -margin
                        ? FeasibilityResult::Status::kWitness
                        : FeasibilityResult::Status::kEmpty;
    return result;
  }

  Vector centroid(d, 0.0);
  double scale = 0.0;
  for (const Ball& b : balls) {
    for (size_t i = 0; i < d; ++i) centroid[i] += b.center[i] / balls.size();
    scale = std::max(scale, b.radius);
  }

  std::vector<Vector> starts;
  if (options.warm_start != nullptr && options.warm_start->size() == d) {
    starts.push_back(*options.warm_start);
  }
  starts.push_back(centroid);

  Minimum best{centroid, std::numeric_limits<double>::infinity()};
  if (norm.p() == 2.0) {
    // Convex problem and a globally convergent method: one start suffices.
    best = MinimizeResidualL2(starts.front(), balls, margin, scale);
    result.point = std::move(best.x);
    result.residual = Residual(result.point, balls, norm);
    result.status = result.residual <= -margin
                        ? FeasibilityResult::Status::kWitness
                        : FeasibilityResult::Status::kEmpty;
    return result;
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const size_t total = starts.size() + std::max(0, options.restarts);
  for (size_t attempt = 0; attempt < total; ++attempt) {
    Vector start;
    if (attempt < starts.size()) {
      start = starts[attempt];
    } else {
      start = centroid;
      for (double& v : start) v += scale * normal(rng);
    }
    Minimum m =
        MinimizeResidual(std::move(start), balls, norm, options.max_iterations,
                         scale);
    if (m.value < best.value) best = std::move(m);
    if (best.value <= -margin) break;
  }
  result.point = std::move(best.x);
  result.residual = Residual(result.point, balls, norm);
  result.status = result.residual <= -margin
                      ? FeasibilityResult::Status::kWitness
                      : FeasibilityResult::Status::kEmpty;
  return result;
}

}  // namespace knnpoison

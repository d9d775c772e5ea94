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

#ifndef KNNPOISON_GEOMETRY_H_
#define KNNPOISON_GEOMETRY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace knnpoison {

using Vector = std::vector<double>;

// Which l_p norm measures distance. Finite p must exceed 1.
class NormSpec {
 public:
  enum class Kind { kLp, kLInf };

  static NormSpec L2() { return NormSpec(Kind::kLp, 2.0); }
  static NormSpec LInf() { return NormSpec(Kind::kLInf, 0.0); }
  // Throws InputError unless p > 1 and finite.
  static NormSpec Lp(double p);
  // Accepts "l2", "linf", "lp:<p>" (and "l<p>" for integer p).
  static NormSpec Parse(const std::string& text);

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  bool is_inf() const { return kind_ == Kind::kLInf; }
  std::string ToString() const;

  friend bool operator==(const NormSpec&, const NormSpec&) = default;

 private:
  NormSpec(Kind kind, double p) : kind_(kind), p_(p) {}
  Kind kind_;
  double p_;
};

struct Ball {
  Vector center;
  double radius = 0.0;

  size_t dim() const { return center.size(); }
  friend bool operator==(const Ball&, const Ball&) = default;
};

struct FeasibilityResult {
  enum class Status { kWitness, kEmpty };

  Status status = Status::kEmpty;
  // Deepest point found; meaningful for kWitness, best attempt otherwise.
  Vector point;
  // max_i (||point - c_i|| - r_i); negative inside every ball.
  double residual = 0.0;
  // The strictness margin that was applied.
  double margin = 0.0;

  bool has_witness() const { return status == Status::kWitness; }
};

struct FeasibilityOptions {
  uint64_t seed = 0;
  // Random restarts tried after the centroid start fails.
  int restarts = 3;
  int max_iterations = 2000;
  // Strictness margin; a negative value means 1e-7 * min radius of the query.
  double margin = -1.0;
  // Optional extra starting point tried before the centroid.
  const Vector* warm_start = nullptr;
};

// Relative strictness factor applied to the smallest radius in a query.
inline constexpr double kStrictFactor = 1e-7;

// ||a - b|| under `norm`. Throws InputError on dimension mismatch.
double Distance(std::span<const double> a, std::span<const double> b,
                const NormSpec& norm);

double StrictMargin(std::span<const Ball> balls);

// True iff the open balls overlap by more than the strictness margin:
// distance(c1, c2) < r1 + r2 - margin.
bool PairwiseIntersects(const Ball& b1, const Ball& b2, const NormSpec& norm,
                        double margin = -1.0);

// max_i (||x - c_i|| - r_i).
double Residual(std::span<const double> x, std::span<const Ball> balls,
                const NormSpec& norm);

// Decides whether the balls share a point at depth >= margin and returns the
// deepest point found. Exact (interval intersection) under l_inf; a level-
// adjusted Polyak subgradient method on the residual for finite p.
FeasibilityResult IntersectWitness(std::span<const Ball> balls,
                                   const NormSpec& norm,
                                   const FeasibilityOptions& options = {});

}  // namespace knnpoison

#endif  // KNNPOISON_GEOMETRY_H_

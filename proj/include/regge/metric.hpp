// Copyright 2026 The regge Authors
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

#ifndef REGGE_METRIC_HPP_
#define REGGE_METRIC_HPP_

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "regge/complex.hpp"
#include "regge/random.hpp"
#include "regge/types.hpp"

namespace regge
{

inline constexpr double kDefaultPivotEps = 1e-12;

/// Piecewise-linear metric stored as squared edge lengths g_e = l_e^2,
/// indexed by the edge order of the triangulation it was built for.
class PLMetric
{
public:
  PLMetric() = default;
  explicit PLMetric(Vector g);

  static PLMetric uniform(const Triangulation3 & tri, double value);

  Index size() const { return g_.size(); }
  double operator[](Index e) const { return g_[e]; }
  const Vector & squared() const { return g_; }
  Vector lengths() const { return g_.array().sqrt(); }

  /// Six squared lengths of tetrahedron t in local edge order.
  TetEdgeValues<double> tet_values(const Triangulation3 & tri, Index t) const;

  friend bool operator==(const PLMetric & a, const PLMetric & b) { return a.g_ == b.g_; }

private:
  Vector g_;
};

/// Throws MetricError unless g has one entry per edge of tri.
void check_bound(const PLMetric & g, const Triangulation3 & tri);

/// Gram matrix of the edge vectors v1-v0, v2-v0, v3-v0 of a tetrahedron.
template <typename Scalar>
Mat3<Scalar> gram_matrix(const TetEdgeValues<Scalar> & g)
{
  // g01 g02 g03 g12 g13 g23
  Mat3<Scalar> m;
  m(0, 0) = g[0];
  m(1, 1) = g[1];
  m(2, 2) = g[2];
  m(0, 1) = m(1, 0) = (g[0] + g[1] - g[3]) / Scalar(2);
  m(0, 2) = m(2, 0) = (g[0] + g[2] - g[4]) / Scalar(2);
  m(1, 2) = m(2, 1) = (g[1] + g[2] - g[5]) / Scalar(2);
  return m;
}

/// Gram matrix of an n-simplex from its (n+1)x(n+1) matrix of squared
/// vertex distances.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> gram_matrix_simplex(
  const Eigen::MatrixBase<Derived> & squared_distances)
{
  using Scalar = typename Derived::Scalar;
  const Index n = squared_distances.rows() - 1;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      m(i, j) = (squared_distances(0, i + 1) + squared_distances(0, j + 1) - squared_distances(i + 1, j + 1)) / Scalar(2);
    }
  }
  return m;
}

/// Lower Cholesky factor of a symmetric matrix, or nullopt as soon as a pivot
/// fails to exceed eps times the largest diagonal entry.
template <typename Derived>
std::optional<Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>>
pivoted_cholesky(const Eigen::MatrixBase<Derived> & m, typename Derived::Scalar eps)
{
  using Scalar = typename Derived::Scalar;
  using std::sqrt;
  const Index n = m.rows();
  Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime> l =
    Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>::Zero(n, n);
  const Scalar floor = eps * m.diagonal().maxCoeff();
  if (!(m.diagonal().maxCoeff() > Scalar(0))) {
    return std::nullopt;
  }
  for (Index j = 0; j < n; ++j) {
    Scalar pivot = m(j, j);
    for (Index k = 0; k < j; ++k) {
      pivot -= l(j, k) * l(j, k);
    }
    // NaN fails this comparison too.
    if (!(pivot > floor)) {
      return std::nullopt;
    }
    l(j, j) = sqrt(pivot);
    for (Index i = j + 1; i < n; ++i) {
      Scalar s = m(i, j);
      for (Index k = 0; k < j; ++k) {
        s -= l(i, k) * l(j, k);
      }
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

template <typename Derived>
bool is_admissible_gram(const Eigen::MatrixBase<Derived> & m, typename Derived::Scalar eps = kDefaultPivotEps)
{
  return pivoted_cholesky(m, eps).has_value();
}

template <typename Scalar>
bool is_admissible_tet(const TetEdgeValues<Scalar> & g, Scalar eps = Scalar(kDefaultPivotEps))
{
  for (int k = 0; k < 6; ++k) {
    if (!(g[k] > Scalar(0))) {
      return false;
    }
  }
  return is_admissible_gram(gram_matrix(g), eps);
}

bool is_admissible_tet(const Triangulation3 & tri, Index t, const PLMetric & g, double eps = kDefaultPivotEps);

/// Index of the first tetrahedron failing the Gram test, if any.
std::optional<Index> first_inadmissible_tet(
  const Triangulation3 & tri, const PLMetric & g, double eps = kDefaultPivotEps);

bool is_admissible(const Triangulation3 & tri, const PLMetric & g, double eps = kDefaultPivotEps);

/// Throws InadmissibleError naming the first failing tetrahedron.
void require_admissible(const Triangulation3 & tri, const PLMetric & g, double eps = kDefaultPivotEps);

PLMetric scale(const PLMetric & g, double c);

/// Entrywise base * exp(u), u uniform in [-sigma, sigma], redrawn until
/// admissible. Throws after max_tries rejections.
PLMetric sample_admissible(
  const Triangulation3 & tri, const PLMetric & base, double sigma, SplitMix64 & rng, int max_tries = 100000);

/// Same log-perturbation, without the admissibility loop.
PLMetric log_perturb(const PLMetric & base, double sigma, SplitMix64 & rng);

/// Metric JSON: {"edges": {"<edge key>": squared length, ...}}.
PLMetric parse_metric(std::string_view text, const Triangulation3 & tri);
std::string metric_to_json(const PLMetric & g, const Triangulation3 & tri);

/// Assign values listed in 16-cell block order (see sixteen_cell_block_order).
PLMetric metric_from_block_order(const Triangulation3 & tri, const Vector & block_values);

}  // namespace regge

#endif  // REGGE_METRIC_HPP_

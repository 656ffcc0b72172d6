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

#ifndef REGGE_TYPES_HPP_
#define REGGE_TYPES_HPP_

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <numbers>

namespace regge
{

using Index = Eigen::Index;

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

/// Six per-tetrahedron values indexed by local edge (see kTetEdges).
template <typename Scalar>
using TetEdgeValues = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar>
using TetVertexValues = Eigen::Matrix<Scalar, 4, 1>;

/// Local edge k of a tetrahedron (v0,v1,v2,v3) joins kTetEdges[k]. The edge
/// opposite to local edge k is 5 - k.
inline constexpr std::array<std::array<int, 2>, 6> kTetEdges = {
  {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int local_edge(int a, int b)
{
  if (a > b) {
    const int t = a;
    a = b;
    b = t;
  }
  // 01->0 02->1 03->2 12->3 13->4 23->5
  return a == 0 ? b - 1 : a + b;
}

constexpr int opposite_edge(int k) { return 5 - k; }

inline constexpr double kPi = std::numbers::pi;

}  // namespace regge

#endif  // REGGE_TYPES_HPP_

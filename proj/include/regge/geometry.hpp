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

#ifndef REGGE_GEOMETRY_HPP_
#define REGGE_GEOMETRY_HPP_

#include <array>
#include <cmath>

#include <Eigen/Geometry>

#include "regge/errors.hpp"
#include "regge/metric.hpp"
#include "regge/types.hpp"

namespace regge
{

/// Euclidean tetrahedron realized from its squared edge lengths.
template <typename Scalar>
struct TetGeometry
{
  Scalar volume;
  /// Indexed by the opposite vertex.
  TetVertexValues<Scalar> face_areas;
  /// Interior dihedral angle at each local edge, in (0, pi).
  TetEdgeValues<Scalar> dihedral;
  /// Solid angle at each vertex, as the spherical excess of its link.
  TetVertexValues<Scalar> solid;
};

/// Vertex positions with v0 at the origin and v1..v3 the rows of the Cholesky
/// factor of the Gram matrix (positive orientation).
template <typename Scalar>
std::array<Vec3<Scalar>, 4> embed_tet(const TetEdgeValues<Scalar> & g, Scalar eps = Scalar(kDefaultPivotEps))
{
  const auto chol = pivoted_cholesky(gram_matrix(g), eps);
  if (!chol) {
    throw InadmissibleError("tetrahedron is not realizable (Gram matrix not positive definite)", -1);
  }
  std::array<Vec3<Scalar>, 4> p;
  p[0].setZero();
  for (int i = 0; i < 3; ++i) {
    p[i + 1] = chol->row(i).transpose();
  }
  return p;
}

/// Heron's formula on l = sqrt(g). Throws on a violated triangle inequality.
template <typename Scalar>
Scalar face_area(Scalar g_ab, Scalar g_ac, Scalar g_bc)
{
  using std::sqrt;
  const Scalar a = sqrt(g_ab);
  const Scalar b = sqrt(g_ac);
  const Scalar c = sqrt(g_bc);
  const Scalar s = (a + b + c) / Scalar(2);
  const Scalar prod = s * (s - a) * (s - b) * (s - c);
  if (!(s - a > Scalar(0) && s - b > Scalar(0) && s - c > Scalar(0) && prod > Scalar(0))) {
    throw Error("degenerate triangle: strict triangle inequality violated");
  }
  return sqrt(prod);
}

/// 144 V^2 as a polynomial in the squared edge lengths, arranged by pairs of
/// opposite edges. May be zero or negative for non-realizable input.
template <typename Scalar>
Scalar cayley_menger_144v2(const TetEdgeValues<Scalar> & g)
{
  // Opposite pairs: (01,23) (03,12) (02,13).
  const Scalar g01 = g[0], g02 = g[1], g03 = g[2], g12 = g[3], g13 = g[4], g23 = g[5];
  return g01 * g23 * (g02 + g03 + g12 + g13 - g01 - g23) + g03 * g12 * (g01 + g23 + g02 + g13 - g03 - g12) +
         g02 * g13 * (g01 + g23 + g03 + g12 - g02 - g13) - g01 * g12 * g02 - g02 * g03 * g23 - g01 * g03 * g13 -
         g12 * g23 * g13;
}

/// Volume from the Cayley-Menger expansion; throws if 144 V^2 <= 0.
template <typename Scalar>
Scalar tet_volume_cm(const TetEdgeValues<Scalar> & g)
{
  using std::sqrt;
  const Scalar expr = cayley_menger_144v2(g);
  if (!(expr > Scalar(0))) {
    throw Error("degenerate tetrahedron: 144 V^2 <= 0");
  }
  return sqrt(expr) / Scalar(12);
}

namespace detail
{

/// Angle at edge (a,b) between the half-planes through c and d.
template <typename Scalar>
Scalar dihedral_at(const std::array<Vec3<Scalar>, 4> & p, int a, int b, int c, int d)
{
  using std::atan2;
  const Vec3<Scalar> axis = (p[b] - p[a]).normalized();
  Vec3<Scalar> u = p[c] - p[a];
  Vec3<Scalar> w = p[d] - p[a];
  u -= u.dot(axis) * axis;
  w -= w.dot(axis) * axis;
  return atan2(u.cross(w).norm(), u.dot(w));
}

}  // namespace detail

template <typename Scalar>
TetEdgeValues<Scalar> dihedral_angles(const std::array<Vec3<Scalar>, 4> & p)
{
  TetEdgeValues<Scalar> beta;
  for (int k = 0; k < 6; ++k) {
    const auto & [a, b] = kTetEdges[k];
    const auto & [c, d] = kTetEdges[opposite_edge(k)];
    beta[k] = detail::dihedral_at(p, a, b, c, d);
  }
  return beta;
}

template <typename Scalar>
TetEdgeValues<Scalar> dihedral_angles(const TetEdgeValues<Scalar> & g)
{
  return dihedral_angles(embed_tet(g));
}

/// Spherical excess at each vertex: sum of its three dihedrals minus pi.
template <typename Scalar>
TetVertexValues<Scalar> solid_angles_from_dihedrals(const TetEdgeValues<Scalar> & beta)
{
  TetVertexValues<Scalar> alpha;
  for (int v = 0; v < 4; ++v) {
    Scalar sum(0);
    for (int w = 0; w < 4; ++w) {
      if (w != v) {
        sum += beta[local_edge(v, w)];
      }
    }
    alpha[v] = sum - Scalar(kPi);
  }
  return alpha;
}

template <typename Scalar>
TetVertexValues<Scalar> solid_angles(const TetEdgeValues<Scalar> & g)
{
  return solid_angles_from_dihedrals(dihedral_angles(g));
}

template <typename Scalar>
TetGeometry<Scalar> tet_geometry(const TetEdgeValues<Scalar> & g, Scalar eps = Scalar(kDefaultPivotEps))
{
  const auto p = embed_tet(g, eps);
  TetGeometry<Scalar> geo;
  Mat3<Scalar> frame;
  frame << p[1].transpose(), p[2].transpose(), p[3].transpose();
  geo.volume = frame.determinant() / Scalar(6);
  for (int v = 0; v < 4; ++v) {
    std::array<int, 3> f{};
    int n = 0;
    for (int w = 0; w < 4; ++w) {
      if (w != v) {
        f[n++] = w;
      }
    }
    geo.face_areas[v] = (p[f[1]] - p[f[0]]).cross(p[f[2]] - p[f[0]]).norm() / Scalar(2);
  }
  geo.dihedral = dihedral_angles(p);
  geo.solid = solid_angles_from_dihedrals(geo.dihedral);
  return geo;
}

}  // namespace regge

#endif  // REGGE_GEOMETRY_HPP_

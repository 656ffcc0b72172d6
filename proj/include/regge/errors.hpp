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

#ifndef REGGE_ERRORS_HPP_
#define REGGE_ERRORS_HPP_

#include <stdexcept>
#include <string>

#include "regge/types.hpp"

namespace regge
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed triangulation input or inconsistent simplicial data.
class ComplexError : public Error
{
public:
  using Error::Error;
};

/// Metric does not match its complex (size, missing/unknown keys, sign).
class MetricError : public Error
{
public:
  using Error::Error;
};

/// Some tetrahedron fails the Gram positive-definiteness test.
class InadmissibleError : public Error
{
public:
  InadmissibleError(const std::string & what, Index tet) : Error(what), tet_(tet) {}
  Index tet() const noexcept { return tet_; }

private:
  Index tet_;
};

/// Operation requires a closed complex.
class BoundaryError : public Error
{
public:
  using Error::Error;
};

/// Input metric is not close enough to Einstein for the requested analysis.
class GateError : public Error
{
public:
  GateError(const std::string & what, double residual) : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

}  // namespace regge

#endif  // REGGE_ERRORS_HPP_

// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>

namespace rsma {

/// Column vector of complex channel or precoder coefficients.
template <typename Scalar = double>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Keeps a scalar argument out of template deduction, so `f(geom, 100)` works
/// for a `Geometry<double>`.
template <typename Scalar>
using Arg = std::type_identity_t<Scalar>;

template <typename Scalar>
inline constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

template <typename Scalar>
Scalar db_to_amplitude(Scalar db)
{
  return std::pow(Scalar(10), db / Scalar(20));
}

template <typename Scalar>
Scalar db_to_power(Scalar db)
{
  return std::pow(Scalar(10), db / Scalar(10));
}

template <typename Scalar>
Scalar log2(Scalar x)
{
  return std::log2(x);
}

// Rotates v so its first entry that is not numerically zero is real and
// nonnegative. Gives reproducible output for directions that are only
// defined up to a global phase.
template <typename Scalar>
void normalize_phase(CVector<Scalar> &v)
{
  const Scalar scale = v.cwiseAbs().maxCoeff();
  if (!(scale > Scalar(0))) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Scalar mag = std::abs(v(i));
    if (mag > Scalar(1e-12) * scale) {
      const std::complex<Scalar> rot = std::conj(v(i)) / mag;
      v *= rot;
      v(i) = std::complex<Scalar>(mag, Scalar(0));
      return;
    }
  }
}

} // namespace rsma

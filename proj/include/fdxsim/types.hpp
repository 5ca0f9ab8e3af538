// SPDX-License-Identifier: Apache-2.0
//
// fdxsim: full-duplex MIMO link-level simulator
// Copyright (C) 2026 The fdxsim Authors
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

#include <complex>

#include <Eigen/Dense>

namespace fdxsim {

/**
 * @brief Dense complex types shared by every module, templated on the real scalar.
 *
 * Channel vectors follow the signal-model orientation: the UL channel is a
 * column (N_b x 1), the DL channel is a row (1 x N_b).
 */
template <typename Real>
struct Types {
    using Scalar = Real;
    using Complex = std::complex<Real>;
    using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
    using RowVector = Eigen::Matrix<Complex, 1, Eigen::Dynamic>;
    using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
};

using TypesD = Types<double>;
using TypesF = Types<float>;

using cdouble = std::complex<double>;
using CMatrix = TypesD::Matrix;
using CVector = TypesD::Vector;
using CRowVector = TypesD::RowVector;
using RVector = TypesD::RealVector;

} // namespace fdxsim

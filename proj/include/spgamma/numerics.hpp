// SPDX-License-Identifier: Apache-2.0
//
// spgamma: coherent Smith-Purcell gamma-ray emission from resonant nuclei
// Copyright (C) 2026 The spgamma authors
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

#ifndef SPGAMMA_NUMERICS_HPP
#define SPGAMMA_NUMERICS_HPP

#include <cmath>
#include <functional>
#include <vector>

namespace spgamma::numerics {

/// Modified Bessel function of the second kind, order 0.
/// Power series for x < 2, Steed/Temme continued fraction above.
/// Throws DomainError for x <= 0 or NaN; returns 0 for x > 700.
double bessel_k0(double x);

/// Order-1 companion of bessel_k0. Near the origin it returns the 1/x pole
/// value rather than clamping; physical cutoffs live upstream.
double bessel_k1(double x);

/// Both orders from one evaluation (the continued fraction yields them together).
struct BesselK01 {
    double k0;
    double k1;
};
BesselK01 bessel_k01(double x);

struct PeriodicOptions {
    double rel_tol = 1e-8;
    int initial_points = 8;
    int max_doublings = 16;
};

/// Integral of a smooth 2pi-periodic function over [0, 2pi) by the trapezoid
/// rule, doubling the grid until successive estimates agree to rel_tol.
double integrate_periodic(const std::function<double(double)>& f,
                          const PeriodicOptions& options = {});

/// Adaptive Gauss-Kronrod over [a, b]. The estimated error must satisfy
/// err <= tol * (1 + |result|), otherwise ConvergenceError.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-10);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped onto [a, b].
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double value) noexcept
    {
        const double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value))
            comp_ += (sum_ - t) + value;
        else
            comp_ += (value - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace spgamma::numerics

#endif

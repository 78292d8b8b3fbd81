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

#include "spgamma/numerics.hpp"

#include "spgamma/constants.hpp"
#include "spgamma/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <limits>
#include <sstream>
#include <string>

namespace spgamma::numerics {

namespace {

constexpr double kSeriesCrossover = 2.0;
constexpr double kUnderflowArgument = 700.0;
constexpr double kEps = 1e-16;

void check_argument(double x, const char* name)
{
    if (std::isnan(x) || x <= 0.0)
        throw DomainError(std::string(name) + ": argument must be positive, got " + std::to_string(x));
}

// Ascending series, A&S 9.6.13 / 9.6.11 with n = 0, 1.
BesselK01 series(double x)
{
    using constants::euler_gamma;
    const double y = 0.25 * x * x;
    const double log_half = std::log(0.5 * x);

    // I0, I1 and the digamma-weighted sums share the same term recurrence.
    double term0 = 1.0;      // y^k / (k!)^2
    double term1 = 1.0;      // y^k / (k! (k+1)!)
    double harmonic = 0.0;   // H_k
    double i0 = 1.0, i1 = 1.0;
    double s0 = 0.0;
    double s1 = 2.0 * (-euler_gamma) + 1.0; // psi(1) + psi(2) at k = 0
    for (int k = 1; k < 60; ++k) {
        term0 *= y / (double(k) * k);
        term1 *= y / (double(k) * (k + 1));
        harmonic += 1.0 / k;
        i0 += term0;
        i1 += term1;
        s0 += term0 * harmonic;
        // psi(k+1) + psi(k+2) = 2 H_k + 1/(k+1) - 2 gamma
        s1 += term1 * (2.0 * harmonic + 1.0 / (k + 1) - 2.0 * euler_gamma);
        if (term0 < kEps * i0 && term1 < kEps * i1)
            break;
    }
    i1 *= 0.5 * x;

    BesselK01 out{};
    out.k0 = -(log_half + euler_gamma) * i0 + s0;
    out.k1 = 1.0 / x + log_half * i1 - 0.25 * x * s1;
    return out;
}

// Steed's method for the second continued fraction (Temme 1975), nu = 0.
BesselK01 continued_fraction(double x)
{
    const double a1 = 0.25;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0, q2 = 1.0;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i < 10000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps)
            break;
    }
    h *= a1;
    BesselK01 out{};
    out.k0 = std::sqrt(constants::pi / (2.0 * x)) * std::exp(-x) / s;
    out.k1 = out.k0 * (x + 0.5 - h) / x;
    return out;
}

} // namespace

BesselK01 bessel_k01(double x)
{
    check_argument(x, "bessel_k");
    if (x > kUnderflowArgument)
        return {0.0, 0.0};
    return x < kSeriesCrossover ? series(x) : continued_fraction(x);
}

double bessel_k0(double x) { return bessel_k01(x).k0; }

double bessel_k1(double x) { return bessel_k01(x).k1; }

double integrate_periodic(const std::function<double(double)>& f, const PeriodicOptions& options)
{
    if (options.initial_points < 1 || options.rel_tol <= 0.0)
        throw DomainError("integrate_periodic: invalid options");

    constexpr double two_pi = 2.0 * constants::pi;
    int n = options.initial_points;
    CompensatedSum sum;
    for (int i = 0; i < n; ++i)
        sum.add(f(two_pi * i / n));
    double estimate = two_pi * sum.value() / n;

    for (int level = 0; level < options.max_doublings; ++level) {
        // Nested grids: the doubled rule only needs the midpoints.
        for (int i = 0; i < n; ++i)
            sum.add(f(two_pi * (i + 0.5) / n));
        n *= 2;
        const double refined = two_pi * sum.value() / n;
        if (std::abs(refined - estimate) <= options.rel_tol * std::abs(refined)
            || (refined == 0.0 && estimate == 0.0))
            return refined;
        if (level + 1 == options.max_doublings)
            throw ConvergenceError("integrate_periodic: no convergence after "
                                       + std::to_string(n) + " points",
                                   estimate, refined);
        estimate = refined;
    }
    return estimate;
}

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

// Kronrod-15 panel with |K15 - G7| as its absolute error.
double kronrod_panel(const std::function<double(double)>& f, double a, double b, double& err)
{
    const double k = Kronrod::integrate(f, a, b, 0);
    err = std::abs(k - Gauss::integrate(f, a, b));
    return k;
}

// Bisect until each panel's error fits its share of the tolerance. The
// library's own recursion reports a relative, top-level estimate, so the
// recursion is driven here and absolute panel errors are summed. A panel
// budget stops refinement that cannot converge.
double kronrod_bisect(const std::function<double(double)>& f, double a, double b, double tol, int depth,
                      double& error_sum, long& panels_left)
{
    double err = 0.0;
    const double r = kronrod_panel(f, a, b, err);
    if (err <= tol || depth == 0 || panels_left < 2) {
        error_sum += err;
        return r;
    }
    panels_left -= 2;
    const double m = 0.5 * (a + b);
    return kronrod_bisect(f, a, m, 0.5 * tol, depth - 1, error_sum, panels_left)
        + kronrod_bisect(f, m, b, 0.5 * tol, depth - 1, error_sum, panels_left);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol)
{
    if (!(a < b))
        throw DomainError("integrate_adaptive: require a < b");
    if (!(tol > 0.0))
        throw DomainError("integrate_adaptive: tolerance must be positive");

    constexpr int max_depth = 40;
    long panels_left = 1L << 16;
    double coarse_err = 0.0;
    const double coarse = kronrod_panel(f, a, b, coarse_err);
    const double budget = tol * (1.0 + std::abs(coarse));
    double error = 0.0;
    const double result = kronrod_bisect(f, a, b, budget, max_depth, error, panels_left);
    if (!std::isfinite(result) || error > tol * (1.0 + std::abs(result))) {
        std::ostringstream msg;
        msg << "integrate_adaptive: error estimate " << error << " exceeds tolerance " << tol;
        throw ConvergenceError(msg.str(), coarse, result);
    }
    return result;
}

QuadratureRule gauss_legendre(int n, double a, double b)
{
    if (n < 1)
        throw DomainError("gauss_legendre: need at least one node");

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(constants::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            dp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-15)
                break;
        }
        // recompute derivative at the converged root
        double p1 = 1.0, p2 = 0.0;
        for (int j = 1; j <= n; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
        }
        dp = n * (z * p1 - p2) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = mid - half * z;
        rule.nodes[n - 1 - i] = mid + half * z;
        rule.weights[i] = half * w;
        rule.weights[n - 1 - i] = half * w;
    }
    return rule;
}

} // namespace spgamma::numerics

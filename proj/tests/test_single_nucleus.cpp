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

#include "spgamma/constants.hpp"
#include "spgamma/errors.hpp"
#include "spgamma/finite_array.hpp"
#include "spgamma/numerics.hpp"
#include "spgamma/single_nucleus.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace spgamma;

namespace {

const NuclideRecord& fe()
{
    static const NuclideRegistry r = NuclideRegistry::builtin();
    return r.get("Fe-57");
}

const NuclideRecord& dy()
{
    static const NuclideRegistry r = NuclideRegistry::builtin();
    return r.get("Dy-161");
}

// Gauss-Legendre in cos(theta) times trapezoid in phi.
template <class F>
double sphere_integral(F f, int n_theta, int n_phi)
{
    const auto rule = numerics::gauss_legendre(n_theta);
    double total = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        const double theta = std::acos(rule.nodes[i]);
        double ring = 0.0;
        for (int k = 0; k < n_phi; ++k)
            ring += f(theta, 2.0 * M_PI * k / n_phi);
        total += rule.weights[i] * ring * 2.0 * M_PI / n_phi;
    }
    return total;
}

} // namespace

TEST_CASE("coherent yield at the reference point")
{
    // Written out from scratch: 3 alpha/(beta gamma)^2 kappa_r^2/(omega0 kappa) K1^2.
    const double beta = 0.9, r = 0.001;
    const double gamma = 1.0 / std::sqrt(1 - beta * beta);
    const double w0 = 14412.9 / 6.582119569e-16;
    const double kappa = 1.0 / 142e-9;
    const double kr = kappa * (2.0 / 3.0) / (1.0 + 8.544);
    const double x = w0 * r / (beta * 2.99792458e17 * gamma);
    const double k1 = boost::math::cyl_bessel_k(1, x);
    const double want = 3.0 * 7.2973525693e-3 / (beta * beta * gamma * gamma) * kr * kr / (w0 * kappa) * k1 * k1;
    CHECK(coherent_yield(Probe::electron(beta), fe(), r) == doctest::Approx(want).epsilon(1e-12));
    CHECK(want == doctest::Approx(6.41e-15).epsilon(0.01));
    CHECK(line_strength_factor(fe()) == doctest::Approx(1.569e-15).epsilon(1e-3));
}

TEST_CASE("coherent yield scaling laws")
{
    const Probe e = Probe::electron(0.9);
    Probe ion = e;
    ion.z_charge = -2;
    CHECK(coherent_yield(ion, fe(), 0.002) == doctest::Approx(4.0 * coherent_yield(e, fe(), 0.002)).epsilon(1e-14));
    CHECK(coherent_yield(e, fe(), 1e-7) / coherent_yield(e, fe(), 2e-7) == doctest::Approx(4.0).epsilon(1e-6));

    double last = 0.0;
    for (double beta = 0.2; beta <= 0.99; beta += 0.01) {
        const double y = coherent_yield(Probe::electron(beta), fe(), 0.001);
        CHECK(y > last);
        last = y;
    }
    // Faster than any power in the tail.
    const double l = e.evanescent_length_nm(fe().omega0());
    CHECK(coherent_yield(e, fe(), 40 * l) / coherent_yield(e, fe(), 20 * l) < 1e-15);
    CHECK_THROWS_AS(coherent_yield(e, fe(), 0.0), DomainError);
}

TEST_CASE("angular density of one nucleus integrates to the closed form")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> beta_d(0.3, 0.98), logr(std::log(2e-4), std::log(2e-2));
    for (int i = 0; i < 5; ++i) {
        const Probe p = Probe::electron(beta_d(rng));
        const double r = std::exp(logr(rng));
        const NucleusSet one({{0.0, 0.0, 0.0}});
        const Vec2 rp{r * 0.6, -r * 0.8};
        const double total = sphere_integral(
            [&](double th, double ph) { return angular_density(p, one, fe(), rp, th, ph); }, 48, 32);
        CHECK(total == doctest::Approx(coherent_yield(p, fe(), r)).epsilon(1e-9));
    }
}

TEST_CASE("spectral profile")
{
    const auto s = spectral_profile(fe());
    CHECK(s.fwhm_eV == doctest::Approx(4.64e-9).epsilon(2e-3));
    // Detunings of nano-eV on a keV line lose digits to rounding; compare at the representable offset.
    const double up = s.center_eV + 0.5 * s.fwhm_eV;
    const double half = up - s.center_eV;
    const double lorentz = 0.5 * s.fwhm_eV / (M_PI * (half * half + 0.25 * s.fwhm_eV * s.fwhm_eV));
    CHECK(s.density(up) == doctest::Approx(lorentz).epsilon(1e-12));
    CHECK(s.density(up) == doctest::Approx(0.5 * s.density(s.center_eV)).epsilon(5e-3));
    CHECK(s.density(s.center_eV + half) == doctest::Approx(s.density(s.center_eV - half)).epsilon(1e-12));
    // Normalized: the mass within 50 half widths is (2/pi) atan(50).
    const double h = 0.5 * s.fwhm_eV;
    const double mass = numerics::integrate_adaptive(
        [&](double x) { return s.density(s.center_eV + h * x) * h; }, -50.0, 50.0, 1e-3);
    CHECK(mass == doctest::Approx(2.0 / M_PI * std::atan(50.0)).epsilon(2e-3));
}

TEST_CASE("decay profile")
{
    CHECK(decay_profile(fe()).survival(142e-9) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(decay_profile(dy()).survival(1.2e-9) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(decay_profile(fe()).survival(0.0) == 1.0);
    CHECK(decay_profile(fe()).density(-1.0) == 0.0);
    const auto d = decay_profile(fe());
    CHECK(numerics::integrate_adaptive([&](double t) { return d.density(t); }, 0.0, 142e-9)
          == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-10));
}

TEST_CASE("incoherent emission normalization")
{
    const Probe p = Probe::electron(0.8);
    const std::vector<Vec2> nuclei{{0.0, 0.0}, {0.2856, 0.0}, {0.0, 0.2856}, {-0.2856, 0.1}};
    const Vec2 rp{0.004, 0.011};
    const double total =
        sphere_integral([&](double th, double ph) { return incoherent_angular(p, fe(), nuclei, rp, th, ph); }, 16, 16);
    double sum = 0.0;
    for (const auto& r : nuclei)
        sum += coherent_yield(p, fe(), (r - rp).norm());
    CHECK(total == doctest::Approx(0.5 * sum).epsilon(1e-12)); // 1/f - 1 = 1/2 for Fe-57

    // Non-negative, at most twice its angular mean, pi-periodic in phi for one nucleus.
    const double mean = total / (4 * M_PI);
    for (double th = 0.05; th < M_PI; th += 0.3)
        for (double ph = 0.0; ph < 2 * M_PI; ph += 0.4) {
            const double v = incoherent_angular(p, fe(), nuclei, rp, th, ph);
            CHECK(v >= 0.0);
            CHECK(v <= 2.0 * mean);
            const std::vector<Vec2> one{nuclei[1]};
            CHECK(incoherent_angular(p, fe(), one, rp, th, ph)
                  == doctest::Approx(incoherent_angular(p, fe(), one, rp, th, ph + M_PI)).epsilon(1e-12));
        }
}

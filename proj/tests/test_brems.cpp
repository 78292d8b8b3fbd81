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

#include "spgamma/brems.hpp"
#include "spgamma/constants.hpp"
#include "spgamma/errors.hpp"
#include "spgamma/numerics.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

using namespace spgamma;

namespace {

const double kOmega = constants::omega_from_eV(14412.5);

// Direct time integral of the first-order radiation integrand for a straight
// trajectory deflected by the nucleus: beta_dot from the Coulomb field, phase
// exp(i omega (1 - beta cos theta) t).
double time_domain_density(const Probe& p, int zn, double r, double theta, double phi, double omega)
{
    const double g = p.gamma();
    const double v = p.speed_nm_s();
    const double c = constants::c_nm_s;
    const double m = p.rest_energy_eV / (c * c);
    const Vec3 rh = direction(theta, phi);
    const double den = 1.0 - p.beta * rh.z;
    const double big_omega = omega * den;
    const double scale = r / v;
    const double pre = double(p.z_charge) * zn * constants::e2_eV_nm / (m * g) / c;

    // beta_dot in units of pre / r^2, time in units of r / v.
    auto integrand = [&](double u, int comp) {
        const double d3 = std::pow(1.0 + u * u, 1.5);
        const Vec3 bd{1.0 / d3, 0.0, u / (g * g) / d3};
        const Vec3 a = cross(rh, bd);
        const double rb = dot(rh, bd);
        const Vec3 rz = cross(rh, Vec3{0, 0, 1});
        const std::array<double, 3> out{(den * a.x + p.beta * rz.x * rb) / (den * den),
                                        (den * a.y + p.beta * rz.y * rb) / (den * den),
                                        (den * a.z + p.beta * rz.z * rb) / (den * den)};
        return out[comp];
    };
    double total = 0.0;
    for (int comp = 0; comp < 3; ++comp) {
        double re = 0.0, im = 0.0;
        for (int k = -400; k < 400; ++k) {
            const double lo = 5.0 * k, hi = lo + 5.0;
            re += numerics::integrate_adaptive(
                [&](double u) { return integrand(u, comp) * std::cos(big_omega * u * scale); }, lo, hi, 1e-12);
            im += numerics::integrate_adaptive(
                [&](double u) { return integrand(u, comp) * std::sin(big_omega * u * scale); }, lo, hi, 1e-12);
        }
        total += (re * re + im * im) * std::pow(scale * pre / (r * r), 2);
    }
    const double z2 = double(p.z_charge) * p.z_charge;
    return constants::alpha_fs * z2 / (4.0 * constants::pi * constants::pi * omega) * total;
}

} // namespace

TEST_CASE("first-order density equals the direct time integral")
{
    const Probe p = Probe::electron(0.6);
    for (auto [th, ph] : {std::pair{0.9, 0.4}, std::pair{2.2, 1.7}}) {
        const double direct = time_domain_density(p, 26, 0.001, th, ph, kOmega);
        CHECK(br_density(p, 26, 0.001, th, ph, kOmega) == doctest::Approx(direct).epsilon(2e-3));
    }
}

TEST_CASE("printed form differs by the Doppler factor")
{
    const Probe p = Probe::electron(0.9);
    for (double th = 0.1; th < 3.1; th += 0.4) {
        const double den = 1.0 - 0.9 * std::cos(th);
        const double first = br_density(p, 26, 0.001, th, 0.3, kOmega);
        const double printed = br_density(p, 26, 0.001, th, 0.3, kOmega, BremsForm::as_printed);
        CHECK(printed / (den * den) == doctest::Approx(first).epsilon(1e-13));
    }
}

TEST_CASE("charge and mass scaling")
{
    const double ratio = constants::electron_mass_eV / constants::proton_mass_eV;
    for (auto form : {BremsForm::first_order, BremsForm::as_printed}) {
        const double e = br_density(Probe::electron(0.9), 26, 0.001, 0.7, 0.2, kOmega, form);
        const double pr = br_density(Probe::proton(0.9), 26, 0.001, 0.7, 0.2, kOmega, form);
        CHECK(pr / e == doctest::Approx(ratio * ratio).epsilon(1e-12));
        const Probe alpha{2, constants::electron_mass_eV, 0.9};
        CHECK(br_density(alpha, 26, 0.001, 0.7, 0.2, kOmega, form) / e == doctest::Approx(16.0).epsilon(1e-13));
        CHECK(br_density(Probe::electron(0.9), 52, 0.001, 0.7, 0.2, kOmega, form) / e
              == doctest::Approx(4.0).epsilon(1e-13));
    }
}

TEST_CASE("kernel components")
{
    const Probe p = Probe::electron(0.8);
    const auto k = brems_kernel(p, {0.0, 0.002}, 1.0, kOmega);
    const double zeta = (1 - 0.8 * std::cos(1.0)) * kOmega * 0.002 / p.speed_nm_s();
    CHECK(k.zeta == doctest::Approx(zeta).epsilon(1e-15));
    CHECK(k.f_vec[0] == std::complex<double>(0.0, 0.0));
    CHECK(k.f_vec[1].real() == doctest::Approx(numerics::bessel_k1(zeta)).epsilon(1e-15));
    CHECK(k.f_vec[2].imag() == doctest::Approx(numerics::bessel_k0(zeta) / (p.gamma() * p.gamma())).epsilon(1e-15));
    CHECK_THROWS_AS(brems_kernel(p, {0.0, 0.0}, 1.0, kOmega), DomainError);
    CHECK_THROWS_AS(br_density(p, 26, -1.0, 1.0, 0.0, kOmega), DomainError);
    CHECK_THROWS_AS(br_density(p, 26, 0.001, 1.0, 0.0, 0.0), DomainError);
}

TEST_CASE("density is non-negative and rotates with the geometry")
{
    const Probe p = Probe::electron(0.95);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> th(0.0, M_PI), ph(0.0, 2 * M_PI);
    for (int i = 0; i < 200; ++i) {
        const double t = th(rng), f = ph(rng), rot = ph(rng);
        const double base = br_density(p, 26, 0.001, t, f, kOmega);
        CHECK(base >= 0.0);
        const Vec2 sep{0.001 * std::cos(rot), 0.001 * std::sin(rot)};
        CHECK(br_density(p, 26, sep, t, f + rot, kOmega) == doctest::Approx(base).epsilon(1e-11));
    }
}

TEST_CASE("solid-angle integral and window yield")
{
    const Probe p = Probe::electron(0.9);
    const double integral = br_angle_integrated(p, 26, 0.001, kOmega);
    // Independent fine product rule in theta (not cos theta) and phi.
    const auto rule = numerics::gauss_legendre(1024, 0.0, M_PI);
    double fine = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double ring = 0.0;
        for (int k = 0; k < 64; ++k)
            ring += br_density(p, 26, 0.001, rule.nodes[i], 2 * M_PI * k / 64, kOmega);
        fine += rule.weights[i] * std::sin(rule.nodes[i]) * ring * 2 * M_PI / 64;
    }
    CHECK(integral == doctest::Approx(fine).epsilon(2e-4));

    const double per_ev = br_spectral_density_per_eV(p, 26, 0.001, 14412.5);
    CHECK(per_ev == doctest::Approx(integral / constants::hbar_eV_s).epsilon(1e-15));
    const double w1 = br_window_yield(p, 26, 0.001, 14412.5, 1e-2);
    const double w2 = br_window_yield(p, 26, 0.001, 14412.5, 2e-2);
    CHECK(w2 / w1 == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(w1 / 1e-2 == doctest::Approx(per_ev).epsilon(1e-6));
    CHECK_THROWS_AS(br_window_yield(p, 26, 0.001, 14412.5, 0.0), DomainError);
    BremsQuadrature bad;
    bad.max_nodes = 32;
    CHECK_THROWS_AS(br_angle_integrated(p, 26, 0.001, kOmega, BremsForm::first_order, bad), DomainError);
}

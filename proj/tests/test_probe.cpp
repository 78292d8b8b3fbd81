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
#include "spgamma/probe.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <doctest.h>

#include <cmath>
#include <random>

using namespace spgamma;

TEST_CASE("Lorentz factor")
{
    CHECK(lorentz_gamma(0.0) == 1.0);
    CHECK(lorentz_gamma(0.9) == doctest::Approx(2.2941573387056).epsilon(1e-12));
    CHECK(lorentz_gamma(0.94) == doctest::Approx(2.931051).epsilon(1e-6));
    CHECK_THROWS_AS(lorentz_gamma(1.0), DomainError);
    CHECK_THROWS_AS(lorentz_gamma(-0.1), DomainError);
}

TEST_CASE("kinetic energy and beta round trip")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> log_e(std::log(1.0), std::log(1e12));
    for (int i = 0; i < 500; ++i) {
        const double e = std::exp(log_e(rng));
        const double beta = beta_from_kinetic_energy(e, constants::electron_mass_eV);
        CHECK(beta > 0.0);
        CHECK(beta < 1.0);
        if (beta < 0.999999)
            CHECK(kinetic_energy_from_beta(beta, constants::electron_mass_eV) == doctest::Approx(e).epsilon(1e-8));
    }
    // 1 MeV electron
    CHECK(beta_from_kinetic_energy(1e6, constants::electron_mass_eV) == doctest::Approx(0.941079).epsilon(1e-6));
}

TEST_CASE("probe validation")
{
    CHECK_NOTHROW(Probe::electron(0.5).validate());
    CHECK_THROWS_AS(Probe::electron(1.0).validate(), DomainError);
    CHECK_THROWS_AS(Probe::electron(0.0).validate(), DomainError);
    CHECK_THROWS_AS((Probe{0, 1.0, 0.5}.validate()), DomainError);
    CHECK_THROWS_AS((Probe{1, 0.0, 0.5}.validate()), DomainError);
    CHECK(Probe::proton(0.5).z_charge == 1);
}

TEST_CASE("evanescent field")
{
    const double omega = 2.19e19;
    const Probe p = Probe::electron(0.9);
    const double r1 = p.evanescent_length_nm(omega);
    CHECK(field_kernel(p, r1, omega) == doctest::Approx(0.60190723019723).epsilon(1e-12));

    // Linear in Z.
    Probe p2 = p;
    p2.z_charge = -2;
    CHECK(evanescent_field_magnitude(p2, 0.3 * r1, omega)
          == doctest::Approx(2.0 * evanescent_field_magnitude(p, 0.3 * r1, omega)).epsilon(1e-15));

    // Prefactor 2 e Z omega / (v c gamma), with e = sqrt(alpha hbar c).
    const double e = std::sqrt(constants::alpha_fs * constants::hbar_eV_s * constants::c_nm_s);
    CHECK(field_prefactor(p, omega)
          == doctest::Approx(2 * e * omega / (0.9 * constants::c_nm_s * constants::c_nm_s * lorentz_gamma(0.9)))
                 .epsilon(1e-14));

    // Pole of order one at the axis.
    const double a = evanescent_field_magnitude(p, 1e-6 * r1, omega) * 1e-6 * r1;
    const double b = evanescent_field_magnitude(p, 1e-8 * r1, omega) * 1e-8 * r1;
    CHECK(a == doctest::Approx(b).epsilon(1e-9));

    // Exponential tail: ratio at r, 2r tends to exp(-r/L)/sqrt(2).
    const double r = 40.0 * r1;
    const double ratio = field_kernel(p, 2 * r, omega) / field_kernel(p, r, omega);
    CHECK(ratio == doctest::Approx(std::exp(-40.0) / std::sqrt(2.0)).epsilon(0.01));

    CHECK_THROWS_AS(field_kernel(p, 0.0, omega), DomainError);
}

TEST_CASE("minimum impact parameter from the tilt angle")
{
    const double theta = 2.0 * M_PI / 180.0;
    const auto est = estimate_r_min(theta, 1e6, 26, 0.2856);
    CHECK(est.r_min_nm == doctest::Approx(1.37e-3).epsilon(0.01));
    CHECK_FALSE(est.clamped);
    // Row potential at R_min equals the transverse energy.
    const double potential = 2.0 * 26 * constants::e2_eV_nm / 0.2856 * std::log(0.2856 / (2.0 * est.r_min_nm));
    CHECK(potential == doctest::Approx(est.transverse_energy_eV).epsilon(1e-12));

    CHECK(estimate_r_min(1e-9, 1e6, 26, 0.2856).r_min_nm == doctest::Approx(0.1428).epsilon(1e-9));
    CHECK(estimate_r_min(theta, 1e6, 52, 0.2856).r_min_nm > est.r_min_nm);
    CHECK(estimate_r_min(1.1 * theta, 1e6, 26, 0.2856).r_min_nm < est.r_min_nm);
    CHECK(estimate_r_min(theta, 1.1e6, 26, 0.2856).r_min_nm < est.r_min_nm);

    const auto deep = estimate_r_min(0.19, 1e9, 26, 0.2856);
    CHECK(deep.clamped);
    CHECK(deep.r_min_nm == kMinRMinNm);
    CHECK_THROWS_AS(estimate_r_min(0.0, 1e6, 26, 0.2856), DomainError);
}

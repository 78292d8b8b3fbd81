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

#include "spgamma/single_nucleus.hpp"

#include "spgamma/constants.hpp"
#include "spgamma/errors.hpp"
#include "spgamma/numerics.hpp"

#include <cmath>

namespace spgamma {

double line_strength_factor(const NuclideRecord& rec)
{
    const double kr = radiative_rate(rec);
    return kr * kr / (rec.omega0() * rec.kappa());
}

double coherent_yield(const Probe& probe, const NuclideRecord& rec, double r_perp_nm)
{
    probe.validate();
    if (!(r_perp_nm > 0.0))
        throw DomainError("coherent_yield: r_perp must be positive");
    const double bg = probe.beta * probe.gamma();
    const double z2 = double(probe.z_charge) * probe.z_charge;
    const double k1 = numerics::bessel_k1(r_perp_nm / probe.evanescent_length_nm(rec.omega0()));
    return 3.0 * z2 * constants::alpha_fs / (bg * bg) * line_strength_factor(rec) * k1 * k1;
}

double EmissionSpectrum::density(double energy_eV) const
{
    const double half = 0.5 * fwhm_eV;
    const double d = energy_eV - center_eV;
    return half / (constants::pi * (d * d + half * half));
}

EmissionSpectrum spectral_profile(const NuclideRecord& rec)
{
    rec.validate();
    return EmissionSpectrum{rec.e0_keV * 1e3, rec.linewidth_eV()};
}

double DecayProfile::density(double t_s) const
{
    return t_s < 0.0 ? 0.0 : rate_s * std::exp(-rate_s * t_s);
}

double DecayProfile::survival(double t_s) const
{
    return t_s < 0.0 ? 1.0 : std::exp(-rate_s * t_s);
}

DecayProfile decay_profile(const NuclideRecord& rec)
{
    rec.validate();
    return DecayProfile{rec.kappa()};
}

double incoherent_angular(const Probe& probe, const NuclideRecord& rec, std::span<const Vec2> nuclei,
                          Vec2 r_p, double theta, double phi)
{
    const double f = coherent_fraction(rec.j_g, rec.j_e).convert_to<double>();
    const double s2 = std::sin(theta) * std::sin(theta);
    numerics::CompensatedSum sum;
    for (const Vec2& r : nuclei) {
        const Vec2 rel = r - r_p;
        const double dist = rel.norm();
        if (!(dist > 0.0))
            throw DomainError("incoherent_angular: nucleus coincides with the impact point");
        const double sp = std::sin(phi - rel.azimuth());
        sum.add((1.0 + s2 * sp * sp) * coherent_yield(probe, rec, dist));
    }
    return 3.0 / (16.0 * constants::pi) * (1.0 / f - 1.0) * sum.value();
}

} // namespace spgamma

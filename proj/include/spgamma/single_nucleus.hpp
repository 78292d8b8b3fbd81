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

#ifndef SPGAMMA_SINGLE_NUCLEUS_HPP
#define SPGAMMA_SINGLE_NUCLEUS_HPP

#include "spgamma/geometry.hpp"
#include "spgamma/nuclide.hpp"
#include "spgamma/probe.hpp"

#include <span>

namespace spgamma {

/// Dimensionless line-strength factor kappa_r^2 / (omega0 kappa).
double line_strength_factor(const NuclideRecord& rec);

/// Probability that a probe passing at distance r_perp from one nucleus
/// produces a coherently emitted photon, in the narrow-line limit:
///   3 Z^2 alpha / (beta gamma)^2 * kappa_r^2/(omega0 kappa) * K1^2(omega0 r / v gamma).
/// Throws DomainError for r_perp <= 0; clamping to R_min is the caller's job.
double coherent_yield(const Probe& probe, const NuclideRecord& rec, double r_perp_nm);

// Normalized Lorentzian line of FWHM hbar*kappa centred on hbar*omega0.
struct EmissionSpectrum {
    double center_eV = 0.0;
    double fwhm_eV = 0.0;

    double density(double energy_eV) const; // per eV
};

EmissionSpectrum spectral_profile(const NuclideRecord& rec);

// Photons follow the decay of the whole excited population, so the time
// profile uses the total rate kappa, not kappa_r (which only weighs the line).
struct DecayProfile {
    double rate_s = 0.0;

    double density(double t_s) const;  // kappa exp(-kappa t), zero for t < 0
    double survival(double t_s) const; // exp(-kappa t)
};

DecayProfile decay_profile(const NuclideRecord& rec);

/// Angular density of incoherently emitted photons (per steradian):
///   (3/16pi)(1/f - 1) sum_j [1 + sin^2 theta sin^2(phi - phi_jp)] Gamma_j,
/// with phi_jp the azimuth of R_j - R_p.
double incoherent_angular(const Probe& probe, const NuclideRecord& rec, std::span<const Vec2> nuclei,
                          Vec2 r_p, double theta, double phi);

} // namespace spgamma

#endif

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

#ifndef SPGAMMA_BREMS_HPP
#define SPGAMMA_BREMS_HPP

#include "spgamma/geometry.hpp"
#include "spgamma/probe.hpp"

namespace spgamma {

// first_order keeps the 1/(1 - beta cos theta)^2 Doppler factor obtained by
// expanding the radiation integral to first order in the deflection;
// as_printed drops it, reproducing the commonly quoted closed form.
enum class BremsForm { first_order, as_printed };

struct BremsKernel {
    double zeta = 0.0; // (1 - beta cos theta) omega R / v
    CVec3 f_vec{};     // K1(zeta) R_hat + (i/gamma^2) K0(zeta) z_hat
    double beta = 0.0;
};

/// separation is the transverse vector from the nucleus to the trajectory.
BremsKernel brems_kernel(const Probe& probe, Vec2 separation_nm, double theta, double omega);

/// Emission probability per steradian per unit angular frequency (s) for a
/// probe deflected by a bare nucleus of charge z_nucleus.
double br_density(const Probe& probe, int z_nucleus, Vec2 separation_nm, double theta, double phi, double omega,
                  BremsForm form = BremsForm::first_order);

/// Same, with the nucleus displaced along x.
double br_density(const Probe& probe, int z_nucleus, double r_perp_nm, double theta, double phi, double omega,
                  BremsForm form = BremsForm::first_order);

struct BremsQuadrature {
    int initial_nodes = 64; // Gauss-Legendre nodes in cos theta; same count of trapezoid nodes in phi
    int max_nodes = 2048;
    double rel_tol = 1e-4;
};

/// Solid-angle integral of br_density (per unit angular frequency, s).
double br_angle_integrated(const Probe& probe, int z_nucleus, double r_perp_nm, double omega,
                           BremsForm form = BremsForm::first_order, const BremsQuadrature& quad = {});

/// Emission probability per eV of photon energy.
double br_spectral_density_per_eV(const Probe& probe, int z_nucleus, double r_perp_nm, double energy_eV,
                                  BremsForm form = BremsForm::first_order, const BremsQuadrature& quad = {});

/// Probability of emitting within [center - window/2, center + window/2],
/// three-point Simpson in photon energy.
double br_window_yield(const Probe& probe, int z_nucleus, double r_perp_nm, double center_eV, double window_eV,
                       BremsForm form = BremsForm::first_order, const BremsQuadrature& quad = {});

} // namespace spgamma

#endif

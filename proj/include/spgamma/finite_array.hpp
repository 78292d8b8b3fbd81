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

#ifndef SPGAMMA_FINITE_ARRAY_HPP
#define SPGAMMA_FINITE_ARRAY_HPP

#include "spgamma/geometry.hpp"
#include "spgamma/nuclide.hpp"
#include "spgamma/probe.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace spgamma {

// Positions (nm) of identical resonant nuclei. Non-empty, finite, pairwise
// distinct; checked on construction.
class NucleusSet {
public:
    explicit NucleusSet(std::vector<Vec3> positions);

    const std::vector<Vec3>& positions() const noexcept { return positions_; }
    std::size_t size() const noexcept { return positions_.size(); }

private:
    std::vector<Vec3> positions_;
};

/// Dimensionless far-field amplitude
///   g = sum_j K1(omega0 |R_j - R_p| / v gamma) e^{i omega0 z_j / v} e^{-i k0 . r_j} phi_jp
/// in Cartesian components; phi_jp = z x (R_j - R_p) / |R_j - R_p|.
CVec3 far_field_amplitude(const Probe& probe, const NucleusSet& set, const NuclideRecord& rec, Vec2 r_p,
                          double theta, double phi);

/// |r x g|^2 for the unit vector r along (theta, phi).
double transverse_intensity(const CVec3& g, double theta, double phi);

/// 9 Z^2 alpha / (8 pi (beta gamma)^2) * kappa_r^2 / (omega0 kappa).
double angular_prefactor(const Probe& probe, const NuclideRecord& rec);

/// Coherent emission probability per steradian, prefactor * |r x g|^2.
double angular_density(const Probe& probe, const NucleusSet& set, const NuclideRecord& rec, Vec2 r_p,
                       double theta, double phi);

// Sampled angular density. values is row-major, thetas.size() x phis.size().
struct AngularGrid {
    std::vector<double> thetas;
    std::vector<double> phis;
    std::vector<double> values;

    double at(std::size_t i_theta, std::size_t i_phi) const { return values[i_theta * phis.size() + i_phi]; }
};

/// count points uniform in cos(theta), from +1 down to -1 (theta increasing).
std::vector<double> uniform_cos_grid(int count);

/// N nuclei on the z axis with period d, probe passing at distance
/// standoff_nm; density sampled in the plane containing array and beam
/// (phi = 0) at the given cos(theta) values (strictly decreasing).
AngularGrid linear_array_pattern(const Probe& probe, const NuclideRecord& rec, int n_nuclei, double d_nm,
                                 double standoff_nm, std::span<const double> cos_thetas);

/// Interior local maxima whose value is at least rel_threshold * max(values).
std::vector<std::size_t> principal_peaks(std::span<const double> values, double rel_threshold);

struct PlaneAverageOptions {
    int patch_sites = 41;   // W, the patch is W x W sites (W odd)
    int samples = 20000;
    std::uint64_t seed = 1;
    double exclusion_radius_nm = 1e-3; // impact points this close to a nucleus contribute zero
};

/// Monte-Carlo mean over impact points in one unit cell of |r x g|^2 for a
/// single square atomic plane of period a_nm, using the direct sum above.
/// Radii around the cell's nucleus are sampled log-uniformly to tame the
/// 1/R^2 close-encounter peak; cell corners are sampled uniformly.
double plane_average_monte_carlo(const Probe& probe, const NuclideRecord& rec, double a_nm, double theta,
                                 double phi, const PlaneAverageOptions& options);

} // namespace spgamma

#endif

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

#ifndef SPGAMMA_CRYSTAL_SP_HPP
#define SPGAMMA_CRYSTAL_SP_HPP

#include "spgamma/geometry.hpp"
#include "spgamma/nuclide.hpp"
#include "spgamma/numerics.hpp"
#include "spgamma/probe.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spgamma {

// Square atomic planes of period a stacked with offset (b_par, b_z) per layer.
struct LatticePreset {
    std::string name;
    double a_nm = 0.0;
    Vec2 b_par_nm;
    double b_z_nm = 0.0;
};

class LatticeFilm {
public:
    explicit LatticeFilm(LatticePreset preset, int n_layers = 1);

    const LatticePreset& preset() const noexcept { return preset_; }
    double a_nm() const noexcept { return preset_.a_nm; }
    Vec2 b_par_nm() const noexcept { return preset_.b_par_nm; }
    double b_z_nm() const noexcept { return preset_.b_z_nm; }
    int n_layers() const noexcept { return n_layers_; }
    double cell_area() const noexcept { return preset_.a_nm * preset_.a_nm; }

    /// Smallest p such that p * b_par / a is a lattice vector.
    int stacking_period() const noexcept { return period_; }
    /// Out-of-plane structural period d = p * b_z.
    double z_period_nm() const noexcept { return period_ * preset_.b_z_nm; }

    /// Whether G = (2pi/a)(i, j) contributes to order n. The interlayer phase
    /// G.b_par is folded into the order index: n + p G.b_par/2pi = 0 mod p.
    bool allows(int i, int j, int n) const noexcept;

private:
    LatticePreset preset_;
    int n_layers_;
    int period_ = 1;
    int shift_i_ = 0; // p * b_par.x / a
    int shift_j_ = 0;
};

class LatticeRegistry {
public:
    /// sc100, bcc100 (Fe) and fcc100 (DyN).
    static LatticeRegistry builtin();

    /// Records with keys preset, a_nm, b_par_x, b_par_y, b_z_nm (lengths in nm).
    void load_text(std::string_view text);
    void load_file(const std::string& path);

    void add(LatticePreset preset);
    const LatticePreset* find(std::string_view name) const;
    const LatticePreset& get(std::string_view name) const; // NotFoundError
    std::vector<std::string> names() const;

private:
    std::vector<LatticePreset> presets_;
};

enum class CutoffShape { hard, smooth };

// Reciprocal-space regularization of close encounters, G_max = 1/R_min.
// The smooth variant weighs each G by exp(-|G|/G_max) and enumerates to 10 G_max.
struct CutoffPolicy {
    double r_min_nm = 1e-3;
    CutoffShape shape = CutoffShape::hard;

    double g_max() const { return 1.0 / r_min_nm; }
    double enumeration_radius() const { return shape == CutoffShape::hard ? g_max() : 10.0 * g_max(); }
    double weight(double g) const;
    void validate() const;
};

struct SpOrder {
    int n = 0;
    double cos_theta = 0.0;
};

/// Cones cos(theta_n) = c/v - n lambda/d for all n >= 1 with |cos(theta_n)| <= 1.
std::vector<SpOrder> sp_angles(double beta, double d_nm, double lambda_nm);

struct ReciprocalVector {
    int i = 0;
    int j = 0;
    Vec2 g;            // nm^-1
    double weight = 1; // cutoff weight
};

// Read-only result of the enumerator; sorted by shell |G|^2, then i, then j.
class ReciprocalSet {
public:
    const std::vector<ReciprocalVector>& vectors() const noexcept { return vectors_; }
    std::size_t size() const noexcept { return vectors_.size(); }
    bool empty() const noexcept { return vectors_.empty(); }
    /// Set when the cutoff lies inside the first nonzero shell.
    bool below_first_shell() const noexcept { return below_first_shell_; }

private:
    ReciprocalSet() = default;
    friend ReciprocalSet enumerate_reciprocal(const LatticeFilm&, const CutoffPolicy&, std::optional<int>);

    std::vector<ReciprocalVector> vectors_;
    bool below_first_shell_ = false;
};

/// Vectors contributing to order n (parity-restricted by the film stacking).
ReciprocalSet reciprocal_vectors(const LatticeFilm& film, int n, const CutoffPolicy& policy);

/// All vectors of one atomic plane within the cutoff.
ReciprocalSet plane_reciprocal_vectors(const LatticeFilm& film, const CutoffPolicy& policy);

/// Q^2/(Q^2+Delta^2)^2 |r x phi_Q|^2 with phi_Q = z x Q/|Q|; zero at Q = 0.
double sp_kernel_cross(Vec2 q, double delta, const Vec3& rhat);

/// Same quantity written as (Q^2 cos^2 theta + (Q.r)^2)/(Q^2+Delta^2)^2.
double sp_kernel_dot(Vec2 q, double delta, const Vec3& rhat);

/// 9 pi^2 Z^2 alpha kappa_r^2 / (b_z c (omega0 a/c)^4 kappa), in units where
/// the azimuthal profile below is a probability per radian per layer.
double sp_prefactor(const Probe& probe, const NuclideRecord& rec, const LatticeFilm& film);

/// Gamma_n(phi)/N. Throws DomainError if order n has no cone.
double azimuthal_profile(const Probe& probe, const NuclideRecord& rec, const LatticeFilm& film, int n,
                         double phi, const CutoffPolicy& policy);

struct EmissionCone {
    int n = 0;
    double cos_theta = 0.0;
    std::vector<double> phi_profile; // Gamma_n(phi)/N at phi_k = 2pi k / size
    double weight = 0.0;             // integral over phi
};

struct LayerYieldOptions {
    int order_cap = 0;           // highest order kept, 0 keeps all
    int profile_points = 64;     // samples stored in EmissionCone::phi_profile
    numerics::PeriodicOptions phi_quadrature{};
};

struct LayerYield {
    std::vector<EmissionCone> cones; // weights are per layer, not divided by Z^2
    double per_layer_per_z2 = 0.0;   // sum of cone weights / Z^2
};

EmissionCone emission_cone(const Probe& probe, const NuclideRecord& rec, const LatticeFilm& film, int n,
                           const CutoffPolicy& policy, const LayerYieldOptions& options = {});

LayerYield layer_yield(const Probe& probe, const NuclideRecord& rec, const LatticeFilm& film,
                       const CutoffPolicy& policy, const LayerYieldOptions& options = {});

/// Impact-parameter average of |r x g|^2 for one atomic plane:
///   (2pi v gamma / (A omega0))^2 sum_G kernel(k_par + G), no parity filter.
double single_plane_averaged_intensity(const Probe& probe, const NuclideRecord& rec, const LatticeFilm& film,
                                       double theta, double phi, const CutoffPolicy& policy);

/// Real-space exclusion radius whose close-encounter logarithm matches a hard
/// reciprocal cutoff: 2 exp(-gamma_E) / G_max.
double equivalent_exclusion_radius(const CutoffPolicy& policy);

} // namespace spgamma

#endif

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

#ifndef SPGAMMA_NUCLIDE_HPP
#define SPGAMMA_NUCLIDE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spgamma {

using Rational = boost::multiprecision::cpp_rational;

// Angular-momentum quantum number stored as twice its value, so 3/2 is
// HalfInt{3}. Integers are even, half-integers odd.
struct HalfInt {
    int twice = 0;

    static constexpr HalfInt from_twice(int t) { return HalfInt{t}; }
    static constexpr HalfInt from_int(int n) { return HalfInt{2 * n}; }

    constexpr double value() const { return 0.5 * twice; }
    constexpr bool is_half_odd() const { return (twice % 2) != 0; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return {a.twice + b.twice}; }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return {a.twice - b.twice}; }
    friend constexpr HalfInt operator-(HalfInt a) { return {-a.twice}; }
    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
};

// Exact number of the form sign * sqrt(q) with q a non-negative rational.
// Products stay exact; sums are exact when the radicands are commensurate
// (ratio a perfect rational square), which Wigner-Eckart guarantees for the
// sums that occur here. Incommensurate sums throw.
class SqrtRational {
public:
    SqrtRational() = default;
    SqrtRational(int sign, Rational square);
    static SqrtRational from_rational(const Rational& r);

    int sign() const noexcept { return sign_; }
    const Rational& square() const noexcept { return square_; }
    bool is_zero() const noexcept { return sign_ == 0; }
    double to_double() const;

    friend SqrtRational operator*(const SqrtRational& a, const SqrtRational& b);
    friend SqrtRational operator+(const SqrtRational& a, const SqrtRational& b);
    friend bool operator==(const SqrtRational& a, const SqrtRational& b)
    {
        return a.sign_ == b.sign_ && a.square_ == b.square_;
    }

private:
    int sign_ = 0;
    Rational square_ = 0;
};

struct NuclideRecord {
    std::string name;
    double e0_keV = 0.0;
    double lifetime_s = 0.0;   // 1/kappa, total (1/e) lifetime
    double alpha_ic = 0.0;     // internal conversion ratio
    HalfInt j_g;
    HalfInt j_e;
    double branch_divisor = 1.0;

    void validate() const;
    double omega0() const;       // rad/s
    double kappa() const;        // total decay rate, 1/s
    double wavelength_nm() const;
    double linewidth_eV() const; // hbar kappa
};

// Relative strengths keyed by (2 mu_e, 2 mu_g).
struct TransitionDiagram {
    HalfInt j_g;
    HalfInt j_e;
    std::map<std::pair<int, int>, Rational> strengths;

    Rational strength(HalfInt mu_e, HalfInt mu_g) const;
    Rational downward_sum(HalfInt mu_e) const;
    Rational upward_sum(HalfInt mu_g) const;
};

/// Signed coefficient C_{l j mu s} of |l j mu> = sum_s C Y_{l,mu-s}|s>.
/// l must equal j +- 1/2; returns zero when |mu - s| > l.
SqrtRational clebsch_gordan_half(int l, HalfInt j, HalfInt mu, HalfInt s);

/// Integer-spin Clebsch-Gordan <l1 m1 l2 m2 | L M> (Racah formula).
SqrtRational clebsch_gordan(int l1, int m1, int l2, int m2, int big_l, int big_m);

/// Gaunt integral  int dOmega Y*_{l3 m3} Y_{l1 m1} Y_{l2 m2}, in units of 1/sqrt(4 pi).
SqrtRational gaunt(int l3, int m3, int l1, int m1, int l2, int m2);

// Orbital realization of a spin-1/2-coupled level: l = j + 1/2 or j - 1/2.
// Matrix elements do not depend on the choice (up to a global sign); both
// are available so tests can check that.
enum class Realization { upper, lower };

/// <e_mu_e | Y_{1m} | g_mu_g> with m = mu_e - mu_g, in units of 1/sqrt(4 pi).
SqrtRational y1m_matrix_element_exact(HalfInt j_e, HalfInt mu_e, HalfInt j_g, HalfInt mu_g,
                                      Realization realization = Realization::upper);

/// Same, as a double including the 1/sqrt(4 pi).
double y1m_matrix_element(HalfInt j_e, HalfInt mu_e, HalfInt j_g, HalfInt mu_g,
                          Realization realization = Realization::upper);

/// Squared M1 matrix elements, normalized so every excited sublevel decays
/// with total strength 1.
TransitionDiagram transition_diagram(HalfInt j_g, HalfInt j_e);

/// Mean of the nonzero downward strengths: the probability that excitation
/// followed by radiative decay returns the nucleus to its initial sublevel.
Rational coherent_fraction(HalfInt j_g, HalfInt j_e);

/// Coherent radiative rate kappa_r = kappa f / (1 + alpha_IC) / branch_divisor.
double radiative_rate(const NuclideRecord& rec);

/// Isotropic magnetic polarizability (nm^3),
///   alpha_M = (3 / 4k^3) kappa_r / (omega0 - omega - i kappa/2),  k = omega0/c.
std::complex<double> polarizability(const NuclideRecord& rec, double omega);

class NuclideRegistry {
public:
    /// Fe-57 and Dy-161.
    static NuclideRegistry builtin();

    /// Parse records (name, e0_keV, lifetime_s, alpha_ic, jg2, je2,
    /// branch_divisor) and add them. Existing names are replaced.
    void load_text(std::string_view text);
    void load_file(const std::string& path);

    void add(NuclideRecord rec);
    const NuclideRecord* find(std::string_view name) const;
    const NuclideRecord& get(std::string_view name) const; // NotFoundError
    std::vector<std::string> names() const;
    std::size_t size() const noexcept { return records_.size(); }

private:
    std::vector<NuclideRecord> records_;
};

} // namespace spgamma

#endif

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

#include "spgamma/nuclide.hpp"

#include "spgamma/constants.hpp"
#include "spgamma/errors.hpp"
#include "spgamma/kvfile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <set>

namespace spgamma {

namespace mp = boost::multiprecision;

namespace {

using Int = mp::cpp_int;

Int factorial(int n)
{
    Int r = 1;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

bool perfect_square(const Int& n, Int& root)
{
    if (n < 0)
        return false;
    root = mp::sqrt(n);
    return root * root == n;
}

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

void check_level(HalfInt j, const char* what)
{
    if (j.twice <= 0 || !j.is_half_odd())
        throw DomainError(std::string(what) + " must be a positive half-integer");
}

void check_spin_pair(HalfInt j_g, HalfInt j_e)
{
    check_level(j_g, "j_g");
    check_level(j_e, "j_e");
    if (std::abs(j_e.twice - j_g.twice) != 2)
        throw DomainError("only M1 transitions with |j_e - j_g| = 1 are supported");
}

int orbital_l(HalfInt j, Realization r)
{
    return r == Realization::upper ? (j.twice + 1) / 2 : (j.twice - 1) / 2;
}

} // namespace

// ----------------------------------------------------------------------------
// SqrtRational

SqrtRational::SqrtRational(int sign, Rational square)
{
    if (square < 0)
        throw DomainError("SqrtRational: negative radicand");
    if (sign == 0 || square == 0) {
        sign_ = 0;
        square_ = 0;
    } else {
        sign_ = sign > 0 ? 1 : -1;
        square_ = std::move(square);
    }
}

SqrtRational SqrtRational::from_rational(const Rational& r)
{
    return SqrtRational(sign_of(r), r * r);
}

double SqrtRational::to_double() const
{
    return sign_ * std::sqrt(square_.convert_to<double>());
}

SqrtRational operator*(const SqrtRational& a, const SqrtRational& b)
{
    return SqrtRational(a.sign_ * b.sign_, a.square_ * b.square_);
}

SqrtRational operator+(const SqrtRational& a, const SqrtRational& b)
{
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    const Rational ratio = b.square_ / a.square_;
    Int num_root, den_root;
    if (!perfect_square(mp::numerator(ratio), num_root) || !perfect_square(mp::denominator(ratio), den_root))
        throw DomainError("SqrtRational: sum of incommensurate square roots");
    // a + b = (sa + sb * sqrt(ratio)) * sqrt(a.square)
    const Rational coef = Rational(a.sign_) + Rational(b.sign_) * Rational(num_root, den_root);
    return SqrtRational(sign_of(coef), coef * coef * a.square_);
}

// ----------------------------------------------------------------------------
// Angular momentum algebra

SqrtRational clebsch_gordan_half(int l, HalfInt j, HalfInt mu, HalfInt s)
{
    if (!j.is_half_odd() || j.twice <= 0)
        throw DomainError("clebsch_gordan_half: j must be a positive half-integer");
    if (std::abs(mu.twice) > j.twice || !mu.is_half_odd())
        throw DomainError("clebsch_gordan_half: require |mu| <= j");
    if (std::abs(s.twice) != 1)
        throw DomainError("clebsch_gordan_half: s must be +-1/2");
    const bool upper = 2 * l == j.twice + 1;
    const bool lower = 2 * l == j.twice - 1;
    if (!upper && !lower)
        throw DomainError("clebsch_gordan_half: l must equal j +- 1/2");

    const int m = (mu.twice - s.twice) / 2;
    if (std::abs(m) > l)
        return {};

    const int j2 = j.twice;
    const int mu2 = mu.twice;
    if (upper) {
        if (s.twice < 0)
            return SqrtRational(1, Rational(j2 + mu2 + 2, 2 * (j2 + 2)));
        return SqrtRational(-1, Rational(j2 - mu2 + 2, 2 * (j2 + 2)));
    }
    if (s.twice < 0)
        return SqrtRational(1, Rational(j2 - mu2, 2 * j2));
    return SqrtRational(1, Rational(j2 + mu2, 2 * j2));
}

SqrtRational clebsch_gordan(int j1, int m1, int j2, int m2, int big_j, int big_m)
{
    if (j1 < 0 || j2 < 0 || big_j < 0)
        throw DomainError("clebsch_gordan: negative angular momentum");
    if (m1 + m2 != big_m)
        return {};
    if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(big_m) > big_j)
        return {};
    if (big_j < std::abs(j1 - j2) || big_j > j1 + j2)
        return {};

    Rational pref = Rational(Int(2 * big_j + 1) * factorial(big_j + j1 - j2) * factorial(big_j - j1 + j2)
                                 * factorial(j1 + j2 - big_j),
                             factorial(j1 + j2 + big_j + 1));
    pref *= factorial(big_j + big_m) * factorial(big_j - big_m) * factorial(j1 - m1) * factorial(j1 + m1)
        * factorial(j2 - m2) * factorial(j2 + m2);

    Rational sum = 0;
    for (int k = 0; k <= j1 + j2 + big_j + 1; ++k) {
        const int args[] = {k, j1 + j2 - big_j - k, j1 - m1 - k, j2 + m2 - k, big_j - j2 + m1 + k,
                            big_j - j1 - m2 + k};
        if (std::any_of(std::begin(args), std::end(args), [](int a) { return a < 0; }))
            continue;
        Int den = 1;
        for (int a : args)
            den *= factorial(a);
        sum += Rational((k % 2 == 0) ? 1 : -1, den);
    }
    return SqrtRational(sign_of(sum), pref * sum * sum);
}

SqrtRational gaunt(int l3, int m3, int l1, int m1, int l2, int m2)
{
    if (m3 != m1 + m2)
        return {};
    const SqrtRational norm(1, Rational((2 * l1 + 1) * (2 * l2 + 1), 2 * l3 + 1));
    return norm * clebsch_gordan(l1, 0, l2, 0, l3, 0) * clebsch_gordan(l1, m1, l2, m2, l3, m3);
}

SqrtRational y1m_matrix_element_exact(HalfInt j_e, HalfInt mu_e, HalfInt j_g, HalfInt mu_g,
                                      Realization realization)
{
    check_level(j_e, "j_e");
    check_level(j_g, "j_g");
    if (std::abs(mu_e.twice) > j_e.twice || std::abs(mu_g.twice) > j_g.twice || !mu_e.is_half_odd()
        || !mu_g.is_half_odd())
        throw DomainError("y1m_matrix_element: sublevel out of range");

    const int m = (mu_e.twice - mu_g.twice) / 2;
    if (std::abs(m) > 1)
        return {};

    const int l_e = orbital_l(j_e, realization);
    const int l_g = orbital_l(j_g, realization);
    SqrtRational total;
    for (int s2 : {-1, 1}) {
        const HalfInt s{s2};
        const SqrtRational ce = clebsch_gordan_half(l_e, j_e, mu_e, s);
        const SqrtRational cg = clebsch_gordan_half(l_g, j_g, mu_g, s);
        if (ce.is_zero() || cg.is_zero())
            continue;
        const int me = (mu_e.twice - s2) / 2;
        const int mg = (mu_g.twice - s2) / 2;
        total = total + ce * cg * gaunt(l_e, me, 1, m, l_g, mg);
    }
    return total;
}

double y1m_matrix_element(HalfInt j_e, HalfInt mu_e, HalfInt j_g, HalfInt mu_g, Realization realization)
{
    return y1m_matrix_element_exact(j_e, mu_e, j_g, mu_g, realization).to_double()
        / std::sqrt(4.0 * constants::pi);
}

// ----------------------------------------------------------------------------
// Transition diagrams

Rational TransitionDiagram::strength(HalfInt mu_e, HalfInt mu_g) const
{
    const auto it = strengths.find({mu_e.twice, mu_g.twice});
    return it == strengths.end() ? Rational(0) : it->second;
}

Rational TransitionDiagram::downward_sum(HalfInt mu_e) const
{
    Rational s = 0;
    for (const auto& [key, value] : strengths)
        if (key.first == mu_e.twice)
            s += value;
    return s;
}

Rational TransitionDiagram::upward_sum(HalfInt mu_g) const
{
    Rational s = 0;
    for (const auto& [key, value] : strengths)
        if (key.second == mu_g.twice)
            s += value;
    return s;
}

TransitionDiagram transition_diagram(HalfInt j_g, HalfInt j_e)
{
    check_spin_pair(j_g, j_e);
    TransitionDiagram d{j_g, j_e, {}};
    for (int mue = -j_e.twice; mue <= j_e.twice; mue += 2)
        for (int mug = -j_g.twice; mug <= j_g.twice; mug += 2) {
            const auto element = y1m_matrix_element_exact(j_e, HalfInt{mue}, j_g, HalfInt{mug});
            if (!element.is_zero())
                d.strengths[{mue, mug}] = element.square();
        }

    // Wigner-Eckart: every excited sublevel has the same total decay strength.
    const Rational norm = d.downward_sum(-j_e);
    for (int mue = -j_e.twice; mue <= j_e.twice; mue += 2)
        if (d.downward_sum(HalfInt{mue}) != norm)
            throw Error("transition_diagram: unequal downward sums (internal error)");
    for (auto& entry : d.strengths)
        entry.second /= norm;
    return d;
}

Rational coherent_fraction(HalfInt j_g, HalfInt j_e)
{
    // Memoized: the exact algebra is slow and callers sit in inner loops.
    static std::mutex mutex;
    static std::map<std::pair<int, int>, Rational> cache;
    {
        std::lock_guard lock(mutex);
        if (const auto it = cache.find({j_g.twice, j_e.twice}); it != cache.end())
            return it->second;
    }
    const TransitionDiagram d = transition_diagram(j_g, j_e);
    Rational total = 0;
    for (const auto& entry : d.strengths)
        total += entry.second;
    total /= Rational(static_cast<long long>(d.strengths.size()));
    std::lock_guard lock(mutex);
    cache.emplace(std::pair{j_g.twice, j_e.twice}, total);
    return total;
}

// ----------------------------------------------------------------------------
// Nuclear records

void NuclideRecord::validate() const
{
    if (!(e0_keV > 0.0))
        throw DomainError(name + ": e0_keV must be positive");
    if (!(lifetime_s > 0.0))
        throw DomainError(name + ": lifetime_s must be positive");
    if (!(alpha_ic >= 0.0))
        throw DomainError(name + ": alpha_ic must be non-negative");
    if (!(branch_divisor >= 1.0))
        throw DomainError(name + ": branch_divisor must be >= 1");
    check_spin_pair(j_g, j_e);
}

double NuclideRecord::omega0() const { return constants::omega_from_eV(e0_keV * 1e3); }

double NuclideRecord::kappa() const { return 1.0 / lifetime_s; }

double NuclideRecord::wavelength_nm() const { return 2.0 * constants::pi * constants::c_nm_s / omega0(); }

double NuclideRecord::linewidth_eV() const { return constants::hbar_eV_s * kappa(); }

double radiative_rate(const NuclideRecord& rec)
{
    const double f = coherent_fraction(rec.j_g, rec.j_e).convert_to<double>();
    return rec.kappa() * f / (1.0 + rec.alpha_ic) / rec.branch_divisor;
}

std::complex<double> polarizability(const NuclideRecord& rec, double omega)
{
    if (!(omega > 0.0))
        throw DomainError("polarizability: omega must be positive");
    const double w0 = rec.omega0();
    const double k = w0 / constants::c_nm_s;
    const double kr = radiative_rate(rec);
    const std::complex<double> denom(w0 - omega, -0.5 * rec.kappa());
    return 3.0 / (4.0 * k * k * k) * kr / denom;
}

// ----------------------------------------------------------------------------
// Registry

namespace {

constexpr std::string_view kBuiltinNuclides = R"(
name = Fe-57
e0_keV = 14.4129
lifetime_s = 1.42e-7
alpha_ic = 8.544
jg2 = 1
je2 = 3
branch_divisor = 1

# branch_divisor: decay through an intermediate state that does not feed the
# coherent channel
name = Dy-161
e0_keV = 43.8201
lifetime_s = 1.20e-9
alpha_ic = 4.213
jg2 = 5
je2 = 7
branch_divisor = 2.25
)";

const std::set<std::string, std::less<>> kNuclideKeys = {"name",   "e0_keV", "lifetime_s",    "alpha_ic",
                                                         "jg2",    "je2",    "branch_divisor"};

} // namespace

NuclideRegistry NuclideRegistry::builtin()
{
    NuclideRegistry r;
    r.load_text(kBuiltinNuclides);
    return r;
}

void NuclideRegistry::load_text(std::string_view text)
{
    for (const KvRecord& rec : parse_kv_records(text)) {
        for (const KvEntry& e : rec.entries())
            if (!kNuclideKeys.count(e.key))
                throw ParseError("unknown key '" + e.key + "' in nuclide record", e.line);
        NuclideRecord n;
        n.name = rec.get_string("name");
        n.e0_keV = rec.get_double("e0_keV");
        n.lifetime_s = rec.get_double("lifetime_s");
        n.alpha_ic = rec.get_double("alpha_ic");
        n.j_g = HalfInt{rec.get_int("jg2")};
        n.j_e = HalfInt{rec.get_int("je2")};
        n.branch_divisor = rec.get_double("branch_divisor", 1.0);
        try {
            n.validate();
        } catch (const DomainError& e) {
            throw ParseError(e.what(), rec.first_line());
        }
        add(std::move(n));
    }
}

void NuclideRegistry::load_file(const std::string& path)
{
    try {
        load_text(read_text_file(path));
    } catch (const ParseError& e) {
        throw ParseError(e.detail(), e.line(), path);
    }
}

void NuclideRegistry::add(NuclideRecord rec)
{
    rec.validate();
    for (auto& existing : records_)
        if (existing.name == rec.name) {
            existing = std::move(rec);
            return;
        }
    records_.push_back(std::move(rec));
}

const NuclideRecord* NuclideRegistry::find(std::string_view name) const
{
    for (const auto& r : records_)
        if (r.name == name)
            return &r;
    return nullptr;
}

const NuclideRecord& NuclideRegistry::get(std::string_view name) const
{
    if (const auto* r = find(name))
        return *r;
    std::string known;
    for (const auto& r : records_)
        known += (known.empty() ? "" : ", ") + r.name;
    throw NotFoundError("unknown nuclide '" + std::string(name) + "' (available: " + known + ")");
}

std::vector<std::string> NuclideRegistry::names() const
{
    std::vector<std::string> out;
    for (const auto& r : records_)
        out.push_back(r.name);
    return out;
}

} // namespace spgamma

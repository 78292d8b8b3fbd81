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

#ifndef SPGAMMA_GEOMETRY_HPP
#define SPGAMMA_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <complex>

namespace spgamma {

// Beam axis is +z throughout; Vec2 lives in the transverse (x, y) plane.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
    double azimuth() const { return std::atan2(y, x); }

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// Azimuthal unit vector z x q / |q|, i.e. (-q_y, q_x) / |q|.
inline Vec2 azimuthal_unit(Vec2 q)
{
    const double n = q.norm();
    return {-q.y / n, q.x / n};
}

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec2 transverse() const { return {x, y}; }
    friend bool operator==(Vec3, Vec3) = default;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Unit vector along (theta, phi), theta measured from +z.
inline Vec3 direction(double theta, double phi)
{
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

using CVec3 = std::array<std::complex<double>, 3>;

inline CVec3 cross(const Vec3& a, const CVec3& b)
{
    return {a.y * b[2] - a.z * b[1], a.z * b[0] - a.x * b[2], a.x * b[1] - a.y * b[0]};
}

inline double norm2(const CVec3& v)
{
    return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
}

} // namespace spgamma

#endif

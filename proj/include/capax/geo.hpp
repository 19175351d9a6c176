#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace capax {

// All geometry runs in ambient dimension n in {2,3}. Points and directions
// are stored as Vec3 with z = 0 in the planar case; the owning objects carry n.
struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline double norm2(Vec3 a) { return dot(a, a); }

inline Vec3 normalized(Vec3 a) {
    double r = norm(a);
    if (r == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    return (1.0 / r) * a;
}

// Surface area of the unit sphere S^{n-1}: 2*pi for n=2, 4*pi for n=3.
inline double sphere_surface_area(int n) {
    constexpr double pi = 3.14159265358979323846;
    if (n == 2) return 2.0 * pi;
    if (n == 3) return 4.0 * pi;
    throw std::invalid_argument("dimension must be 2 or 3");
}

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when inputs fail structural validation (bad files, bad parameters).
struct input_error : error {
    using error::error;
};

// Raised when a mathematical precondition fails (hemisphere condition,
// antipodal condition, degenerate body, parameter out of range).
struct precondition_error : error {
    using error::error;
};

// Raised when an iterative solve exhausts its budget.
struct convergence_error : error {
    using error::error;
};

} // namespace capax

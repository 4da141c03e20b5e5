#pragma once

// Scalar/vector primitives and the theta-parameterized geometry of a single
// nonflat unit cell: four unit sides, four equal interior angles theta < pi/2.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nft {

namespace tol {
// Residual accepted when checking geometric constraints on inputs/outputs.
inline constexpr double constraint = 1e-9;
// Residual accepted for algebraic self-consistency identities.
inline constexpr double identity = 1e-12;
}  // namespace tol

struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& what, double worst = 0.0)
        : std::runtime_error(what), worst_residual(worst) {}
    double worst_residual;
};

struct Point3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Point3() = default;
    Point3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Point3 operator+(const Point3& p) const { return {x + p.x, y + p.y, z + p.z}; }
    Point3 operator-(const Point3& p) const { return {x - p.x, y - p.y, z - p.z}; }
    Point3 operator*(double a) const { return {a * x, a * y, a * z}; }
    Point3 operator-() const { return {-x, -y, -z}; }
    Point3& operator+=(const Point3& p) { x += p.x; y += p.y; z += p.z; return *this; }
    Point3& operator-=(const Point3& p) { x -= p.x; y -= p.y; z -= p.z; return *this; }

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Point3 operator*(double a, const Point3& p) { return p * a; }
inline double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Point3 cross(const Point3& a, const Point3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Point3& p) { return std::sqrt(dot(p, p)); }
inline double dist(const Point3& a, const Point3& b) { return norm(a - b); }

inline Point3 normalized(const Point3& p) {
    double n = norm(p);
    if (n <= 0.0) throw GeometryError("cannot normalize zero vector");
    return p * (1.0 / n);
}

struct Mat3 {
    // row-major
    std::array<double, 9> a{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return Mat3{}; }

    double operator()(int i, int j) const { return a[3 * i + j]; }
    double& operator()(int i, int j) { return a[3 * i + j]; }

    Point3 operator*(const Point3& p) const {
        return {a[0] * p.x + a[1] * p.y + a[2] * p.z,
                a[3] * p.x + a[4] * p.y + a[5] * p.z,
                a[6] * p.x + a[7] * p.y + a[8] * p.z};
    }
    Mat3 operator*(const Mat3& m) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * m(k, j);
                r(i, j) = s;
            }
        return r;
    }
    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }
    double det() const {
        return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
               a[2] * (a[3] * a[7] - a[4] * a[6]);
    }
    // Frobenius norm of R^T R - I.
    double orthogonality_residual() const;

    // Right-handed rotation about a (not necessarily unit) axis through the origin.
    static Mat3 rotation(const Point3& axis, double angle);
    // Reflection across the plane through the origin with the given normal.
    static Mat3 reflection(const Point3& plane_normal);
};

// Rigid or improper rigid motion x -> rot * x + trans.
struct Isometry {
    Mat3 rot;
    Point3 trans{0, 0, 0};
    bool proper = true;

    Point3 operator()(const Point3& p) const { return rot * p + trans; }
    Isometry then(const Isometry& next) const;  // next after *this
    Isometry inverse() const;
    static Isometry identity() { return Isometry{}; }
};

enum class Form : unsigned char { BACK = 0, SLASH = 1 };  // '\' and '/'

inline Form flip(Form f) { return f == Form::BACK ? Form::SLASH : Form::BACK; }
inline char form_char(Form f) { return f == Form::BACK ? '\\' : '/'; }

// All theta-derived scalars of the unit cell. gamma_star is a sentinel (NaN)
// until filled by the tiles module.
struct CellConstants {
    double theta = 0;
    double v = 0, d = 0, h = 0, s = 0;
    double kappa = 0, kappa_star = 0, delta_theta = 0;
    double gamma_star = std::numeric_limits<double>::quiet_NaN();
    bool in_validated_regime = false;

    bool has_gamma_star() const { return !std::isnan(gamma_star); }
};

// theta in (0, pi/2]; theta = pi/2 yields the flat degenerate cell (h = 0).
CellConstants cell_constants(double theta);

// Angle at b between (a-b) and (c-b), in [0, pi]. Uses atan2 of cross/dot.
double bond_angle(const Point3& a, const Point3& b, const Point3& c);

// Unique fourth point of the cell (y1, y2, y3, y4) listed cyclically, so that
// all sides are 1 and all interior angles are theta, with the requested form
// in this labeling: y3 = y1 + v3*a + h3*n for BACK, minus for SLASH, where
// a = (y2+y4)/2 - y1 and n is the unit normal along (y2-y1) x (y4-y1).
Point3 fourth_point(const Point3& y1, const Point3& y2, const Point3& y4, Form form,
                    const CellConstants& consts);

// Angles (M1,C,M3) and (M2,C,M4).
std::pair<double, double> nonplanarity_angles(const Point3& center,
                                              const std::array<Point3, 4>& middles);

// cos(d13/2) cos(d24/2) - cos(theta).
double delta_relation_residual(double delta13, double delta24, double theta);

enum class AlignBranch { PROPER, MIRROR };

// Isometry mapping the labeled triple src onto dst. PROPER is the unique
// orientation-preserving one; MIRROR composes it with reflection across the
// plane of dst (so it fixes dst as well).
Isometry align_triples(const std::array<Point3, 3>& src, const std::array<Point3, 3>& dst,
                       AlignBranch branch, double tolerance = tol::constraint);

// Form of the cell (y1,y2,y3,y4) in this labeling, via the sign of p.n with
// p = (y1+y3)/2 - (y2+y4)/2 and n along (y2-y1) x (y4-y1).
Form cell_form(const Point3& y1, const Point3& y2, const Point3& y3, const Point3& y4);

}  // namespace nft

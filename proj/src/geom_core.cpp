#include "nft/geom_core.hpp"

#include <algorithm>
#include <limits>

namespace nft {

double Mat3::orthogonality_residual() const {
    Mat3 e = transposed() * (*this);
    double r = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double t = e(i, j) - (i == j ? 1.0 : 0.0);
            r += t * t;
        }
    return std::sqrt(r);
}

Mat3 Mat3::rotation(const Point3& axis, double angle) {
    Point3 u = normalized(axis);
    double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
    Mat3 r;
    r(0, 0) = c + u.x * u.x * t;
    r(0, 1) = u.x * u.y * t - u.z * s;
    r(0, 2) = u.x * u.z * t + u.y * s;
    r(1, 0) = u.y * u.x * t + u.z * s;
    r(1, 1) = c + u.y * u.y * t;
    r(1, 2) = u.y * u.z * t - u.x * s;
    r(2, 0) = u.z * u.x * t - u.y * s;
    r(2, 1) = u.z * u.y * t + u.x * s;
    r(2, 2) = c + u.z * u.z * t;
    return r;
}

Mat3 Mat3::reflection(const Point3& plane_normal) {
    Point3 n = normalized(plane_normal);
    Mat3 r;
    double nn[3] = {n.x, n.y, n.z};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = (i == j ? 1.0 : 0.0) - 2.0 * nn[i] * nn[j];
    return r;
}

Isometry Isometry::then(const Isometry& next) const {
    Isometry r;
    r.rot = next.rot * rot;
    r.trans = next.rot * trans + next.trans;
    r.proper = (proper == next.proper);
    return r;
}

Isometry Isometry::inverse() const {
    Isometry r;
    r.rot = rot.transposed();  // orthogonal
    r.trans = -(r.rot * trans);
    r.proper = proper;
    return r;
}

CellConstants cell_constants(double theta) {
    constexpr double half_pi = 1.5707963267948966;
    if (!(theta > 0.0) || theta > half_pi + 1e-15)
        throw std::domain_error("cell_constants: theta must lie in (0, pi/2]");
    CellConstants c;
    c.theta = theta;
    double ct = std::fabs(theta - half_pi) < 1e-12 ? 0.0 : std::cos(theta);
    c.v = std::sqrt((1.0 - ct) / 2.0);
    c.d = std::sqrt((1.0 + ct) / 2.0);
    c.h = std::sqrt(std::max(0.0, 1.0 - 2.0 * c.v * c.v));
    c.s = std::sqrt(2.0) * c.v;
    c.kappa = std::atan2(c.h, c.v);
    c.kappa_star = M_PI - 2.0 * c.kappa;
    c.delta_theta = 2.0 * std::acos(std::sqrt(std::max(0.0, ct)));
    c.in_validated_regime = (theta >= 1.0 && theta < half_pi);
    return c;
}

double bond_angle(const Point3& a, const Point3& b, const Point3& c) {
    Point3 u = a - b, w = c - b;
    double nu = norm(u), nw = norm(w);
    if (nu <= 0.0 || nw <= 0.0) throw GeometryError("bond_angle: degenerate leg");
    return std::atan2(norm(cross(u, w)), dot(u, w));
}

Point3 fourth_point(const Point3& y1, const Point3& y2, const Point3& y4, Form form,
                    const CellConstants& consts) {
    double r12 = std::fabs(dist(y1, y2) - 1.0);
    double r14 = std::fabs(dist(y1, y4) - 1.0);
    double ra = std::fabs(bond_angle(y2, y1, y4) - consts.theta);
    double worst = std::max({r12, r14, ra});
    if (worst > tol::constraint)
        throw GeometryError("fourth_point: inputs are not two unit sides with angle theta",
                            worst);

    Point3 m2 = 0.5 * (y2 + y4);
    Point3 a = m2 - y1;
    Point3 u = normalized(a) * -1.0;  // from m2 toward y1
    Point3 n = normalized(cross(y2 - y1, y4 - y1));
    double sign = (form == Form::BACK) ? 1.0 : -1.0;
    return m2 + consts.d * (std::cos(consts.kappa_star) * u +
                            sign * std::sin(consts.kappa_star) * n);
}

std::pair<double, double> nonplanarity_angles(const Point3& center,
                                              const std::array<Point3, 4>& middles) {
    for (const Point3& m : middles)
        if (dist(m, center) <= 0.0)
            throw GeometryError("nonplanarity_angles: middle coincides with center");
    return {bond_angle(middles[0], center, middles[2]),
            bond_angle(middles[1], center, middles[3])};
}

double delta_relation_residual(double delta13, double delta24, double theta) {
    return std::cos(delta13 / 2.0) * std::cos(delta24 / 2.0) - std::cos(theta);
}

namespace {

// Orthonormal frame with origin at t[0]: e1 along t[1]-t[0], e2 in the triple
// plane, e3 = e1 x e2.
struct Frame {
    Point3 origin;
    Mat3 basis;  // columns e1, e2, e3
};

Frame triple_frame(const std::array<Point3, 3>& t) {
    Point3 e1 = normalized(t[1] - t[0]);
    Point3 w = t[2] - t[0];
    Point3 e2 = w - dot(w, e1) * e1;
    double n2 = norm(e2);
    if (n2 <= 1e-12) throw GeometryError("align_triples: collinear triple");
    e2 = e2 * (1.0 / n2);
    Point3 e3 = cross(e1, e2);
    Frame f;
    f.origin = t[0];
    f.basis(0, 0) = e1.x; f.basis(1, 0) = e1.y; f.basis(2, 0) = e1.z;
    f.basis(0, 1) = e2.x; f.basis(1, 1) = e2.y; f.basis(2, 1) = e2.z;
    f.basis(0, 2) = e3.x; f.basis(1, 2) = e3.y; f.basis(2, 2) = e3.z;
    return f;
}

}  // namespace

Isometry align_triples(const std::array<Point3, 3>& src, const std::array<Point3, 3>& dst,
                       AlignBranch branch, double tolerance) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            worst = std::max(worst, std::fabs(dist(src[i], src[j]) - dist(dst[i], dst[j])));
    if (worst > tolerance)
        throw GeometryError("align_triples: triples are not congruent", worst);

    Frame fs = triple_frame(src), fd = triple_frame(dst);
    Isometry iso;
    iso.rot = fd.basis * fs.basis.transposed();
    iso.trans = fd.origin - iso.rot * fs.origin;
    iso.proper = true;
    if (branch == AlignBranch::MIRROR) {
        Point3 n{fd.basis(0, 2), fd.basis(1, 2), fd.basis(2, 2)};
        Mat3 refl = Mat3::reflection(n);
        Isometry mirror;
        mirror.rot = refl;
        mirror.trans = fd.origin - refl * fd.origin;
        mirror.proper = false;
        iso = iso.then(mirror);
    }
    if (iso.rot.orthogonality_residual() > tol::identity)
        throw GeometryError("align_triples: rotation lost orthogonality");
    return iso;
}

Form cell_form(const Point3& y1, const Point3& y2, const Point3& y3, const Point3& y4) {
    Point3 p = 0.5 * (y1 + y3) - 0.5 * (y2 + y4);
    Point3 n = cross(y2 - y1, y4 - y1);
    double pn = dot(p, n);
    if (pn == 0.0) throw GeometryError("cell_form: degenerate (flat) cell");
    return pn > 0.0 ? Form::BACK : Form::SLASH;
}

}  // namespace nft

#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "nft/tiles.hpp"

using namespace nft;

namespace {

constexpr Form B = Form::BACK, S = Form::SLASH;

// Full classification table, transcribed once in (UL, UR, LL, LR; sigma) order.
const std::map<TileClass, std::vector<TileType>>& classification_table() {
    static const std::map<TileClass, std::vector<TileType>> table = {
        {TileClass::A,
         {make_type(B, B, S, S, -1), make_type(S, B, S, B, -1), make_type(S, S, B, B, -1),
          make_type(B, S, B, S, -1), make_type(B, B, S, S, 1), make_type(S, B, S, B, 1),
          make_type(S, S, B, B, 1), make_type(B, S, B, S, 1)}},
        {TileClass::I,
         {make_type(B, B, B, S, -1), make_type(S, S, B, S, -1), make_type(S, B, B, B, -1),
          make_type(S, B, S, S, -1), make_type(B, S, S, S, 1), make_type(B, S, B, B, 1),
          make_type(S, S, S, B, 1), make_type(B, B, S, B, 1)}},
        {TileClass::J,
         {make_type(B, B, S, B, -1), make_type(B, S, S, S, -1), make_type(B, S, B, B, -1),
          make_type(S, S, S, B, -1), make_type(S, S, B, S, 1), make_type(S, B, B, B, 1),
          make_type(S, B, S, S, 1), make_type(B, B, B, S, 1)}},
        {TileClass::Z, {make_type(S, B, B, S, -1), make_type(B, S, S, B, 1)}},
        {TileClass::E, {make_type(B, S, S, B, -1), make_type(S, B, B, S, 1)}},
        {TileClass::D,
         {make_type(B, B, B, B, -1), make_type(S, S, S, S, -1), make_type(B, B, B, B, 1),
          make_type(S, S, S, S, 1)}},
    };
    return table;
}

struct OriRow {
    TileType t;
    Orientation top, right, bottom, left;
};

constexpr Orientation UP = Orientation::UP, DN = Orientation::DOWN;

// Boundary orientations of all admissible Z-, D-, and I-tiles.
const std::vector<OriRow>& orientation_table() {
    static const std::vector<OriRow> rows = {
        {make_type(S, B, B, S, -1), DN, DN, DN, DN},
        {make_type(B, S, S, B, 1), UP, UP, UP, UP},
        {make_type(B, B, B, B, -1), UP, UP, UP, UP},
        {make_type(S, S, S, S, -1), UP, UP, UP, UP},
        {make_type(S, S, S, S, 1), DN, DN, DN, DN},
        {make_type(B, B, B, B, 1), DN, DN, DN, DN},
        {make_type(B, B, B, S, -1), UP, DN, DN, UP},
        {make_type(S, S, B, S, -1), UP, UP, DN, DN},
        {make_type(S, B, B, B, -1), DN, UP, UP, DN},
        {make_type(S, B, S, S, -1), DN, DN, UP, UP},
        {make_type(B, S, S, S, 1), UP, DN, DN, UP},
        {make_type(B, S, B, B, 1), UP, UP, DN, DN},
        {make_type(S, S, S, B, 1), DN, UP, UP, DN},
        {make_type(B, B, S, B, 1), DN, DN, UP, UP},
    };
    return rows;
}

}  // namespace

TEST_CASE("32 distinct types, code round trip, ASCII code round trip") {
    std::set<int> codes;
    for (const TileType& t : all_types()) {
        codes.insert(t.code());
        CHECK(TileType::from_code(t.code()) == t);
        CHECK(TileType::parse(t.to_string()) == t);
    }
    CHECK(codes.size() == 32);
    CHECK(make_type(S, B, B, S, -1).to_string() == "[/\\ / \\/ ; s-1]");
}

TEST_CASE("rotation examples") {
    TileType z = make_type(S, B, B, S, -1);
    CHECK(rotate_type(z, RotationDir::CW) == z);
    CHECK(rotate_type(z, RotationDir::CCW) == z);

    TileType i1 = make_type(B, B, B, S, -1);
    CHECK(rotate_type(i1, RotationDir::CW) == make_type(S, S, B, S, -1));

    for (const TileType& t : all_types()) {
        TileType r = t;
        for (int k = 0; k < 4; ++k) r = rotate_type(r, RotationDir::CW);
        CHECK(r == t);
        CHECK(rotate_type(rotate_type(t, RotationDir::CW), RotationDir::CCW) == t);
    }
}

TEST_CASE("reflection examples") {
    for (const TileType& t : all_types()) CHECK(reflect_type(reflect_type(t)) == t);
    CHECK(reflect_type(make_type(S, B, B, S, -1)) == make_type(B, S, S, B, 1));
    CHECK(reflect_type(make_type(B, B, B, B, -1)) == make_type(S, S, S, S, 1));
}

TEST_CASE("classification matches the transcribed table entry by entry") {
    std::map<TileClass, int> sizes;
    for (const TileType& t : all_types()) sizes[classify(t)]++;
    CHECK(sizes[TileClass::A] == 8);
    CHECK(sizes[TileClass::I] == 8);
    CHECK(sizes[TileClass::J] == 8);
    CHECK(sizes[TileClass::Z] == 2);
    CHECK(sizes[TileClass::E] == 2);
    CHECK(sizes[TileClass::D] == 4);
    for (const auto& [label, members] : classification_table())
        for (const TileType& t : members) CHECK(classify(t) == label);

    CHECK(classify(make_type(B, B, S, S, -1)) == TileClass::A);
    CHECK(classify(make_type(S, B, B, S, -1)) == TileClass::Z);
    CHECK(classify(make_type(B, B, B, B, -1)) == TileClass::D);
}

TEST_CASE("classes are orbit invariants") {
    for (const TileType& t : all_types()) {
        CHECK(classify(rotate_type(t, RotationDir::CW)) == classify(t));
        CHECK(classify(reflect_type(t)) == classify(t));
    }
}

TEST_CASE("boundary kinds on the bottom side") {
    CHECK(boundary_kind(make_type(B, B, B, S, -1), Side::BOTTOM) == BoundaryKind::Zb);
    CHECK(boundary_kind(make_type(B, B, S, S, -1), Side::BOTTOM) == BoundaryKind::Db);
    CHECK(boundary_kind(make_type(B, B, S, B, -1), Side::BOTTOM) == BoundaryKind::Eb);
    // sigma = +1 swaps the mixed-form cases
    CHECK(boundary_kind(make_type(B, B, S, B, 1), Side::BOTTOM) == BoundaryKind::Zb);
    CHECK(boundary_kind(make_type(B, B, B, S, 1), Side::BOTTOM) == BoundaryKind::Eb);
}

TEST_CASE("boundary kind is invariant under reflection") {
    for (const TileType& t : all_types())
        for (Side s : {Side::TOP, Side::RIGHT, Side::BOTTOM, Side::LEFT})
            CHECK(boundary_kind(reflect_type(t), s) == boundary_kind(t, s));
}

TEST_CASE("corner mark counts per class") {
    for (const TileType& t : all_types()) {
        int marks = 0;
        for (int i = 0; i < 4; ++i) marks += corner_is_high(t, i) ? 1 : 0;
        switch (classify(t)) {
            case TileClass::Z: CHECK(marks == 0); break;
            case TileClass::I: CHECK(marks == 1); break;
            case TileClass::D: CHECK(marks == 2); break;
            default: break;
        }
    }
}

TEST_CASE("reference tile: Z-tile corners are flat") {
    CellConstants c = cell_constants(1.40);
    FourTile z = reference_tile(make_type(B, S, S, B, 1), c);
    CHECK(dist(z.corners[0], {c.s, c.s, 0}) < 1e-12);
    CHECK(dist(z.corners[1], {-c.s, c.s, 0}) < 1e-12);
    CHECK(dist(z.corners[2], {-c.s, -c.s, 0}) < 1e-12);
    CHECK(dist(z.corners[3], {c.s, -c.s, 0}) < 1e-12);
}

TEST_CASE("reference tile: rolled D-tile has two high corners and a short diagonal") {
    CellConstants c = cell_constants(1.40);
    FourTile d = reference_tile(make_type(S, S, S, S, 1), c);
    double q = d.corners[1].z;
    CHECK(std::fabs(q - 1.1699413680229802) < 1e-12);  // frozen from the construction
    CHECK(std::fabs(d.corners[3].z - q) < 1e-12);
    CHECK(q > 2 * c.h);
    CHECK(dist(d.corners[1], d.corners[3]) < 4 * c.v);
    CHECK(std::fabs(dist(d.corners[1], d.corners[3]) - 1.0794496923674316) < 1e-12);
    // E4 = (p, -p, q) with p = sqrt(s^2 - q^2/2)
    double p = std::sqrt(c.s * c.s - q * q / 2);
    CHECK(dist(d.corners[3], {p, -p, q}) < 1e-12);
}

TEST_CASE("reference tile: theta = pi/2 is rejected") {
    CellConstants flat = cell_constants(M_PI / 2);
    CHECK_THROWS_AS(reference_tile(make_type(B, B, B, B, 1), flat), GeometryError);
}

TEST_CASE("all 32 reference tiles are coplanar with both nonplanarity angles delta_theta") {
    for (double theta : {1.10, 1.40}) {
        CellConstants c = cell_constants(theta);
        for (const TileType& t : all_types()) {
            FourTile f = reference_tile(t, c);
            auto [d13, d24] = nonplanarity_angles(f.center, f.middles);
            CHECK(std::fabs(d13 - c.delta_theta) < 1e-10);
            CHECK(std::fabs(d24 - c.delta_theta) < 1e-10);
            // every cell carries the prescribed form and unit sides
            for (int i = 0; i < 4; ++i) {
                CHECK(std::fabs(dist(f.center, f.middles[i]) - 1.0) < 1e-12);
                CHECK(std::fabs(dist(f.corners[i], f.middles[i]) - 1.0) < 1e-10);
                CHECK(std::fabs(dist(f.corners[i], f.middles[(i + 1) % 4]) - 1.0) < 1e-10);
            }
            CHECK(extract_tile_type(f.center, f.middles, f.corners) == t);
        }
    }
}

TEST_CASE("reference tile geometry commutes with type reflection") {
    CellConstants c = cell_constants(1.31);
    for (const TileType& t : all_types()) {
        FourTile f = reference_tile(t, c);
        FourTile g = reference_tile(reflect_type(t), c);
        for (int i = 0; i < 4; ++i) {
            Point3 mirrored{f.corners[i].x, f.corners[i].y, -f.corners[i].z};
            CHECK(dist(mirrored, g.corners[i]) < 1e-10);
        }
    }
}

TEST_CASE("boundary orientations reproduce the admissible-tile table") {
    CellConstants c = cell_constants(1.40);
    for (const OriRow& row : orientation_table()) {
        FourTile f = reference_tile(row.t, c);
        CHECK(boundary_signature(f, Side::TOP).orientation == row.top);
        CHECK(boundary_signature(f, Side::RIGHT).orientation == row.right);
        CHECK(boundary_signature(f, Side::BOTTOM).orientation == row.bottom);
        CHECK(boundary_signature(f, Side::LEFT).orientation == row.left);
        // combinatorial orientation agrees with the geometric one
        for (Side s : {Side::TOP, Side::RIGHT, Side::BOTTOM, Side::LEFT})
            CHECK(boundary_orientation(row.t, s) == boundary_signature(f, s).orientation);
    }
}

TEST_CASE("combinatorial orientation matches geometry for all 32 types") {
    CellConstants c = cell_constants(1.27);
    for (const TileType& t : all_types()) {
        FourTile f = reference_tile(t, c);
        for (Side s : {Side::TOP, Side::RIGHT, Side::BOTTOM, Side::LEFT})
            CHECK(boundary_orientation(t, s) == boundary_signature(f, s).orientation);
    }
}

TEST_CASE("boundary angles: Z and D equal delta_theta, E strictly below") {
    for (double theta : {1.10, 1.25, 1.40, 1.55}) {
        CellConstants c = cell_constants(theta);
        double min_margin = 1.0;
        for (const TileType& t : all_types()) {
            FourTile f = reference_tile(t, c);
            for (Side s : {Side::TOP, Side::RIGHT, Side::BOTTOM, Side::LEFT}) {
                BoundarySignature sig = boundary_signature(f, s);
                if (sig.kind == BoundaryKind::Eb)
                    min_margin = std::min(min_margin, c.delta_theta - sig.angle);
                else
                    CHECK(std::fabs(sig.angle - c.delta_theta) < 1e-10);
            }
        }
        CHECK(min_margin > 1e-3);
    }
    // frozen E-boundary angle at theta = 1.40
    CellConstants c = cell_constants(1.40);
    FourTile e = reference_tile(make_type(B, S, S, B, -1), c);
    CHECK(std::fabs(boundary_signature(e, Side::TOP).angle - 0.78314658982937854) < 1e-12);
}

TEST_CASE("boundary signature normalizes placed tiles internally") {
    CellConstants c = cell_constants(1.40);
    TileType t = make_type(S, S, B, S, -1);
    FourTile f = reference_tile(t, c);
    Isometry iso;
    iso.rot = Mat3::rotation({0.3, -1.0, 0.7}, 1.234);
    iso.trans = Point3{2.0, -1.0, 0.5};
    FourTile moved = f;
    moved.center = iso(f.center);
    for (int i = 0; i < 4; ++i) {
        moved.middles[i] = iso(f.middles[i]);
        moved.corners[i] = iso(f.corners[i]);
    }
    for (Side s : {Side::TOP, Side::RIGHT, Side::BOTTOM, Side::LEFT}) {
        BoundarySignature a = boundary_signature(f, s);
        BoundarySignature b = boundary_signature(moved, s);
        CHECK(a.orientation == b.orientation);
        CHECK(std::fabs(a.angle - b.angle) < 1e-10);
    }
}

TEST_CASE("gamma_star: frozen value, oracle agreement, decay toward the flat limit") {
    CellConstants c = cell_constants(1.40);
    CHECK(std::fabs(gamma_star(c) - 1.5641584793734354) < 1e-12);
    CHECK(c.has_gamma_star());

    // oracle: measure the angle between the two bond planes on a fully
    // constructed rolled tile
    FourTile d = reference_tile(make_type(S, S, S, S, 1), c);
    Point3 n_top = normalized(cross(d.middles[0], d.middles[1]));
    Point3 n_bot = normalized(cross(-1.0 * d.middles[0], d.corners[3] - d.middles[0]));
    double oracle = std::atan2(norm(cross(n_top, n_bot)), dot(n_top, n_bot));
    CHECK(std::fabs(oracle - c.gamma_star) < 1e-12);

    double prev = 10.0;
    for (double theta = 1.0; theta < 1.57; theta += 0.05) {
        CellConstants cc = cell_constants(theta);
        double g = gamma_star(cc);
        CHECK(g < prev);
        CHECK(g > 0.0);
        prev = g;
    }
    CellConstants flat = cell_constants(M_PI / 2);
    CHECK_THROWS_AS(gamma_star(flat), GeometryError);
}

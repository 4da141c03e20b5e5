#include "nft/attach.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace nft {

const char* to_string(Dir4 d) {
    switch (d) {
        case Dir4::PLUS_E1: return "+e1";
        case Dir4::MINUS_E1: return "-e1";
        case Dir4::PLUS_E2: return "+e2";
        case Dir4::MINUS_E2: return "-e2";
    }
    return "?";
}

const char* to_string(AttachReason r) {
    switch (r) {
        case AttachReason::OK: return "OK";
        case AttachReason::ORIENTATION_MISMATCH: return "ORIENTATION_MISMATCH";
        case AttachReason::ANGLE_MISMATCH: return "ANGLE_MISMATCH";
        case AttachReason::MIDDLE_NOT_COPLANAR: return "MIDDLE_NOT_COPLANAR";
        case AttachReason::NO_COPLANAR_BRANCH: return "NO_COPLANAR_BRANCH";
        case AttachReason::AMBIGUOUS_BRANCH: return "AMBIGUOUS_BRANCH";
    }
    return "?";
}

PlacedTile place_reference(const TileType& type, const CellConstants& consts) {
    FourTile t = reference_tile(type, consts);
    PlacedTile p;
    p.type = type;
    p.consts = consts;
    p.center = t.center;
    p.middles = t.middles;
    p.corners = t.corners;
    p.pose = Isometry::identity();
    return p;
}

PlacedTile apply_isometry(const PlacedTile& tile, const Isometry& iso) {
    PlacedTile r = tile;
    r.center = iso(tile.center);
    for (int i = 0; i < 4; ++i) {
        r.middles[i] = iso(tile.middles[i]);
        r.corners[i] = iso(tile.corners[i]);
    }
    r.pose = tile.pose.then(iso);
    return r;
}

AttachVerdict middle_tile_type(const TileType& a, const TileType& b, MiddleDir dir) {
    Side side_a = dir == MiddleDir::E1 ? Side::RIGHT : Side::TOP;
    Side side_b = dir == MiddleDir::E1 ? Side::LEFT : Side::BOTTOM;
    AttachVerdict v;
    Orientation oa = boundary_orientation(a, side_a);
    if (oa != boundary_orientation(b, side_b)) {
        v.reason = AttachReason::ORIENTATION_MISMATCH;
        return v;
    }
    BoundaryKind ka = boundary_kind(a, side_a), kb = boundary_kind(b, side_b);
    if ((ka == BoundaryKind::Eb) != (kb == BoundaryKind::Eb)) {
        v.reason = AttachReason::ANGLE_MISMATCH;
        return v;
    }
    if (ka == BoundaryKind::Eb) {
        // Congruent boundaries, but the shared boundary angle is below the
        // straight-triplet angle, so the middle tile cannot be coplanar.
        v.reason = AttachReason::MIDDLE_NOT_COPLANAR;
        return v;
    }
    TileType m;
    m.sigma = oa == Orientation::UP ? -1 : 1;
    if (dir == MiddleDir::E1) {
        m.at(CellPos::UL) = a.at(CellPos::UR);
        m.at(CellPos::LL) = a.at(CellPos::LR);
        m.at(CellPos::UR) = b.at(CellPos::UL);
        m.at(CellPos::LR) = b.at(CellPos::LL);
    } else {
        m.at(CellPos::UL) = b.at(CellPos::LL);
        m.at(CellPos::UR) = b.at(CellPos::LR);
        m.at(CellPos::LL) = a.at(CellPos::UL);
        m.at(CellPos::LR) = a.at(CellPos::UR);
    }
    v.ok = true;
    v.reason = AttachReason::OK;
    v.middle_type = m;
    return v;
}

namespace {

struct BoundaryMap {
    // triple indices into (corners, middles, corners)
    int dst_ca, dst_m, dst_cb;  // on the base tile
    int src_ca, src_m, src_cb;  // on the new tile (reference position)
};

BoundaryMap boundary_map(Dir4 dir) {
    switch (dir) {
        case Dir4::PLUS_E1: return {0, 0, 3, 1, 2, 2};   // (E1,M1,E4) <- (E2',M3',E3')
        case Dir4::MINUS_E1: return {1, 2, 2, 0, 0, 3};  // (E2,M3,E3) <- (E1',M1',E4')
        case Dir4::PLUS_E2: return {0, 1, 1, 3, 3, 2};   // (E1,M2,E2) <- (E4',M4',E3')
        case Dir4::MINUS_E2: return {3, 3, 2, 0, 1, 1};  // (E4,M4,E3) <- (E1',M2',E2')
    }
    throw std::logic_error("boundary_map");
}

// World points of the middle 4-tile between base and the attached tile.
void middle_points(const PlacedTile& base, const PlacedTile& added, Dir4 dir,
                   Point3& center, std::array<Point3, 4>& mids,
                   std::array<Point3, 4>& corns) {
    switch (dir) {
        case Dir4::PLUS_E1:
            center = base.middles[0];
            mids = {added.center, base.corners[0], base.center, base.corners[3]};
            corns = {added.middles[1], base.middles[1], base.middles[3], added.middles[3]};
            return;
        case Dir4::MINUS_E1:
            center = base.middles[2];
            mids = {base.center, base.corners[1], added.center, base.corners[2]};
            corns = {base.middles[1], added.middles[1], added.middles[3], base.middles[3]};
            return;
        case Dir4::PLUS_E2:
            center = base.middles[1];
            mids = {base.corners[0], added.center, base.corners[1], base.center};
            corns = {added.middles[0], added.middles[2], base.middles[2], base.middles[0]};
            return;
        case Dir4::MINUS_E2:
            center = base.middles[3];
            mids = {base.corners[3], base.center, base.corners[2], added.center};
            corns = {base.middles[0], base.middles[2], added.middles[2], added.middles[0]};
            return;
    }
    throw std::logic_error("middle_points");
}

AttachVerdict combinatorial_verdict(const TileType& base, const TileType& added, Dir4 dir) {
    switch (dir) {
        case Dir4::PLUS_E1: return middle_tile_type(base, added, MiddleDir::E1);
        case Dir4::MINUS_E1: return middle_tile_type(added, base, MiddleDir::E1);
        case Dir4::PLUS_E2: return middle_tile_type(base, added, MiddleDir::E2);
        case Dir4::MINUS_E2: return middle_tile_type(added, base, MiddleDir::E2);
    }
    throw std::logic_error("combinatorial_verdict");
}

struct BranchSearch {
    bool attachable = false;
    PlacedTile tile;
    Point3 m_center;
    std::array<Point3, 4> m_mids, m_corns;
};

// Geometry-only attachment. The labeled boundary correspondence admits
// exactly one orientation-preserving placement of the new tile (the mirror
// image of align_triples would place a tile of a different type), so the
// candidate pose is unique and attachability reduces to a coplanar middle
// 4-tile in that pose.
BranchSearch geometric_attach_search(const PlacedTile& base, const TileType& new_type,
                                     Dir4 dir, double tolerance) {
    BranchSearch out;
    PlacedTile ref = place_reference(new_type, base.consts);
    BoundaryMap bm = boundary_map(dir);
    std::array<Point3, 3> dst{base.corners[bm.dst_ca], base.middles[bm.dst_m],
                              base.corners[bm.dst_cb]};
    std::array<Point3, 3> src{ref.corners[bm.src_ca], ref.middles[bm.src_m],
                              ref.corners[bm.src_cb]};
    Isometry iso;
    try {
        iso = align_triples(src, dst, AlignBranch::PROPER, tolerance);
    } catch (const GeometryError&) {
        return out;  // triples not congruent: boundary angles differ
    }
    PlacedTile cand = apply_isometry(ref, iso);
    Point3 mc;
    std::array<Point3, 4> mm, me;
    middle_points(base, cand, dir, mc, mm, me);
    auto [d13, d24] = nonplanarity_angles(mc, mm);
    double dev = std::max(std::fabs(d13 - base.consts.delta_theta),
                          std::fabs(d24 - base.consts.delta_theta));
    if (dev < tolerance) {
        out.attachable = true;
        out.tile = cand;
        out.m_center = mc;
        out.m_mids = mm;
        out.m_corns = me;
    }
    return out;
}

}  // namespace

AttachOutcome try_attach(const PlacedTile& base, const TileType& new_type, Dir4 dir,
                         double tolerance) {
    AttachOutcome out;
    out.verdict = combinatorial_verdict(base.type, new_type, dir);
    BranchSearch found = geometric_attach_search(base, new_type, dir, tolerance);
    if (out.verdict.ok && !found.attachable)
        throw AttachError(AttachReason::NO_COPLANAR_BRANCH,
                          "attach: matching boundary but no coplanar branch");
    if (!out.verdict.ok && found.attachable)
        throw AttachError(AttachReason::AMBIGUOUS_BRANCH,
                          "attach: geometric attachment succeeded against combinatorial verdict");
    if (out.verdict.ok) {
        out.tile = found.tile;
        out.middle_center = found.m_center;
        out.middle_middles = found.m_mids;
        out.middle_corners = found.m_corns;
    }
    return out;
}

PlacedTile attach(const PlacedTile& base, const TileType& new_type, Dir4 dir,
                  double tolerance) {
    AttachOutcome out = try_attach(base, new_type, dir, tolerance);
    if (!out.verdict.ok)
        throw AttachError(out.verdict.reason,
                          std::string("attach: ") + to_string(out.verdict.reason));
    return *out.tile;
}

const std::vector<TileType>& admissible_zdi_types() {
    static const std::vector<TileType> types = [] {
        const Form B = Form::BACK, S = Form::SLASH;
        return std::vector<TileType>{
            // Z row
            make_type(S, B, B, S, -1), make_type(B, S, S, B, 1),
            // D row
            make_type(B, B, B, B, -1), make_type(S, S, S, S, -1),
            make_type(S, S, S, S, 1), make_type(B, B, B, B, 1),
            // I row
            make_type(B, B, B, S, -1), make_type(S, S, B, S, -1),
            make_type(S, B, B, B, -1), make_type(S, B, S, S, -1),
            make_type(B, S, S, S, 1), make_type(B, S, B, B, 1),
            make_type(S, S, S, B, 1), make_type(B, B, S, B, 1),
        };
    }();
    return types;
}

bool in_family_a(const TileType& t) {
    static const std::vector<TileType> fam = [] {
        const Form B = Form::BACK, S = Form::SLASH;
        return std::vector<TileType>{
            make_type(S, B, B, S, -1), make_type(B, S, S, B, 1),
            make_type(S, S, S, S, 1),  make_type(B, B, B, B, -1),
            make_type(B, B, B, S, -1), make_type(S, B, B, B, -1),
            make_type(B, S, S, S, 1),  make_type(S, S, S, B, 1),
        };
    }();
    return std::find(fam.begin(), fam.end(), t) != fam.end();
}

bool in_family_b(const TileType& t) {
    static const std::vector<TileType> fam = [] {
        const Form B = Form::BACK, S = Form::SLASH;
        return std::vector<TileType>{
            make_type(S, B, B, S, -1), make_type(B, S, S, B, 1),
            make_type(B, B, B, B, 1),  make_type(S, S, S, S, -1),
            make_type(S, S, B, S, -1), make_type(S, B, S, S, -1),
            make_type(B, S, B, B, 1),  make_type(B, B, S, B, 1),
        };
    }();
    return std::find(fam.begin(), fam.end(), t) != fam.end();
}

std::vector<PairVerdictRow> pairwise_table(const CellConstants& consts, PairScope scope) {
    std::vector<TileType> types =
        scope == PairScope::ZDI ? admissible_zdi_types() : all_types();
    std::vector<PairVerdictRow> rows;
    rows.reserve(types.size() * types.size() * 2);
    for (const TileType& left : types)
        for (const TileType& right : types)
            for (MiddleDir dir : {MiddleDir::E1, MiddleDir::E2}) {
                PairVerdictRow row;
                row.left = left;
                row.right = right;
                row.direction = dir;
                AttachVerdict v = middle_tile_type(left, right, dir);
                row.ok = v.ok;
                row.reason = v.reason;
                row.middle = v.middle_type;
                (void)consts;
                rows.push_back(row);
            }
    return rows;
}

namespace {

// Writes a placed tile's nine points into a (2w+1)^2 lattice grid.
void deposit(std::map<std::pair<int, int>, Point3>& grid, const PlacedTile& t, int cx,
             int cy, double& overlap_residual) {
    auto put = [&](int x, int y, const Point3& p) {
        auto it = grid.find({x, y});
        if (it == grid.end())
            grid.emplace(std::make_pair(x, y), p);
        else
            overlap_residual = std::max(overlap_residual, dist(it->second, p));
    };
    put(cx, cy, t.center);
    const int moff[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const int eoff[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    for (int i = 0; i < 4; ++i) {
        put(cx + moff[i][0], cy + moff[i][1], t.middles[i]);
        put(cx + eoff[i][0], cy + eoff[i][1], t.corners[i]);
    }
}

double grid_admissibility_residual(const std::map<std::pair<int, int>, Point3>& grid,
                                   const CellConstants& consts, int n) {
    double worst = 0.0;
    auto at = [&](int x, int y) -> const Point3& { return grid.at({x, y}); };
    for (int x = 0; x <= n; ++x)
        for (int y = 0; y <= n; ++y) {
            if (x + 1 <= n) worst = std::max(worst, std::fabs(dist(at(x, y), at(x + 1, y)) - 1.0));
            if (y + 1 <= n) worst = std::max(worst, std::fabs(dist(at(x, y), at(x, y + 1)) - 1.0));
        }
    const int nb[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int x = 1; x < n; ++x)
        for (int y = 1; y < n; ++y)
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    double target = (j - i == 2) ? consts.delta_theta : consts.theta;
                    double a = bond_angle(at(x + nb[i][0], y + nb[i][1]), at(x, y),
                                          at(x + nb[j][0], y + nb[j][1]));
                    worst = std::max(worst, std::fabs(a - target));
                }
    return worst;
}

}  // namespace

namespace {

SquareVerdict square_block_realize(const SquareArrangement& arr, const CellConstants& consts,
                                   double tolerance);

// Depth-first completion of the 4x4 tile block whose central 2x2 is the given
// arrangement. Every newly placed ring tile must pass the pairwise verdict
// against its assigned neighbors, and every completed 2x2 sub-block must
// close geometrically.
bool ring_extendable(const SquareArrangement& arr, const CellConstants& consts,
                     double tolerance) {
    // grid coordinates (x, y), x right, y up; core: B=(1,1) C=(2,1) A=(1,2) D=(2,2)
    std::array<std::array<const TileType*, 4>, 4> grid{};
    grid[1][1] = &arr.b;
    grid[2][1] = &arr.c;
    grid[1][2] = &arr.a;
    grid[2][2] = &arr.d;
    static const std::pair<int, int> order[12] = {{0, 1}, {0, 2}, {3, 1}, {3, 2},
                                                  {1, 0}, {2, 0}, {1, 3}, {2, 3},
                                                  {0, 0}, {3, 0}, {0, 3}, {3, 3}};
    const auto& candidates = admissible_zdi_types();

    auto pair_ok = [&](const TileType& left, const TileType& right, MiddleDir dir) {
        return middle_tile_type(left, right, dir).ok;
    };
    auto subblock_ok = [&](int x, int y) {
        // sub-block with lower-left tile at (x, y), if fully assigned
        if (x < 0 || y < 0 || x + 1 > 3 || y + 1 > 3) return true;
        if (!grid[x][y] || !grid[x + 1][y] || !grid[x][y + 1] || !grid[x + 1][y + 1])
            return true;
        SquareArrangement sub{*grid[x][y + 1], *grid[x + 1][y + 1], *grid[x][y],
                              *grid[x + 1][y]};
        return square_block_realize(sub, consts, tolerance).locally_realizable;
    };

    std::function<bool(int)> place = [&](int slot) -> bool {
        if (slot == 12) return true;
        auto [x, y] = order[slot];
        for (const TileType& t : candidates) {
            grid[x][y] = &t;
            bool ok = true;
            if (ok && x > 0 && grid[x - 1][y]) ok = pair_ok(*grid[x - 1][y], t, MiddleDir::E1);
            if (ok && x < 3 && grid[x + 1][y]) ok = pair_ok(t, *grid[x + 1][y], MiddleDir::E1);
            if (ok && y > 0 && grid[x][y - 1]) ok = pair_ok(*grid[x][y - 1], t, MiddleDir::E2);
            if (ok && y < 3 && grid[x][y + 1]) ok = pair_ok(t, *grid[x][y + 1], MiddleDir::E2);
            for (int dx = -1; ok && dx <= 0; ++dx)
                for (int dy = -1; ok && dy <= 0; ++dy) ok = subblock_ok(x + dx, y + dy);
            if (ok && place(slot + 1)) return true;
        }
        grid[x][y] = nullptr;
        return false;
    };
    return place(0);
}

SquareVerdict square_block_realize(const SquareArrangement& arr, const CellConstants& consts,
                                   double tolerance) {
    SquareVerdict v;
    PlacedTile b = place_reference(arr.b, consts);
    AttachOutcome oc = try_attach(b, arr.c, Dir4::PLUS_E1, tolerance);
    if (!oc.verdict.ok) {
        v.failure = std::string("B-C boundary: ") + to_string(oc.verdict.reason);
        return v;
    }
    AttachOutcome oa = try_attach(b, arr.a, Dir4::PLUS_E2, tolerance);
    if (!oa.verdict.ok) {
        v.failure = std::string("A-B boundary: ") + to_string(oa.verdict.reason);
        return v;
    }
    AttachOutcome od1 = try_attach(*oa.tile, arr.d, Dir4::PLUS_E1, tolerance);
    if (!od1.verdict.ok) {
        v.failure = std::string("A-D boundary: ") + to_string(od1.verdict.reason);
        return v;
    }
    AttachOutcome od2 = try_attach(*oc.tile, arr.d, Dir4::PLUS_E2, tolerance);
    if (!od2.verdict.ok) {
        v.failure = std::string("C-D boundary: ") + to_string(od2.verdict.reason);
        return v;
    }
    // The closing tile must land in the same pose no matter which neighbor it
    // was attached to; the two candidate attachment sites are the two shared
    // middle points of D, a fixed diagonal apart.
    double mismatch = 0.0;
    mismatch = std::max(mismatch, dist(od1.tile->center, od2.tile->center));
    for (int i = 0; i < 4; ++i) {
        mismatch = std::max(mismatch, dist(od1.tile->middles[i], od2.tile->middles[i]));
        mismatch = std::max(mismatch, dist(od1.tile->corners[i], od2.tile->corners[i]));
    }
    v.corner_gap = std::fabs(dist(oa.tile->middles[0], oc.tile->middles[1]) - 2.0 * consts.v);
    if (mismatch > 1e-6) {
        v.failure = "corner-consistency gap: the closing tile cannot meet both neighbors";
        v.corner_gap = std::max(v.corner_gap, mismatch);
        return v;
    }
    std::map<std::pair<int, int>, Point3> grid;
    double overlap = 0.0;
    deposit(grid, b, 1, 1, overlap);
    deposit(grid, *oc.tile, 3, 1, overlap);
    deposit(grid, *oa.tile, 1, 3, overlap);
    deposit(grid, *od1.tile, 3, 3, overlap);
    v.max_residual = std::max(overlap, grid_admissibility_residual(grid, consts, 4));
    if (v.max_residual > tolerance) {
        v.failure = "assembled block violates admissibility constraints";
        return v;
    }
    v.locally_realizable = true;
    return v;
}

}  // namespace

SquareVerdict square_arrangement_verdict(const SquareArrangement& arr,
                                         const CellConstants& consts, double tolerance) {
    for (const TileType& t : {arr.a, arr.d, arr.b, arr.c}) {
        TileClass c = classify(t);
        if (c != TileClass::Z && c != TileClass::D && c != TileClass::I)
            throw std::invalid_argument(
                "square_arrangement_verdict: only Z-, D-, and I-tiles are allowed");
    }
    SquareVerdict v = square_block_realize(arr, consts, tolerance);
    if (!v.locally_realizable) return v;
    if (!ring_extendable(arr, consts, tolerance)) {
        v.failure = "window closes but no surrounding ring of Z/D/I tiles completes it";
        return v;
    }
    v.admissible = true;
    return v;
}

bool square_arrangement_characterized(const SquareArrangement& arr) {
    auto matches = [&]() {
        return boundary_orientation(arr.b, Side::RIGHT) ==
                   boundary_orientation(arr.c, Side::LEFT) &&
               boundary_orientation(arr.a, Side::RIGHT) ==
                   boundary_orientation(arr.d, Side::LEFT) &&
               boundary_orientation(arr.a, Side::BOTTOM) ==
                   boundary_orientation(arr.b, Side::TOP) &&
               boundary_orientation(arr.d, Side::BOTTOM) ==
                   boundary_orientation(arr.c, Side::TOP);
    };
    bool all_a = in_family_a(arr.a) && in_family_a(arr.b) && in_family_a(arr.c) &&
                 in_family_a(arr.d);
    bool all_b = in_family_b(arr.a) && in_family_b(arr.b) && in_family_b(arr.c) &&
                 in_family_b(arr.d);
    if (all_a && arr.b == arr.d && matches()) return true;
    if (all_b && arr.a == arr.c && matches()) return true;
    return false;
}

}  // namespace nft

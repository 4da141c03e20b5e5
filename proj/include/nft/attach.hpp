#pragma once

// Placing a second 4-tile against a placed one, middle-tile bookkeeping, and
// brute-force verdicts on 2x2 arrangements.

#include <optional>
#include <string>
#include <vector>

#include "nft/tiles.hpp"

namespace nft {

// A 4-tile in world coordinates together with the pose taking its reference
// position there.
struct PlacedTile {
    TileType type;
    CellConstants consts;
    Point3 center;
    std::array<Point3, 4> middles;
    std::array<Point3, 4> corners;
    Isometry pose;
};

PlacedTile place_reference(const TileType& type, const CellConstants& consts);
PlacedTile apply_isometry(const PlacedTile& tile, const Isometry& iso);

enum class Dir4 { PLUS_E1, MINUS_E1, PLUS_E2, MINUS_E2 };
enum class MiddleDir { E1, E2 };

const char* to_string(Dir4 d);

enum class AttachReason {
    OK,
    ORIENTATION_MISMATCH,
    ANGLE_MISMATCH,
    MIDDLE_NOT_COPLANAR,
    NO_COPLANAR_BRANCH,   // internal: combinatorics predicted ok, geometry failed
    AMBIGUOUS_BRANCH,     // internal: both reflection branches coplanar
};

const char* to_string(AttachReason r);

struct AttachVerdict {
    bool ok = false;
    AttachReason reason = AttachReason::OK;
    std::optional<TileType> middle_type;
};

// Combinatorial middle tile of two attached tiles: `b` sits at +e1 (or +e2)
// of `a`. Fails with ORIENTATION_MISMATCH / ANGLE_MISMATCH / MIDDLE_NOT_COPLANAR.
AttachVerdict middle_tile_type(const TileType& a, const TileType& b, MiddleDir dir);

struct AttachError : GeometryError {
    AttachError(AttachReason r, const std::string& what) : GeometryError(what), reason(r) {}
    AttachReason reason;
};

struct AttachOutcome {
    AttachVerdict verdict;
    std::optional<PlacedTile> tile;
    // World points of the realized middle 4-tile when ok.
    Point3 middle_center;
    std::array<Point3, 4> middle_middles;
    std::array<Point3, 4> middle_corners;
};

// Aligns the shared boundary triple and selects the reflection branch whose
// middle 4-tile is coplanar.
AttachOutcome try_attach(const PlacedTile& base, const TileType& new_type, Dir4 dir,
                         double tolerance = tol::constraint);

// Throwing wrapper around try_attach.
PlacedTile attach(const PlacedTile& base, const TileType& new_type, Dir4 dir,
                  double tolerance = tol::constraint);

struct PairVerdictRow {
    TileType left;
    TileType right;
    MiddleDir direction;
    bool ok;
    AttachReason reason;
    std::optional<TileType> middle;
};

enum class PairScope { ZDI, ALL32 };

// The admissible Z-, D-, and I-tile types in table row order (Z, D, I rows).
const std::vector<TileType>& admissible_zdi_types();
// Rolling family membership.
bool in_family_a(const TileType& t);
bool in_family_b(const TileType& t);

// Exhaustive ordered-pair verdicts for both directions; deterministic order.
std::vector<PairVerdictRow> pairwise_table(const CellConstants& consts,
                                           PairScope scope = PairScope::ZDI);

// 2x2 arrangement, laid out  A D / B C.
struct SquareArrangement {
    TileType a, d, b, c;
};

struct SquareVerdict {
    bool admissible = false;          // occurs inside a larger admissible block
    bool locally_realizable = false;  // the bare 2x2 closes geometrically
    std::string failure;              // empty when admissible
    double corner_gap = 0.0;          // |pose mismatch| when the closing tile disagrees
    double max_residual = 0.0;        // admissibility residual of the realized block
};

// Attempts full geometric realization of the arrangement (B placed, C at +e1,
// A at +e2, D against both), then checks that the block extends by one ring
// of Z/D/I tiles. A bare 2x2 window can close even when every extension is
// blocked (the obstruction sits one tile away), so admissibility additionally
// requires the ring to exist. Types outside classes {Z, D, I} are rejected.
SquareVerdict square_arrangement_verdict(const SquareArrangement& arr,
                                         const CellConstants& consts,
                                         double tolerance = tol::constraint);

// Combinatorial characterization of admissible 2x2 arrangements: one rolling
// family, equal types on the appropriate diagonal, matching orientations on
// all shared boundaries.
bool square_arrangement_characterized(const SquareArrangement& arr);

}  // namespace nft

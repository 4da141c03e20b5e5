#pragma once

// Combinatorial 4-tile types, their six classes, reference-position geometry,
// and boundary signatures.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nft/geom_core.hpp"

namespace nft {

// Matrix positions of the four cells, reading the 2x2 block row-major.
enum class CellPos : int { UL = 0, UR = 1, LL = 2, LR = 3 };

struct TileType {
    std::array<Form, 4> forms{};  // indexed by CellPos
    int sigma = -1;               // center below (+1) / above (-1) the middle plane

    Form at(CellPos p) const { return forms[static_cast<int>(p)]; }
    Form& at(CellPos p) { return forms[static_cast<int>(p)]; }

    bool operator==(const TileType& o) const { return forms == o.forms && sigma == o.sigma; }
    bool operator!=(const TileType& o) const { return !(*this == o); }

    // Stable 0..31 encoding: sign bit then UL,UR,LL,LR form bits.
    int code() const;
    static TileType from_code(int code);

    // Compact ASCII code, e.g. [/\ / \/ ; s-1].
    std::string to_string() const;
    static TileType parse(const std::string& text);
};

TileType make_type(Form ul, Form ur, Form ll, Form lr, int sigma);
const std::vector<TileType>& all_types();  // all 32, by code

enum class TileClass { A, I, J, Z, E, D };
const char* to_string(TileClass c);

enum class RotationDir { CW, CCW };

// Quarter-turn of the tile: forms swap and entries permute; sigma unchanged.
TileType rotate_type(const TileType& t, RotationDir dir);
// Reflection across the e1-e2-plane: forms swap, sigma negates.
TileType reflect_type(const TileType& t);
// Orbit label under the group generated by rotate_type and reflect_type.
TileClass classify(const TileType& t);

enum class Side { TOP = 0, RIGHT = 1, BOTTOM = 2, LEFT = 3 };
enum class BoundaryKind { Zb, Db, Eb };
enum class Orientation { UP, DOWN };  // wedge / vee

const char* to_string(Side s);
const char* to_string(BoundaryKind k);
const char* to_string(Orientation o);

// Congruence class of the boundary triple on the given side, determined by
// the two adjacent cell forms and sigma.
BoundaryKind boundary_kind(const TileType& t, Side side);

// Orientation of the boundary triple on the given side (reference position).
Orientation boundary_orientation(const TileType& t, Side side);

// Corner E_i (i in 0..3 for E1..E4) sits away from the flat corner plane in
// reference position ("corner mark" in the class tables).
bool corner_is_high(const TileType& t, int corner_index);

// Realized 4-tile: center C, middle points M1..M4, corners E1..E4.
// In reference position C = 0, M_i = (+-s,0,sigma h) / (0,+-s,sigma h).
struct FourTile {
    Point3 center;
    std::array<Point3, 4> middles;
    std::array<Point3, 4> corners;
    TileType type;
    CellConstants consts;
};

FourTile reference_tile(const TileType& type, const CellConstants& consts);

struct BoundarySignature {
    Side side;
    BoundaryKind kind;
    Orientation orientation;
    double angle;
};

// Signature of one side. The tile is normalized to reference position
// internally, so arbitrary placements are accepted.
BoundarySignature boundary_signature(const FourTile& tile, Side side);

// Magnitude of the nonzero incidence angle of a rolled tile; fills
// consts.gamma_star and returns it.
double gamma_star(CellConstants& consts);
double gamma_star_value(const CellConstants& consts);

// Reconstructs the combinatorial type of a placed 4-tile from its geometry.
TileType extract_tile_type(const Point3& center, const std::array<Point3, 4>& middles,
                           const std::array<Point3, 4>& corners);

// Corner indices (E_{i}, E_{j}) adjacent to a side, and the middle index.
struct SideIncidence {
    int middle;    // M index 0..3
    int corner_a;  // E_{i-1}
    int corner_b;  // E_i
};
SideIncidence side_incidence(Side side);

// The two cells adjacent to a side, as matrix positions (a left/lower-ish, b).
std::pair<CellPos, CellPos> side_cells(Side side);

}  // namespace nft

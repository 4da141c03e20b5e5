#include "nft/tiles.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace nft {

int TileType::code() const {
    int c = sigma > 0 ? 16 : 0;
    for (int i = 0; i < 4; ++i)
        if (forms[i] == Form::SLASH) c |= 8 >> i;
    return c;
}

TileType TileType::from_code(int code) {
    TileType t;
    t.sigma = (code & 16) ? 1 : -1;
    for (int i = 0; i < 4; ++i)
        t.forms[i] = (code & (8 >> i)) ? Form::SLASH : Form::BACK;
    return t;
}

std::string TileType::to_string() const {
    std::string s = "[";
    s += form_char(at(CellPos::UL));
    s += form_char(at(CellPos::UR));
    s += " / ";
    s += form_char(at(CellPos::LL));
    s += form_char(at(CellPos::LR));
    s += sigma > 0 ? " ; s+1]" : " ; s-1]";
    return s;
}

TileType TileType::parse(const std::string& text) {
    std::string c;
    for (char ch : text)
        if (ch == '/' || ch == '\\' || ch == '+' || ch == '-') c += ch;
    // forms contribute 4 slash/backslash chars plus the " / " separator slash
    if (c.size() != 6)
        throw std::invalid_argument("TileType::parse: malformed code: " + text);
    auto form_of = [](char ch) { return ch == '\\' ? Form::BACK : Form::SLASH; };
    TileType t;
    t.at(CellPos::UL) = form_of(c[0]);
    t.at(CellPos::UR) = form_of(c[1]);
    // c[2] is the separator '/'
    t.at(CellPos::LL) = form_of(c[3]);
    t.at(CellPos::LR) = form_of(c[4]);
    t.sigma = c[5] == '+' ? 1 : -1;
    return t;
}

TileType make_type(Form ul, Form ur, Form ll, Form lr, int sigma) {
    TileType t;
    t.at(CellPos::UL) = ul;
    t.at(CellPos::UR) = ur;
    t.at(CellPos::LL) = ll;
    t.at(CellPos::LR) = lr;
    t.sigma = sigma;
    return t;
}

const std::vector<TileType>& all_types() {
    static const std::vector<TileType> types = [] {
        std::vector<TileType> v;
        for (int c = 0; c < 32; ++c) v.push_back(TileType::from_code(c));
        return v;
    }();
    return types;
}

const char* to_string(TileClass c) {
    switch (c) {
        case TileClass::A: return "A";
        case TileClass::I: return "I";
        case TileClass::J: return "J";
        case TileClass::Z: return "Z";
        case TileClass::E: return "E";
        case TileClass::D: return "D";
    }
    return "?";
}

const char* to_string(Side s) {
    switch (s) {
        case Side::TOP: return "top";
        case Side::RIGHT: return "right";
        case Side::BOTTOM: return "bottom";
        case Side::LEFT: return "left";
    }
    return "?";
}

const char* to_string(BoundaryKind k) {
    switch (k) {
        case BoundaryKind::Zb: return "Z";
        case BoundaryKind::Db: return "D";
        case BoundaryKind::Eb: return "E";
    }
    return "?";
}

const char* to_string(Orientation o) { return o == Orientation::UP ? "^" : "v"; }

TileType rotate_type(const TileType& t, RotationDir dir) {
    TileType r;
    r.sigma = t.sigma;
    // Clockwise quarter turn moves the LL entry to UL, UL to UR, UR to LR,
    // LR to LL, and every form swaps.
    if (dir == RotationDir::CW) {
        r.at(CellPos::UL) = flip(t.at(CellPos::LL));
        r.at(CellPos::UR) = flip(t.at(CellPos::UL));
        r.at(CellPos::LR) = flip(t.at(CellPos::UR));
        r.at(CellPos::LL) = flip(t.at(CellPos::LR));
    } else {
        r.at(CellPos::UL) = flip(t.at(CellPos::UR));
        r.at(CellPos::UR) = flip(t.at(CellPos::LR));
        r.at(CellPos::LR) = flip(t.at(CellPos::LL));
        r.at(CellPos::LL) = flip(t.at(CellPos::UL));
    }
    return r;
}

TileType reflect_type(const TileType& t) {
    TileType r;
    r.sigma = -t.sigma;
    for (int i = 0; i < 4; ++i) r.forms[i] = flip(t.forms[i]);
    return r;
}

TileClass classify(const TileType& t) {
    static const std::array<TileClass, 32> table = [] {
        std::array<TileClass, 32> cls;
        auto orbit_of = [](const TileType& rep) {
            std::set<int> orbit{rep.code()};
            bool grew = true;
            while (grew) {
                grew = false;
                for (int c : std::vector<int>(orbit.begin(), orbit.end())) {
                    TileType x = TileType::from_code(c);
                    for (TileType y : {rotate_type(x, RotationDir::CW), reflect_type(x)})
                        grew |= orbit.insert(y.code()).second;
                }
            }
            return orbit;
        };
        const std::pair<TileType, TileClass> reps[] = {
            {make_type(Form::BACK, Form::BACK, Form::SLASH, Form::SLASH, -1), TileClass::A},
            {make_type(Form::BACK, Form::BACK, Form::BACK, Form::SLASH, -1), TileClass::I},
            {make_type(Form::BACK, Form::BACK, Form::SLASH, Form::BACK, -1), TileClass::J},
            {make_type(Form::SLASH, Form::BACK, Form::BACK, Form::SLASH, -1), TileClass::Z},
            {make_type(Form::BACK, Form::SLASH, Form::SLASH, Form::BACK, -1), TileClass::E},
            {make_type(Form::BACK, Form::BACK, Form::BACK, Form::BACK, -1), TileClass::D},
        };
        cls.fill(TileClass::A);
        for (const auto& [rep, label] : reps)
            for (int c : orbit_of(rep)) cls[static_cast<size_t>(c)] = label;
        return cls;
    }();
    return table[static_cast<size_t>(t.code())];
}

SideIncidence side_incidence(Side side) {
    switch (side) {
        case Side::RIGHT: return {0, 3, 0};   // M1, E4, E1
        case Side::TOP: return {1, 0, 1};     // M2, E1, E2
        case Side::LEFT: return {2, 1, 2};    // M3, E2, E3
        case Side::BOTTOM: return {3, 2, 3};  // M4, E3, E4
    }
    throw std::logic_error("side_incidence");
}

std::pair<CellPos, CellPos> side_cells(Side side) {
    switch (side) {
        case Side::RIGHT: return {CellPos::UR, CellPos::LR};
        case Side::TOP: return {CellPos::UL, CellPos::UR};
        case Side::LEFT: return {CellPos::UL, CellPos::LL};
        case Side::BOTTOM: return {CellPos::LL, CellPos::LR};
    }
    throw std::logic_error("side_cells");
}

bool corner_is_high(const TileType& t, int corner_index) {
    // Cell owning corner E_{i+1}: E1 -> UR, E2 -> UL, E3 -> LL, E4 -> LR.
    static constexpr CellPos owner[4] = {CellPos::UR, CellPos::UL, CellPos::LL, CellPos::LR};
    Form f = t.at(owner[corner_index]);
    bool diag_d1 = (corner_index == 0 || corner_index == 2);  // E1, E3
    if (t.sigma > 0) return diag_d1 ? f == Form::BACK : f == Form::SLASH;
    return diag_d1 ? f == Form::SLASH : f == Form::BACK;
}

Orientation boundary_orientation(const TileType& t, Side side) {
    SideIncidence inc = side_incidence(side);
    bool any_high = corner_is_high(t, inc.corner_a) || corner_is_high(t, inc.corner_b);
    if (t.sigma > 0) return any_high ? Orientation::DOWN : Orientation::UP;
    return any_high ? Orientation::UP : Orientation::DOWN;
}

BoundaryKind boundary_kind(const TileType& t, Side side) {
    // Rotate until the requested side sits at the bottom, then read the rule
    // off (LL, LR).
    int turns = 0;
    switch (side) {
        case Side::BOTTOM: turns = 0; break;
        case Side::RIGHT: turns = 1; break;
        case Side::TOP: turns = 2; break;
        case Side::LEFT: turns = 3; break;
    }
    TileType r = t;
    for (int i = 0; i < turns; ++i) r = rotate_type(r, RotationDir::CW);
    Form ll = r.at(CellPos::LL), lr = r.at(CellPos::LR);
    if (ll == lr) return BoundaryKind::Db;
    if (ll == Form::BACK && lr == Form::SLASH)
        return r.sigma < 0 ? BoundaryKind::Zb : BoundaryKind::Eb;
    return r.sigma < 0 ? BoundaryKind::Eb : BoundaryKind::Zb;
}

FourTile reference_tile(const TileType& type, const CellConstants& consts) {
    if (consts.h <= 0.0)
        throw GeometryError("reference_tile: flat tile has undefined sigma (theta = pi/2)");
    FourTile t;
    t.type = type;
    t.consts = consts;
    t.center = Point3{0, 0, 0};
    double zh = type.sigma * consts.h;
    t.middles = {Point3{consts.s, 0, zh}, Point3{0, consts.s, zh},
                 Point3{-consts.s, 0, zh}, Point3{0, -consts.s, zh}};
    // Cells listed counterclockwise from each cell's lower-left lattice site;
    // the center occupies a different slot per cell, which flips the form
    // seen by the fourth-point call for the UL and LR cells.
    const Form call_form[4] = {
        type.at(CellPos::UR),        // cell (C, M1, E1, M2)
        flip(type.at(CellPos::UL)),  // cell (M3, C, M2, E2) -> solve (C, M2, E2, M3)
        type.at(CellPos::LL),        // cell (E3, M4, C, M3) -> solve (C, M3, E3, M4)
        flip(type.at(CellPos::LR)),  // cell (M4, E4, M1, C) -> solve (C, M4, E4, M1)
    };
    for (int i = 0; i < 4; ++i)
        t.corners[i] =
            fourth_point(t.center, t.middles[i], t.middles[(i + 1) % 4], call_form[i], consts);
    return t;
}

namespace {

int geometric_sigma(const Point3& center, const std::array<Point3, 4>& middles) {
    Point3 n_mid = cross(middles[0] - middles[2], middles[1] - middles[3]);
    double sgn = dot(middles[0] - center, n_mid);
    if (sgn == 0.0) throw GeometryError("geometric sigma undefined (flat tile)");
    return sgn > 0 ? 1 : -1;
}

FourTile normalized_to_reference(const FourTile& tile) {
    int sg = geometric_sigma(tile.center, tile.middles);
    double zh = sg * tile.consts.h;
    std::array<Point3, 3> src{tile.middles[0], tile.middles[1], tile.middles[2]};
    std::array<Point3, 3> dst{Point3{tile.consts.s, 0, zh}, Point3{0, tile.consts.s, zh},
                              Point3{-tile.consts.s, 0, zh}};
    Isometry iso = align_triples(src, dst, AlignBranch::PROPER);
    FourTile r = tile;
    r.center = iso(tile.center);
    for (int i = 0; i < 4; ++i) {
        r.middles[i] = iso(tile.middles[i]);
        r.corners[i] = iso(tile.corners[i]);
    }
    return r;
}

}  // namespace

BoundarySignature boundary_signature(const FourTile& tile, Side side) {
    FourTile ref = normalized_to_reference(tile);
    SideIncidence inc = side_incidence(side);
    const Point3& m = ref.middles[inc.middle];
    const Point3& ea = ref.corners[inc.corner_a];
    const Point3& eb = ref.corners[inc.corner_b];
    double corner_mean = 0.5 * (ea.z + eb.z);
    if (std::fabs(corner_mean - m.z) < tol::identity)
        throw GeometryError("boundary_signature: degenerate orientation");
    BoundarySignature sig;
    sig.side = side;
    sig.kind = boundary_kind(tile.type, side);
    sig.orientation = corner_mean < m.z ? Orientation::UP : Orientation::DOWN;
    sig.angle = bond_angle(eb, m, ea);
    return sig;
}

double gamma_star_value(const CellConstants& c) {
    if (c.h <= 0.0)
        throw GeometryError("gamma_star: flat tiles have zero incidence angle");
    double len = std::sqrt(c.s * c.s + 2.0 * c.h * c.h);
    // Rolled-corner coordinates E4 = (p, -p, q) from the fourth-point
    // construction of the cell (C, M4, E4, M1) in reference position; p is
    // signed (the corner crosses the diagonal plane for strongly kinked
    // cells).
    double ck = std::cos(c.kappa_star), sk = std::sin(c.kappa_star);
    double q = c.h * (1.0 - ck) + c.d * sk * c.s / len;
    double p = 0.5 * c.s * (1.0 - ck) - c.d * sk * c.h / len;
    Point3 n_top = normalized(Point3{-c.h, -c.h, c.s});
    Point3 w{-c.h * p, c.s * q - c.h * p, c.s * p};  // direction -M1 x (E4 - M1)
    if (norm(w) < 1e-15) throw GeometryError("gamma_star: degenerate rolled corner");
    Point3 n_bot = normalized(w);
    return std::atan2(norm(cross(n_top, n_bot)), dot(n_top, n_bot));
}

double gamma_star(CellConstants& consts) {
    consts.gamma_star = gamma_star_value(consts);
    return consts.gamma_star;
}

TileType extract_tile_type(const Point3& center, const std::array<Point3, 4>& middles,
                           const std::array<Point3, 4>& corners) {
    TileType t;
    t.sigma = geometric_sigma(center, middles);
    const Point3 &C = center, &M1 = middles[0], &M2 = middles[1], &M3 = middles[2],
                 &M4 = middles[3], &E1 = corners[0], &E2 = corners[1], &E3 = corners[2],
                 &E4 = corners[3];
    t.at(CellPos::UR) = cell_form(C, M1, E1, M2);
    t.at(CellPos::UL) = cell_form(M3, C, M2, E2);
    t.at(CellPos::LL) = cell_form(E3, M4, C, M3);
    t.at(CellPos::LR) = cell_form(M4, E4, M1, C);
    return t;
}

}  // namespace nft

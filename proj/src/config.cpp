#include "nft/config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nft {

const char* to_string(Family f) { return f == Family::A ? "A" : "B"; }

char to_char(SectionSymbol s) {
    switch (s) {
        case SectionSymbol::FLAT: return 'F';
        case SectionSymbol::ROLL_UP: return 'U';
        case SectionSymbol::ROLL_DOWN: return 'D';
    }
    return '?';
}

SectionSymbol section_symbol_from_char(char c) {
    switch (c) {
        case 'F': case 'f': return SectionSymbol::FLAT;
        case 'U': case 'u': return SectionSymbol::ROLL_UP;
        case 'D': case 'd': return SectionSymbol::ROLL_DOWN;
    }
    throw std::invalid_argument(std::string("unknown section symbol: ") + c);
}

namespace {

constexpr Form B_ = Form::BACK, S_ = Form::SLASH;

const TileType kZm = make_type(S_, B_, B_, S_, -1);
const TileType kZp = make_type(B_, S_, S_, B_, 1);
const TileType kDup = make_type(S_, S_, S_, S_, 1);   // gamma2 = -gamma* (rolls up)
const TileType kDdn = make_type(B_, B_, B_, B_, -1);  // gamma2 = +gamma* (rolls down)
const TileType kIFlatToUp = make_type(S_, S_, S_, B_, 1);
const TileType kIUpToFlat = make_type(B_, S_, S_, S_, 1);
const TileType kIFlatToDown = make_type(B_, B_, B_, S_, -1);
const TileType kIDownToFlat = make_type(S_, B_, B_, B_, -1);

TypePattern rotate_pattern_ccw(const TypePattern& src) {
    TypePattern out;
    out.family = src.family == Family::A ? Family::B : Family::A;
    out.width = src.height;
    out.height = src.width;
    out.period_d2 = src.period_d2;
    out.sigma.resize(static_cast<size_t>(out.width * out.height));
    for (int c = 0; c < out.width; ++c)
        for (int r = 0; r < out.height; ++r)
            out.at(c, r) = rotate_type(src.at(r, src.height - 1 - c), RotationDir::CCW);
    return out;
}

PatternReport validate_family_a(const TypePattern& p) {
    PatternReport rep;
    auto flag = [&](int c, int r, const std::string& what) {
        rep.valid = false;
        rep.violations.push_back({c, r, what});
    };
    for (int r = 0; r < p.height; ++r)
        for (int c = 0; c < p.width; ++c) {
            const TileType& t = p.at(c, r);
            if (!in_family_a(t))
                flag(c, r, "type " + t.to_string() + " is outside the admissible family set");
        }
    if (!rep.valid) return rep;
    for (int r = 0; r + 1 < p.height; ++r)
        for (int c = 0; c + 1 < p.width; ++c)
            if (p.at(c, r) != p.at(c + 1, r + 1))
                flag(c, r, "type changes along the flat diagonal");
    // Vertical matching conditions: membership in the lower/upper families
    // of bottom-vee and top-vee tiles must agree across each shared boundary.
    auto bottom_vee = [](const TileType& t) {
        return boundary_orientation(t, Side::BOTTOM) == Orientation::DOWN;
    };
    auto top_vee = [](const TileType& t) {
        return boundary_orientation(t, Side::TOP) == Orientation::DOWN;
    };
    for (int r = 1; r < p.height; ++r)
        for (int c = 0; c < p.width; ++c) {
            const TileType& upper = p.at(c, r);
            const TileType& lower = p.at(c, r - 1);
            if (bottom_vee(upper) != top_vee(lower))
                flag(c, r, "vertical matching condition fails against the row below");
        }
    // On a finite window the first-row horizontal matches are not implied by
    // the diagonal constancy; check all horizontal pairs explicitly.
    for (int r = 0; r < p.height; ++r)
        for (int c = 1; c < p.width; ++c)
            if (boundary_orientation(p.at(c - 1, r), Side::RIGHT) !=
                boundary_orientation(p.at(c, r), Side::LEFT))
                flag(c, r, "horizontal boundary orientations mismatch");
    return rep;
}

}  // namespace

PatternReport validate_pattern(const TypePattern& p) {
    if (p.width <= 0 || p.height <= 0 ||
        p.sigma.size() != static_cast<size_t>(p.width * p.height)) {
        PatternReport rep;
        rep.valid = false;
        rep.violations.push_back({0, 0, "malformed pattern window"});
        return rep;
    }
    if (p.family == Family::A) return validate_family_a(p);
    return validate_family_a(rotate_pattern_ccw(p));
}

namespace {

enum class Roll { FLAT, UP, DOWN };

Roll roll_of(SectionSymbol s) {
    switch (s) {
        case SectionSymbol::FLAT: return Roll::FLAT;
        case SectionSymbol::ROLL_UP: return Roll::UP;
        case SectionSymbol::ROLL_DOWN: return Roll::DOWN;
    }
    return Roll::FLAT;
}

// Chain of tile types along the rolling direction realizing the section:
// cores at even slots, transition tiles between them.
std::vector<TileType> section_chain(const std::vector<SectionSymbol>& symbols) {
    std::vector<Roll> s;
    s.reserve(symbols.size());
    for (SectionSymbol y : symbols) s.push_back(roll_of(y));
    std::vector<TileType> chain;
    auto top_of = [](const TileType& t) { return boundary_orientation(t, Side::TOP); };
    auto z_for = [&](Orientation parity) { return parity == Orientation::UP ? kZp : kZm; };

    // first core: flats take the parity that lets the first roll enter
    // through a transition tile
    TileType first = kZm;
    if (s[0] == Roll::UP) first = kDup;
    else if (s[0] == Roll::DOWN) first = kDdn;
    else {
        for (Roll r : s) {
            if (r == Roll::UP) { first = kZp; break; }
            if (r == Roll::DOWN) { first = kZm; break; }
        }
    }
    chain.push_back(first);

    for (size_t i = 0; i + 1 < s.size(); ++i) {
        Orientation parity = top_of(chain.back());
        Roll from = s[i], to = s[i + 1];
        TileType bridge;
        if (from == Roll::FLAT && to == Roll::FLAT) bridge = z_for(parity);
        else if (from == Roll::UP && to == Roll::UP) bridge = kDup;
        else if (from == Roll::DOWN && to == Roll::DOWN) bridge = kDdn;
        else if (from == Roll::FLAT && to == Roll::UP)
            bridge = parity == Orientation::UP ? kIFlatToUp : kDup;
        else if (from == Roll::FLAT && to == Roll::DOWN)
            bridge = parity == Orientation::DOWN ? kIFlatToDown : kDdn;
        else if (from == Roll::UP)
            bridge = kIUpToFlat;  // also the up-to-down transition
        else
            bridge = kIDownToFlat;  // down-to-flat and down-to-up
        chain.push_back(bridge);

        Orientation parity2 = top_of(chain.back());
        TileType core;
        if (to == Roll::FLAT) core = z_for(parity2);
        else if (to == Roll::UP) core = kDup;
        else core = kDdn;
        chain.push_back(core);
    }
    return chain;
}

}  // namespace

TypePattern pattern_from_section(const std::vector<SectionSymbol>& symbols, Family family,
                                 Extent extent) {
    if (symbols.empty())
        throw std::invalid_argument("pattern_from_section: empty section");
    std::vector<TileType> chain = section_chain(symbols);
    const int len = static_cast<int>(chain.size());
    TypePattern p;
    p.family = Family::A;
    p.width = std::max(1, extent.width);
    p.height = extent.height > 0 ? extent.height : len;
    p.sigma.resize(static_cast<size_t>(p.width * p.height));
    for (int r = 0; r < p.height; ++r)
        for (int c = 0; c < p.width; ++c) {
            int u = std::clamp(r - c, 0, len - 1);  // ends extend with their cores
            p.at(c, r) = chain[static_cast<size_t>(u)];
        }
    PatternReport rep = validate_pattern(p);
    if (!rep.valid)
        throw std::logic_error("pattern_from_section: generated pattern fails validation: " +
                               rep.violations.front().what);
    if (family == Family::B) return rotate_pattern_ccw(p);
    return p;
}

namespace {

void deposit_tile(Deformation& y, const PlacedTile& t, int ci, int cj, double& overlap) {
    auto put = [&](int i, int j, const Point3& p) {
        if (!y.in_domain(i, j)) return;
        if (y.has(i, j))
            overlap = std::max(overlap, dist(y.at(i, j), p));
        else
            y.set(i, j, p);
    };
    put(ci, cj, t.center);
    const int moff[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const int eoff[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    for (int k = 0; k < 4; ++k) {
        put(ci + moff[k][0], cj + moff[k][1], t.middles[k]);
        put(ci + eoff[k][0], cj + eoff[k][1], t.corners[k]);
    }
}

Deformation realize_impl(const TypePattern& p, const CellConstants& consts,
                         RealizeStats* stats, bool column_major) {
    PatternReport rep = validate_pattern(p);
    if (!rep.valid)
        throw std::invalid_argument("realize: pattern fails validation: " +
                                    (rep.violations.empty() ? std::string("?")
                                                            : rep.violations.front().what));
    Deformation y(2 * p.width, 2 * p.height, consts.theta);
    double overlap = 0;
    std::vector<PlacedTile> placed(static_cast<size_t>(p.width * p.height));
    std::vector<char> done(static_cast<size_t>(p.width * p.height), 0);
    auto idx = [&](int c, int r) { return static_cast<size_t>(r * p.width + c); };

    auto place_at = [&](int c, int r) {
        PlacedTile t;
        if (c == 0 && r == 0) {
            t = place_reference(p.at(0, 0), consts);
        } else if ((column_major && r > 0 && done[idx(c, r - 1)]) ||
                   (!column_major && c == 0)) {
            t = attach(placed[idx(c, r - 1)], p.at(c, r), Dir4::PLUS_E2);
        } else if (c > 0 && done[idx(c - 1, r)]) {
            t = attach(placed[idx(c - 1, r)], p.at(c, r), Dir4::PLUS_E1);
        } else {
            t = attach(placed[idx(c, r - 1)], p.at(c, r), Dir4::PLUS_E2);
        }
        placed[idx(c, r)] = t;
        done[idx(c, r)] = 1;
        deposit_tile(y, t, 2 * c + 1, 2 * r + 1, overlap);
    };

    if (column_major) {
        for (int c = 0; c < p.width; ++c)
            for (int r = 0; r < p.height; ++r) place_at(c, r);
    } else {
        for (int r = 0; r < p.height; ++r)
            for (int c = 0; c < p.width; ++c) place_at(c, r);
    }
    if (stats) stats->overlap_residual = overlap;
    if (overlap > 1e-8)
        throw GeometryError("realize: inconsistent overlapping points", overlap);
    return y;
}

}  // namespace

Deformation realize(const TypePattern& p, const CellConstants& consts, RealizeStats* stats) {
    return realize_impl(p, consts, stats, false);
}

Deformation realize_column_major(const TypePattern& p, const CellConstants& consts,
                                 RealizeStats* stats) {
    return realize_impl(p, consts, stats, true);
}

AdmissibilityReport verify_admissible(const Deformation& y, const CellConstants& consts,
                                      double tolerance) {
    AdmissibilityReport rep;
    auto note = [&](int i, int j, const char* what, double target, double got,
                    double& worst) {
        double r = std::fabs(got - target);
        worst = std::max(worst, r);
        if (r > tolerance)
            rep.violations.push_back({i, j, what, r});
    };
    for (int j = y.y0; j <= y.y0 + y.ny; ++j)
        for (int i = y.x0; i <= y.x0 + y.nx; ++i) {
            if (!y.has(i, j)) continue;
            if (y.has(i + 1, j))
                note(i, j, "bond", 1.0, dist(y.at(i, j), y.at(i + 1, j)),
                     rep.max_bond_residual);
            if (y.has(i, j + 1))
                note(i, j, "bond", 1.0, dist(y.at(i, j), y.at(i, j + 1)),
                     rep.max_bond_residual);
        }
    const int nb[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int j = y.y0; j <= y.y0 + y.ny; ++j)
        for (int i = y.x0; i <= y.x0 + y.nx; ++i) {
            if (!y.has(i, j)) continue;
            bool all = true;
            for (auto& d : nb) all = all && y.has(i + d[0], j + d[1]);
            if (!all) continue;
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b) {
                    double ang = bond_angle(y.at(i + nb[a][0], j + nb[a][1]), y.at(i, j),
                                            y.at(i + nb[b][0], j + nb[b][1]));
                    if (b - a == 2)
                        note(i, j, "straight angle", consts.delta_theta, ang,
                             rep.max_delta_residual);
                    else
                        note(i, j, "right angle", consts.theta, ang, rep.max_theta_residual);
                }
        }
    return rep;
}

FormField form_function(const Deformation& y) {
    FormField f;
    for (int j = y.y0; j < y.y0 + y.ny; ++j)
        for (int i = y.x0; i < y.x0 + y.nx; ++i) {
            if (!(y.has(i, j) && y.has(i + 1, j) && y.has(i + 1, j + 1) && y.has(i, j + 1)))
                continue;
            f.tau[{i, j}] =
                cell_form(y.at(i, j), y.at(i + 1, j), y.at(i + 1, j + 1), y.at(i, j + 1));
        }
    return f;
}

namespace {

// Signed incidence angle for the bond from a to b with the prescribed third
// points; sign rule (top - bot) . (n_top - n_bot) >= 0 picks +.
std::optional<double> incidence(const Deformation& y, int ai, int aj, int bi, int bj,
                                int ti, int tj, int oi, int oj) {
    if (!(y.has(ai, aj) && y.has(bi, bj) && y.has(ti, tj) && y.has(oi, oj)))
        return std::nullopt;
    const Point3 &a = y.at(ai, aj), &b = y.at(bi, bj), &top = y.at(ti, tj),
                 &bot = y.at(oi, oj);
    Point3 n_top = normalized(cross(b - a, top - a));
    Point3 n_bot = normalized(cross(a - b, bot - b));
    double ang = std::atan2(norm(cross(n_top, n_bot)), dot(n_top, n_bot));
    double sgn = dot(top - bot, n_top - n_bot);
    return sgn >= 0 ? ang : -ang;
}

}  // namespace

IncidenceField incidence_angles(const Deformation& y, const CellConstants& consts) {
    (void)consts;
    IncidenceField f;
    for (int j = y.y0; j <= y.y0 + y.ny; ++j)
        for (int i = y.x0; i <= y.x0 + y.nx; ++i) {
            if (!y.has(i, j)) continue;
            if (y.has(i + 1, j)) {  // horizontal bond (i + 1/2, j)
                auto g1 = incidence(y, i, j, i + 1, j, i + 1, j + 1, i, j - 1);
                auto g2 = incidence(y, i, j, i + 1, j, i, j + 1, i + 1, j - 1);
                if (g1) f.gamma1[{2 * i + 1, 2 * j}] = *g1;
                if (g2) f.gamma2[{2 * i + 1, 2 * j}] = *g2;
                if (!g1 || !g2) f.skipped.push_back({2 * i + 1, 2 * j});
            }
            if (y.has(i, j + 1)) {  // vertical bond (i, j + 1/2)
                // the reference lattice is rotated a quarter turn to reuse the
                // horizontal construction; the diagonals swap accordingly
                auto g1 = incidence(y, i, j, i, j + 1, i - 1, j, i + 1, j + 1);
                auto g2 = incidence(y, i, j, i, j + 1, i - 1, j + 1, i + 1, j);
                if (g1) f.gamma1[{2 * i, 2 * j + 1}] = *g1;
                if (g2) f.gamma2[{2 * i, 2 * j + 1}] = *g2;
                if (!g1 || !g2) f.skipped.push_back({2 * i, 2 * j + 1});
            }
        }
    return f;
}

Gamma2Summary classify_gamma2(const IncidenceField& field, double gamma_star, double band) {
    Gamma2Summary s;
    for (const auto& [key, g] : field.gamma2) {
        double dz = std::fabs(g), dp = std::fabs(g - gamma_star),
               dm = std::fabs(g + gamma_star);
        double best = std::min({dz, dp, dm});
        s.max_deviation = std::max(s.max_deviation, best);
        if (best > band) {
            s.anomalies.push_back(key);
            continue;
        }
        if (dz == best) s.zero++;
        else if (dp == best) s.plus++;
        else s.minus++;
    }
    for (const auto& [key, g] : field.gamma2) {
        auto it = field.gamma2.find({key.first + 2, key.second + 2});
        if (it != field.gamma2.end())
            s.max_d1_variation = std::max(s.max_d1_variation, std::fabs(it->second - g));
    }
    return s;
}

TileType tile_type_at(const Deformation& y, int i, int j) {
    auto need = [&](int a, int b) -> const Point3& {
        if (!y.has(a, b)) throw GeometryError("tile_type_at: point outside domain");
        return y.at(a, b);
    };
    std::array<Point3, 4> mids{need(i + 1, j), need(i, j + 1), need(i - 1, j),
                               need(i, j - 1)};
    std::array<Point3, 4> corns{need(i + 1, j + 1), need(i - 1, j + 1), need(i - 1, j - 1),
                                need(i + 1, j - 1)};
    return extract_tile_type(need(i, j), mids, corns);
}

}  // namespace nft

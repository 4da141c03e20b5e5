#pragma once

// Whole-configuration layer: type patterns on the even sublattice, matching
// conditions, realization as lattice deformations, and the incidence-angle
// and form-function diagnostics.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nft/attach.hpp"

namespace nft {

enum class Family { A, B };
enum class SectionSymbol { FLAT, ROLL_UP, ROLL_DOWN };

const char* to_string(Family f);
char to_char(SectionSymbol s);
SectionSymbol section_symbol_from_char(char c);

// Type assignments for the 4-tiles centered on even-even lattice sites of a
// W x H tile window; tile (col, row) has its center at lattice (2col, 2row).
struct TypePattern {
    Family family = Family::A;
    int width = 0;   // tiles per row
    int height = 0;  // rows
    std::vector<TileType> sigma;  // row-major, size width*height
    std::optional<int> period_d2; // period of the cross-section, when known

    const TileType& at(int col, int row) const { return sigma[row * width + col]; }
    TileType& at(int col, int row) { return sigma[row * width + col]; }
};

struct PatternViolation {
    int col = 0, row = 0;
    std::string what;
};

struct PatternReport {
    bool valid = true;
    std::vector<PatternViolation> violations;
};

// Membership in the admissible eight-type set of the family, constancy along
// the flat diagonal, and the vertical matching conditions (plus the edge-row
// horizontal matches they no longer imply on a finite window).
PatternReport validate_pattern(const TypePattern& p);

struct Extent {
    int width = 3;   // tiles per row
    int height = 0;  // rows; 0 = derived from the section length
};

// Expands a cross-section (one symbol per step) into the unique pattern with
// flat tiles on FLAT runs, rolled tiles on sustained rolls, and transition
// tiles at the changes; always passes validate_pattern.
TypePattern pattern_from_section(const std::vector<SectionSymbol>& symbols, Family family,
                                 Extent extent = {});

// Finite piece of a deformation of the square lattice: points on the lattice
// rectangle [x0, x0 + nx] x [y0, y0 + ny].
struct Deformation {
    int x0 = 0, y0 = 0;
    int nx = 0, ny = 0;
    std::vector<Point3> pts;
    std::vector<char> present;
    double theta = 0;

    Deformation() = default;
    Deformation(int nx_, int ny_, double theta_, int x0_ = 0, int y0_ = 0)
        : x0(x0_), y0(y0_), nx(nx_), ny(ny_),
          pts(static_cast<size_t>((nx_ + 1) * (ny_ + 1))),
          present(static_cast<size_t>((nx_ + 1) * (ny_ + 1)), 0),
          theta(theta_) {}

    bool in_domain(int i, int j) const {
        return i >= x0 && i <= x0 + nx && j >= y0 && j <= y0 + ny;
    }
    size_t index(int i, int j) const {
        return static_cast<size_t>((j - y0) * (nx + 1) + (i - x0));
    }
    bool has(int i, int j) const { return in_domain(i, j) && present[index(i, j)] != 0; }
    const Point3& at(int i, int j) const { return pts[index(i, j)]; }
    void set(int i, int j, const Point3& p) {
        pts[index(i, j)] = p;
        present[index(i, j)] = 1;
    }
    // Same points with the lattice origin moved to (cx, cy).
    Deformation recentered(int cx, int cy) const {
        Deformation d = *this;
        d.x0 = x0 - cx;
        d.y0 = y0 - cy;
        return d;
    }
};

struct RealizeStats {
    double overlap_residual = 0;  // max disagreement between doubly-written points
};

// Places the first tile in reference position and attaches the rest row by
// row; the resulting points cover the lattice rectangle [0, 2W] x [0, 2H].
Deformation realize(const TypePattern& p, const CellConstants& consts,
                    RealizeStats* stats = nullptr);
// Column-major construction order; the result must agree up to nothing at
// all (it starts from the same reference tile), used as a cross-check.
Deformation realize_column_major(const TypePattern& p, const CellConstants& consts,
                                 RealizeStats* stats = nullptr);

struct ConstraintViolation {
    int i = 0, j = 0;
    std::string what;
    double residual = 0;
};

struct AdmissibilityReport {
    double max_bond_residual = 0;
    double max_theta_residual = 0;
    double max_delta_residual = 0;
    std::vector<ConstraintViolation> violations;

    double max_residual() const {
        return std::max({max_bond_residual, max_theta_residual, max_delta_residual});
    }
    bool pass(double tolerance = tol::constraint) const { return max_residual() < tolerance; }
};

// Checks every first-neighbor bond length, every right-angle triplet, and
// every straight triplet against the admissibility constraints.
AdmissibilityReport verify_admissible(const Deformation& y, const CellConstants& consts,
                                      double tolerance = tol::constraint);

// Form of the deformed cell with lower-left lattice corner (i, j).
struct FormField {
    std::map<std::pair<int, int>, Form> tau;
};
FormField form_function(const Deformation& y);

// Signed incidence angles per bond. Keys use doubled lattice coordinates so
// half-integer bond parameters stay integral: a horizontal bond (i+1/2, j)
// is keyed (2i+1, 2j) and a vertical bond (i, j+1/2) is keyed (2i, 2j+1).
struct IncidenceField {
    std::map<std::pair<int, int>, double> gamma1;
    std::map<std::pair<int, int>, double> gamma2;
    std::vector<std::pair<int, int>> skipped;  // bonds lacking a neighbor point
};
IncidenceField incidence_angles(const Deformation& y, const CellConstants& consts);

struct Gamma2Summary {
    int zero = 0, plus = 0, minus = 0;
    double max_deviation = 0;                       // from the nearest of {-g*, 0, g*}
    double max_d1_variation = 0;                    // along (1,1)/2 translations
    std::vector<std::pair<int, int>> anomalies;     // farther than the band from all three
};
Gamma2Summary classify_gamma2(const IncidenceField& field, double gamma_star,
                              double band = 1e-6);

// Combinatorial type of the realized 4-tile centered at lattice (i, j).
TileType tile_type_at(const Deformation& y, int i, int j);

}  // namespace nft

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "polymod/combinatorics.hpp"

namespace polymod {

/// Face `face` (frame position) of cell `cell`.
struct FaceSlot {
    int cell = 0;
    int face = 0;

    auto operator<=>(const FaceSlot&) const = default;
};

struct Pairing {
    FaceSlot a;  // a < b
    FaceSlot b;
    DegenerateConfig key;
};

/// One cell's share of a glued lower-dimensional face: the facets of the
/// cell that contain it.
struct Incidence {
    int cell = 0;
    std::vector<int> facets;
};

struct OrbitClass {
    DegenerateConfig key;
    std::vector<Incidence> incidences;
};

/// The (n-1)!/2 polyhedra, one per canonical label, glued along faces that
/// represent the same degenerate configuration.
class GluedComplex {
public:
    int n() const { return static_cast<int>(theta_.n()); }
    const WeightVector& theta() const { return theta_; }
    const std::vector<Label>& cells() const { return cells_; }
    const std::vector<Pairing>& pairings() const { return pairings_; }

    FaceSlot partner(FaceSlot slot) const;
    DegenerateConfig face_key(FaceSlot slot) const;

    /// Codimension-2 classes of corners where non-adjacent facets meet:
    /// the vertices of the pentagons (n = 5) or the right-angled edges of
    /// the hexahedra (n = 6).
    const std::vector<OrbitClass>& corner_classes() const { return corners_; }

    /// n = 6: classes of the two finite vertices of each hexahedron, where
    /// three pairwise orthogonal facets meet. Empty for n = 5.
    const std::vector<OrbitClass>& vertex_classes() const { return vertices_; }

private:
    friend GluedComplex build_complex(const WeightVector& theta);
    explicit GluedComplex(WeightVector theta) : theta_(std::move(theta)) {}

    WeightVector theta_;
    std::vector<Label> cells_;
    std::vector<Pairing> pairings_;
    std::vector<FaceSlot> partner_;  // indexed by cell * n + face
    std::vector<OrbitClass> corners_;
    std::vector<OrbitClass> vertices_;
};

/// Throws OutOfRange unless n is 5 or 6, PairingFailure if a face key is
/// not shared by exactly two slots in different cells.
GluedComplex build_complex(const WeightVector& theta);

struct EulerCounts {
    int V = 0;
    int E = 0;
    int F = 0;
    int chi = 0;
};

/// n = 5 only: vertices, edges and pentagons of the glued surface.
EulerCounts euler_counts(const GluedComplex& complex);
int euler_characteristic(const GluedComplex& complex);

struct CuspClass {
    /// {T, complement}, T the triple containing mark 1; both sorted.
    std::array<std::vector<int>, 2> partition;
    /// Cells (indices) with an ideal vertex in this class, sorted.
    std::vector<int> cells;
};

struct CuspTable {
    int incidences = 0;
    std::vector<CuspClass> classes;
};

/// Ideal-vertex classes of the n = 6 complex. Each hexahedron carries three
/// ideal vertices, one per partition of its label into two consecutive
/// triples. Throws NotEqualWeight unless theta is the equal weight.
CuspTable cusp_classes(const GluedComplex& complex, double tol_ideal = 1e-9);

struct SingularIncidence {
    int cell = 0;
    std::array<int, 2> facets{};
    double dihedral = 0.0;
};

struct SingularEdgeClass {
    DegenerateConfig key;
    std::vector<int> triple;  // the colliding marks, sorted
    std::vector<SingularIncidence> incidences;
    double cone_angle = 0.0;
};

/// n = 6: classes of the edges where consecutive facets meet, which exist
/// exactly when the corresponding triple of angles sums to less than pi.
/// Cone angle = sum of the dihedral angles around the class.
std::vector<SingularEdgeClass> singular_edges(const GluedComplex& complex);

/// Hyperbolic length of every edge (cell, facet) of the n = 5 complex.
std::vector<std::array<double, 5>> pentagon_edge_lengths(const GluedComplex& complex);

/// Deterministic export: "json" (schema polymod-complex/1) or "csv".
/// Throws UnknownFormat.
std::string export_adjacency(const GluedComplex& complex, std::string_view format);

}  // namespace polymod

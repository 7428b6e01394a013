#pragma once

#include <array>
#include <string>
#include <vector>

#include "polymod/combinatorics.hpp"
#include "polymod/lorentz.hpp"

namespace polymod {

inline constexpr double kRouteTolerance = 1e-9;

/// A hyperbolic right pentagon placed in the Klein disk with its origin
/// vertex at 0 and two sides on the axes; P and Q are the Euclidean lengths
/// of those sides. Valid shapes satisfy 0 < P, Q < 1 and P^2 + Q^2 > 1.
struct PentagonShape {
    double P = 0.0;
    double Q = 0.0;

    bool valid() const { return P > 0.0 && P < 1.0 && Q > 0.0 && Q < 1.0 && P * P + Q * Q > 1.0; }
};

/// A hexahedron with two finite right-angled corners, parameterized by the
/// three axis intercepts of its cutting faces. Any P, Q, R > 0 is valid.
struct HexahedronShape {
    double P = 0.0;
    double Q = 0.0;
    double R = 0.0;

    bool valid() const { return P > 0.0 && Q > 0.0 && R > 0.0; }
    std::array<double, 3> values() const { return {P, Q, R}; }
    /// min(P, 1/P) and friends: the Euclidean lengths of the axis edges.
    std::array<double, 3> reduced() const;
    /// sgn(P - 1), sgn(Q - 1), sgn(R - 1) with a zero band of width tol.
    std::array<int, 3> sign_triple(double tol = kDefaultTolIdeal) const;
};

/// The forward map for n = 5. Computed from the cevian feet of T0 and
/// cross-checked against the Lorentzian axis intercepts; throws
/// RouteDisagreement if the two differ by more than kRouteTolerance
/// (relative).
PentagonShape psi5(const WeightVector& theta, const Label& label);

/// Same, without the Lorentzian cross-check.
PentagonShape psi5_planar(const WeightVector& theta, const Label& label);

/// The forward map for n = 6; P^2, Q^2, R^2 are the signed foot ratios.
/// Throws NegativeRatio or RouteDisagreement on internal faults.
HexahedronShape psi6(const WeightVector& theta, const Label& label);
HexahedronShape psi6_planar(const WeightVector& theta, const Label& label);

/// Largest relative difference between the planar and Lorentzian routes.
double route_discrepancy(const WeightVector& theta, const Label& label);

/// sgn(theta_{i5}+theta_{i6}+theta_{i1} - pi), sgn(theta_{i1}+theta_{i2}+theta_{i3} - pi),
/// sgn(theta_{i3}+theta_{i4}+theta_{i5} - pi) with a zero band of width tol.
/// These predict the sign triple of psi6.
std::array<int, 3> triple_sum_signs(const WeightVector& theta, const Label& label, double tol);

enum class FaceKind { RightTriangle, TriRightQuadrilateral, RightPentagon, Other };

struct FaceInventory {
    std::string name;     // e.g. "(61)", faces of the hexahedron for <123456>
    int finite_vertices;  // right-angled corners
    int ideal_vertices;
    FaceKind kind;        // by total vertex count
};

struct HexahedronClass {
    std::array<int, 3> signs{};
    std::array<bool, 3> ideal{};
    /// "a" (no intercept above 1), "b" (exactly one), or "mixed".
    std::string type;
    /// Faces in the order (12), (23), (34), (45), (56), (61).
    std::array<FaceInventory, 6> faces;
};

HexahedronClass classify_hexahedron(const HexahedronShape& shape, double tol_ideal = kDefaultTolIdeal);

std::string to_string(FaceKind kind);

/// Hyperbolic side lengths in the order (i1i2), (i3i4), (i5i1), (i2i3),
/// (i4i5). The first two are the sides on the axes: atanh(P), atanh(Q).
std::array<double, 5> pentagon_side_lengths(const PentagonShape& shape);

/// Facet (frame position) carried by each entry of pentagon_side_lengths.
inline constexpr std::array<int, 5> kPentagonSideFacets = {0, 2, 4, 1, 3};

}  // namespace polymod

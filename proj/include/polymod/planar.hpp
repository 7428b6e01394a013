#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "polymod/combinatorics.hpp"

namespace polymod {

using Complex = std::complex<double>;

/// Unit edge directions of polygons with turning angles theta read along
/// `label`. Position j (0-based) holds the edge x_{i_{j+1}}, leaving the
/// vertex whose external angle is theta_{i_{j+1}}. Rotated so position 1
/// (the base of the completed triangle) points along +1.
struct EdgeFrame {
    Label label;
    WeightVector theta;
    std::vector<Complex> dirs;

    int n() const { return static_cast<int>(dirs.size()); }
};

EdgeFrame edge_frame(const WeightVector& theta, const Label& label);

/// Vertex positions z_0 = 0, z_1, ..., z_n of the (possibly non-closing)
/// polygon with signed edge lengths `edges` in frame order.
std::vector<Complex> polygon_vertices(const EdgeFrame& frame, std::span<const double> edges);

/// Signed shoelace area; positive for counterclockwise vertex order.
double polygon_area(std::span<const Complex> vertices);

/// Signed area of the polygon with the given edge lengths.
double edge_polygon_area(const EdgeFrame& frame, std::span<const double> edges);

/// Intersection of the lines p1 + s*d1 and p2 + t*d2. Returns nullopt for
/// (numerically) parallel lines.
std::optional<Complex> line_intersection(Complex p1, Complex d1, Complex p2, Complex d2);

inline constexpr double kTriangleEps = 1e-12;

/// The triangle T0 obtained by extending the edges at positions 1, 3 and
/// n-1 (n = 5 or 6). a = 0, b = 1, c in the upper half plane.
struct TriangleCompletion {
    Complex a{0.0, 0.0};
    Complex b{1.0, 0.0};
    Complex c;
    /// External angles at a, b, c.
    std::array<double, 3> external{};

    /// n = 6 only. Feet of the cevians parallel to x_{i1}, x_{i3}, x_{i5}
    /// through c, a and b, landing on lines ab, bc and ca respectively.
    std::optional<Complex> c_prime, a_prime, b_prime;
    /// Signed ratios |ac'|/|ab|, |ba'|/|bc|, |cb'|/|ca|.
    std::array<double, 3> foot_ratios{};
};

/// Throws DegenerateTriangle if an external angle leaves (eps, pi - eps).
TriangleCompletion complete_triangle(const WeightVector& theta, const Label& label);

/// n = 5: base coordinates of the two cevians from the apex, parallel to
/// x_{i3} (f1 = 1 - P^2) and to x_{i1} (f2 = Q^2). Throws FootOutsideBase
/// unless 0 < f1 < f2 < 1.
std::pair<double, double> pentagon_feet(const WeightVector& theta, const Label& label);

/// Edge lengths (frame order) of the convex polygon obtained from T0 by
/// cutting each truncated corner with a cut reaching `depth` of the way
/// along the base-side. Used as an interior reference point.
std::vector<double> truncated_triangle(const WeightVector& theta, const Label& label,
                                       double depth = 0.1);

}  // namespace polymod

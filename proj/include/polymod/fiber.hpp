#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polymod/combinatorics.hpp"
#include "polymod/moduli.hpp"
#include "polymod/planar.hpp"

namespace polymod {

inline constexpr double kTolIm = 1e-12;
inline constexpr double kDefaultRoundTripTol = 1e-9;

/// Reading orders whose product map is inverted below.
Label inversion_label_first(int n);   // <12345> or <123456>
Label inversion_label_second(int n);  // <21435> or <214356>

/// The fiber coordinate of theta: the apex of T0 when its base is [0, 1].
/// Inverse of the constructions in fiber_theta5/6 for a fixed shape.
Complex fiber_point(const WeightVector& theta, const Label& label);

/// Builds the weight vector whose right pentagon for `label` is `shape`
/// and whose fiber point is w. Joins w to 0, 1 - P^2, Q^2 and 1, slides the
/// two inner segments onto the corners at 1 and 0, and reads the five
/// turning angles. Throws BadInput (Im w too small), SlideCollision (the
/// construction folds over) or NotInTheta.
WeightVector fiber_theta5(const PentagonShape& shape, Complex w, const Label& label);

/// The hexahedron analogue, with marks X = P^2, Y = 1 + (w - 1) Q^2 and
/// Z = w (1 - R^2) on the sides of the triangle (0, 1, w).
WeightVector fiber_theta6(const HexahedronShape& shape, Complex w, const Label& label);

/// Upper-half-plane intersection of |w| = r0 and |w - 1| = r1. Throws
/// NoIntersection when the circles miss or only touch.
Complex intersect_base_circles(double r0, double r1);

/// Fiber point shared by shapes of <12345> and <21435>. With the feet
/// convention of pentagon_feet the circles are |w| = Q1 Q2, |w - 1| = P1 P2.
Complex recover_w5(const PentagonShape& s1, const PentagonShape& s2);

/// Fiber point shared by shapes of <123456> and <214356>:
/// |w| = P1 P2, |w - 1| = 1 / (Q1 Q2).
Complex recover_w6(const HexahedronShape& s1, const HexahedronShape& s2);

struct Inversion {
    Complex w;
    WeightVector theta;
    /// Largest deviation of the forward maps of theta from the inputs.
    double residual = 0.0;
};

/// Unique theta with psi(theta, <12345>) = s1 and psi(theta, <21435>) = s2.
/// The result is always pushed forward again and compared with both inputs;
/// throws InconsistentPair if that misses by more than tol.
Inversion invert5(const PentagonShape& s1, const PentagonShape& s2, double tol = kDefaultRoundTripTol);
Inversion invert6(const HexahedronShape& s1, const HexahedronShape& s2, double tol = kDefaultRoundTripTol);

struct TrialFailure {
    std::uint64_t trial = 0;
    std::vector<double> theta;
    std::string reason;
    double error = 0.0;
};

struct InjectivityReport {
    int n = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    double max_error = 0.0;
    std::vector<TrialFailure> failures;

    bool ok() const { return failures.empty(); }
};

/// Forward-then-invert on `samples` random weights; trial t draws its weight
/// from stream_seed(seed, t), so the report does not depend on `jobs`.
InjectivityReport verify_injectivity(int n, std::uint64_t samples, std::uint64_t seed,
                                     double tol = kDefaultRoundTripTol, int jobs = 1);

}  // namespace polymod

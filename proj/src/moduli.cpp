#include "polymod/moduli.hpp"

#include <algorithm>
#include <cmath>

#include "polymod/error.hpp"
#include "polymod/planar.hpp"

namespace polymod {

namespace {

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

int band_sign(double value, double tol) {
    if (value > tol) return 1;
    if (value < -tol) return -1;
    return 0;
}

double klein_distance(double ax, double ay, double bx, double by) {
    const double num = 1.0 - (ax * bx + ay * by);
    const double den = std::sqrt((1.0 - ax * ax - ay * ay) * (1.0 - bx * bx - by * by));
    return std::acosh(std::max(1.0, num / den));
}

}  // namespace

std::array<double, 3> HexahedronShape::reduced() const {
    return {std::min(P, 1.0 / P), std::min(Q, 1.0 / Q), std::min(R, 1.0 / R)};
}

std::array<int, 3> HexahedronShape::sign_triple(double tol) const {
    return {band_sign(P - 1.0, tol), band_sign(Q - 1.0, tol), band_sign(R - 1.0, tol)};
}

PentagonShape psi5_planar(const WeightVector& theta, const Label& label) {
    const auto [f1, f2] = pentagon_feet(theta, label);
    return {std::sqrt(1.0 - f1), std::sqrt(f2)};
}

HexahedronShape psi6_planar(const WeightVector& theta, const Label& label) {
    if (label.n() != 6) throw Error(ErrorCode::OutOfRange, "psi6 needs n = 6");
    const auto tri = complete_triangle(theta, label);
    for (double r : tri.foot_ratios) {
        if (!(r > 0.0)) throw Error(ErrorCode::NegativeRatio, "cevian foot on the wrong side");
    }
    return {std::sqrt(tri.foot_ratios[0]), std::sqrt(tri.foot_ratios[1]), std::sqrt(tri.foot_ratios[2])};
}

double route_discrepancy(const WeightVector& theta, const Label& label) {
    const auto model = LorentzModel::build(theta, label);
    const auto lorentz = axis_intercepts(model);
    std::vector<double> planar;
    if (label.n() == 5) {
        const auto s = psi5_planar(theta, label);
        planar = {s.P, s.Q};
    } else {
        const auto s = psi6_planar(theta, label);
        planar = {s.P, s.Q, s.R};
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < planar.size(); ++i) worst = std::max(worst, relative_gap(planar[i], lorentz[i]));
    return worst;
}

PentagonShape psi5(const WeightVector& theta, const Label& label) {
    const auto shape = psi5_planar(theta, label);
    if (route_discrepancy(theta, label) > kRouteTolerance) {
        throw Error(ErrorCode::RouteDisagreement, "planar and Lorentzian routes disagree");
    }
    return shape;
}

HexahedronShape psi6(const WeightVector& theta, const Label& label) {
    const auto shape = psi6_planar(theta, label);
    if (route_discrepancy(theta, label) > kRouteTolerance) {
        throw Error(ErrorCode::RouteDisagreement, "planar and Lorentzian routes disagree");
    }
    return shape;
}

std::array<int, 3> triple_sum_signs(const WeightVector& theta, const Label& label, double tol) {
    if (label.n() != 6) throw Error(ErrorCode::OutOfRange, "triple sums need n = 6");
    const auto th = [&](int j) { return theta.of(label.at(j)); };
    return {
        band_sign(th(4) + th(5) + th(0) - kPi, tol),
        band_sign(th(0) + th(1) + th(2) - kPi, tol),
        band_sign(th(2) + th(3) + th(4) - kPi, tol),
    };
}

std::string to_string(FaceKind kind) {
    switch (kind) {
        case FaceKind::RightTriangle: return "right triangle";
        case FaceKind::TriRightQuadrilateral: return "quadrilateral with three right angles";
        case FaceKind::RightPentagon: return "right pentagon";
        case FaceKind::Other: return "other";
    }
    return "other";
}

HexahedronClass classify_hexahedron(const HexahedronShape& shape, double tol_ideal) {
    static constexpr std::array<const char*, 6> names = {"(12)", "(23)", "(34)", "(45)", "(56)", "(61)"};
    // For the intercept on each axis: the two faces that become right
    // triangles when it exceeds 1, and the two that become right pentagons.
    // Face indices follow `names`.
    struct Roles {
        std::array<int, 2> shrinking;
        std::array<int, 2> growing;
    };
    static constexpr std::array<Roles, 3> roles = {{
        {{5, 4}, {1, 2}},  // P: (61), (56) vs (23), (34)
        {{1, 0}, {3, 4}},  // Q: (23), (12) vs (45), (56)
        {{3, 2}, {5, 0}},  // R: (45), (34) vs (61), (12)
    }};

    HexahedronClass out;
    out.signs = shape.sign_triple(tol_ideal);
    std::array<int, 6> finite{4, 4, 4, 4, 4, 4};
    std::array<int, 6> ideal{};
    int above = 0;
    for (int axis = 0; axis < 3; ++axis) {
        const int s = out.signs[static_cast<std::size_t>(axis)];
        out.ideal[static_cast<std::size_t>(axis)] = (s == 0);
        const auto& r = roles[static_cast<std::size_t>(axis)];
        if (s > 0) {
            ++above;
            for (int f : r.shrinking) --finite[static_cast<std::size_t>(f)];
            for (int f : r.growing) ++finite[static_cast<std::size_t>(f)];
        } else if (s == 0) {
            // The corner on the axis runs off to infinity: two finite
            // corners of a shrinking face merge into one ideal vertex.
            for (int f : r.shrinking) {
                finite[static_cast<std::size_t>(f)] -= 2;
                ++ideal[static_cast<std::size_t>(f)];
            }
            for (int f : r.growing) {
                --finite[static_cast<std::size_t>(f)];
                ++ideal[static_cast<std::size_t>(f)];
            }
        }
    }
    const bool any_ideal = out.ideal[0] || out.ideal[1] || out.ideal[2];
    if (above == 0) {
        out.type = "a";
    } else if (above == 1 && !any_ideal) {
        out.type = "b";
    } else {
        out.type = "mixed";
    }
    for (std::size_t f = 0; f < 6; ++f) {
        const int total = finite[f] + ideal[f];
        FaceKind kind = FaceKind::Other;
        if (total == 3) kind = FaceKind::RightTriangle;
        if (total == 4) kind = FaceKind::TriRightQuadrilateral;
        if (total == 5) kind = FaceKind::RightPentagon;
        out.faces[f] = {names[f], finite[f], ideal[f], kind};
    }
    return out;
}

std::array<double, 5> pentagon_side_lengths(const PentagonShape& shape) {
    if (!shape.valid()) throw Error(ErrorCode::BadInput, "shape is not a right pentagon");
    const double P = shape.P;
    const double Q = shape.Q;
    // Klein-model corners: origin, (0, P), (Q, 0), and the two corners on
    // the side orthogonal to both lines u = Q and v = P, i.e. Q u + P v = 1.
    const double v3x = Q, v3y = (1.0 - Q * Q) / P;
    const double v4x = (1.0 - P * P) / Q, v4y = P;
    return {
        std::atanh(P),
        std::atanh(Q),
        klein_distance(Q, 0.0, v3x, v3y),
        klein_distance(v3x, v3y, v4x, v4y),
        klein_distance(v4x, v4y, 0.0, P),
    };
}

}  // namespace polymod

#include "polymod/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polymod/error.hpp"
#include "polymod/parallel.hpp"

namespace polymod {

namespace {

Complex unit(Complex z) { return z / std::abs(z); }

void require_upper(Complex w) {
    if (!(w.imag() > kTolIm) || !std::isfinite(w.real())) {
        throw Error(ErrorCode::BadInput, "fiber point must lie in the upper half plane");
    }
}

// Turning angles between consecutive directions, assigned to the marks of
// `label`: position j carries theta_{i_{j+1}} = arg(dirs[j] / dirs[j-1]).
WeightVector angles_from_directions(const std::vector<Complex>& dirs, const Label& label) {
    const int n = label.n();
    std::vector<double> theta(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        const Complex prev = dirs[static_cast<std::size_t>((j + n - 1) % n)];
        const double turn = std::arg(dirs[static_cast<std::size_t>(j)] / prev);
        if (!(turn > 0.0 && turn < kPi)) {
            throw Error(ErrorCode::SlideCollision, "slid edges fold over");
        }
        theta[static_cast<std::size_t>(label.at(j) - 1)] = turn;
        sum += turn;
    }
    if (std::abs(sum - kTwoPi) > 1e-9) {
        throw Error(ErrorCode::SlideCollision, "turning angles do not close up");
    }
    try {
        return validate_weight(theta, 1e-9);
    } catch (const Error& e) {
        throw Error(ErrorCode::NotInTheta, e.message(), e.indices());
    }
}

double shape_residual(const PentagonShape& a, const PentagonShape& b) {
    return std::max(std::abs(a.P - b.P), std::abs(a.Q - b.Q));
}

double shape_residual(const HexahedronShape& a, const HexahedronShape& b) {
    return std::max({std::abs(a.P - b.P), std::abs(a.Q - b.Q), std::abs(a.R - b.R)});
}

}  // namespace

Label inversion_label_first(int n) {
    if (n == 5) return Label::ordered({1, 2, 3, 4, 5});
    if (n == 6) return Label::ordered({1, 2, 3, 4, 5, 6});
    throw Error(ErrorCode::OutOfRange, "only n = 5 and n = 6 are supported");
}

Label inversion_label_second(int n) {
    if (n == 5) return Label::ordered({2, 1, 4, 3, 5});
    if (n == 6) return Label::ordered({2, 1, 4, 3, 5, 6});
    throw Error(ErrorCode::OutOfRange, "only n = 5 and n = 6 are supported");
}

Complex fiber_point(const WeightVector& theta, const Label& label) {
    return complete_triangle(theta, label).c;
}

WeightVector fiber_theta5(const PentagonShape& shape, Complex w, const Label& label) {
    if (label.n() != 5) throw Error(ErrorCode::OutOfRange, "fiber_theta5 needs n = 5");
    require_upper(w);
    const double f1 = 1.0 - shape.P * shape.P;
    const double f2 = shape.Q * shape.Q;
    if (!(0.0 < f1 && f1 < f2 && f2 < 1.0)) {
        throw Error(ErrorCode::SlideCollision, "marks 0 < 1-P^2 < Q^2 < 1 out of order");
    }
    // x_{i1} is e_Q slid to 0, x_{i3} is e_P slid to 1; the rest are sides.
    const std::vector<Complex> dirs = {
        unit(Complex{f2, 0.0} - w),
        Complex{1.0, 0.0},
        unit(w - f1),
        unit(w - 1.0),
        unit(-w),
    };
    return angles_from_directions(dirs, label);
}

WeightVector fiber_theta6(const HexahedronShape& shape, Complex w, const Label& label) {
    if (label.n() != 6) throw Error(ErrorCode::OutOfRange, "fiber_theta6 needs n = 6");
    require_upper(w);
    if (!shape.valid()) throw Error(ErrorCode::SlideCollision, "P, Q, R must be positive");
    const Complex X = shape.P * shape.P;
    const Complex Y = 1.0 + (w - 1.0) * (shape.Q * shape.Q);
    const Complex Z = w * (1.0 - shape.R * shape.R);
    // wX slides toward 0, 0Y toward 1, 1Z toward w.
    const std::vector<Complex> dirs = {
        unit(X - w), Complex{1.0, 0.0}, unit(Y), unit(w - 1.0), unit(Z - 1.0), unit(-w),
    };
    return angles_from_directions(dirs, label);
}

Complex intersect_base_circles(double r0, double r1) {
    if (!(r0 > 0.0) || !(r1 > 0.0) || !std::isfinite(r0) || !std::isfinite(r1)) {
        throw Error(ErrorCode::NoIntersection, "radii must be positive");
    }
    if (r0 + r1 <= 1.0 || std::abs(r0 - r1) >= 1.0) {
        throw Error(ErrorCode::NoIntersection, "circles about 0 and 1 do not cross");
    }
    const double x = 0.5 * (1.0 + r0 * r0 - r1 * r1);
    const double y2 = r0 * r0 - x * x;
    if (!(y2 > kTolIm * kTolIm)) throw Error(ErrorCode::NoIntersection, "circles only touch");
    return {x, std::sqrt(y2)};
}

Complex recover_w5(const PentagonShape& s1, const PentagonShape& s2) {
    return intersect_base_circles(s1.Q * s2.Q, s1.P * s2.P);
}

Complex recover_w6(const HexahedronShape& s1, const HexahedronShape& s2) {
    return intersect_base_circles(s1.P * s2.P, 1.0 / (s1.Q * s2.Q));
}

namespace {

template <typename Shape, typename Forward, typename Fiber>
Inversion invert_pair(int n, const Shape& s1, const Shape& s2, double tol, Complex w, Forward forward,
                      Fiber fiber) {
    const Label first = inversion_label_first(n);
    const Label second = inversion_label_second(n);
    WeightVector theta = [&] {
        try {
            return fiber(s1, w, first);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::SlideCollision || e.code() == ErrorCode::NotInTheta) {
                throw Error(ErrorCode::InconsistentPair, std::string("no common weight: ") + e.what());
            }
            throw;
        }
    }();
    double residual = 0.0;
    try {
        residual = std::max(shape_residual(forward(theta, first), s1), shape_residual(forward(theta, second), s2));
    } catch (const Error& e) {
        throw Error(ErrorCode::InconsistentPair, std::string("forward check failed: ") + e.what());
    }
    if (!(residual <= tol)) {
        throw Error(ErrorCode::InconsistentPair, "shapes are not realized by a common weight");
    }
    return {w, theta, residual};
}

}  // namespace

Inversion invert5(const PentagonShape& s1, const PentagonShape& s2, double tol) {
    return invert_pair(5, s1, s2, tol, recover_w5(s1, s2), psi5, fiber_theta5);
}

Inversion invert6(const HexahedronShape& s1, const HexahedronShape& s2, double tol) {
    return invert_pair(6, s1, s2, tol, recover_w6(s1, s2), psi6, fiber_theta6);
}

InjectivityReport verify_injectivity(int n, std::uint64_t samples, std::uint64_t seed, double tol, int jobs) {
    if (n != 5 && n != 6) throw Error(ErrorCode::OutOfRange, "only n = 5 and n = 6 are supported");
    struct Outcome {
        double error = 0.0;
        std::vector<double> theta;
        std::string reason;
    };
    std::vector<Outcome> outcomes(samples);
    const Label first = inversion_label_first(n);
    const Label second = inversion_label_second(n);

    parallel_for(samples, jobs, [&](std::size_t t) {
        auto& out = outcomes[t];
        const auto theta = sample_weight(n, stream_seed(seed, t));
        out.theta.assign(theta.values().begin(), theta.values().end());
        try {
            const auto recovered = (n == 5) ? invert5(psi5(theta, first), psi5(theta, second), tol).theta
                                            : invert6(psi6(theta, first), psi6(theta, second), tol).theta;
            for (int i = 1; i <= n; ++i) out.error = std::max(out.error, std::abs(recovered.of(i) - theta.of(i)));
            if (!(out.error < tol)) out.reason = "round-trip error above tolerance";
        } catch (const Error& e) {
            out.reason = std::string(to_string(e.code())) + ": " + e.message();
            out.error = std::numeric_limits<double>::infinity();
        }
    });

    InjectivityReport report{n, samples, seed, tol, 0.0, {}};
    for (std::uint64_t t = 0; t < samples; ++t) {
        const auto& out = outcomes[t];
        if (std::isfinite(out.error)) report.max_error = std::max(report.max_error, out.error);
        if (!out.reason.empty()) report.failures.push_back({t, out.theta, out.reason, out.error});
    }
    return report;
}

}  // namespace polymod

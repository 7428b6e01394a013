#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "polymod/fiber.hpp"

#include <cmath>

using namespace polymod;

namespace {

double max_gap(const WeightVector& a, const WeightVector& b) {
    double worst = 0.0;
    for (int i = 1; i <= a.n(); ++i) worst = std::max(worst, std::abs(a.of(i) - b.of(i)));
    return worst;
}

}  // namespace

TEST_CASE("circle intersection") {
    CHECK(std::abs(intersect_base_circles(1.0, 1.0) - Complex{0.5, std::sqrt(3.0) / 2}) < 1e-15);
    const auto w = intersect_base_circles(0.8, 0.9);
    CHECK(w.real() == doctest::Approx(0.415));
    CHECK(w.imag() == doctest::Approx(std::sqrt(0.64 - 0.415 * 0.415)));
    CHECK(w.imag() == doctest::Approx(0.683941).epsilon(1e-6));
    CHECK(error_code_of([] { intersect_base_circles(0.3, 0.3); }) == ErrorCode::NoIntersection);
    CHECK(error_code_of([] { intersect_base_circles(0.2, 1.5); }) == ErrorCode::NoIntersection);
    const auto w6 = recover_w6({0.9, 1.0, 1.0}, {1.0, 2.0, 1.0});
    CHECK(w6.real() == doctest::Approx(0.78));
    CHECK(w6.imag() == doctest::Approx(std::sqrt(0.2016)));
}

TEST_CASE("fiber_theta5 at the equal-weight apex returns the equal weight") {
    const double P = oracle::regular_right_pentagon_intercept();
    const Complex w{0.5, std::tan(kPi / 5) / 2};
    // Apex of the triangle with exterior angles 2pi/5 at w and 4pi/5 at 0, 1.
    CHECK(std::abs(fiber_point(equal_weight(5), Label::parse("12345")) - w) < 1e-13);
    CHECK(max_gap(fiber_theta5({P, P}, w, Label::parse("12345")), equal_weight(5)) < 1e-12);
}

TEST_CASE("fiber_theta6 at (1, 1, 1) and the equilateral apex") {
    const Complex w{0.5, std::sqrt(3.0) / 2};
    CHECK(max_gap(fiber_theta6({1, 1, 1}, w, Label::parse("123456")), equal_weight(6)) < 1e-12);
}

TEST_CASE("fiber round trips for the forward point") {
    for (int n : {5, 6}) {
        const auto label = inversion_label_first(n);
        for (std::uint64_t t = 0; t < 200; ++t) {
            const auto theta = sample_weight(n, stream_seed(21, t));
            const Complex w = fiber_point(theta, label);
            const auto back = (n == 5) ? fiber_theta5(psi5(theta, label), w, label) : fiber_theta6(psi6(theta, label), w, label);
            CHECK(max_gap(back, theta) < 1e-9);
            double sum = 0.0;
            for (double v : back.values()) sum += v;
            CHECK(std::abs(sum - kTwoPi) < 1e-13);
        }
    }
}

TEST_CASE("distinct fiber points give distinct weights") {
    const auto theta = sample_weight(5, 4);
    const auto label = inversion_label_first(5);
    const auto shape = psi5(theta, label);
    const Complex w = fiber_point(theta, label);
    const auto a = fiber_theta5(shape, w, label);
    const auto b = fiber_theta5(shape, w + Complex{0.01, 0.005}, label);
    CHECK(max_gap(a, b) > 1e-6);
    const auto s = psi5(b, label);
    CHECK(s.P == doctest::Approx(shape.P).epsilon(1e-10));
    CHECK(s.Q == doctest::Approx(shape.Q).epsilon(1e-10));
}

TEST_CASE("the two designated labels share the triangle (0, 1, w)") {
    for (int n : {5, 6}) {
        for (std::uint64_t t = 0; t < 100; ++t) {
            const auto theta = sample_weight(n, t);
            CHECK(std::abs(fiber_point(theta, inversion_label_first(n)) - fiber_point(theta, inversion_label_second(n))) < 1e-9);
        }
    }
}

TEST_CASE("inversion of equal-weight shapes") {
    const double P = oracle::regular_right_pentagon_intercept();
    const auto inv5 = invert5({P, P}, {P, P});
    CHECK(max_gap(inv5.theta, equal_weight(5)) < 1e-9);
    const auto inv6 = invert6({1, 1, 1}, {1, 1, 1});
    CHECK(max_gap(inv6.theta, equal_weight(6)) < 1e-12);
    CHECK(std::abs(inv6.w - Complex{0.5, std::sqrt(3.0) / 2}) < 1e-12);
}

TEST_CASE("inversion rejects inconsistent pairs") {
    const auto theta = sample_weight(6, 12);
    auto s1 = psi6(theta, inversion_label_first(6));
    const auto s2 = psi6(theta, inversion_label_second(6));
    REQUIRE_NOTHROW(invert6(s1, s2));
    s1.R += 1e-3;
    CHECK(error_code_of([&] { invert6(s1, s2); }) == ErrorCode::InconsistentPair);
    CHECK(error_code_of([] { invert5({0.3, 0.5}, {0.5, 0.3}); }) == ErrorCode::NoIntersection);
}

TEST_CASE("injectivity harness is deterministic and independent of jobs") {
    const auto a = verify_injectivity(5, 200, 3, 1e-9, 1);
    const auto b = verify_injectivity(5, 200, 3, 1e-9, 3);
    CHECK(a.ok());
    CHECK(a.max_error == b.max_error);
    CHECK(a.failures.size() == b.failures.size());
    CHECK(verify_injectivity(6, 200, 3).ok());
}

TEST_CASE("distinct weights give distinct shape pairs") {
    std::vector<std::array<double, 4>> images;
    for (std::uint64_t t = 0; t < 300; ++t) {
        const auto theta = sample_weight(5, stream_seed(77, t));
        const auto s1 = psi5(theta, inversion_label_first(5));
        const auto s2 = psi5(theta, inversion_label_second(5));
        images.push_back({s1.P, s1.Q, s2.P, s2.Q});
    }
    double closest = 1e9;
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = i + 1; j < images.size(); ++j) {
            double d = 0.0;
            for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(images[i][static_cast<std::size_t>(k)] - images[j][static_cast<std::size_t>(k)]));
            closest = std::min(closest, d);
        }
    CHECK(closest > 0.0);
}

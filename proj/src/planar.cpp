#include "polymod/planar.hpp"

#include <algorithm>
#include <cmath>

#include "polymod/error.hpp"

namespace polymod {

namespace {

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

void require_match(const WeightVector& theta, const Label& label) {
    if (theta.n() != label.n()) {
        throw Error(ErrorCode::BadInput, "weight and label sizes differ");
    }
}

void require_five_or_six(int n) {
    if (n != 5 && n != 6) throw Error(ErrorCode::OutOfRange, "only n = 5 and n = 6 are supported");
}

}  // namespace

EdgeFrame edge_frame(const WeightVector& theta, const Label& label) {
    require_match(theta, label);
    const int n = label.n();
    std::vector<double> cumulative(static_cast<std::size_t>(n));
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        s += theta.of(label.at(j));
        cumulative[static_cast<std::size_t>(j)] = s;
    }
    const double base = cumulative[1];
    EdgeFrame frame{label, theta, {}};
    frame.dirs.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        frame.dirs.push_back(std::polar(1.0, cumulative[static_cast<std::size_t>(j)] - base));
    }
    return frame;
}

std::vector<Complex> polygon_vertices(const EdgeFrame& frame, std::span<const double> edges) {
    if (static_cast<int>(edges.size()) != frame.n()) {
        throw Error(ErrorCode::BadInput, "edge vector has wrong length");
    }
    std::vector<Complex> z(edges.size() + 1);
    for (std::size_t j = 0; j < edges.size(); ++j) z[j + 1] = z[j] + edges[j] * frame.dirs[j];
    return z;
}

double polygon_area(std::span<const Complex> vertices) {
    const auto m = vertices.size();
    double twice = 0.0;
    for (std::size_t k = 0; k < m; ++k) twice += cross(vertices[k], vertices[(k + 1) % m]);
    return 0.5 * twice;
}

double edge_polygon_area(const EdgeFrame& frame, std::span<const double> edges) {
    auto z = polygon_vertices(frame, edges);
    z.pop_back();  // z_n closes back onto z_0 on the subspace we care about
    return polygon_area(z);
}

std::optional<Complex> line_intersection(Complex p1, Complex d1, Complex p2, Complex d2) {
    const double det = cross(d1, d2);
    const double scale = std::abs(d1) * std::abs(d2);
    if (std::abs(det) <= 1e-15 * scale) return std::nullopt;
    const double s = cross(p2 - p1, d2) / det;
    return p1 + s * d1;
}

TriangleCompletion complete_triangle(const WeightVector& theta, const Label& label) {
    require_match(theta, label);
    const int n = label.n();
    require_five_or_six(n);

    TriangleCompletion t;
    const auto th = [&](int j) { return theta.of(label.at(j)); };
    t.external = {th(0) + th(1), th(2) + th(3), n == 5 ? th(4) : th(4) + th(5)};
    for (double e : t.external) {
        if (!(e > kTriangleEps && e < kPi - kTriangleEps)) {
            throw Error(ErrorCode::DegenerateTriangle, "external angle outside (0, pi)");
        }
    }

    const auto frame = edge_frame(theta, label);
    const auto& d = frame.dirs;
    // bc runs along x_{i4}; ca along the last edge.
    const auto c = line_intersection(t.b, d[3], t.a, d[static_cast<std::size_t>(n - 1)]);
    if (!c) throw Error(ErrorCode::DegenerateTriangle, "sides of T0 are parallel");
    t.c = *c;

    if (n == 6) {
        t.c_prime = line_intersection(t.a, t.b - t.a, t.c, d[0]);
        t.a_prime = line_intersection(t.b, t.c - t.b, t.a, d[2]);
        t.b_prime = line_intersection(t.c, t.a - t.c, t.b, d[4]);
        if (!t.c_prime || !t.a_prime || !t.b_prime) {
            throw Error(ErrorCode::DegenerateTriangle, "cevian parallel to its target side");
        }
        t.foot_ratios = {
            ((*t.c_prime - t.a) / (t.b - t.a)).real(),
            ((*t.a_prime - t.b) / (t.c - t.b)).real(),
            ((*t.b_prime - t.c) / (t.a - t.c)).real(),
        };
    }
    return t;
}

std::pair<double, double> pentagon_feet(const WeightVector& theta, const Label& label) {
    if (label.n() != 5) throw Error(ErrorCode::OutOfRange, "pentagon_feet needs n = 5");
    const auto tri = complete_triangle(theta, label);
    const auto frame = edge_frame(theta, label);
    const auto f1 = line_intersection(tri.a, Complex{1.0, 0.0}, tri.c, frame.dirs[2]);
    const auto f2 = line_intersection(tri.a, Complex{1.0, 0.0}, tri.c, frame.dirs[0]);
    if (!f1 || !f2) throw Error(ErrorCode::FootOutsideBase, "cevian parallel to the base");
    const double x1 = f1->real();
    const double x2 = f2->real();
    if (!(0.0 < x1 && x1 < x2 && x2 < 1.0)) {
        throw Error(ErrorCode::FootOutsideBase, "feet not ordered inside the base");
    }
    return {x1, x2};
}

std::vector<double> truncated_triangle(const WeightVector& theta, const Label& label,
                                       double depth) {
    const auto tri = complete_triangle(theta, label);
    const auto frame = edge_frame(theta, label);
    const auto& d = frame.dirs;
    const int n = label.n();

    // Cut the corner `corner` (which sits between sides `in_dir` and
    // `out_side`) with a segment parallel to `cut`; return its endpoints.
    struct Cut {
        Complex start, end;
    };
    const auto cut_corner = [&](Complex corner, Complex incoming_from, Complex outgoing_to,
                                Complex cut_dir) {
        const Complex end = corner + depth * (outgoing_to - corner);
        const auto start = line_intersection(corner, incoming_from - corner, end, cut_dir);
        if (!start) throw Error(ErrorCode::DegenerateTriangle, "cut parallel to side");
        return Cut{*start, end};
    };

    const Cut at_a = cut_corner(tri.a, tri.c, tri.b, d[0]);
    const Cut at_b = cut_corner(tri.b, tri.a, tri.c, d[2]);
    std::vector<Complex> pts;
    // Vertex sequence: start of edge position 0, 1, ..., n-1.
    pts.push_back(at_a.start);  // x_{i1} begins on ca
    pts.push_back(at_a.end);    // x_{i2} begins on ab
    pts.push_back(at_b.start);  // x_{i3} begins on ab
    pts.push_back(at_b.end);    // x_{i4} begins on bc
    if (n == 5) {
        pts.push_back(tri.c);  // x_{i5} begins at the apex
    } else {
        const Cut at_c = cut_corner(tri.c, tri.b, tri.a, d[4]);
        pts.push_back(at_c.start);
        pts.push_back(at_c.end);
    }
    std::vector<double> edges(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const Complex step = pts[static_cast<std::size_t>((j + 1) % n)] - pts[static_cast<std::size_t>(j)];
        edges[static_cast<std::size_t>(j)] = (step / d[static_cast<std::size_t>(j)]).real();
    }
    // A cut can overshoot the neighbouring side when a corner is very
    // sharp; shallower cuts always fit.
    if (std::any_of(edges.begin(), edges.end(), [](double e) { return !(e > 0.0); })) {
        if (depth < 1e-8) throw Error(ErrorCode::DegenerateTriangle, "no convex truncation");
        return truncated_triangle(theta, label, depth / 4);
    }
    return edges;
}

}  // namespace polymod

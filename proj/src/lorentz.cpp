#include "polymod/lorentz.hpp"

#include <algorithm>
#include <cmath>

#include "polymod/error.hpp"

namespace polymod {

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// Signed base length of T0 for an arbitrary edge vector: the distance from
// a = (last side) x (base side) to b = (base side) x (x_{i4} side).
double t0_base(const EdgeFrame& frame, std::span<const double> edges) {
    const auto z = polygon_vertices(frame, edges);
    const auto& d = frame.dirs;
    const auto last = static_cast<std::size_t>(frame.n() - 1);
    const auto a = line_intersection(z[last], d[last], z[1], d[1]);
    const auto b = line_intersection(z[1], d[1], z[3], d[3]);
    if (!a || !b) throw Error(ErrorCode::DegenerateTriangle, "T0 sides are parallel");
    return ((*b - *a) / d[1]).real();
}

// Area of the triangle cut off by a unit edge at position j, bounded by the
// lines of its neighbours.
double corner_area(const EdgeFrame& frame, int j) {
    const int n = frame.n();
    const auto& d = frame.dirs;
    const Complex p{0.0, 0.0};
    const Complex q = d[static_cast<std::size_t>(j)];
    const auto corner = line_intersection(p, d[static_cast<std::size_t>((j + n - 1) % n)], q,
                                          d[static_cast<std::size_t>((j + 1) % n)]);
    if (!corner) throw Error(ErrorCode::DegenerateTriangle, "corner lines are parallel");
    const Complex tri[] = {p, q, *corner};
    return std::abs(polygon_area(tri));
}

Eigen::VectorXd lorentz_signs(int dim) {
    Eigen::VectorXd s = -Eigen::VectorXd::Ones(dim);
    s(0) = 1.0;
    return s;
}

}  // namespace

LorentzModel LorentzModel::build(const WeightVector& theta, const Label& label) {
    const int n = label.n();
    if (n != 5 && n != 6) throw Error(ErrorCode::OutOfRange, "only n = 5 and n = 6 are supported");
    const int dim = n - 2;

    LorentzModel m(edge_frame(theta, label));
    const auto& d = m.frame_.dirs;

    Eigen::MatrixXd closing(2, n);
    for (int j = 0; j < n; ++j) {
        closing(0, j) = d[static_cast<std::size_t>(j)].real();
        closing(1, j) = d[static_cast<std::size_t>(j)].imag();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(closing);
    m.basis_ = lu.kernel();
    if (m.basis_.cols() != dim) {
        throw Error(ErrorCode::SignatureMismatch, "closing conditions are degenerate");
    }

    m.gram_.resize(dim, dim);
    for (int k = 0; k < dim; ++k) {
        for (int l = k; l < dim; ++l) {
            const Eigen::VectorXd bk = m.basis_.col(k);
            const Eigen::VectorXd bl = m.basis_.col(l);
            m.gram_(k, l) = m.gram_(l, k) = m.inner(bk, bl);
        }
    }

    // Coordinate functionals: x from the scale of T0, then u, v[, w] from
    // the corner triangles at positions 0, 2[, 4].
    const auto tri = complete_triangle(theta, label);
    const Complex ref[] = {tri.a, tri.b, tri.c};
    const double t0_unit_area = polygon_area(ref);
    m.coords_ = Eigen::MatrixXd::Zero(dim, n);
    std::vector<double> unit(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        unit[static_cast<std::size_t>(k)] = 1.0;
        m.coords_(0, k) = t0_base(m.frame_, unit) * std::sqrt(t0_unit_area);
        unit[static_cast<std::size_t>(k)] = 0.0;
    }
    for (int r = 1; r < dim; ++r) {
        const int j = 2 * (r - 1);
        m.coords_(r, j) = std::sqrt(corner_area(m.frame_, j));
    }

    // Orient every coordinate to be positive on a convex polygon.
    const auto reference = truncated_triangle(theta, label);
    const Eigen::Map<const Eigen::VectorXd> ref_edges(reference.data(), n);
    const Eigen::VectorXd ref_coords = m.coords_ * ref_edges;
    for (int r = 0; r < dim; ++r) {
        if (ref_coords(r) < 0.0) m.coords_.row(r) *= -1.0;
    }

    const Eigen::MatrixXd on_basis = m.coords_ * m.basis_;
    const Eigen::MatrixXd diagonalized =
        on_basis.transpose() * lorentz_signs(dim).asDiagonal() * on_basis;
    const double scale = m.gram_.cwiseAbs().maxCoeff();
    if ((diagonalized - m.gram_).cwiseAbs().maxCoeff() > 1e-9 * scale) {
        throw Error(ErrorCode::SignatureMismatch,
                    "coordinate functionals do not diagonalize the area form");
    }

    const Signature sig = m.signature();
    if (sig.positive != 1 || sig.negative != n - 3) {
        throw Error(ErrorCode::SignatureMismatch, "area form is not of signature (1, n-3)");
    }

    m.facets_ = m.basis_ * on_basis.inverse();
    return m;
}

Signature LorentzModel::signature() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_, Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    const double cut = 1e-12 * ev.cwiseAbs().maxCoeff();
    Signature s;
    for (int i = 0; i < ev.size(); ++i) {
        if (ev(i) > cut) {
            ++s.positive;
        } else if (ev(i) < -cut) {
            ++s.negative;
        } else {
            ++s.zero;
        }
    }
    return s;
}

double LorentzModel::area(const Eigen::VectorXd& edges) const {
    const auto e = to_std(edges);
    return edge_polygon_area(frame_, e);
}

double LorentzModel::inner(const Eigen::VectorXd& e1, const Eigen::VectorXd& e2) const {
    return 0.25 * (area(e1 + e2) - area(e1 - e2));
}

Eigen::VectorXd LorentzModel::coordinates(const Eigen::VectorXd& edges) const {
    return coords_ * edges;
}

double LorentzModel::closing_residual(const Eigen::VectorXd& edges) const {
    Complex s{0.0, 0.0};
    for (int j = 0; j < n(); ++j) s += edges(j) * frame_.dirs[static_cast<std::size_t>(j)];
    return std::abs(s);
}

Eigen::VectorXd LorentzModel::vertex(std::span<const int> facets) const {
    Eigen::MatrixXd constraints(static_cast<Eigen::Index>(facets.size()), basis_.cols());
    for (std::size_t r = 0; r < facets.size(); ++r) {
        const int j = facets[r];
        if (j < 0 || j >= n()) throw Error(ErrorCode::OutOfRange, "facet index out of range");
        constraints.row(static_cast<Eigen::Index>(r)) = basis_.row(j);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(constraints);
    const Eigen::MatrixXd ker = lu.kernel();
    if (ker.cols() != 1) throw Error(ErrorCode::NoIntersection, "facets do not cut out a ray");
    Eigen::VectorXd e = basis_ * ker.col(0);
    const double x = coords_.row(0).dot(e);
    if (std::abs(x) <= 1e-13 * e.cwiseAbs().maxCoeff()) {
        throw Error(ErrorCode::NoIntersection, "ray lies in x = 0");
    }
    e /= x;
    for (int j : facets) e(j) = 0.0;
    return e;
}

double KleinPoint::norm() const {
    double s = 0.0;
    for (double c : coords) s += c * c;
    return std::sqrt(s);
}

KleinPoint klein_point(const LorentzModel& model, const Eigen::VectorXd& edges, double tol_ideal) {
    const Eigen::VectorXd c = model.coordinates(edges);
    const double x = c(0);
    if (x <= 0.0) throw Error(ErrorCode::WrongSheet, "x coordinate is not positive");
    const double rel_area = model.area(edges) / (x * x);
    if (rel_area < -tol_ideal) throw Error(ErrorCode::NotTimelike, "area is not positive");
    KleinPoint p;
    p.ideal = std::abs(rel_area) <= tol_ideal;
    for (int i = 1; i < c.size(); ++i) p.coords.push_back(c(i) / x);
    return p;
}

std::vector<double> axis_intercepts(const LorentzModel& model) {
    struct Probe {
        std::vector<int> facets;
        int axis;
    };
    std::vector<Probe> probes;
    if (model.n() == 5) {
        // P on facet 0 at its corner with facet 3, Q on facet 2 at facet 4.
        probes = {{{0, 3}, 2}, {{4, 2}, 1}};
    } else {
        probes = {{{2, 4, 5}, 1}, {{0, 1, 4}, 2}, {{0, 2, 3}, 3}};
    }
    std::vector<double> out;
    for (const auto& probe : probes) {
        const Eigen::VectorXd e = model.vertex(probe.facets);
        const Eigen::VectorXd c = model.coordinates(e);
        const double value = c(probe.axis) / c(0);
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw Error(ErrorCode::NoIntersection, "facet misses the positive axis");
        }
        out.push_back(value);
    }
    return out;
}

double hyperbolic_distance(const LorentzModel& model, const Eigen::VectorXd& e1,
                           const Eigen::VectorXd& e2) {
    const double a1 = model.area(e1);
    const double a2 = model.area(e2);
    if (!(a1 > 0.0) || !(a2 > 0.0)) throw Error(ErrorCode::NotTimelike, "distance needs timelike points");
    const double x1 = model.coordinate_functionals().row(0).dot(e1);
    const double x2 = model.coordinate_functionals().row(0).dot(e2);
    if ((x1 > 0.0) != (x2 > 0.0)) throw Error(ErrorCode::WrongSheet, "points on opposite sheets");
    const double ratio = model.inner(e1, e2) / std::sqrt(a1 * a2);
    return std::acosh(std::max(1.0, ratio));
}

double facet_cosine(const LorentzModel& model, int j, int k) {
    const auto& f = model.facet_functionals();
    if (j < 0 || k < 0 || j >= model.n() || k >= model.n()) {
        throw Error(ErrorCode::OutOfRange, "facet index out of range");
    }
    // Dual form: -g0 h0 + sum gi hi; positive for facets that meet H^{n-3}.
    const auto dual = [&](int a, int b) {
        double s = -f(a, 0) * f(b, 0);
        for (int i = 1; i < f.cols(); ++i) s += f(a, i) * f(b, i);
        return s;
    };
    const double njj = dual(j, j);
    const double nkk = dual(k, k);
    if (!(njj > 0.0) || !(nkk > 0.0)) {
        throw Error(ErrorCode::FacetsDisjoint, "facet plane misses hyperbolic space");
    }
    return -dual(j, k) / std::sqrt(njj * nkk);
}

double dihedral_angle(const LorentzModel& model, int j, int k, double tol_ideal) {
    const double c = facet_cosine(model, j, k);
    if (std::abs(c - 1.0) <= tol_ideal) return 0.0;
    if (c > 1.0 + tol_ideal || c < -1.0 - tol_ideal) {
        throw Error(ErrorCode::FacetsDisjoint, "facets do not meet");
    }
    return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace polymod

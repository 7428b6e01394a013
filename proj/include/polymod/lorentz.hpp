#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "polymod/combinatorics.hpp"
#include "polymod/planar.hpp"

namespace polymod {

inline constexpr double kDefaultTolIdeal = 1e-9;

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;

    bool operator==(const Signature&) const = default;
};

/// The (n-2)-dimensional space E of closing edge-length vectors for one
/// label, with the area quadratic form and the coordinates (x, u, v[, w])
/// in which that form reads x^2 - u^2 - v^2 [- w^2].
///
/// Edge vectors are indexed by frame position: entry j is x_{i_{j+1}}, and
/// facet j is {x_{i_{j+1}} = 0}.
class LorentzModel {
public:
    /// Throws SignatureMismatch if the area form is not of signature
    /// (1, n-3) or the coordinate functionals fail to diagonalize it.
    static LorentzModel build(const WeightVector& theta, const Label& label);

    int n() const { return frame_.n(); }
    const Label& label() const { return frame_.label; }
    const WeightVector& theta() const { return frame_.theta; }
    const EdgeFrame& frame() const { return frame_; }

    /// n x (n-2); columns span E.
    const Eigen::MatrixXd& basis() const { return basis_; }
    /// Area form on the basis coefficients.
    const Eigen::MatrixXd& gram() const { return gram_; }
    /// (n-2) x n; rows are the functionals x, u, v[, w] on edge vectors.
    const Eigen::MatrixXd& coordinate_functionals() const { return coords_; }
    /// n x (n-2); row j expresses facet functional j in (x, u, v[, w]).
    const Eigen::MatrixXd& facet_functionals() const { return facets_; }

    Signature signature() const;

    double area(const Eigen::VectorXd& edges) const;
    double inner(const Eigen::VectorXd& e1, const Eigen::VectorXd& e2) const;
    Eigen::VectorXd coordinates(const Eigen::VectorXd& edges) const;

    /// The closing edge vector on which the given facets vanish (a vertex of
    /// the polyhedron or its extension), scaled to x = 1. Throws
    /// NoIntersection if the facets do not cut out a single ray or the ray
    /// has x = 0.
    Eigen::VectorXd vertex(std::span<const int> facets) const;

    /// Coordinate-free check that a vector closes up.
    double closing_residual(const Eigen::VectorXd& edges) const;

private:
    explicit LorentzModel(EdgeFrame frame) : frame_(std::move(frame)) {}

    EdgeFrame frame_;
    Eigen::MatrixXd basis_;
    Eigen::MatrixXd gram_;
    Eigen::MatrixXd coords_;
    Eigen::MatrixXd facets_;
};

inline LorentzModel build_model(const WeightVector& theta, const Label& label) {
    return LorentzModel::build(theta, label);
}

/// Point of the projective (Klein) model in the slice x = 1.
struct KleinPoint {
    std::vector<double> coords;
    bool ideal = false;

    double norm() const;
};

/// Throws NotTimelike (area below -tol_ideal relative to x^2) or WrongSheet
/// (x <= 0). Points within the band are returned with ideal = true.
KleinPoint klein_point(const LorentzModel& model, const Eigen::VectorXd& edges,
                       double tol_ideal = kDefaultTolIdeal);

/// n = 5: (P, Q); n = 6: (P, Q, R). Euclidean Klein-model distances from
/// the origin vertex to where the cutting facets cross the coordinate axes.
std::vector<double> axis_intercepts(const LorentzModel& model);

double hyperbolic_distance(const LorentzModel& model, const Eigen::VectorXd& e1,
                           const Eigen::VectorXd& e2);

/// -<n_j, n_k> / (|n_j| |n_k|) for the inward facet normals. Values in
/// (-1, 1) are cosines of dihedral angles; |value| > 1 means the facet
/// planes do not meet.
double facet_cosine(const LorentzModel& model, int j, int k);

/// Interior dihedral angle between facets j and k, in [0, pi). Returns 0
/// for tangent facets (cosine within tol_ideal of 1); throws FacetsDisjoint
/// when the planes do not meet.
double dihedral_angle(const LorentzModel& model, int j, int k, double tol_ideal = kDefaultTolIdeal);

}  // namespace polymod

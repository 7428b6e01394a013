#pragma once

// Reference computations that share no code with the library: shapes from
// the law of sines, the area form by brute-force polarization, label
// enumeration by brute force over all permutations.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;
inline const double phi = (1.0 + std::sqrt(5.0)) / 2.0;

// Regular right-angled pentagon: cosh(side) = phi, and the Klein-model
// length of a side through the origin vertex is tanh(side).
inline double regular_right_pentagon_side() { return std::acosh(phi); }
inline double regular_right_pentagon_intercept() { return std::tanh(regular_right_pentagon_side()); }

// theta[k] is the angle of mark k+1; word holds marks in reading order.
inline double th(const std::vector<double>& theta, const std::vector<int>& word, int pos) {
    const int n = static_cast<int>(word.size());
    return theta[static_cast<std::size_t>(word[static_cast<std::size_t>(((pos % n) + n) % n)] - 1)];
}

struct Triangle {
    double alpha, beta, gamma;  // interior angles at 0, 1 and the apex
    std::complex<double> apex;
};

// Base [0, 1]; exterior angles th1+th2 at 0 and th3+th4 at 1.
inline Triangle t0(const std::vector<double>& theta, const std::vector<int>& word) {
    const double alpha = pi - th(theta, word, 0) - th(theta, word, 1);
    const double beta = pi - th(theta, word, 2) - th(theta, word, 3);
    const double gamma = pi - alpha - beta;
    const double side = std::sin(beta) / std::sin(gamma);  // |apex - 0|
    return {alpha, beta, gamma, std::polar(side, alpha)};
}

// n = 5: the feet of the lines through the apex parallel to the edges
// x_{i3} and x_{i1}.
inline std::array<double, 2> psi5(const std::vector<double>& theta, const std::vector<int>& word) {
    const auto t = t0(theta, word);
    const double f1 = t.apex.real() - t.apex.imag() / std::tan(th(theta, word, 2));
    const double f2 = t.apex.real() + t.apex.imag() / std::tan(th(theta, word, 1));
    return {std::sqrt(1.0 - f1), std::sqrt(f2)};
}

// n = 6: cevian ratios by the law of sines.
inline std::array<double, 3> psi6(const std::vector<double>& theta, const std::vector<int>& word) {
    const auto t = t0(theta, word);
    const double t2 = th(theta, word, 1), t3 = th(theta, word, 2), t5 = th(theta, word, 4);
    const double P2 = t.apex.real() + t.apex.imag() / std::tan(t2);
    const double Q2 = std::sin(t3) * std::sin(t.alpha + t.beta) / (std::sin(t3 + t.beta) * std::sin(t.alpha));
    const double R2 = std::sin(t.alpha) * std::sin(t5) / (std::sin(t.beta) * std::sin(t5 + t.gamma));
    return {std::sqrt(P2), std::sqrt(Q2), std::sqrt(R2)};
}

// ---------------------------------------------------------------- area form

struct AreaForm {
    Eigen::MatrixXd basis;  // n x (n-2), closing edge vectors
    Eigen::MatrixXd gram;
};

inline double shoelace(const std::vector<double>& edges, const std::vector<std::complex<double>>& dirs) {
    std::complex<double> z = 0.0;
    std::vector<std::complex<double>> pts{z};
    for (std::size_t j = 0; j < edges.size(); ++j) {
        z += edges[j] * dirs[j];
        pts.push_back(z);
    }
    double a = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        a += pts[k].real() * pts[k + 1].imag() - pts[k + 1].real() * pts[k].imag();
    }
    return 0.5 * a;
}

inline AreaForm area_form(const std::vector<double>& theta, const std::vector<int>& word) {
    const int n = static_cast<int>(word.size());
    std::vector<std::complex<double>> dirs;
    double turn = 0.0;
    for (int j = 0; j < n; ++j) {
        turn += th(theta, word, j);
        dirs.push_back(std::polar(1.0, turn));
    }
    // Closing basis: free edges 2..n-1, edges 0 and 1 solved from closure.
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, n - 2);
    Eigen::Matrix2d m;
    m << dirs[0].real(), dirs[1].real(), dirs[0].imag(), dirs[1].imag();
    for (int k = 2; k < n; ++k) {
        const Eigen::Vector2d rhs(-dirs[static_cast<std::size_t>(k)].real(), -dirs[static_cast<std::size_t>(k)].imag());
        const Eigen::Vector2d sol = m.inverse() * rhs;
        basis(0, k - 2) = sol(0);
        basis(1, k - 2) = sol(1);
        basis(k, k - 2) = 1.0;
    }
    auto area = [&](const Eigen::VectorXd& e) { return shoelace(std::vector<double>(e.data(), e.data() + n), dirs); };
    Eigen::MatrixXd gram(n - 2, n - 2);
    for (int k = 0; k < n - 2; ++k) {
        for (int l = 0; l < n - 2; ++l) {
            gram(k, l) = 0.25 * (area(basis.col(k) + basis.col(l)) - area(basis.col(k) - basis.col(l)));
        }
    }
    return {basis, gram};
}

inline std::array<int, 2> signature(const Eigen::MatrixXd& gram) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    std::array<int, 2> s{0, 0};
    const double cut = 1e-12 * eig.eigenvalues().cwiseAbs().maxCoeff();
    for (int i = 0; i < eig.eigenvalues().size(); ++i) {
        if (eig.eigenvalues()(i) > cut) ++s[0];
        if (eig.eigenvalues()(i) < -cut) ++s[1];
    }
    return s;
}

// Normalized pairing of the facet functionals e -> e_j and e -> e_k under
// the inverse area form: zero iff the facet planes are orthogonal.
inline double facet_pairing(const AreaForm& f, int j, int k) {
    const Eigen::MatrixXd ginv = f.gram.inverse();
    const Eigen::VectorXd bj = f.basis.row(j).transpose();
    const Eigen::VectorXd bk = f.basis.row(k).transpose();
    return bj.dot(ginv * bk) / std::sqrt(std::abs(bj.dot(ginv * bj)) * std::abs(bk.dot(ginv * bk)));
}

// -------------------------------------------------------------- combinatorics

inline std::vector<int> canonical(std::vector<int> w) {
    std::vector<int> best;
    for (int flip = 0; flip < 2; ++flip) {
        for (std::size_t r = 0; r < w.size(); ++r) {
            if (best.empty() || w < best) best = w;
            std::rotate(w.begin(), w.begin() + 1, w.end());
        }
        std::reverse(w.begin(), w.end());
    }
    return best;
}

inline std::set<std::vector<int>> all_labels(int n) {
    std::vector<int> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), 1);
    std::set<std::vector<int>> out;
    do {
        out.insert(canonical(w));
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

// Labels in which the marks of `triple` occupy three consecutive positions.
inline std::set<std::vector<int>> labels_with_consecutive(int n, const std::vector<int>& triple) {
    std::set<std::vector<int>> out;
    for (const auto& w : all_labels(n)) {
        for (int s = 0; s < n; ++s) {
            std::vector<int> window;
            for (int k = 0; k < 3; ++k) window.push_back(w[static_cast<std::size_t>((s + k) % n)]);
            std::sort(window.begin(), window.end());
            if (window == triple) out.insert(w);
        }
    }
    return out;
}

}  // namespace oracle

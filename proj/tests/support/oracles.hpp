// Independent reference computations for tests. Nothing here calls the
// library's numerical kernels.
#pragma once

#include "sepscope/dataset.hpp"
#include "sepscope/md_aggregates.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using sepscope::Index;
using sepscope::Matrix;
using sepscope::Vector;

inline Matrix random_matrix(std::mt19937_64& gen, Index rows, Index cols, double scale = 1.0, double shift = 0.0) {
    std::normal_distribution<double> d(0.0, 1.0);
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) m(r, c) = shift + scale * d(gen);
    return m;
}

inline sepscope::BinaryTask random_task(std::mt19937_64& gen, Index i, Index j, Index n, double offset = 0.5) {
    Matrix a = random_matrix(gen, i, n);
    Matrix b = random_matrix(gen, j, n);
    for (Index r = 0; r < i; ++r) a(r, 0) += offset;
    return sepscope::BinaryTask::from_sets(std::move(a), std::move(b));
}

/// Every a_i - b_j as a row, pair (i, j) at row i*J + j.
inline Matrix md_points(const sepscope::BinaryTask& t) {
    Matrix m(t.i_count() * t.j_count(), t.dim());
    for (Index i = 0; i < t.i_count(); ++i)
        for (Index j = 0; j < t.j_count(); ++j) m.row(i * t.j_count() + j) = t.set_a.row(i) - t.set_b.row(j);
    return m;
}

inline Vector md_sum(const sepscope::BinaryTask& t) {
    Vector s = Vector::Zero(t.dim());
    for (Index i = 0; i < t.i_count(); ++i)
        for (Index j = 0; j < t.j_count(); ++j) s += (t.set_a.row(i) - t.set_b.row(j)).transpose();
    return s;
}

inline Eigen::MatrixXd md_gram(const sepscope::BinaryTask& t) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(t.dim(), t.dim());
    for (Index i = 0; i < t.i_count(); ++i)
        for (Index j = 0; j < t.j_count(); ++j) {
            const Vector m = (t.set_a.row(i) - t.set_b.row(j)).transpose();
            for (Index r = 0; r < t.dim(); ++r)
                for (Index c = 0; c < t.dim(); ++c) g(r, c) += m(r) * m(c);
        }
    return g;
}

struct Tally {
    std::uint64_t pos = 0, neg = 0, zero = 0;
    double abs_sum = 0, signed_sum = 0;
};

/// Sign tally straight from the MD points.
inline Tally md_tally(const sepscope::BinaryTask& t, const Vector& w, double tol) {
    Tally s;
    for (Index i = 0; i < t.i_count(); ++i)
        for (Index j = 0; j < t.j_count(); ++j) {
            double p = 0;
            for (Index k = 0; k < t.dim(); ++k) p += w(k) * t.set_a(i, k) - w(k) * t.set_b(j, k);
            // match the library's alpha - beta rounding when checking counts
            const double d = t.set_a.row(i).dot(w) - t.set_b.row(j).dot(w);
            if (d > tol)
                ++s.pos;
            else if (d < -tol)
                ++s.neg;
            else
                ++s.zero;
            s.abs_sum += std::abs(p);
            s.signed_sum += p;
        }
    return s;
}

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, int sweeps = 100) {
    const Index n = a.rows();
    for (int s = 0; s < sweeps; ++s) {
        double off = 0;
        for (Index p = 0; p < n; ++p)
            for (Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-30 * std::max(1.0, a.squaredNorm())) break;
        for (Index p = 0; p < n; ++p)
            for (Index q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1), sn = t * c;
                for (Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// Symmetric inverse square root through Jacobi-free Eigen decomposition.
inline Eigen::MatrixXd inv_sqrt(const Eigen::MatrixXd& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
           es.eigenvectors().transpose();
}

// ---- exhaustive 2-D geometry

inline constexpr double kPi = 3.14159265358979323846;

/// Unit directions orthogonal to every point difference (both signs), each
/// also rotated by +-eps, so every cell of the direction arrangement is hit.
inline std::vector<Vector> candidate_directions(const Matrix& pts, double eps = 1e-7) {
    std::vector<double> angles;
    for (Index p = 0; p < pts.rows(); ++p)
        for (Index q = p + 1; q < pts.rows(); ++q) {
            const double dx = pts(q, 0) - pts(p, 0), dy = pts(q, 1) - pts(p, 1);
            if (dx == 0 && dy == 0) continue;
            const double base = std::atan2(dy, dx) + kPi / 2;
            for (double flip : {0.0, kPi})
                for (double e : {-eps, 0.0, eps}) angles.push_back(base + flip + e);
        }
    angles.push_back(0.0);
    angles.push_back(kPi / 2);
    angles.push_back(kPi);
    angles.push_back(3 * kPi / 2);
    std::vector<Vector> out;
    for (double a : angles) {
        Vector v(2);
        v << std::cos(a), std::sin(a);
        out.push_back(v);
    }
    return out;
}

/// Line classifiers over every candidate direction and every offset between
/// consecutive projections, A on the positive side.
struct LineSweep {
    Index best_total = 0;  // most points classified correctly
    std::vector<std::pair<Index, Index>> best_splits;  // (correct in A, correct in B) at best_total
};

inline LineSweep line_sweep(const Matrix& a, const Matrix& b) {
    Matrix all(a.rows() + b.rows(), 2);
    all << a, b;
    LineSweep out;
    for (const auto& w : candidate_directions(all)) {
        std::vector<double> pa, pb;
        for (Index i = 0; i < a.rows(); ++i) pa.push_back(a.row(i).dot(w));
        for (Index j = 0; j < b.rows(); ++j) pb.push_back(b.row(j).dot(w));
        std::vector<double> s(pa);
        s.insert(s.end(), pb.begin(), pb.end());
        std::sort(s.begin(), s.end());
        std::vector<double> cuts{s.front() - 1};
        for (std::size_t k = 0; k + 1 < s.size(); ++k)
            if (s[k + 1] > s[k]) cuts.push_back(0.5 * (s[k] + s[k + 1]));
        cuts.push_back(s.back() + 1);
        for (double c : cuts) {
            Index ka = 0, kb = 0;
            for (double v : pa) ka += v > c;
            for (double v : pb) kb += v < c;
            if (ka + kb > out.best_total) {
                out.best_total = ka + kb;
                out.best_splits.clear();
            }
            if (ka + kb == out.best_total &&
                std::find(out.best_splits.begin(), out.best_splits.end(), std::pair{ka, kb}) == out.best_splits.end())
                out.best_splits.emplace_back(ka, kb);
        }
    }
    return out;
}

/// Largest number of points kept with A' strictly above B' along a fixed
/// direction, by enumerating subsets. Both orientations are allowed.
inline Index max_kept_along(const Vector& alpha, const Vector& beta, double tol) {
    const Index n = alpha.size() + beta.size();
    Index best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        double min_a = INFINITY, max_a = -INFINITY, min_b = INFINITY, max_b = -INFINITY;
        Index count = 0;
        for (Index k = 0; k < n; ++k) {
            if (!(mask & (1u << k))) continue;
            ++count;
            if (k < alpha.size()) {
                min_a = std::min(min_a, alpha(k));
                max_a = std::max(max_a, alpha(k));
            } else {
                min_b = std::min(min_b, beta(k - alpha.size()));
                max_b = std::max(max_b, beta(k - alpha.size()));
            }
        }
        const bool up = min_a - max_b > tol || std::isinf(min_a) || std::isinf(max_b);
        const bool down = min_b - max_a > tol || std::isinf(min_b) || std::isinf(max_a);
        if ((up || down) && count > best) best = count;
    }
    return best;
}

}  // namespace oracle

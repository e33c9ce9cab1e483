#include "sepscope/linalg.hpp"

#include "sepscope/errors.hpp"
#include "sepscope/rng.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace sepscope {

SymMatrix SymMatrix::from_dense(const Eigen::MatrixXd& dense) {
    if (dense.rows() != dense.cols())
        throw ShapeError("symmetric matrix must be square, got " + std::to_string(dense.rows()) + "x" +
                         std::to_string(dense.cols()));
    if (!dense.allFinite()) throw DataError("symmetric matrix has non-finite entries");
    const double scale = dense.cwiseAbs().maxCoeff();
    const double asym = (dense - dense.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) throw DataError("matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");
    SymMatrix s(Eigen::MatrixXd(0.5 * (dense + dense.transpose())));
    return s;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
    if (other.order() != order()) throw ShapeError("symmetric matrix orders differ");
    m_ += other.m_;
    return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
    m_ *= s;
    return *this;
}

void SymMatrix::rank1_update(const Vector& u, double weight) {
    if (u.size() != order()) throw ShapeError("rank-1 update length mismatch");
    m_.selfadjointView<Eigen::Lower>().rankUpdate(u, weight);
    mirror_lower();
}

void SymMatrix::rank2_update(const Vector& u, const Vector& v, double weight) {
    if (u.size() != order() || v.size() != order()) throw ShapeError("rank-2 update length mismatch");
    m_.selfadjointView<Eigen::Lower>().rankUpdate(u, v, weight);
    mirror_lower();
}

void SymMatrix::mirror_lower() { m_.triangularView<Eigen::StrictlyUpper>() = m_.transpose(); }

void gram_accumulate(const Eigen::Ref<const Matrix>& x, double weight, SymMatrix& into) {
    if (x.cols() != into.order())
        throw ShapeError("gram_accumulate: " + std::to_string(x.cols()) + " columns for order " +
                         std::to_string(into.order()));
    if (weight == 0.0 || x.rows() == 0) return;
    into.m_.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose(), weight);
    into.mirror_lower();
}

Vector solve_spd_ridge(const SymMatrix& m, const Vector& rhs, double ridge_rel) {
    const Index n = m.order();
    if (rhs.size() != n) throw ShapeError("solve_spd_ridge: rhs length mismatch");
    if (ridge_rel < 0.0) throw ConfigError("ridge_rel must be non-negative");

    Eigen::MatrixXd l = m.dense();
    const double ridge = ridge_rel * m.mean_diag();
    l.diagonal().array() += ridge;

    const double max_diag = n == 0 ? 0.0 : l.diagonal().cwiseAbs().maxCoeff();
    const double floor = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * max_diag;

    // In-place Cholesky on the lower triangle.
    for (Index j = 0; j < n; ++j) {
        double d = l(j, j) - l.row(j).head(j).squaredNorm();
        if (!(d > floor))
            throw SingularError("Cholesky breakdown at pivot " + std::to_string(j) + " (value " +
                                std::to_string(d) + ")");
        const double root = std::sqrt(d);
        l(j, j) = root;
        for (Index i = j + 1; i < n; ++i)
            l(i, j) = (l(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / root;
    }
    Vector x = rhs;
    auto lower = l.triangularView<Eigen::Lower>();
    lower.solveInPlace(x);
    lower.transpose().solveInPlace(x);
    return x;
}

EigenPair power_iter_max_eig(const SymMatrix& m, double tol, int max_iter, std::uint64_t seed) {
    const Index n = m.order();
    if (n == 0) throw ShapeError("power iteration on an empty matrix");
    const auto& a = m.dense();

    // Gershgorin radius bounds the spectrum; shifting by it makes the
    // iteration matrix PSD so the dominant eigenvalue is the largest one.
    const double radius = a.cwiseAbs().rowwise().sum().maxCoeff();
    EigenPair out;
    if (radius == 0.0) {
        out.vector = Vector::Unit(n, 0);
        return out;
    }

    auto rng = make_stream(seed, 0x706F776572ull);
    std::normal_distribution<double> normal;
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = normal(rng);
    v.normalize();

    for (int it = 1; it <= max_iter; ++it) {
        Vector av = a * v;
        const double lambda = v.dot(av);
        const double residual = (av - lambda * v).norm();
        if (residual <= tol * radius) {
            out.value = lambda;
            out.vector = v;
            out.iterations = it;
            return out;
        }
        Vector next = av + radius * v;
        const double norm = next.norm();
        if (norm == 0.0) break;
        v = next / norm;
    }
    throw ConvergenceError("power iteration did not converge in " + std::to_string(max_iter) + " iterations");
}

}  // namespace sepscope

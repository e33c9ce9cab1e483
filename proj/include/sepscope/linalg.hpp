#pragma once

#include "sepscope/types.hpp"

#include <cstdint>

namespace sepscope {

/// Symmetric matrix in full storage. Both triangles are kept bitwise equal.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(Index order) : m_(Eigen::MatrixXd::Zero(order, order)) {}

    /// Accepts a dense matrix that is symmetric to 1e-12 relative and finite;
    /// the result is the exact symmetrization (A + A^T) / 2.
    static SymMatrix from_dense(const Eigen::MatrixXd& dense);

    Index order() const noexcept { return m_.rows(); }
    const Eigen::MatrixXd& dense() const noexcept { return m_; }
    double operator()(Index i, Index j) const { return m_(i, j); }

    double trace() const { return m_.trace(); }
    double mean_diag() const { return order() == 0 ? 0.0 : m_.trace() / static_cast<double>(order()); }
    double quad_form(const Vector& x) const { return x.dot(m_ * x); }
    Vector operator*(const Vector& x) const { return m_ * x; }

    SymMatrix& operator+=(const SymMatrix& other);
    SymMatrix& operator*=(double s);

    /// into += weight * u * u^T
    void rank1_update(const Vector& u, double weight);
    /// into += weight * (u v^T + v u^T)
    void rank2_update(const Vector& u, const Vector& v, double weight);

private:
    explicit SymMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
    void mirror_lower();

    Eigen::MatrixXd m_;

    friend void gram_accumulate(const Eigen::Ref<const Matrix>&, double, SymMatrix&);
};

/// into += weight * X^T X, rows of X being points.
void gram_accumulate(const Eigen::Ref<const Matrix>& x, double weight, SymMatrix& into);

/// Solves (M + ridge_rel * mean_diag(M) * I) x = rhs by Cholesky.
/// Throws SingularError when a pivot is not safely positive.
Vector solve_spd_ridge(const SymMatrix& m, const Vector& rhs, double ridge_rel);

struct EigenPair {
    double value = 0.0;
    Vector vector;
    int iterations = 0;
};

/// Largest (algebraic) eigenvalue by shifted power iteration. The start
/// vector is drawn from `seed`. Converged when ||Mv - lambda v|| <= tol * scale
/// with scale a Gershgorin bound of M.
EigenPair power_iter_max_eig(const SymMatrix& m, double tol = 1e-12, int max_iter = 200000,
                             std::uint64_t seed = 0);

}  // namespace sepscope

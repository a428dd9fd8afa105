#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ahc/errors.hpp"

namespace ahc {

using Cplx = std::complex<double>;

/// Truncated Taylor expansion of a complex scalar at the base point of
/// R^{2n}.  Order 1 carries value + gradient; order 2 adds a symmetric
/// Hessian, with the convention f(x) ~ v + g.x + x^T H x / 2.
///
/// This is the coefficient ring for jet-valued forms: it holds exactly the
/// data needed to evaluate `order` exterior derivatives at the point.
class Jet {
public:
  Jet() = default; // empty placeholder (dim 0); assign before use

  static Jet zero(int dim, int order);
  static Jet constant(Cplx v, int dim, int order);
  /// Germ of c + x^i (a coordinate offset by a constant).
  static Jet coordinate(int i, Cplx c, int dim, int order);

  Cplx value() const { return v_; }
  const Eigen::VectorXcd &grad() const { return g_; }
  const Eigen::MatrixXcd &hess() const { return h_; }
  int dim() const { return static_cast<int>(g_.size()); }
  int order() const { return order_; }

  Cplx &value() { return v_; }
  Eigen::VectorXcd &grad() { return g_; }
  Eigen::MatrixXcd &hess() { return h_; }

  Jet operator-() const;
  Jet &operator+=(const Jet &o);
  Jet &operator-=(const Jet &o);
  friend Jet operator+(Jet a, const Jet &b) { return a += b; }
  friend Jet operator-(Jet a, const Jet &b) { return a -= b; }

  /// Truncated Leibniz product.
  friend Jet jet_mul(const Jet &a, const Jet &b);
  friend Jet operator*(const Jet &a, const Jet &b) { return jet_mul(a, b); }

  /// Reciprocal; requires a nonzero value part.
  Jet reciprocal() const;
  friend Jet operator/(const Jet &a, const Jet &b) {
    return jet_mul(a, b.reciprocal());
  }

  Jet &operator*=(Cplx s);
  friend Jet operator*(Jet a, Cplx s) { return a *= s; }
  friend Jet operator*(Cplx s, Jet a) { return a *= s; }
  friend Jet operator*(Jet a, double s) { return a *= Cplx(s, 0.0); }
  friend Jet operator*(double s, Jet a) { return a *= Cplx(s, 0.0); }

  /// Slot-wise complex conjugate (the jet of the conjugate germ, since the
  /// base coordinates are real).
  Jet conj() const;

  /// Truncation to order 1 (drops the Hessian).
  Jet truncated() const;

  /// Largest absolute value over all slots.
  double max_abs() const;

  bool same_shape(const Jet &o) const {
    return dim() == o.dim() && order_ == o.order_;
  }

private:
  Cplx v_{0.0, 0.0};
  Eigen::VectorXcd g_;
  Eigen::MatrixXcd h_; // 0x0 unless order == 2
  int order_ = 1;

  void check_shape(const Jet &o) const;
};

/// Matrix with Jet entries, stored slot-wise: M(x) = V + sum_i x_i G_i
/// (+ quadratic slots at order 2).  The slot layout is what makes linear
/// solves reduce to repeated scalar solves against one factorization.
class JetMatrix {
public:
  JetMatrix() = default;
  JetMatrix(int rows, int cols, int dim, int order);

  static JetMatrix identity(int size, int dim, int order);

  int rows() const { return static_cast<int>(v_.rows()); }
  int cols() const { return static_cast<int>(v_.cols()); }
  int dim() const { return dim_; }
  int order() const { return order_; }

  const Eigen::MatrixXcd &value() const { return v_; }
  Eigen::MatrixXcd &value() { return v_; }
  const Eigen::MatrixXcd &grad(int i) const { return g_[i]; }
  Eigen::MatrixXcd &grad(int i) { return g_[i]; }
  /// Hessian slot H_{ij} (symmetric in (i,j)).
  const Eigen::MatrixXcd &hess(int i, int j) const { return h_[sym(i, j)]; }
  Eigen::MatrixXcd &hess(int i, int j) { return h_[sym(i, j)]; }

  Jet entry(int r, int c) const;
  void set_entry(int r, int c, const Jet &x);

  JetMatrix transpose() const;
  JetMatrix conjugate() const;
  JetMatrix &operator+=(const JetMatrix &o);
  friend JetMatrix operator+(JetMatrix a, const JetMatrix &b) {
    return a += b;
  }
  friend JetMatrix operator*(const JetMatrix &a, const JetMatrix &b);
  JetMatrix operator*(Cplx s) const;

  std::vector<Jet> col_jets(int c) const;

private:
  int dim_ = 0;
  int order_ = 1;
  Eigen::MatrixXcd v_;
  std::vector<Eigen::MatrixXcd> g_;
  std::vector<Eigen::MatrixXcd> h_;

  int sym(int i, int j) const {
    if (i > j)
      std::swap(i, j);
    return i * dim_ - i * (i - 1) / 2 + (j - i);
  }
  friend JetMatrix jet_solve(const JetMatrix &A, const JetMatrix &B);
};

/// Solve A x = b over the jet ring.  The value part is factorized once
/// (partial-pivot LU) and every derivative slot is a scalar solve against
/// that factorization:
///   A0 x0 = b0,   A0 x_i = b_i - A_i x0,
///   A0 x_{ij} = b_{ij} - A_{ij} x0 - A_i x_j - A_j x_i.
std::vector<Jet> jet_linear_solve(const JetMatrix &A,
                                  const std::vector<Jet> &b);

/// Matrix right-hand-side version of jet_linear_solve.
JetMatrix jet_solve(const JetMatrix &A, const JetMatrix &B);

/// Inverse over the jet ring (value part must be invertible).
JetMatrix jet_inverse(const JetMatrix &A);

/// Determinant over the jet ring, valid even when the value part is
/// singular: slot k of det(M) expands as a sum of determinants with one row
/// replaced by its slot-k derivative.
Jet jet_det(const JetMatrix &M);

} // namespace ahc

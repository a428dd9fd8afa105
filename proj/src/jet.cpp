#include "ahc/jet.hpp"

#include <algorithm>
#include <cmath>

namespace ahc {

namespace {

void check_order(int order) {
  if (order != 1 && order != 2)
    throw DimensionError("jet order must be 1 or 2");
}

} // namespace

Jet Jet::zero(int dim, int order) {
  check_order(order);
  Jet j;
  j.v_ = Cplx(0.0, 0.0);
  j.g_ = Eigen::VectorXcd::Zero(dim);
  j.order_ = order;
  if (order == 2)
    j.h_ = Eigen::MatrixXcd::Zero(dim, dim);
  return j;
}

Jet Jet::constant(Cplx v, int dim, int order) {
  Jet j = zero(dim, order);
  j.v_ = v;
  return j;
}

Jet Jet::coordinate(int i, Cplx c, int dim, int order) {
  if (i < 0 || i >= dim)
    throw DimensionError("coordinate index out of range");
  Jet j = zero(dim, order);
  j.v_ = c;
  j.g_(i) = Cplx(1.0, 0.0);
  return j;
}

void Jet::check_shape(const Jet &o) const {
  if (!same_shape(o))
    throw DimensionError("jet shape mismatch");
}

Jet Jet::operator-() const {
  Jet r = *this;
  r.v_ = -r.v_;
  r.g_ = -r.g_;
  if (order_ == 2)
    r.h_ = -r.h_;
  return r;
}

Jet &Jet::operator+=(const Jet &o) {
  check_shape(o);
  v_ += o.v_;
  g_ += o.g_;
  if (order_ == 2)
    h_ += o.h_;
  return *this;
}

Jet &Jet::operator-=(const Jet &o) {
  check_shape(o);
  v_ -= o.v_;
  g_ -= o.g_;
  if (order_ == 2)
    h_ -= o.h_;
  return *this;
}

Jet jet_mul(const Jet &a, const Jet &b) {
  a.check_shape(b);
  Jet r = Jet::zero(a.dim(), a.order());
  r.v_ = a.v_ * b.v_;
  r.g_ = a.v_ * b.g_ + b.v_ * a.g_;
  if (a.order_ == 2)
    r.h_ = a.v_ * b.h_ + b.v_ * a.h_ + a.g_ * b.g_.transpose() +
           b.g_ * a.g_.transpose();
  return r;
}

Jet Jet::reciprocal() const {
  if (std::abs(v_) == 0.0)
    throw SingularSystemError("jet reciprocal of zero value part");
  Jet r = zero(dim(), order_);
  const Cplx iv = Cplx(1.0, 0.0) / v_;
  r.v_ = iv;
  r.g_ = -(iv * iv) * g_;
  if (order_ == 2)
    r.h_ = (2.0 * iv * iv * iv) * (g_ * g_.transpose()) - (iv * iv) * h_;
  return r;
}

Jet &Jet::operator*=(Cplx s) {
  v_ *= s;
  g_ *= s;
  if (order_ == 2)
    h_ *= s;
  return *this;
}

Jet Jet::conj() const {
  Jet r = *this;
  r.v_ = std::conj(r.v_);
  r.g_ = r.g_.conjugate();
  if (order_ == 2)
    r.h_ = r.h_.conjugate();
  return r;
}

Jet Jet::truncated() const {
  Jet r = zero(dim(), 1);
  r.v_ = v_;
  r.g_ = g_;
  return r;
}

double Jet::max_abs() const {
  double m = std::abs(v_);
  for (int i = 0; i < dim(); ++i)
    m = std::max(m, std::abs(g_(i)));
  if (order_ == 2)
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        m = std::max(m, std::abs(h_(i, j)));
  return m;
}

JetMatrix::JetMatrix(int rows, int cols, int dim, int order)
    : dim_(dim), order_(order) {
  check_order(order);
  v_ = Eigen::MatrixXcd::Zero(rows, cols);
  g_.assign(dim, Eigen::MatrixXcd::Zero(rows, cols));
  if (order == 2)
    h_.assign(dim * (dim + 1) / 2, Eigen::MatrixXcd::Zero(rows, cols));
}

JetMatrix JetMatrix::identity(int size, int dim, int order) {
  JetMatrix m(size, size, dim, order);
  m.v_ = Eigen::MatrixXcd::Identity(size, size);
  return m;
}

Jet JetMatrix::entry(int r, int c) const {
  Jet x = Jet::zero(dim_, order_);
  x.value() = v_(r, c);
  for (int i = 0; i < dim_; ++i)
    x.grad()(i) = g_[i](r, c);
  if (order_ == 2)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        x.hess()(i, j) = h_[sym(i, j)](r, c);
  return x;
}

void JetMatrix::set_entry(int r, int c, const Jet &x) {
  if (x.dim() != dim_ || x.order() != order_)
    throw DimensionError("jet entry shape mismatch");
  v_(r, c) = x.value();
  for (int i = 0; i < dim_; ++i)
    g_[i](r, c) = x.grad()(i);
  if (order_ == 2)
    for (int i = 0; i < dim_; ++i)
      for (int j = i; j < dim_; ++j)
        h_[sym(i, j)](r, c) = x.hess()(i, j);
}

JetMatrix JetMatrix::transpose() const {
  JetMatrix t(cols(), rows(), dim_, order_);
  t.v_ = v_.transpose();
  for (int i = 0; i < dim_; ++i)
    t.g_[i] = g_[i].transpose();
  for (size_t k = 0; k < h_.size(); ++k)
    t.h_[k] = h_[k].transpose();
  return t;
}

JetMatrix JetMatrix::conjugate() const {
  JetMatrix t = *this;
  t.v_ = v_.conjugate();
  for (int i = 0; i < dim_; ++i)
    t.g_[i] = g_[i].conjugate();
  for (size_t k = 0; k < h_.size(); ++k)
    t.h_[k] = h_[k].conjugate();
  return t;
}

JetMatrix &JetMatrix::operator+=(const JetMatrix &o) {
  v_ += o.v_;
  for (int i = 0; i < dim_; ++i)
    g_[i] += o.g_[i];
  for (size_t k = 0; k < h_.size(); ++k)
    h_[k] += o.h_[k];
  return *this;
}

JetMatrix operator*(const JetMatrix &a, const JetMatrix &b) {
  if (a.dim_ != b.dim_ || a.order_ != b.order_ || a.cols() != b.rows())
    throw DimensionError("jet matrix product shape mismatch");
  JetMatrix r(a.rows(), b.cols(), a.dim_, a.order_);
  r.v_ = a.v_ * b.v_;
  for (int i = 0; i < a.dim_; ++i)
    r.g_[i] = a.v_ * b.g_[i] + a.g_[i] * b.v_;
  if (a.order_ == 2)
    for (int i = 0; i < a.dim_; ++i)
      for (int j = i; j < a.dim_; ++j)
        r.h_[r.sym(i, j)] = a.v_ * b.h_[b.sym(i, j)] +
                            a.h_[a.sym(i, j)] * b.v_ + a.g_[i] * b.g_[j] +
                            a.g_[j] * b.g_[i];
  return r;
}

JetMatrix JetMatrix::operator*(Cplx s) const {
  JetMatrix r = *this;
  r.v_ *= s;
  for (int i = 0; i < dim_; ++i)
    r.g_[i] *= s;
  for (size_t k = 0; k < h_.size(); ++k)
    r.h_[k] *= s;
  return r;
}

std::vector<Jet> JetMatrix::col_jets(int c) const {
  std::vector<Jet> out;
  out.reserve(rows());
  for (int r = 0; r < rows(); ++r)
    out.push_back(entry(r, c));
  return out;
}

std::vector<Jet> jet_linear_solve(const JetMatrix &A,
                                  const std::vector<Jet> &b) {
  if (A.rows() != A.cols() || static_cast<int>(b.size()) != A.rows())
    throw DimensionError("jet_linear_solve shape mismatch");
  JetMatrix B(A.rows(), 1, A.dim(), A.order());
  for (int r = 0; r < A.rows(); ++r)
    B.set_entry(r, 0, b[r]);
  return jet_solve(A, B).col_jets(0);
}

JetMatrix jet_solve(const JetMatrix &A, const JetMatrix &B) {
  if (A.rows() != A.cols() || A.rows() != B.rows() || A.dim() != B.dim() ||
      A.order() != B.order())
    throw DimensionError("jet_solve shape mismatch");
  const int d = A.dim();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A.v_);
  const double piv = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(piv > 0.0) || !std::isfinite(piv))
    throw SingularSystemError("jet_solve: singular value part");

  JetMatrix X(A.rows(), B.cols(), d, A.order());
  X.v_ = lu.solve(B.v_);
  for (int i = 0; i < d; ++i)
    X.g_[i] = lu.solve(B.g_[i] - A.g_[i] * X.v_);
  if (A.order() == 2)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j)
        X.h_[X.sym(i, j)] =
            lu.solve(B.h_[B.sym(i, j)] - A.h_[A.sym(i, j)] * X.v_ -
                     A.g_[i] * X.g_[j] - A.g_[j] * X.g_[i]);
  return X;
}

JetMatrix jet_inverse(const JetMatrix &A) {
  return jet_solve(A, JetMatrix::identity(A.rows(), A.dim(), A.order()));
}

Jet jet_det(const JetMatrix &M) {
  if (M.rows() != M.cols())
    throw DimensionError("jet_det needs a square matrix");
  const int n = M.rows();
  const int d = M.dim();
  Jet out = Jet::zero(d, M.order());
  out.value() = M.value().determinant();

  // One row replaced by its slot-i derivative.
  auto det_row_replaced = [&](int row, const Eigen::MatrixXcd &slot) {
    Eigen::MatrixXcd t = M.value();
    t.row(row) = slot.row(row);
    return t.determinant();
  };
  for (int i = 0; i < d; ++i) {
    Cplx s(0.0, 0.0);
    for (int r = 0; r < n; ++r)
      s += det_row_replaced(r, M.grad(i));
    out.grad()(i) = s;
  }
  if (M.order() == 2) {
    // d_i d_j det = sum_r det(row r -> H_{ij} row)
    //             + sum_{r != s} det(rows r,s -> G_i, G_j rows).
    auto det_two_rows = [&](int r, int s, const Eigen::MatrixXcd &a,
                            const Eigen::MatrixXcd &b) {
      Eigen::MatrixXcd t = M.value();
      t.row(r) = a.row(r);
      t.row(s) = b.row(s);
      return t.determinant();
    };
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        Cplx s(0.0, 0.0);
        for (int r = 0; r < n; ++r)
          s += det_row_replaced(r, M.hess(i, j));
        for (int r = 0; r < n; ++r)
          for (int q = 0; q < n; ++q)
            if (q != r)
              s += det_two_rows(r, q, M.grad(i), M.grad(j));
        out.hess()(i, j) = s;
        out.hess()(j, i) = s;
      }
  }
  return out;
}

} // namespace ahc

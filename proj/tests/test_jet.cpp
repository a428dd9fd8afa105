#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ahc/jet.hpp"
#include "ahc/rng.hpp"

using namespace ahc;

namespace {

Jet random_jet(int dim, int order, SplitMix64 &rng) {
  Jet j = Jet::zero(dim, order);
  j.value() = rng.complex_normal();
  for (int i = 0; i < dim; ++i)
    j.grad()(i) = rng.complex_normal();
  if (order == 2)
    for (int i = 0; i < dim; ++i)
      for (int k = i; k < dim; ++k) {
        const Cplx z = rng.complex_normal();
        j.hess()(i, k) = z;
        j.hess()(k, i) = z;
      }
  return j;
}

JetMatrix random_jet_matrix(int rows, int cols, int dim, int order,
                            SplitMix64 &rng) {
  JetMatrix m(rows, cols, dim, order);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m.set_entry(r, c, random_jet(dim, order, rng));
  return m;
}

// Evaluate the truncated Taylor polynomial of a jet at a real point.
Cplx eval_jet(const Jet &j, const Eigen::VectorXd &x) {
  Cplx v = j.value();
  for (int i = 0; i < j.dim(); ++i)
    v += j.grad()(i) * x(i);
  if (j.order() == 2)
    for (int i = 0; i < j.dim(); ++i)
      for (int k = 0; k < j.dim(); ++k)
        v += 0.5 * j.hess()(i, k) * x(i) * x(k);
  return v;
}

Eigen::MatrixXcd eval_jet_matrix(const JetMatrix &m,
                                 const Eigen::VectorXd &x) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      out(r, c) = eval_jet(m.entry(r, c), x);
  return out;
}

double jet_dist(const Jet &a, const Jet &b) { return (a - b).max_abs(); }

} // namespace

TEST_CASE("jet factories") {
  const Jet z = Jet::zero(3, 2);
  CHECK(z.dim() == 3);
  CHECK(z.order() == 2);
  CHECK(z.max_abs() == 0.0);

  const Jet c = Jet::constant(Cplx(2.0, -1.0), 3, 1);
  CHECK(c.value() == Cplx(2.0, -1.0));
  CHECK(c.grad().norm() == 0.0);

  const Jet x1 = Jet::coordinate(1, Cplx(0.5, 0.0), 4, 2);
  CHECK(x1.value() == Cplx(0.5, 0.0));
  CHECK(x1.grad()(1) == Cplx(1.0, 0.0));
  CHECK(x1.grad()(0) == Cplx(0.0, 0.0));
  CHECK(x1.hess().norm() == 0.0);
}

TEST_CASE("jet product matches finite differences of the polynomial") {
  SplitMix64 rng(11);
  const int dim = 3;
  for (int trial = 0; trial < 5; ++trial) {
    const Jet a = random_jet(dim, 2, rng);
    const Jet b = random_jet(dim, 2, rng);
    const Jet p = a * b;

    auto f = [&](const Eigen::VectorXd &x) {
      return eval_jet(a, x) * eval_jet(b, x);
    };
    const double h = 1e-4;
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(dim);
    CHECK(std::abs(p.value() - f(x0)) < 1e-12);
    for (int i = 0; i < dim; ++i) {
      Eigen::VectorXd xp = x0, xm = x0;
      xp(i) += h;
      xm(i) -= h;
      const Cplx d = (f(xp) - f(xm)) / (2.0 * h);
      CHECK(std::abs(p.grad()(i) - d) < 1e-6);
    }
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        Eigen::VectorXd xpp = x0, xpm = x0, xmp = x0, xmm = x0;
        xpp(i) += h;
        xpp(j) += h;
        xpm(i) += h;
        xpm(j) -= h;
        xmp(i) -= h;
        xmp(j) += h;
        xmm(i) -= h;
        xmm(j) -= h;
        const Cplx d2 =
            (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h * h);
        CHECK(std::abs(p.hess()(i, j) - d2) < 1e-5);
      }
  }
}

TEST_CASE("jet ring axioms") {
  SplitMix64 rng(12);
  for (int order : {1, 2}) {
    const int dim = 4;
    const Jet a = random_jet(dim, order, rng);
    const Jet b = random_jet(dim, order, rng);
    const Jet c = random_jet(dim, order, rng);
    CHECK(jet_dist(a * b, b * a) < 1e-13);
    CHECK(jet_dist((a * b) * c, a * (b * c)) < 1e-12);
    CHECK(jet_dist(a * (b + c), a * b + a * c) < 1e-12);
    const Jet one = Jet::constant(Cplx(1.0, 0.0), dim, order);
    CHECK(jet_dist(a * one, a) == 0.0);
  }
}

TEST_CASE("jet reciprocal and division") {
  SplitMix64 rng(13);
  for (int order : {1, 2}) {
    Jet a = random_jet(3, order, rng);
    a.value() += Cplx(3.0, 0.0); // keep well away from zero
    const Jet one = Jet::constant(Cplx(1.0, 0.0), 3, order);
    CHECK(jet_dist(a * a.reciprocal(), one) < 1e-12);
    const Jet b = random_jet(3, order, rng);
    CHECK(jet_dist((b / a) * a, b) < 1e-11);
  }
  Jet z = Jet::zero(3, 1);
  CHECK_THROWS_AS(z.reciprocal(), SingularSystemError);
}

TEST_CASE("jet conj and truncate") {
  SplitMix64 rng(14);
  const Jet a = random_jet(3, 2, rng);
  const Jet b = random_jet(3, 2, rng);
  CHECK(jet_dist((a * b).conj(), a.conj() * b.conj()) < 1e-13);
  const Jet t = a.truncated();
  CHECK(t.order() == 1);
  CHECK(t.value() == a.value());
  CHECK((t.grad() - a.grad()).norm() == 0.0);
}

TEST_CASE("jet_solve inverts the matrix action") {
  SplitMix64 rng(21);
  for (int order : {1, 2}) {
    const int n = 4, dim = 3;
    JetMatrix A = random_jet_matrix(n, n, dim, order, rng);
    for (int i = 0; i < n; ++i) { // diagonal dominance
      Jet d = A.entry(i, i);
      d.value() += Cplx(5.0, 0.0);
      A.set_entry(i, i, d);
    }
    const JetMatrix B = random_jet_matrix(n, 2, dim, order, rng);
    const JetMatrix X = jet_solve(A, B);
    const JetMatrix R = A * X;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < 2; ++c)
        CHECK(jet_dist(R.entry(r, c), B.entry(r, c)) < 1e-11);

    const JetMatrix Ainv = jet_inverse(A);
    const JetMatrix I = JetMatrix::identity(n, dim, order);
    const JetMatrix P = A * Ainv;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        CHECK(jet_dist(P.entry(r, c), I.entry(r, c)) < 1e-11);
  }
}

TEST_CASE("jet_solve rejects singular value parts") {
  JetMatrix A(2, 2, 2, 1); // value part all zero: singular
  JetMatrix B = JetMatrix::identity(2, 2, 1);
  CHECK_THROWS_AS(jet_solve(A, B), SingularSystemError);
}

TEST_CASE("jet_linear_solve agrees with jet_solve") {
  SplitMix64 rng(22);
  const int n = 3, dim = 2, order = 2;
  JetMatrix A = random_jet_matrix(n, n, dim, order, rng);
  for (int i = 0; i < n; ++i) {
    Jet d = A.entry(i, i);
    d.value() += Cplx(4.0, 0.0);
    A.set_entry(i, i, d);
  }
  JetMatrix B = random_jet_matrix(n, 1, dim, order, rng);
  const JetMatrix X = jet_solve(A, B);
  std::vector<Jet> bvec;
  for (int r = 0; r < n; ++r)
    bvec.push_back(B.entry(r, 0));
  const std::vector<Jet> xvec = jet_linear_solve(A, bvec);
  for (int r = 0; r < n; ++r)
    CHECK(jet_dist(xvec[r], X.entry(r, 0)) < 1e-13);
}

TEST_CASE("jet_det matches finite differences") {
  SplitMix64 rng(23);
  for (int order : {1, 2}) {
    const int n = 3, dim = 3;
    const JetMatrix A = random_jet_matrix(n, n, dim, order, rng);
    const Jet d = jet_det(A);

    auto f = [&](const Eigen::VectorXd &x) {
      return eval_jet_matrix(A, x).determinant();
    };
    const double h = 1e-4;
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(dim);
    CHECK(std::abs(d.value() - f(x0)) < 1e-12);
    for (int i = 0; i < dim; ++i) {
      Eigen::VectorXd xp = x0, xm = x0;
      xp(i) += h;
      xm(i) -= h;
      CHECK(std::abs(d.grad()(i) - (f(xp) - f(xm)) / (2.0 * h)) < 1e-6);
    }
    if (order == 2)
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          Eigen::VectorXd xpp = x0, xpm = x0, xmp = x0, xmm = x0;
          xpp(i) += h;
          xpp(j) += h;
          xpm(i) += h;
          xpm(j) -= h;
          xmp(i) -= h;
          xmp(j) += h;
          xmm(i) -= h;
          xmm(j) -= h;
          const Cplx d2 =
              (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h * h);
          CHECK(std::abs(d.hess()(i, j) - d2) < 1e-4);
        }
  }
}

TEST_CASE("jet_det handles singular value parts") {
  // M = diag(x_0, 1): det = x_0, so value 0 with gradient e_0.
  JetMatrix M(2, 2, 2, 2);
  M.set_entry(0, 0, Jet::coordinate(0, Cplx(0.0, 0.0), 2, 2));
  M.set_entry(1, 1, Jet::constant(Cplx(1.0, 0.0), 2, 2));
  const Jet d = jet_det(M);
  CHECK(std::abs(d.value()) == 0.0);
  CHECK(std::abs(d.grad()(0) - Cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(d.grad()(1)) == 0.0);

  // M = diag(x_0, x_1): det = x_0 x_1, pure second order.
  JetMatrix M2(2, 2, 2, 2);
  M2.set_entry(0, 0, Jet::coordinate(0, Cplx(0.0, 0.0), 2, 2));
  M2.set_entry(1, 1, Jet::coordinate(1, Cplx(0.0, 0.0), 2, 2));
  const Jet d2 = jet_det(M2);
  CHECK(d2.value() == Cplx(0.0, 0.0));
  CHECK(d2.grad().norm() == 0.0);
  CHECK(std::abs(d2.hess()(0, 1) - Cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(d2.hess()(0, 0)) == 0.0);
}

TEST_CASE("jet_det multiplicativity") {
  SplitMix64 rng(24);
  const int n = 3, dim = 2, order = 2;
  const JetMatrix A = random_jet_matrix(n, n, dim, order, rng);
  const JetMatrix B = random_jet_matrix(n, n, dim, order, rng);
  CHECK(jet_dist(jet_det(A * B), jet_det(A) * jet_det(B)) < 1e-10);
}

TEST_CASE("jet matrix transpose and conjugate") {
  SplitMix64 rng(25);
  const JetMatrix A = random_jet_matrix(2, 3, 2, 2, rng);
  const JetMatrix At = A.transpose();
  CHECK(At.rows() == 3);
  CHECK(At.cols() == 2);
  CHECK(jet_dist(At.entry(2, 1), A.entry(1, 2)) == 0.0);
  const JetMatrix Ac = A.conjugate();
  CHECK(jet_dist(Ac.entry(0, 1), A.entry(0, 1).conj()) == 0.0);
}

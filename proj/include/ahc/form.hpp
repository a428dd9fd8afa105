#pragma once

#include <bit>
#include <vector>

#include "ahc/errors.hpp"
#include "ahc/jet.hpp"

namespace ahc {

/// Multi-index bookkeeping for the exterior algebra over 2n real covectors.
/// A multi-index is a bitmask over {0,…,2n−1}; canonical order is ascending
/// bit position.  Dimensions up to 2n = 8 are supported.
class BasisTable {
public:
  static const BasisTable &get(int two_n);

  int two_n() const { return two_n_; }
  int full_mask() const { return (1 << two_n_) - 1; }
  int total() const { return 1 << two_n_; }

  const std::vector<int> &masks_of_degree(int k) const {
    return by_degree_.at(k);
  }
  int degree_dim(int k) const {
    return static_cast<int>(by_degree_.at(k).size());
  }
  /// Position of a mask within its own degree's canonical list.
  int pos_in_degree(int mask) const { return pos_[mask]; }
  int complement(int mask) const { return full_mask() & ~mask; }

private:
  explicit BasisTable(int two_n);
  int two_n_;
  std::vector<std::vector<int>> by_degree_;
  std::vector<int> pos_;
};

inline int mask_degree(int mask) { return std::popcount(unsigned(mask)); }

/// Sign of dx^S ∧ dx^T -> dx^{S∪T} in canonical order: (−1)^{inversions},
/// zero when the indices overlap.
inline int wedge_sign(int S, int T) {
  if (S & T)
    return 0;
  int inv = 0;
  for (unsigned t = unsigned(T); t != 0; t &= t - 1) {
    const int p = std::countr_zero(t);
    inv += std::popcount(unsigned(S) >> (p + 1));
  }
  return (inv & 1) ? -1 : 1;
}

inline Cplx ring_conj(const Cplx &z) { return std::conj(z); }
inline Jet ring_conj(const Jet &j) { return j.conj(); }
inline double ring_max_abs(const Cplx &z) { return std::abs(z); }
inline double ring_max_abs(const Jet &j) { return j.max_abs(); }
inline Cplx ring_value(const Cplx &z) { return z; }
inline Cplx ring_value(const Jet &j) { return j.value(); }

/// Complex exterior form at a point, with coefficients in T (complex
/// scalars or Jets).  Storage is dense over all 2^{2n} canonical
/// multi-indices, so inhomogeneous forms are representable; most operators
/// act degree by degree.
template <class T> class Form {
public:
  Form() = default;
  /// zero: prototype zero coefficient (carries dim/order for Jets).
  Form(int two_n, T zero)
      : two_n_(two_n), zero_(zero),
        c_(static_cast<size_t>(1) << two_n, zero) {}

  int two_n() const { return two_n_; }
  int size() const { return static_cast<int>(c_.size()); }
  const T &zero_coeff() const { return zero_; }
  const BasisTable &table() const { return BasisTable::get(two_n_); }

  const T &coeff(int mask) const { return c_[mask]; }
  T &coeff(int mask) { return c_[mask]; }

  Form &operator+=(const Form &o) {
    check(o);
    for (size_t m = 0; m < c_.size(); ++m)
      c_[m] += o.c_[m];
    return *this;
  }
  Form &operator-=(const Form &o) {
    check(o);
    for (size_t m = 0; m < c_.size(); ++m)
      c_[m] -= o.c_[m];
    return *this;
  }
  friend Form operator+(Form a, const Form &b) { return a += b; }
  friend Form operator-(Form a, const Form &b) { return a -= b; }
  Form operator-() const {
    Form r = *this;
    for (auto &x : r.c_)
      x = -x;
    return r;
  }
  Form &operator*=(Cplx s) {
    for (auto &x : c_)
      x = x * s;
    return *this;
  }
  friend Form operator*(Form a, Cplx s) { return a *= s; }
  friend Form operator*(Cplx s, Form a) { return a *= s; }
  friend Form operator*(Form a, double s) { return a *= Cplx(s, 0.0); }
  friend Form operator*(double s, Form a) { return a *= Cplx(s, 0.0); }

  /// Coefficient-wise multiplication by a ring element (e.g. a jet scalar).
  Form scaled_by(const T &t) const {
    Form r = *this;
    for (auto &x : r.c_)
      x = x * t;
    return r;
  }

  Form conj() const {
    Form r = *this;
    for (auto &x : r.c_)
      x = ring_conj(x);
    return r;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto &x : c_)
      m = std::max(m, ring_max_abs(x));
    return m;
  }

  /// Restriction to the degree-k piece.
  Form degree_piece(int k) const {
    Form r(two_n_, zero_);
    for (int mask : table().masks_of_degree(k))
      r.c_[mask] = c_[mask];
    return r;
  }

  /// Largest k whose piece exceeds tol; −1 for the zero form.  Throws if
  /// support spans several degrees beyond tol.
  int homogeneous_degree(double tol = 0.0) const {
    int deg = -1;
    for (int mask = 0; mask < size(); ++mask) {
      if (ring_max_abs(c_[mask]) <= tol)
        continue;
      const int k = mask_degree(mask);
      if (deg == -1)
        deg = k;
      else if (deg != k)
        throw DimensionError("form is not degree-homogeneous");
    }
    return deg;
  }

  bool is_zero(double tol = 0.0) const { return max_abs() <= tol; }

private:
  int two_n_ = 0;
  T zero_{};
  std::vector<T> c_;

  void check(const Form &o) const {
    if (two_n_ != o.two_n_)
      throw DimensionError("form dimension mismatch");
  }
};

using CForm = Form<Cplx>;
using JetForm = Form<Jet>;

template <class T> Form<T> wedge(const Form<T> &a, const Form<T> &b) {
  if (a.two_n() != b.two_n())
    throw DimensionError("wedge dimension mismatch");
  Form<T> r(a.two_n(), a.zero_coeff());
  for (int s = 0; s < a.size(); ++s) {
    if (ring_max_abs(a.coeff(s)) == 0.0)
      continue;
    for (int t = 0; t < b.size(); ++t) {
      if (s & t)
        continue;
      if (ring_max_abs(b.coeff(t)) == 0.0)
        continue;
      const int sg = wedge_sign(s, t);
      const T prod = a.coeff(s) * b.coeff(t);
      if (sg > 0)
        r.coeff(s | t) += prod;
      else
        r.coeff(s | t) -= prod;
    }
  }
  return r;
}

inline CForm value_part(const JetForm &a) {
  CForm r(a.two_n(), Cplx(0.0, 0.0));
  for (int m = 0; m < a.size(); ++m)
    r.coeff(m) = a.coeff(m).value();
  return r;
}

/// Embeds a scalar form as a constant-coefficient jet form.
inline JetForm as_constant_jets(const CForm &a, int dim, int order) {
  JetForm r(a.two_n(), Jet::zero(dim, order));
  for (int m = 0; m < a.size(); ++m)
    r.coeff(m) = Jet::constant(a.coeff(m), dim, order);
  return r;
}

} // namespace ahc

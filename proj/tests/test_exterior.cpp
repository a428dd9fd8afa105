#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ahc/exterior.hpp"

using namespace ahc;

namespace {

CForm basis_form(int two_n, int mask) {
  CForm f(two_n, Cplx(0.0, 0.0));
  f.coeff(mask) = Cplx(1.0, 0.0);
  return f;
}

CForm random_real_cform(int two_n, int k, SplitMix64 &rng) {
  CForm f(two_n, Cplx(0.0, 0.0));
  for (int m : BasisTable::get(two_n).masks_of_degree(k))
    f.coeff(m) = Cplx(rng.normal(), 0.0);
  return f;
}

} // namespace

TEST_CASE("flat star on R^2") {
  const AlmostHermitianStructure s = preset("flat_kahler", 1);
  const CForm one = basis_form(2, 0);
  const CForm dx0 = basis_form(2, 0b01);
  const CForm dx1 = basis_form(2, 0b10);
  const CForm vol = basis_form(2, 0b11);

  CHECK((hodge_star(one, s) - vol).max_abs() < 1e-14);
  CHECK((hodge_star(dx0, s) - dx1).max_abs() < 1e-14);
  CHECK((hodge_star(dx1, s) + dx0).max_abs() < 1e-14);
  CHECK((hodge_star(vol, s) - one).max_abs() < 1e-14);
}

TEST_CASE("flat star on R^4") {
  const AlmostHermitianStructure s = preset("flat_kahler", 2);
  const CForm dx01 = basis_form(4, 0b0011);
  const CForm dx23 = basis_form(4, 0b1100);
  CHECK((hodge_star(dx01, s) - dx23).max_abs() < 1e-14);
  const CForm dx0 = basis_form(4, 0b0001);
  const CForm dx123 = basis_form(4, 0b1110);
  CHECK((hodge_star(dx0, s) - dx123).max_abs() < 1e-14);
  // ⋆ of the full volume form is 1.
  CHECK((hodge_star(basis_form(4, 0b1111), s) - basis_form(4, 0)).max_abs() <
        1e-14);
}

TEST_CASE("star of 1 is the volume form") {
  for (int n : {1, 2, 3}) {
    const AlmostHermitianStructure s = random_structure(100 + n, n, 0.3);
    const JetForm one = as_constant_jets(
        basis_form(s.two_n(), 0), s.two_n(), s.order);
    JetForm voln = s.omega;
    for (int i = 2; i <= n; ++i)
      voln = wedge(voln, s.omega);
    double fact = 1.0;
    for (int i = 2; i <= n; ++i)
      fact *= i;
    voln *= Cplx(1.0 / fact, 0.0);
    CHECK((hodge_star(one, s) - voln).max_abs() < 1e-10);
  }
}

TEST_CASE("star squares to (−1)^k and star_inv inverts") {
  SplitMix64 rng(41);
  for (int n : {1, 2, 3}) {
    const AlmostHermitianStructure s = random_structure(200 + n, n, 0.3);
    for (int k = 0; k <= s.two_n(); ++k) {
      const CForm a = random_cform(s.two_n(), k, rng);
      const CForm ss = hodge_star(hodge_star(a, s), s);
      const CForm expect = (k % 2 == 0) ? a : -a;
      CHECK((ss - expect).max_abs() < 1e-10 * std::max(1.0, a.max_abs()));
      CHECK((hodge_star_inv(hodge_star(a, s), s) - a).max_abs() < 1e-10);

      JetForm ja = random_jetform(s.two_n(), k, s.order, rng);
      const JetForm jss = hodge_star(hodge_star(ja, s), s);
      if (k % 2 != 0)
        ja *= Cplx(-1.0, 0.0);
      CHECK((jss - ja).max_abs() < 1e-9);
    }
  }
}

TEST_CASE("defining property a ∧ ⋆b = ⟨a,b⟩ vol") {
  SplitMix64 rng(42);
  for (int n : {1, 2, 3}) {
    const AlmostHermitianStructure s = random_structure(300 + n, n, 0.3);
    const int full = BasisTable::get(s.two_n()).full_mask();
    for (int k = 0; k <= s.two_n(); ++k)
      for (int t = 0; t < 3; ++t) {
        const CForm a = random_real_cform(s.two_n(), k, rng);
        const CForm b = random_real_cform(s.two_n(), k, rng);
        const Cplx lhs = wedge(a, hodge_star(b, s)).coeff(full);
        const Cplx rhs = inner_product(a, b, s) * s.vol_coeff.value();
        CHECK(std::abs(lhs - rhs) < 1e-10);
      }
  }
}

TEST_CASE("inner product is positive and hermitian") {
  SplitMix64 rng(43);
  const AlmostHermitianStructure s = random_structure(44, 2, 0.3);
  for (int k = 0; k <= 4; ++k) {
    const CForm a = random_cform(4, k, rng);
    const CForm b = random_cform(4, k, rng);
    const Cplx aa = inner_product(a, a, s);
    CHECK(aa.real() > 0.0);
    CHECK(std::abs(aa.imag()) < 1e-12 * aa.real());
    CHECK(std::abs(inner_product(a, b, s) -
                   std::conj(inner_product(b, a, s))) < 1e-11);
    CHECK(form_norm(a, s) == doctest::Approx(std::sqrt(aa.real())));
  }
}

TEST_CASE("Λ is the metric adjoint of L") {
  SplitMix64 rng(45);
  for (int n : {2, 3}) {
    const AlmostHermitianStructure s = random_structure(400 + n, n, 0.3);
    for (int k = 0; k + 2 <= s.two_n(); ++k) {
      const CForm a = random_cform(s.two_n(), k, rng);
      const CForm b = random_cform(s.two_n(), k + 2, rng);
      const Cplx lhs = inner_product(lefschetz_L(a, s), b, s);
      const Cplx rhs = inner_product(a, lambda(b, s), s);
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
  }
}

TEST_CASE("sl2 commutator [Λ,L] = (n−k)·id") {
  SplitMix64 rng(46);
  for (int n : {1, 2, 3}) {
    const AlmostHermitianStructure s = random_structure(500 + n, n, 0.3);
    for (int k = 0; k <= s.two_n() - 2; ++k) {
      const JetForm a = random_jetform(s.two_n(), k, s.order, rng);
      const JetForm comm =
          lambda(lefschetz_L(a, s), s) - lefschetz_L(lambda(a, s), s);
      const JetForm expect = a * Cplx(double(n - k), 0.0);
      CHECK((comm - expect).max_abs() <
            1e-9 * std::max(1.0, a.max_abs()));
    }
  }
}

TEST_CASE("lambda annihilates low degrees") {
  SplitMix64 rng(47);
  const AlmostHermitianStructure s = random_structure(48, 2, 0.3);
  CHECK(lambda(random_cform(4, 0, rng), s).max_abs() == 0.0);
  CHECK(lambda(random_cform(4, 1, rng), s).max_abs() == 0.0);
}

TEST_CASE("bigrade projectors resolve the identity and are orthogonal") {
  SplitMix64 rng(51);
  for (int n : {1, 2, 3}) {
    const AlmostHermitianStructure s = random_structure(600 + n, n, 0.3);
    for (int k = 0; k <= s.two_n(); ++k) {
      const JetForm a = random_jetform(s.two_n(), k, s.order, rng);
      JetForm sum(s.two_n(), a.zero_coeff());
      for (int p = 0; p <= k; ++p) {
        const JetForm pq = bigrade_project(a, p, k - p, s);
        sum += pq;
        // Idempotent.
        CHECK((bigrade_project(pq, p, k - p, s) - pq).max_abs() < 1e-9);
        // Orthogonal to a different bidegree of the same total degree.
        if (p + 1 <= k)
          CHECK(bigrade_project(pq, p + 1, k - p - 1, s).max_abs() < 1e-9);
      }
      CHECK((sum - a).max_abs() < 1e-10);
    }
  }
}

TEST_CASE("(1,0) projection is the +i eigenspace of Jᵀ") {
  SplitMix64 rng(52);
  const AlmostHermitianStructure s = random_structure(53, 2, 0.3);
  const JetForm a = random_jetform(4, 1, 1, rng);
  const JetForm b = bigrade_project(a, 1, 0, s);
  JetMatrix c(4, 1, 4, 1);
  for (int j = 0; j < 4; ++j)
    c.set_entry(j, 0, b.coeff(1 << j));
  const JetMatrix lhs = s.J.transpose() * c;
  const JetMatrix rhs = c * Cplx(0.0, 1.0);
  for (int j = 0; j < 4; ++j)
    CHECK((lhs.entry(j, 0) - rhs.entry(j, 0)).max_abs() < 1e-11);
}

TEST_CASE("ω is of bidegree (1,1)") {
  for (int n : {1, 2, 3}) {
    const AlmostHermitianStructure s = random_structure(700 + n, n, 0.3);
    const JetForm proj = bigrade_project(s.omega, 1, 1, s);
    CHECK((proj - s.omega).max_abs() < 1e-11);
  }
}

TEST_CASE("𝕀 scales pure bidegrees by i^{p−q} and squares to (−1)^k") {
  SplitMix64 rng(54);
  const AlmostHermitianStructure s = random_structure(55, 2, 0.3);
  for (int k = 0; k <= 4; ++k) {
    const JetForm a = random_jetform(4, k, 1, rng);
    // 𝕀² = (−1)^{p+q} = (−1)^k on all of degree k.
    JetForm ii = apply_I(apply_I(a, s), s);
    if (k % 2 != 0)
      ii *= Cplx(-1.0, 0.0);
    CHECK((ii - a).max_abs() < 1e-10);
    CHECK((apply_I_inv(apply_I(a, s), s) - a).max_abs() < 1e-10);
    for (int p = 0; p <= k; ++p) {
      const JetForm pq = bigrade_project(a, p, k - p, s);
      const JetForm scaled = apply_I(pq, s);
      const int e = ((p - (k - p)) % 4 + 4) % 4;
      const Cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      const Cplx f = table[e];
      CHECK((scaled - pq * f).max_abs() < 1e-9);
    }
  }
}

TEST_CASE("Lefschetz decomposition reconstructs and is primitive") {
  SplitMix64 rng(61);
  for (int n : {1, 2, 3}) {
    const AlmostHermitianStructure s = random_structure(800 + n, n, 0.3);
    for (int k = 0; k <= s.two_n(); ++k) {
      const CForm a = random_cform(s.two_n(), k, rng);
      const auto dec = lefschetz_decompose(a, s);
      CHECK(dec.base_degree == k);
      CForm recon(s.two_n(), Cplx(0.0, 0.0));
      for (int r = 0; r <= dec.r_max(); ++r)
        recon += lefschetz_L_pow(dec.alpha(r), r, s);
      CHECK((recon - a).max_abs() < 1e-8 * std::max(1.0, a.max_abs()));
      for (int r = 0; r <= dec.r_max(); ++r)
        CHECK(lambda(dec.alpha(r), s).max_abs() <
              1e-8 * std::max(1.0, a.max_abs()));
      CHECK(dec.alpha(dec.r_max() + 3).max_abs() == 0.0);
    }
  }
}

TEST_CASE("Lefschetz decomposition of L·(primitive) is exact") {
  SplitMix64 rng(62);
  const AlmostHermitianStructure s = random_structure(63, 3, 0.3);
  const CForm seed_form = random_cform(6, 2, rng);
  const CForm beta = lefschetz_decompose(seed_form, s).alpha(0); // primitive
  const CForm a = lefschetz_L(beta, s);
  const auto dec = lefschetz_decompose(a, s);
  CHECK((dec.alpha(1) - beta).max_abs() < 1e-8);
  CHECK(dec.alpha(0).max_abs() < 1e-8);
}

TEST_CASE("jet-level Lefschetz decomposition") {
  SplitMix64 rng(64);
  const AlmostHermitianStructure s = random_structure(65, 2, 0.3);
  for (int k : {2, 3}) {
    const JetForm a = random_jetform(4, k, 1, rng);
    const auto dec = lefschetz_decompose(a, s);
    JetForm recon(4, a.zero_coeff());
    for (int r = 0; r <= dec.r_max(); ++r)
      recon += lefschetz_L_pow(dec.alpha(r), r, s);
    CHECK((recon - a).max_abs() < 1e-8);
    for (int r = 0; r <= dec.r_max(); ++r)
      CHECK(lambda(dec.alpha(r), s).max_abs() < 1e-8);
  }
}

TEST_CASE("star respects the bidegree flip (p,q) → (n−q,n−p)") {
  SplitMix64 rng(66);
  const AlmostHermitianStructure s = random_structure(67, 2, 0.3);
  const int n = 2;
  for (int k = 0; k <= 4; ++k)
    for (int p = 0; p <= k; ++p) {
      const int q = k - p;
      if (p > n || q > n)
        continue;
      const JetForm pq =
          bigrade_project(random_jetform(4, k, 1, rng), p, q, s);
      if (pq.max_abs() < 1e-12)
        continue;
      const JetForm st = hodge_star(pq, s);
      const JetForm back = bigrade_project(st, n - q, n - p, s);
      CHECK((back - st).max_abs() < 1e-9 * std::max(1.0, st.max_abs()));
    }
}

TEST_CASE("degree coefficient round trips") {
  SplitMix64 rng(68);
  const CForm a = random_cform(6, 3, rng);
  const Eigen::VectorXcd c = degree_coeffs(a, 3);
  CHECK(c.size() == 20);
  CHECK((from_degree_coeffs(6, 3, c) - a).max_abs() == 0.0);

  const JetForm ja = random_jetform(4, 2, 2, rng);
  const JetMatrix col = degree_jet_coeffs(ja, 2);
  const JetForm back =
      from_degree_jet_coeffs(4, 2, col, Jet::zero(4, 2));
  CHECK((back - ja).max_abs() == 0.0);
}

TEST_CASE("dimension mismatches are rejected") {
  const AlmostHermitianStructure s = random_structure(69, 2, 0.3);
  const CForm wrong(6, Cplx(0.0, 0.0));
  CHECK_THROWS_AS(hodge_star(wrong, s), DimensionError);
  const JetForm wrong_order(4, Jet::zero(4, 2));
  CHECK_THROWS_AS(hodge_star(wrong_order, s), DimensionError);
}

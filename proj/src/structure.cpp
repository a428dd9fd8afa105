#include "ahc/structure.hpp"

#include <algorithm>
#include <cmath>

#include "ahc/calculus.hpp"
#include "ahc/rng.hpp"

namespace ahc {

namespace {

Eigen::MatrixXcd standard_J0(int two_n) {
  Eigen::MatrixXcd J0 = Eigen::MatrixXcd::Zero(two_n, two_n);
  for (int a = 0; a + 1 < two_n; a += 2) {
    J0(a + 1, a) = Cplx(1.0, 0.0);  // J e_{2a}   =  e_{2a+1}
    J0(a, a + 1) = Cplx(-1.0, 0.0); // J e_{2a+1} = −e_{2a}
  }
  return J0;
}

JetMatrix constant_matrix(const Eigen::MatrixXcd &m, int dim, int order) {
  JetMatrix j(static_cast<int>(m.rows()), static_cast<int>(m.cols()), dim,
              order);
  j.value() = m;
  return j;
}

double slot_max_abs(const JetMatrix &m) {
  double r = m.value().cwiseAbs().maxCoeff();
  for (int i = 0; i < m.dim(); ++i)
    r = std::max(r, m.grad(i).cwiseAbs().maxCoeff());
  if (m.order() == 2)
    for (int i = 0; i < m.dim(); ++i)
      for (int j = i; j < m.dim(); ++j)
        r = std::max(r, m.hess(i, j).cwiseAbs().maxCoeff());
  return r;
}

Eigen::MatrixXcd random_real_matrix(int size, SplitMix64 &rng) {
  Eigen::MatrixXcd m(size, size);
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c)
      m(r, c) = Cplx(rng.uniform(-1.0, 1.0), 0.0);
  return m;
}

Eigen::MatrixXcd random_symmetric(int size, SplitMix64 &rng) {
  Eigen::MatrixXcd m = random_real_matrix(size, rng);
  return 0.5 * (m + m.transpose());
}

JetForm omega_from(const JetMatrix &J, const JetMatrix &g) {
  const int two_n = J.rows();
  const JetMatrix W = J.transpose() * g;
  JetForm omega(two_n, Jet::zero(J.dim(), J.order()));
  for (int i = 0; i < two_n; ++i)
    for (int j = i + 1; j < two_n; ++j)
      omega.coeff((1 << i) | (1 << j)) = W.entry(i, j);
  return omega;
}

} // namespace

AlmostHermitianStructure make_structure(int n, const JetMatrix &J,
                                        const JetMatrix &g,
                                        const std::string &descr) {
  if (n < 1 || n > 4)
    throw DimensionError("complex dimension must be in {1,2,3,4}");
  if (J.rows() != 2 * n || J.cols() != 2 * n || g.rows() != 2 * n ||
      g.cols() != 2 * n || J.dim() != 2 * n || g.dim() != 2 * n ||
      J.order() != g.order())
    throw DimensionError("structure jets must be 2n x 2n over 2n variables");

  AlmostHermitianStructure s;
  s.n = n;
  s.order = J.order();
  s.J = J;
  s.g = g;
  s.omega = omega_from(J, g);

  JetForm voln = s.omega;
  double fact = 1.0;
  for (int i = 2; i <= n; ++i) {
    voln = wedge(voln, s.omega);
    fact *= i;
  }
  voln *= Cplx(1.0 / fact, 0.0);
  s.vol_coeff = voln.coeff((1 << (2 * n)) - 1);

  s.d_omega = exterior_d(s.omega);
  s.descr = descr;
  validate_structure(s);
  return s;
}

void validate_structure(const AlmostHermitianStructure &s, double tol) {
  const int two_n = s.two_n();
  JetMatrix JJ = s.J * s.J;
  JJ.value() += Eigen::MatrixXcd::Identity(two_n, two_n);
  if (slot_max_abs(JJ) > tol)
    throw InternalError("J^2 + I != 0 beyond tolerance");

  JetMatrix compat = s.J.transpose() * s.g * s.J;
  compat += s.g * Cplx(-1.0, 0.0);
  if (slot_max_abs(compat) > tol)
    throw InternalError("J^t g J != g beyond tolerance");

  const Eigen::MatrixXcd gv = s.g.value();
  if (gv.imag().cwiseAbs().maxCoeff() > tol ||
      (gv - gv.transpose()).cwiseAbs().maxCoeff() > tol)
    throw PositivityError("metric value part not real symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gv.real());
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw PositivityError("metric not positive definite at the point");

  JetMatrix W = s.J.transpose() * s.g;
  W += W.transpose();
  if (slot_max_abs(W) > tol)
    throw InternalError("fundamental form not antisymmetric");

  if (std::abs(s.vol_coeff.value()) < 1e-10)
    throw PositivityError("degenerate volume form");
}

AlmostHermitianStructure random_structure(std::uint64_t seed, int n,
                                          double perturbation_scale,
                                          int order) {
  if (n < 1 || n > 4)
    throw DimensionError("complex dimension must be in {1,2,3,4}");
  if (perturbation_scale < 0.0)
    throw ConfigError("perturbation_scale must be nonnegative");
  const int two_n = 2 * n;
  SplitMix64 rng(seed);
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(two_n, two_n);

  for (int attempt = 0; attempt < 100; ++attempt) {
    JetMatrix A(two_n, two_n, two_n, order);
    A.value() = I + perturbation_scale * random_real_matrix(two_n, rng);
    for (int i = 0; i < two_n; ++i)
      A.grad(i) = perturbation_scale * random_real_matrix(two_n, rng);

    JetMatrix h(two_n, two_n, two_n, order);
    h.value() = I + perturbation_scale * random_symmetric(two_n, rng);
    for (int i = 0; i < two_n; ++i)
      h.grad(i) = perturbation_scale * random_symmetric(two_n, rng);
    if (order == 2)
      for (int i = 0; i < two_n; ++i)
        for (int j = i; j < two_n; ++j) {
          const Eigen::MatrixXcd hs =
              perturbation_scale * random_symmetric(two_n, rng);
          h.hess(i, j) = hs;
        }

    // det A > 0 keeps ω^n/n! positively oriented; SPD value for h keeps g
    // a metric.
    if (A.value().real().determinant() < 0.2)
      continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.value().real());
    if (es.eigenvalues().minCoeff() < 0.15)
      continue;

    const JetMatrix J0 = constant_matrix(standard_J0(two_n), two_n, order);
    const JetMatrix J = A * J0 * jet_inverse(A);
    const JetMatrix g = (h + J.transpose() * h * J) * Cplx(0.5, 0.0);
    return make_structure(n, J, g,
                          "random:seed=" + std::to_string(seed) +
                              ":n=" + std::to_string(n));
  }
  throw InternalError("random_structure: no admissible draw after retries");
}

const std::vector<std::string> &preset_names() {
  static const std::vector<std::string> names = {
      "flat_kahler", "hermitian_nonkahler", "almost_kahler_nonintegrable",
      "generic"};
  return names;
}

bool preset_supports(const std::string &name, int n) {
  if (n < 1 || n > 4)
    return false;
  if (name == "hermitian_nonkahler" || name == "almost_kahler_nonintegrable")
    return n >= 2;
  return name == "flat_kahler" || name == "generic";
}

namespace {

constexpr std::uint64_t kGenericPresetSeed = 20260819ULL;

AlmostHermitianStructure almost_kahler_preset(int n, int order) {
  const int two_n = 2 * n;
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(two_n, two_n);
  const JetMatrix J0 = constant_matrix(standard_J0(two_n), two_n, order);
  const JetMatrix h = constant_matrix(I, two_n, order);

  // J = A J₀ A⁻¹ with A = I + Σ_i x^i B_i: the value of dω at the point is
  // an exactly linear function of the B entries, so a random draw is
  // projected onto the kernel of that map.
  const int nb = two_n * two_n * two_n; // (slot i, row r, col c)
  auto build = [&](const Eigen::VectorXd &b, const std::string &descr) {
    JetMatrix A(two_n, two_n, two_n, order);
    A.value() = I;
    int u = 0;
    for (int i = 0; i < two_n; ++i) {
      Eigen::MatrixXcd Bi(two_n, two_n);
      for (int r = 0; r < two_n; ++r)
        for (int c = 0; c < two_n; ++c)
          Bi(r, c) = Cplx(b(u++), 0.0);
      A.grad(i) = Bi;
    }
    const JetMatrix J = A * J0 * jet_inverse(A);
    const JetMatrix g = (h + J.transpose() * h * J) * Cplx(0.5, 0.0);
    return make_structure(n, J, g, descr);
  };
  auto domega_coeffs = [&](const AlmostHermitianStructure &s) {
    const auto &deg3 = BasisTable::get(two_n).masks_of_degree(3);
    Eigen::VectorXd v(deg3.size());
    for (size_t i = 0; i < deg3.size(); ++i)
      v(i) = s.d_omega.coeff(deg3[i]).real();
    return v;
  };

  const int rows = BasisTable::get(two_n).degree_dim(3);
  Eigen::MatrixXd M(rows, nb);
  for (int u = 0; u < nb; ++u)
    M.col(u) = domega_coeffs(build(Eigen::VectorXd::Unit(nb, u), "probe"));

  SplitMix64 rng(0xA1B2C3D4ULL + static_cast<std::uint64_t>(n));
  for (int attempt = 0; attempt < 50; ++attempt) {
    Eigen::VectorXd b(nb);
    for (int u = 0; u < nb; ++u)
      b(u) = 0.4 * rng.uniform(-1.0, 1.0);
    b -= M.completeOrthogonalDecomposition().solve(M * b).eval();
    AlmostHermitianStructure s = build(b, "almost_kahler_nonintegrable");
    if (s.d_omega.max_abs() > 1e-12)
      throw InternalError("almost Kahler constraint solve left dω != 0");
    if (nijenhuis_norm(s) >= 1e-2)
      return s;
  }
  throw InternalError("almost Kahler preset: Nijenhuis degenerate");
}

} // namespace

AlmostHermitianStructure preset(const std::string &name, int n, int order) {
  if (!preset_supports(name, n)) {
    const bool known =
        std::find(preset_names().begin(), preset_names().end(), name) !=
        preset_names().end();
    if (!known)
      throw ConfigError("unknown preset: " + name);
    throw ConfigError("preset " + name + " requires n >= 2 (on R^2 every "
                                         "3-form vanishes and every J is "
                                         "integrable)");
  }
  const int two_n = 2 * n;
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(two_n, two_n);
  const JetMatrix J0 = constant_matrix(standard_J0(two_n), two_n, order);

  if (name == "flat_kahler")
    return make_structure(n, J0, constant_matrix(I, two_n, order),
                          "flat_kahler");

  if (name == "hermitian_nonkahler") {
    // g = e^{x¹}·I: conformal jet, J constant so N_J = 0 while dω ≠ 0.
    JetMatrix g(two_n, two_n, two_n, order);
    g.value() = I;
    g.grad(0) = I;
    if (order == 2)
      g.hess(0, 0) = I;
    return make_structure(n, J0, g, "hermitian_nonkahler");
  }

  if (name == "almost_kahler_nonintegrable")
    return almost_kahler_preset(n, order);

  AlmostHermitianStructure s =
      random_structure(kGenericPresetSeed, n, kDefaultPerturbation, order);
  s.descr = "generic";
  return s;
}

std::vector<Eigen::MatrixXd> nijenhuis(const AlmostHermitianStructure &s) {
  const int two_n = s.two_n();
  const Eigen::MatrixXd Jv = s.J.value().real();
  std::vector<Eigen::MatrixXd> dJ(two_n);
  for (int l = 0; l < two_n; ++l)
    dJ[l] = s.J.grad(l).real();

  std::vector<Eigen::MatrixXd> N(two_n,
                                 Eigen::MatrixXd::Zero(two_n, two_n));
  for (int k = 0; k < two_n; ++k)
    for (int i = 0; i < two_n; ++i)
      for (int j = 0; j < two_n; ++j) {
        double v = 0.0;
        for (int l = 0; l < two_n; ++l)
          v += Jv(l, i) * dJ[l](k, j) - Jv(l, j) * dJ[l](k, i);
        for (int m = 0; m < two_n; ++m)
          v += Jv(k, m) * (dJ[j](m, i) - dJ[i](m, j));
        N[k](i, j) = v;
      }
  return N;
}

double nijenhuis_norm(const AlmostHermitianStructure &s) {
  double sq = 0.0;
  for (const auto &Nk : nijenhuis(s))
    sq += Nk.squaredNorm();
  return std::sqrt(sq);
}

namespace {

nlohmann::json matrix_json(const Eigen::MatrixXcd &m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back(m(r, c).real());
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json jetmatrix_json(const JetMatrix &m) {
  nlohmann::json j;
  j["value"] = matrix_json(m.value());
  nlohmann::json grads = nlohmann::json::array();
  for (int i = 0; i < m.dim(); ++i)
    grads.push_back(matrix_json(m.grad(i)));
  j["gradient"] = grads;
  if (m.order() == 2) {
    nlohmann::json hess = nlohmann::json::array();
    for (int i = 0; i < m.dim(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < m.dim(); ++k)
        row.push_back(matrix_json(m.hess(i, k)));
      hess.push_back(row);
    }
    j["hessian"] = hess;
  }
  return j;
}

} // namespace

nlohmann::json structure_to_json(const AlmostHermitianStructure &s) {
  nlohmann::json j;
  j["n"] = s.n;
  j["order"] = s.order;
  j["descr"] = s.descr;
  j["J"] = jetmatrix_json(s.J);
  j["g"] = jetmatrix_json(s.g);
  return j;
}

} // namespace ahc

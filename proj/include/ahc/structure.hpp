#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "ahc/form.hpp"
#include "ahc/jet.hpp"

namespace ahc {

class ExteriorCache;

/// Almost Hermitian germ at the origin of R^{2n}: an almost complex
/// structure J with J² = −I and a compatible Riemannian metric g, both as
/// first- or second-order jets, together with the derived fundamental
/// 2-form ω, the volume coefficient of ω^n/n!, and the value of dω at the
/// point.  Immutable after construction.
struct AlmostHermitianStructure {
  int n = 0;
  int order = 1;
  JetMatrix J; // 2n x 2n, real entries, J² = −I through jet order
  JetMatrix g; // 2n x 2n, real symmetric positive definite, g(J·,J·) = g
  JetForm omega;     // ω(X,Y) = g(JX,Y), degree 2
  Jet vol_coeff;     // coefficient of dx^{1…2n} in ω^n/n!
  CForm d_omega;     // value of dω at the point (degree 3)
  std::string descr; // preset name or seed tag, for reports

  int two_n() const { return 2 * n; }

  mutable std::shared_ptr<ExteriorCache> cache; // lazy operator tables
};

/// Assembles the derived fields from (n, J, g) and validates the algebraic
/// invariants; the entry point every generator funnels through.
AlmostHermitianStructure make_structure(int n, const JetMatrix &J,
                                        const JetMatrix &g,
                                        const std::string &descr);

/// J = A·J₀·A⁻¹ with A = I + perturbation_scale·(random constant + random
/// linear part); g = (h + JᵀhJ)/2 with h a random SPD jet.  Compatibility
/// and J² = −I hold by construction; det A > 0 is enforced so that ω^n/n!
/// is positively oriented.  Deterministic in (seed, n, scale, order).
AlmostHermitianStructure random_structure(std::uint64_t seed, int n,
                                          double perturbation_scale,
                                          int order = 1);

inline constexpr double kDefaultPerturbation = 0.3;

/// Named example structures:
///   flat_kahler                — standard J₀, g = I (dω = 0, N_J = 0)
///   hermitian_nonkahler        — constant J₀, g = e^{x¹}I (dω ≠ 0, N_J = 0)
///   almost_kahler_nonintegrable — dω = 0 at the point, N_J ≠ 0
///   generic                    — seeded random structure, dω ≠ 0, N_J ≠ 0
/// hermitian_nonkahler and almost_kahler_nonintegrable need n ≥ 2: on R²
/// every 3-form vanishes and every J is integrable, so neither taxon exists.
AlmostHermitianStructure preset(const std::string &name, int n,
                                int order = 1);

const std::vector<std::string> &preset_names();
bool preset_supports(const std::string &name, int n);

/// Nijenhuis tensor at the point from J's value and first derivatives:
/// N(X,Y) = [JX,JY] − J[JX,Y] − J[X,JY] − [X,Y] on coordinate fields.
/// Returned as matrices N[k] with N[k](i,j) the dx^k component on (e_i,e_j).
std::vector<Eigen::MatrixXd> nijenhuis(const AlmostHermitianStructure &s);

double nijenhuis_norm(const AlmostHermitianStructure &s);

/// Checks J²+I = 0 and JᵀgJ−g = 0 in every jet slot, g value SPD, ω
/// antisymmetric, and vol_coeff nonzero.  Throws on violation.
void validate_structure(const AlmostHermitianStructure &s,
                        double tol = 1e-12);

nlohmann::json structure_to_json(const AlmostHermitianStructure &s);

} // namespace ahc

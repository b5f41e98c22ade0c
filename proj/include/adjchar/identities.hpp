/** \file identities.hpp
 *  \brief Random-sample sweep over the coefficient-algebra identities:
 *         determinant factorization and row expansions, the cross-relation
 *         lattice, rank claims, eigenvector properties, and the 3D
 *         streamtrace combinations. OpenMP-parallel with a serial reference
 *         path; both produce identical results for a given seed.
 */
#ifndef ADJCHAR_IDENTITIES_HPP
#define ADJCHAR_IDENTITIES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace adjchar {

/// Test-only fault injection: flips the sign of the C^2_{1y} coefficient so
/// the cxy1 proportionality family must fail.
enum class Fault { none, flip_c21y };

struct SuiteConfig {
  long n_samples = 10000;
  std::uint64_t seed = 1234;
  Fault fault = Fault::none;
  bool parallel = true;
};

struct IdentityCheck {
  std::string name;
  double tol;
  double max_err;  // max over samples of the scaled residual
  bool pass() const { return max_err <= tol; }
};

std::vector<IdentityCheck> run_identity_suite(const SuiteConfig& cfg);

}  // namespace adjchar

#endif

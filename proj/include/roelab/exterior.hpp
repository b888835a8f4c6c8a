#pragma once

#include "roelab/block_operator.hpp"

namespace roelab {

/// Exterior algebra Lambda*(C^d) in the subset basis. Basis element s
/// (a d-bit mask, bit j-1 <-> generator e_j) is the wedge of its members
/// in increasing order; the grading is the parity of popcount(s).
class ExteriorAlgebra {
 public:
  explicit ExteriorAlgebra(int d);

  int generators() const { return d_; }
  int dim() const { return 1 << d_; }
  /// +1 on even forms, -1 on odd forms.
  int parity(int basis_index) const;
  /// Indices of the even / odd subspace in basis order.
  std::vector<int> even_indices() const;
  std::vector<int> odd_indices() const;
  /// Grading involution as a diagonal matrix.
  Matrix grading() const;

 private:
  int d_;
};

/// Wedge operator lambda_v(eta) = v ^ eta on Lambda*(C^d), 2^d x 2^d,
/// with the standard sign convention; linear in v.
Matrix creation(const Vector& v, int d);

/// The normalized Dirac symbol F(n) = (1+||n||^2)^{-1/2} (lambda_n + lambda_n^*)
/// for a real position n. Hermitian, odd, real entries, and
/// F(n)^2 = ||n||^2/(1+||n||^2).
Matrix dirac_f(const Eigen::VectorXd& n);

/// Unitary retraction of the symbol: the odd<-even block of
/// (lambda_n + lambda_n^*)/||n|| in the subset basis, exactly unitary for
/// n != 0; the identity block at n = 0. Scale invariant: u(tn) = u(n), t > 0.
Matrix dirac_phase(const Eigen::VectorXd& n);

/// Self-adjoint odd anticommuting generators gamma_1..gamma_d of the
/// complex Clifford algebra on its irreducible graded module
/// Lambda*(C^{ceil(d/2)}): gamma_{2j-1} = lambda_j + lambda_j^*,
/// gamma_{2j} = i(lambda_j - lambda_j^*). The module has dimension
/// 2^{ceil(d/2)}; the subset-basis grading splits it in half. Used by the
/// index pairing, where the full Lambda*(C^d) module of dirac_f would pair
/// each chirality against its conjugate and cancel.
std::vector<Matrix> spinor_gammas(int d);

/// Odd<-even block of sum_j n_j gamma_j on the irreducible module;
/// for d = 2 this is the 1x1 block n_1 + i n_2.
Matrix spinor_symbol_block(const Eigen::VectorXd& n);

}  // namespace roelab

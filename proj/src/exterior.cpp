#include "roelab/exterior.hpp"

#include <bit>
#include <cmath>

namespace roelab {

ExteriorAlgebra::ExteriorAlgebra(int d) : d_(d) {
  if (d < 1 || d > 12)
    throw Error(Error::Kind::precondition, "exterior algebra dimension must lie in 1..12");
}

int ExteriorAlgebra::parity(int basis_index) const {
  return (std::popcount(static_cast<unsigned>(basis_index)) % 2 == 0) ? 1 : -1;
}

std::vector<int> ExteriorAlgebra::even_indices() const {
  std::vector<int> out;
  for (int s = 0; s < dim(); ++s)
    if (parity(s) == 1) out.push_back(s);
  return out;
}

std::vector<int> ExteriorAlgebra::odd_indices() const {
  std::vector<int> out;
  for (int s = 0; s < dim(); ++s)
    if (parity(s) == -1) out.push_back(s);
  return out;
}

Matrix ExteriorAlgebra::grading() const {
  Matrix g = Matrix::Zero(dim(), dim());
  for (int s = 0; s < dim(); ++s) g(s, s) = parity(s);
  return g;
}

Matrix creation(const Vector& v, int d) {
  ExteriorAlgebra ext(d);
  const int n = ext.dim();
  Matrix out = Matrix::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    for (int j = 0; j < d; ++j) {
      if (s & (1 << j)) continue;  // e_j ^ e_S = 0 when j in S
      // Sign of sorting e_j past the members of S below j.
      const int below = std::popcount(static_cast<unsigned>(s & ((1 << j) - 1)));
      const double sign = (below % 2 == 0) ? 1.0 : -1.0;
      out(s | (1 << j), s) += sign * v(j);
    }
  }
  return out;
}

Matrix dirac_f(const Eigen::VectorXd& n) {
  const int d = static_cast<int>(n.size());
  Matrix lam = creation(n.cast<Complex>(), d);
  Matrix sym = lam + lam.adjoint();
  return sym / std::sqrt(1.0 + n.squaredNorm());
}

Matrix dirac_phase(const Eigen::VectorXd& n) {
  const int d = static_cast<int>(n.size());
  ExteriorAlgebra ext(d);
  auto even = ext.even_indices();
  auto odd = ext.odd_indices();
  const int h = static_cast<int>(even.size());
  const double r = n.norm();
  if (r == 0.0) return Matrix::Identity(h, h);
  Matrix lam = creation(n.cast<Complex>(), d);
  Matrix sym = (lam + lam.adjoint()) / r;
  Matrix u(h, h);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) u(i, j) = sym(odd[i], even[j]);
  return u;
}

std::vector<Matrix> spinor_gammas(int d) {
  const int m = (d + 1) / 2;
  std::vector<Matrix> gammas;
  gammas.reserve(d);
  for (int j = 0; j < d; ++j) {
    Vector e = Vector::Zero(m);
    e(j / 2) = 1.0;
    Matrix lam = creation(e, m);
    if (j % 2 == 0)
      gammas.push_back(lam + lam.adjoint());
    else
      gammas.push_back(Complex(0.0, 1.0) * (lam - lam.adjoint()));
  }
  return gammas;
}

Matrix spinor_symbol_block(const Eigen::VectorXd& n) {
  const int d = static_cast<int>(n.size());
  const int m = (d + 1) / 2;
  ExteriorAlgebra ext(m);
  auto even = ext.even_indices();
  auto odd = ext.odd_indices();
  auto gammas = spinor_gammas(d);
  Matrix sym = Matrix::Zero(ext.dim(), ext.dim());
  for (int j = 0; j < d; ++j) sym += n(j) * gammas[j];
  const int he = static_cast<int>(even.size());
  const int ho = static_cast<int>(odd.size());
  Matrix block(ho, he);
  for (int i = 0; i < ho; ++i)
    for (int j = 0; j < he; ++j) block(i, j) = sym(odd[i], even[j]);
  return block;
}

}  // namespace roelab

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "roelab/lattice.hpp"

namespace roelab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Boundary { open, periodic };

/// Finite-window block operator: one N x N complex block per ordered pair
/// of window sites, stored densely in the window's lexicographic order.
/// The desk-scale avatar of a controlled, locally compact operator; with
/// finite internal dimension N every block is compact for free.
///
/// Geometry for propagation accounting comes either from the lattice
/// coordinates or, when `positions` is set, from a PointSet sharing the
/// window's enumeration. Periodic boundaries wrap distances on the torus.
class BlockOperator {
 public:
  BlockOperator(Window window, int internal_dim, Boundary boundary = Boundary::open);

  static BlockOperator identity(const Window& window, int internal_dim);
  static BlockOperator zero(const Window& window, int internal_dim);

  const Window& window() const { return window_; }
  int internal_dim() const { return n_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  Boundary boundary() const { return boundary_; }

  Matrix& matrix() { return mat_; }
  const Matrix& matrix() const { return mat_; }

  Eigen::Block<Matrix> block(int x, int y) { return mat_.block(x * n_, y * n_, n_, n_); }
  Eigen::Block<const Matrix> block(int x, int y) const {
    return mat_.block(x * n_, y * n_, n_, n_);
  }
  bool block_is_zero(int x, int y) const;

  void set_positions(std::vector<std::vector<double>> positions);
  const std::optional<std::vector<std::vector<double>>>& positions() const { return positions_; }

  /// Euclidean distance between sites x and y in this operator's geometry
  /// (positions if present, lattice otherwise; wrapped when periodic).
  double site_distance(int x, int y) const;

  void set_hermitian_hint(bool h) { hermitian_hint_ = h; }
  bool hermitian_hint() const { return hermitian_hint_; }
  /// Max entrywise deviation from self-adjointness.
  double hermiticity_defect() const;

  bool same_shape(const BlockOperator& other) const;

 private:
  Window window_;
  int n_;
  Boundary boundary_;
  Matrix mat_;
  bool hermitian_hint_ = false;
  std::optional<std::vector<std::vector<double>>> positions_;
};

/// Max over nonzero blocks of the site distance; 0 for diagonal or all-zero
/// operators.
double propagation(const BlockOperator& op);

}  // namespace roelab

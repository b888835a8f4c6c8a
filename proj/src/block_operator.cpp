#include "roelab/block_operator.hpp"

#include <cmath>

namespace roelab {

BlockOperator::BlockOperator(Window window, int internal_dim, Boundary boundary)
    : window_(window), n_(internal_dim), boundary_(boundary) {
  if (internal_dim < 1) throw Error(Error::Kind::precondition, "internal dimension must be >= 1");
  const std::int64_t dim = static_cast<std::int64_t>(window_.size()) * n_;
  if (dim > 20000) throw Error(Error::Kind::precondition, "operator dimension beyond desk scale");
  mat_ = Matrix::Zero(dim, dim);
}

BlockOperator BlockOperator::identity(const Window& window, int internal_dim) {
  BlockOperator op(window, internal_dim);
  op.mat_.setIdentity();
  op.hermitian_hint_ = true;
  return op;
}

BlockOperator BlockOperator::zero(const Window& window, int internal_dim) {
  return BlockOperator(window, internal_dim);
}

bool BlockOperator::block_is_zero(int x, int y) const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (mat_(x * n_ + i, y * n_ + j) != Complex(0.0, 0.0)) return false;
  return true;
}

void BlockOperator::set_positions(std::vector<std::vector<double>> positions) {
  if (static_cast<int>(positions.size()) != window_.size())
    throw Error(Error::Kind::precondition, "positions must match window enumeration");
  positions_ = std::move(positions);
}

double BlockOperator::site_distance(int x, int y) const {
  const int d = window_.dim();
  double acc = 0.0;
  if (positions_) {
    for (int k = 0; k < d; ++k) {
      double diff = (*positions_)[x][k] - (*positions_)[y][k];
      acc += diff * diff;
    }
    return std::sqrt(acc);
  }
  Site sx = window_.site(x);
  Site sy = window_.site(y);
  const int m = window_.side();
  for (int k = 0; k < d; ++k) {
    double diff = std::abs(sx.coords[k] - sy.coords[k]);
    if (boundary_ == Boundary::periodic) diff = std::min(diff, m - diff);
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

double BlockOperator::hermiticity_defect() const {
  return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
}

bool BlockOperator::same_shape(const BlockOperator& other) const {
  return window_.dim() == other.window_.dim() &&
         window_.half_width() == other.window_.half_width() && n_ == other.n_;
}

double propagation(const BlockOperator& op) {
  const int s = op.window().size();
  double best = 0.0;
  for (int x = 0; x < s; ++x)
    for (int y = 0; y < s; ++y) {
      if (x == y || op.block_is_zero(x, y)) continue;
      best = std::max(best, op.site_distance(x, y));
    }
  return best;
}

}  // namespace roelab

#include "roelab/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace roelab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

SpectralData eigendecompose(const BlockOperator& h) {
  if (h.hermiticity_defect() > 1e-12)
    throw Error(Error::Kind::precondition, "eigendecompose: operator is not hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success)
    throw Error(Error::Kind::precondition, "eigendecompose: solver failed");
  SpectralData data;
  data.eigenvalues = solver.eigenvalues();
  data.eigenvectors = solver.eigenvectors();

  const int n = h.dim();
  const int stride = n <= 2048 ? 1 : n / 64;
  double worst = 0.0;
  for (int j = 0; j < n; j += stride) {
    double res =
        (h.matrix() * data.eigenvectors.col(j) - data.eigenvalues(j) * data.eigenvectors.col(j))
            .norm();
    worst = std::max(worst, res);
  }
  data.max_residual = worst;
  return data;
}

GapInfo spectral_gap(const SpectralData& data, double fermi_energy) {
  GapInfo info;
  const auto& ev = data.eigenvalues;
  const int n = static_cast<int>(ev.size());
  if (n == 0) return info;
  double below = -std::numeric_limits<double>::infinity();
  double above = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (std::abs(ev(i) - fermi_energy) <= 1e-12) return info;  // no gap
    if (ev(i) < fermi_energy)
      below = std::max(below, ev(i));
    else
      above = std::min(above, ev(i));
  }
  if (!std::isfinite(below) || !std::isfinite(above)) return info;  // E_F outside spectrum
  info.has_gap = true;
  info.below = below;
  info.above = above;
  info.width = above - below;
  return info;
}

namespace {

FermiProjection projection_from(const SpectralData& data, const BlockOperator& h,
                                double fermi_energy, const GapInfo& gap) {
  FermiProjection out{BlockOperator(h.window(), h.internal_dim(), h.boundary()), fermi_energy, gap,
                      0};
  const int n = h.dim();
  int count = 0;
  while (count < n && data.eigenvalues(count) < fermi_energy) ++count;
  out.rank = count;
  if (count > 0) {
    auto v = data.eigenvectors.leftCols(count);
    out.p.matrix() = v * v.adjoint();
  }
  out.p.set_hermitian_hint(true);
  if (h.positions()) out.p.set_positions(*h.positions());
  return out;
}

}  // namespace

FermiProjection fermi_projection(const SpectralData& data, const BlockOperator& h,
                                 double fermi_energy) {
  GapInfo gap = spectral_gap(data, fermi_energy);
  if (!gap.has_gap)
    throw Error(Error::Kind::precondition, "fermi_projection: no spectral gap at E_F");
  return projection_from(data, h, fermi_energy, gap);
}

FermiProjection fermi_projection_bulk(const SpectralData& data, const BlockOperator& h,
                                      double fermi_energy, const GapInfo& bulk_gap) {
  if (!bulk_gap.has_gap)
    throw Error(Error::Kind::precondition, "fermi_projection_bulk: bulk gap is closed");
  return projection_from(data, h, fermi_energy, bulk_gap);
}

namespace {

/// Strip Hamiltonian at momentum k: width sites across, N internal.
Matrix strip_hamiltonian(const ModelSpec& spec, double k, int width) {
  const int n = spec.N;
  Matrix h = Matrix::Zero(width * n, width * n);
  switch (spec.kind) {
    case ModelKind::hofstadter: {
      const double phi = spec.flux();
      for (int y = 0; y < width; ++y) {
        h(y, y) = 4.0 - 2.0 * std::cos(k + phi * y);
        if (y + 1 < width) {
          h(y + 1, y) = -1.0;
          h(y, y + 1) = -1.0;
        }
      }
      break;
    }
    case ModelKind::ssh_stack: {
      // chain along the periodic direction, stacking across the strip
      Matrix cell(2, 2);
      Complex f = spec.t1 + spec.t2 * std::polar(1.0, -k);
      cell << 0.0, f, std::conj(f), 0.0;
      for (int y = 0; y < width; ++y) {
        h.block(2 * y, 2 * y, 2, 2) = cell;
        if (y + 1 < width) {
          h.block(2 * (y + 1), 2 * y, 2, 2) = spec.interlayer * Matrix::Identity(2, 2);
          h.block(2 * y, 2 * (y + 1), 2, 2) = spec.interlayer * Matrix::Identity(2, 2);
        }
      }
      break;
    }
    case ModelKind::laplacian_potential: {
      for (int y = 0; y < width; ++y) {
        for (int i = 0; i < n; ++i) h(y * n + i, y * n + i) = 2.0 * spec.d - 2.0 * std::cos(k);
        if (y + 1 < width)
          for (int i = 0; i < n; ++i) {
            h((y + 1) * n + i, y * n + i) = -1.0;
            h(y * n + i, (y + 1) * n + i) = -1.0;
          }
      }
      break;
    }
    default:
      throw Error(Error::Kind::precondition, "edge_spectrum: model kind has no clean strip form");
  }
  return h;
}

}  // namespace

EdgeSpectrumResult edge_spectrum(const ModelSpec& spec, double fermi_energy, int width,
                                 int k_points) {
  if (width < 2) throw Error(Error::Kind::precondition, "edge_spectrum: strip too narrow");
  EdgeSpectrumResult result;
  result.fermi_energy = fermi_energy;
  result.width = width;
  result.k_points = k_points;

  const int n = spec.N;
  const int dim = width * n;
  const int quarter = std::max(1, width / 4);

  std::vector<Eigen::VectorXd> energies(k_points);
  std::vector<Matrix> vectors(k_points);
  std::vector<Eigen::VectorXd> lower_w(k_points), upper_w(k_points);

  for (int a = 0; a < k_points; ++a) {
    double k = kTwoPi * a / k_points;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(strip_hamiltonian(spec, k, width));
    energies[a] = solver.eigenvalues();
    vectors[a] = solver.eigenvectors();
    lower_w[a].resize(dim);
    upper_w[a].resize(dim);
    for (int j = 0; j < dim; ++j) {
      double lo = 0.0, hi = 0.0;
      for (int y = 0; y < width; ++y) {
        double w = vectors[a].col(j).segment(y * n, n).squaredNorm();
        if (y < quarter) lo += w;
        if (y >= width - quarter) hi += w;
      }
      lower_w[a](j) = lo;
      upper_w[a](j) = hi;
      result.curve.push_back({k, energies[a](j), lo, hi});
    }
  }

  // Branch continuation by eigenvector overlap, then signed E_F crossings.
  for (int a = 0; a < k_points; ++a) {
    int b = (a + 1) % k_points;
    Eigen::MatrixXd overlap = (vectors[a].adjoint() * vectors[b]).cwiseAbs();
    for (int j = 0; j < dim; ++j) {
      int m;
      overlap.row(j).maxCoeff(&m);
      double e0 = energies[a](j);
      double e1 = energies[b](m);
      int dir = 0;
      if (e0 < fermi_energy && e1 > fermi_energy) dir = +1;
      if (e0 > fermi_energy && e1 < fermi_energy) dir = -1;
      if (dir == 0) continue;
      if (0.5 * (lower_w[a](j) + lower_w[b](m)) > 0.5) result.net_chirality_lower += dir;
      if (0.5 * (upper_w[a](j) + upper_w[b](m)) > 0.5) result.net_chirality_upper += dir;
    }
  }
  return result;
}

}  // namespace roelab

#include "roelab/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "roelab/exterior.hpp"
#include "roelab/rng.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace roelab {

HermitianInertia hermitian_inertia(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  Matrix f = a;  // factored in place
  std::vector<lapack_int> ipiv(n);
  lapack_int info = LAPACKE_zhetrf(LAPACK_COL_MAJOR, 'L', n, f.data(), n, ipiv.data());
  if (info < 0) throw Error(Error::Kind::precondition, "zhetrf: bad argument");
  const bool singular = info > 0;

  HermitianInertia out;
  for (int i = 0; i < n;) {
    if (ipiv[i] > 0) {
      double d = f(i, i).real();
      if (d > 0)
        ++out.n_plus;
      else if (d < 0)
        ++out.n_minus;
      else
        ++out.n_zero;
      ++i;
    } else {
      // 2x2 pivot block [[p, conj(q)], [q, r]]
      double p = f(i, i).real();
      double r = f(i + 1, i + 1).real();
      Complex q = f(i + 1, i);
      double det = p * r - std::norm(q);
      double tr = p + r;
      if (det < 0.0) {
        ++out.n_plus;
        ++out.n_minus;
      } else if (det > 0.0) {
        if (tr > 0)
          out.n_plus += 2;
        else
          out.n_minus += 2;
      } else {
        ++out.n_zero;
        if (tr > 0)
          ++out.n_plus;
        else if (tr < 0)
          ++out.n_minus;
        else
          ++out.n_zero;
      }
      i += 2;
    }
  }

  if (singular) {
    out.sigma_min = 0.0;
    return out;
  }
  // Inverse iteration on the factorization estimates 1/||A^{-1}||.
  SequenceRng rng(12345);
  Vector x(n);
  for (int i = 0; i < n; ++i) x(i) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  x.normalize();
  double growth = 0.0;
  for (int it = 0; it < 30; ++it) {
    Vector y = x;
    LAPACKE_zhetrs(LAPACK_COL_MAJOR, 'L', n, 1, f.data(), n, ipiv.data(), y.data(), n);
    growth = y.norm();
    if (growth == 0.0) break;
    x = y / growth;
  }
  out.sigma_min = growth > 0.0 ? 1.0 / growth : 0.0;
  return out;
}

namespace {

std::vector<double> site_position(const BlockOperator& op, int site_index) {
  const int d = op.window().dim();
  std::vector<double> pos(d);
  if (op.positions()) {
    pos = (*op.positions())[site_index];
  } else {
    Site s = op.window().site(site_index);
    for (int i = 0; i < d; ++i) pos[i] = s.coords[i];
  }
  return pos;
}

}  // namespace

PairingResult index_pairing(const FermiProjection& p, const std::vector<int>& l_list,
                            const PairingOptions& options) {
  const BlockOperator& proj = p.p;
  const Window& win = proj.window();
  const int d = win.dim();
  if (d % 2 != 0)
    throw Error(Error::Kind::precondition, "index_pairing: d must be even (complex pairing)");
  const int n_int = proj.internal_dim();

  std::vector<int> ladder = l_list;
  std::sort(ladder.begin(), ladder.end());
  if (ladder.empty() || ladder.back() > win.half_width())
    throw Error(Error::Kind::precondition, "index_pairing: ladder exceeds the window");

  // Irreducible graded Clifford module: odd<-even symbol block per site.
  const int half_spinor = 1 << (d / 2 - 1);

  PairingResult result;
  result.tau = options.tau;

  for (int L : ladder) {
    // Sites of the sub-window, in window order.
    std::vector<int> keep;
    for (int s = 0; s < win.size(); ++s) {
      Site site = win.site(s);
      bool inside = true;
      for (int c : site.coords)
        if (std::abs(c) > L) { inside = false; break; }
      if (inside) keep.push_back(s);
    }
    const int m = static_cast<int>(keep.size());
    const int nf = m * n_int;

    Matrix p_sub(nf, nf);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        p_sub.block(a * n_int, b * n_int, n_int, n_int) = proj.block(keep[a], keep[b]);

    Matrix h = Matrix::Identity(nf, nf) - 2.0 * p_sub;

    std::vector<double> center = options.center;
    if (center.empty()) center.assign(d, 0.5);
    if (static_cast<int>(center.size()) != d)
      throw Error(Error::Kind::precondition, "index_pairing: center dimension mismatch");

    const int nd = nf * half_spinor;
    Matrix d0 = Matrix::Zero(nd, nd);
    for (int a = 0; a < m; ++a) {
      std::vector<double> pos = site_position(proj, keep[a]);
      Eigen::VectorXd rel(d);
      for (int i = 0; i < d; ++i) rel(i) = pos[i] - center[i];
      Matrix block = spinor_symbol_block(rel);
      for (int i = 0; i < n_int; ++i)
        d0.block((a * n_int + i) * half_spinor, (a * n_int + i) * half_spinor, half_spinor,
                 half_spinor) = block;
    }

    double kappa = options.kappa > 0.0 ? options.kappa : std::clamp(2.5 / L, 0.15, 0.35);

    Matrix loc = Matrix::Zero(2 * nd, 2 * nd);
    for (int a = 0; a < nf; ++a)
      for (int b = 0; b < nf; ++b) {
        Complex v = h(a, b);
        if (v == Complex(0.0, 0.0)) continue;
        for (int s = 0; s < half_spinor; ++s) {
          loc(a * half_spinor + s, b * half_spinor + s) = v;
          loc(nd + a * half_spinor + s, nd + b * half_spinor + s) = -v;
        }
      }
    loc.block(nd, 0, nd, nd) += kappa * d0;
    loc.block(0, nd, nd, nd) += kappa * d0.adjoint();

    HermitianInertia inertia = hermitian_inertia(loc);
    PairingWindowRecord rec;
    rec.L = L;
    rec.kappa = kappa;
    rec.sigma_min = inertia.sigma_min;
    if ((inertia.n_plus - inertia.n_minus) % 2 != 0)
      throw Error(Error::Kind::precondition, "index_pairing: odd signature, localizer degenerate");
    rec.raw_index = options.sign * (inertia.n_plus - inertia.n_minus) / 2;
    rec.n_discarded = inertia.n_zero + (inertia.sigma_min < options.tau ? 1 : 0);
    rec.largest_discarded = inertia.sigma_min < options.tau ? inertia.sigma_min : 0.0;
    rec.ill_conditioned =
        inertia.sigma_min > options.tau / 10.0 && inertia.sigma_min < options.tau * 10.0;
    result.windows.push_back(rec);
  }

  result.index = result.windows.back().raw_index;
  if (result.windows.size() >= 2) {
    const auto& a = result.windows[result.windows.size() - 2];
    const auto& b = result.windows.back();
    result.converged = a.raw_index == b.raw_index;
  } else {
    result.converged = true;
  }
  if (!result.converged) result.warning = "ladder did not converge";
  return result;
}

Tripartition default_tripartition(const Window& window, double radius, double angle0) {
  Tripartition part;
  part.radius = radius;
  part.angle0 = angle0;
  part.touches_boundary = radius > window.half_width() - 1;
  constexpr double third = 2.0 * std::numbers::pi / 3.0;
  for (int s = 0; s < window.size(); ++s) {
    Site site = window.site(s);
    double x = site.coords[0];
    double y = site.coords[1];
    if (x * x + y * y > radius * radius) continue;
    double angle = std::atan2(y, x) - angle0;
    while (angle < 0) angle += 2.0 * std::numbers::pi;
    int sector = static_cast<int>(angle / third);
    if (sector == 0)
      part.a.push_back(s);
    else if (sector == 1)
      part.b.push_back(s);
    else
      part.c.push_back(s);
  }
  return part;
}

double kitaev_chern_oracle(const BlockOperator& p, const Tripartition& sectors) {
  if (p.window().dim() != 2)
    throw Error(Error::Kind::precondition, "kitaev_chern_oracle: d must be 2");
  const int n = p.internal_dim();
  auto slab = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
    Matrix out(rows.size() * n, cols.size() * n);
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j)
        out.block(i * n, j * n, n, n) = p.block(rows[i], cols[j]);
    return out;
  };
  Matrix pab = slab(sectors.a, sectors.b);
  Matrix pbc = slab(sectors.b, sectors.c);
  Matrix pca = slab(sectors.c, sectors.a);
  Complex s = (pab * pbc * pca).trace();
  // 12 pi i (S - conj S) = -24 pi Im S
  return -24.0 * std::numbers::pi * s.imag();
}

}  // namespace roelab

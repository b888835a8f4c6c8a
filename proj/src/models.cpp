#include "roelab/models.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <numeric>

#include "roelab/rng.hpp"

namespace roelab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double potential_draw(const CounterRng& rng, const Site& s, int internal, double amplitude) {
  if (amplitude == 0.0) return 0.0;
  std::uint64_t key = site_key(s.coords) ^ (0x9e3779b97f4a7c15ULL * (internal + 1));
  return rng.uniform_sym(key, amplitude / 2.0);
}

double hop_draw(const CounterRng& rng, const Site& from, int axis, double amplitude) {
  if (amplitude == 0.0) return 0.0;
  std::uint64_t key = site_key(from.coords) ^ (0xda942042e4dd58b5ULL * (axis + 2));
  return rng.uniform_sym(key, amplitude / 2.0);
}

/// Neighbour of `s` along `axis` in +1 direction; false if it leaves the
/// window (open) after optional wrapping (periodic).
bool neighbour(const Window& win, Boundary bc, const Site& s, int axis, Site* out) {
  *out = s;
  out->coords[axis] += 1;
  if (out->coords[axis] > win.half_width()) {
    if (bc == Boundary::open) return false;
    out->coords[axis] = -win.half_width();
  }
  return true;
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::laplacian_potential: return "laplacian_potential";
    case ModelKind::hofstadter: return "hofstadter";
    case ModelKind::ssh_stack: return "ssh_stack";
    case ModelKind::delone_laplacian: return "delone_laplacian";
  }
  return "?";
}

double ModelSpec::flux() const { return kTwoPi * flux_p / flux_q; }

void ModelSpec::validate() const {
  if (d < 1) throw Error(Error::Kind::config, "model dimension must be >= 1");
  if (L < 0) throw Error(Error::Kind::config, "window half-width must be >= 0");
  if (N < 1) throw Error(Error::Kind::config, "internal dimension must be >= 1");
  if (kind == ModelKind::hofstadter) {
    if (d != 2) throw Error(Error::Kind::config, "hofstadter requires d = 2");
    if (flux_q < 1 || flux_q > 64) throw Error(Error::Kind::config, "flux denominator must be 1..64");
    if (bc == Boundary::periodic && (2 * L + 1) % flux_q != 0)
      throw Error(Error::Kind::config, "periodic hofstadter needs q | (2L+1) magnetic periods");
  }
  if (kind == ModelKind::ssh_stack) {
    if (d != 2) throw Error(Error::Kind::config, "ssh_stack requires d = 2");
    if (N != 2) throw Error(Error::Kind::config, "ssh_stack requires N = 2");
    if (stack_axis < 1 || stack_axis > 2) throw Error(Error::Kind::config, "stack axis must be 1 or 2");
  }
  if (kind == ModelKind::delone_laplacian) {
    if (!(delone_amplitude >= 0.0 && delone_amplitude < 0.5))
      throw Error(Error::Kind::config, "delone amplitude must lie in [0, 0.5)");
    if (delone_cutoff <= 1.0) throw Error(Error::Kind::config, "delone cutoff must exceed 1");
  }
}

BlockOperator laplacian(const Window& window, int internal_dim, Boundary bc) {
  BlockOperator op(window, internal_dim, bc);
  const int d = window.dim();
  const int m = window.size();
  Matrix eye = Matrix::Identity(internal_dim, internal_dim);
  for (int x = 0; x < m; ++x) {
    op.block(x, x) = 2.0 * d * eye;
    Site s = window.site(x);
    for (int axis = 0; axis < d; ++axis) {
      Site nb;
      if (!neighbour(window, bc, s, axis, &nb)) continue;
      int y = window.index_of(nb);
      if (y == x) continue;  // periodic side 1
      op.block(y, x) += -eye;
      op.block(x, y) += -eye;
    }
  }
  op.set_hermitian_hint(true);
  return op;
}

namespace {

BlockOperator build_laplacian_potential(const ModelSpec& spec, const DisorderSpec& dis) {
  Window win(spec.d, spec.L);
  CounterRng rng(dis.seed);
  BlockOperator op = laplacian(win, spec.N, spec.bc);
  const int m = win.size();
  for (int x = 0; x < m; ++x) {
    Site s = win.site(x);
    for (int i = 0; i < spec.N; ++i)
      op.block(x, x)(i, i) += potential_draw(rng, s, i, dis.W);
  }
  if (dis.hopping_W != 0.0) {
    for (int x = 0; x < m; ++x) {
      Site s = win.site(x);
      for (int axis = 0; axis < spec.d; ++axis) {
        Site nb;
        if (!neighbour(win, spec.bc, s, axis, &nb)) continue;
        int y = win.index_of(nb);
        if (y == x) continue;
        double scale = 1.0 + hop_draw(rng, s, axis, dis.hopping_W);
        op.block(y, x) *= scale;
        op.block(x, y) *= scale;
      }
    }
  }
  return op;
}

BlockOperator build_ssh_stack(const ModelSpec& spec, const DisorderSpec& dis) {
  Window win(spec.d, spec.L);
  CounterRng rng(dis.seed);
  BlockOperator op(win, 2, spec.bc);
  const int chain_axis = spec.stack_axis == 2 ? 0 : 1;
  const int stack_axis = spec.stack_axis - 1;
  const int m = win.size();
  for (int x = 0; x < m; ++x) {
    Site s = win.site(x);
    Matrix diag = Matrix::Zero(2, 2);
    diag(0, 1) = spec.t1;
    diag(1, 0) = spec.t1;
    diag(0, 0) = potential_draw(rng, s, 0, dis.W);
    diag(1, 1) = potential_draw(rng, s, 1, dis.W);
    op.block(x, x) = diag;

    Site nb;
    if (neighbour(win, spec.bc, s, chain_axis, &nb)) {
      int y = win.index_of(nb);
      if (y != x) {
        double t = spec.t2 * (1.0 + hop_draw(rng, s, chain_axis, dis.hopping_W));
        // intercell bond B(x) -> A(x + e_chain)
        op.block(y, x)(0, 1) += t;
        op.block(x, y)(1, 0) += t;
      }
    }
    if (neighbour(win, spec.bc, s, stack_axis, &nb)) {
      int y = win.index_of(nb);
      if (y != x) {
        double t = spec.interlayer * (1.0 + hop_draw(rng, s, stack_axis, dis.hopping_W));
        op.block(y, x) += t * Matrix::Identity(2, 2);
        op.block(x, y) += t * Matrix::Identity(2, 2);
      }
    }
  }
  op.set_hermitian_hint(true);
  return op;
}

BlockOperator build_delone(const ModelSpec& spec, const DisorderSpec& dis) {
  Window win(spec.d, spec.L);
  double amplitude = spec.delone_amplitude + dis.positional;
  if (!(amplitude < 0.5))
    throw Error(Error::Kind::precondition, "delone amplitude with disorder must stay below 0.5");
  PointSet points = delone_perturb(win, amplitude, dis.seed);
  CounterRng rng(dis.seed);
  BlockOperator op(win, spec.N, spec.bc);
  op.set_positions(points.positions);
  const int m = win.size();
  Matrix eye = Matrix::Identity(spec.N, spec.N);
  for (int x = 0; x < m; ++x) {
    for (int y = x + 1; y < m; ++y) {
      double dist = op.site_distance(x, y);
      if (dist > spec.delone_cutoff) continue;
      double w = std::exp(-(dist - 1.0));
      op.block(x, y) += -w * eye;
      op.block(y, x) += -w * eye;
      op.block(x, x) += w * eye;
      op.block(y, y) += w * eye;
    }
    Site s = win.site(x);
    for (int i = 0; i < spec.N; ++i)
      op.block(x, x)(i, i) += potential_draw(rng, s, i, dis.W);
  }
  op.set_hermitian_hint(true);
  return op;
}

}  // namespace

BlockOperator build_hofstadter_landau(const ModelSpec& spec, const DisorderSpec& dis) {
  spec.validate();
  Window win(spec.d, spec.L);
  CounterRng rng(dis.seed);
  BlockOperator op(win, spec.N, spec.bc);
  const double phi = spec.flux();
  const int m = win.size();
  Matrix eye = Matrix::Identity(spec.N, spec.N);
  for (int x = 0; x < m; ++x) {
    Site s = win.site(x);
    op.block(x, x) = 4.0 * eye;
    for (int i = 0; i < spec.N; ++i) op.block(x, x)(i, i) += potential_draw(rng, s, i, dis.W);
    for (int axis = 0; axis < 2; ++axis) {
      Site nb;
      if (!neighbour(win, spec.bc, s, axis, &nb)) continue;
      int y = win.index_of(nb);
      if (y == x) continue;
      double scale = 1.0 + hop_draw(rng, s, axis, dis.hopping_W);
      // Landau gauge: +x hops carry exp(-i phi x2), +y hops none.
      Complex phase = axis == 0 ? std::polar(1.0, -phi * s.coords[1]) : Complex(1.0, 0.0);
      op.block(y, x) += -scale * phase * eye;
      op.block(x, y) += -scale * std::conj(phase) * eye;
    }
  }
  op.set_hermitian_hint(true);
  return op;
}

BlockOperator build_hamiltonian(const ModelSpec& spec, const DisorderSpec& dis) {
  spec.validate();
  BlockOperator op = [&] {
    switch (spec.kind) {
      case ModelKind::laplacian_potential:
        return build_laplacian_potential(spec, dis);
      case ModelKind::hofstadter: {
        if (spec.bc == Boundary::periodic) {
          // The coboundary gauge below is not q-periodic across the seam;
          // the Landau gauge is, provided q | (2L+1).
          return build_hofstadter_landau(spec, dis);
        }
        ModelSpec clean = spec;
        clean.kind = ModelKind::laplacian_potential;
        BlockOperator base = build_laplacian_potential(clean, dis);
        Window win(spec.d, spec.L);
        Site origin;
        origin.coords.assign(spec.d, 0);
        // The coboundary v(x,y) = w(x,y,e) twists hopping amplitudes with
        // the opposite orientation to the counterclockwise plaquette
        // product, so the model's flux (CCW per plaquette) enters negated.
        GaugeFunction v = untwist(magnetic_cocycle(-spec.flux()), origin, win);
        BlockOperator gauged = apply_gauge(base, v);
        gauged.set_hermitian_hint(true);
        return gauged;
      }
      case ModelKind::ssh_stack:
        return build_ssh_stack(spec, dis);
      case ModelKind::delone_laplacian:
        return build_delone(spec, dis);
    }
    throw Error(Error::Kind::config, "unknown model kind");
  }();

  if (op.hermiticity_defect() > 1e-12)
    throw Error(Error::Kind::precondition, "hamiltonian assembly is not hermitian");
  return op;
}

std::pair<double, double> BandStructure::gap_interval(int index) const {
  if (index < 0 || index + 1 >= static_cast<int>(band_edges.size()))
    throw Error(Error::Kind::precondition, "gap index out of range");
  return {band_edges[index].second, band_edges[index + 1].first};
}

double BandStructure::fermi_in_gap(int index) const {
  auto [lo, hi] = gap_interval(index);
  return 0.5 * (lo + hi);
}

double BandStructure::gap_width(int index) const {
  auto [lo, hi] = gap_interval(index);
  return hi - lo;
}

BandStructure hofstadter_bands(int p, int q, int k_grid) {
  const double phi = kTwoPi * p / q;
  std::vector<double> lo(q, std::numeric_limits<double>::infinity());
  std::vector<double> hi(q, -std::numeric_limits<double>::infinity());
  Matrix h(q, q);
  for (int a = 0; a < k_grid; ++a) {
    double k1 = kTwoPi * a / k_grid;
    for (int b = 0; b < k_grid; ++b) {
      double k2 = kTwoPi * b / k_grid;
      h.setZero();
      for (int m = 0; m < q; ++m) h(m, m) = 4.0 - 2.0 * std::cos(k1 + phi * m);
      if (q == 1) {
        h(0, 0) += -2.0 * std::cos(k2);
      } else {
        for (int m = 0; m < q; ++m) {
          int next = (m + 1) % q;
          Complex hop = -(next == 0 ? std::polar(1.0, k2) : Complex(1.0, 0.0));
          h(next, m) += hop;
          h(m, next) += std::conj(hop);
        }
      }
      Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
      for (int m = 0; m < q; ++m) {
        lo[m] = std::min(lo[m], solver.eigenvalues()(m));
        hi[m] = std::max(hi[m], solver.eigenvalues()(m));
      }
    }
  }
  BandStructure bands;
  for (int m = 0; m < q; ++m) bands.band_edges.emplace_back(lo[m], hi[m]);
  return bands;
}

BandStructure ssh_stack_bands(const ModelSpec& spec, int k_grid) {
  double lo0 = std::numeric_limits<double>::infinity(), hi0 = -lo0;
  double lo1 = lo0, hi1 = -lo0;
  for (int a = 0; a < k_grid; ++a) {
    double kx = kTwoPi * a / k_grid;
    double f = std::abs(spec.t1 + spec.t2 * std::polar(1.0, kx));
    for (int b = 0; b < k_grid; ++b) {
      double ky = kTwoPi * b / k_grid;
      double inter = 2.0 * spec.interlayer * std::cos(ky);
      lo0 = std::min(lo0, -f + inter);
      hi0 = std::max(hi0, -f + inter);
      lo1 = std::min(lo1, f + inter);
      hi1 = std::max(hi1, f + inter);
    }
  }
  BandStructure bands;
  bands.band_edges.emplace_back(lo0, hi0);
  bands.band_edges.emplace_back(lo1, hi1);
  return bands;
}

BandStructure clean_bands(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::hofstadter:
      return hofstadter_bands(spec.flux_p, spec.flux_q);
    case ModelKind::ssh_stack:
      return ssh_stack_bands(spec);
    default:
      throw Error(Error::Kind::precondition,
                  "clean band structure available for hofstadter and ssh_stack only");
  }
}

NeumannResult neumann_resolvent(const BlockOperator& delta, const Vector& v_diag, double c,
                                int order) {
  if (!(c > 0.0)) throw Error(Error::Kind::precondition, "neumann_resolvent: c must be > 0");
  if (order < 0) throw Error(Error::Kind::precondition, "neumann_resolvent: order must be >= 0");
  const int n = delta.dim();
  if (v_diag.size() != n)
    throw Error(Error::Kind::precondition, "neumann_resolvent: potential size mismatch");

  Matrix a = delta.matrix();
  a.diagonal().array() += Complex(0.0, c);
  Matrix r = a.partialPivLu().inverse();
  Matrix k = r * v_diag.asDiagonal();
  const double contraction = k.bdcSvd().singularValues()(0);
  if (!(contraction < 1.0))
    throw Error(Error::Kind::precondition,
                "neumann_resolvent: contraction factor " + std::to_string(contraction) +
                    " is not below 1");

  Matrix full = a;
  full += Matrix(v_diag.asDiagonal());
  Matrix acc = r;
  Matrix cur = r;
  NeumannResult result{BlockOperator(delta.window(), delta.internal_dim(), delta.boundary()),
                       contraction,
                       {},
                       {},
                       0.0};
  auto record = [&](int ord) {
    double res = (full * acc - Matrix::Identity(n, n)).bdcSvd().singularValues()(0);
    result.residuals.push_back(res);
    result.bounds.push_back(std::pow(contraction, ord + 1) / (1.0 - contraction));
  };
  record(0);
  for (int ord = 1; ord <= order; ++ord) {
    cur = -(k * cur);
    acc += cur;
    record(ord);
  }
  result.resolvent.matrix() = acc;
  if (delta.positions()) result.resolvent.set_positions(*delta.positions());

  // Per-order decay rate of the residual, geometric mean over the second
  // half of the ladder where transients have died out.
  int first = result.residuals.size() > 4 ? static_cast<int>(result.residuals.size()) / 2 : 1;
  int last = static_cast<int>(result.residuals.size()) - 1;
  if (last > first && result.residuals[first] > 0.0 && result.residuals[last] > 0.0) {
    result.measured_rate =
        std::pow(result.residuals[last] / result.residuals[first], 1.0 / (last - first));
  }
  return result;
}

}  // namespace roelab

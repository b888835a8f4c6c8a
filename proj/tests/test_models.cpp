#include <cmath>
#include <numbers>

#include "doctest.h"
#include "roelab/models.hpp"
#include "roelab/rng.hpp"
#include "roelab/roe_ops.hpp"
#include "roelab/spectral.hpp"

using namespace roelab;

TEST_CASE("clean periodic laplacian matches the cosine band") {
  ModelSpec spec;
  spec.kind = ModelKind::laplacian_potential;
  spec.d = 1;
  spec.L = 10;
  spec.N = 1;
  spec.bc = Boundary::periodic;
  BlockOperator h = build_hamiltonian(spec, DisorderSpec{});
  SpectralData data = eigendecompose(h);

  const int m = 2 * spec.L + 1;
  std::vector<double> expected;
  for (int k = 0; k < m; ++k)
    expected.push_back(2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / m));
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < m; ++i)
    CHECK(data.eigenvalues(i) == doctest::Approx(expected[i]).epsilon(1e-10));
}

TEST_CASE("hamiltonians are hermitian and local") {
  DisorderSpec dis;
  dis.W = 0.5;
  dis.seed = 4;

  ModelSpec lap;
  lap.kind = ModelKind::laplacian_potential;
  lap.d = 2;
  lap.L = 3;
  BlockOperator h = build_hamiltonian(lap, dis);
  CHECK(h.hermiticity_defect() <= 1e-12);
  CHECK(propagation(h) == 1.0);

  ModelSpec hof;
  hof.kind = ModelKind::hofstadter;
  hof.d = 2;
  hof.L = 3;
  BlockOperator hh = build_hamiltonian(hof, dis);
  CHECK(hh.hermiticity_defect() <= 1e-12);
  CHECK(propagation(hh) == 1.0);

  ModelSpec ssh;
  ssh.kind = ModelKind::ssh_stack;
  ssh.d = 2;
  ssh.L = 3;
  ssh.N = 2;
  BlockOperator hs = build_hamiltonian(ssh, dis);
  CHECK(hs.hermiticity_defect() <= 1e-12);
  CHECK(propagation(hs) == 1.0);
}

TEST_CASE("determinism: same spec and seed give bit-identical operators") {
  ModelSpec spec;
  spec.kind = ModelKind::hofstadter;
  spec.d = 2;
  spec.L = 4;
  DisorderSpec dis;
  dis.W = 1.3;
  dis.seed = 99;
  BlockOperator a = build_hamiltonian(spec, dis);
  BlockOperator b = build_hamiltonian(spec, dis);
  CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("clean models are translation covariant away from open boundaries") {
  ModelSpec spec;
  spec.kind = ModelKind::laplacian_potential;
  spec.d = 2;
  spec.L = 4;
  BlockOperator h = build_hamiltonian(spec, DisorderSpec{});
  Window win(2, 4);
  // compare blocks at equal offsets between interior sites
  for (int x = 0; x < win.size(); ++x) {
    Site sx = win.site(x);
    if (std::abs(sx.coords[0]) > 2 || std::abs(sx.coords[1]) > 2) continue;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        Site sy{{sx.coords[0] + dx, sx.coords[1] + dy}};
        Site ox{{0, 0}}, oy{{dx, dy}};
        double diff = (h.block(x, win.index_of(sy)) -
                       h.block(win.index_of(ox), win.index_of(oy)))
                          .cwiseAbs()
                          .maxCoeff();
        CHECK(diff == 0.0);
      }
  }
}

TEST_CASE("hofstadter with zero flux equals the clean laplacian") {
  ModelSpec hof;
  hof.kind = ModelKind::hofstadter;
  hof.d = 2;
  hof.L = 3;
  hof.flux_p = 0;
  hof.flux_q = 1;
  ModelSpec lap = hof;
  lap.kind = ModelKind::laplacian_potential;
  BlockOperator a = build_hamiltonian(hof, DisorderSpec{});
  BlockOperator b = build_hamiltonian(lap, DisorderSpec{});
  CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cocycle and Landau gauges agree") {
  ModelSpec spec;
  spec.kind = ModelKind::hofstadter;
  spec.d = 2;
  spec.L = 4;
  BlockOperator a = build_hamiltonian(spec, DisorderSpec{});
  BlockOperator b = build_hofstadter_landau(spec, DisorderSpec{});

  SUBCASE("identical spectra") {
    SpectralData da = eigendecompose(a), db = eigendecompose(b);
    CHECK((da.eigenvalues - db.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
  }

  SUBCASE("identical flux through every plaquette") {
    Window win(2, 4);
    for (int x = -4; x < 4; ++x)
      for (int y = -4; y < 4; ++y) {
        auto plaquette_flux = [&](const BlockOperator& h) {
          int i1 = win.index_of(Site{{x, y}});
          int i2 = win.index_of(Site{{x + 1, y}});
          int i3 = win.index_of(Site{{x + 1, y + 1}});
          int i4 = win.index_of(Site{{x, y + 1}});
          Complex prod = h.block(i2, i1)(0, 0) * h.block(i3, i2)(0, 0) *
                         h.block(i4, i3)(0, 0) * h.block(i1, i4)(0, 0);
          return std::arg(prod);
        };
        CHECK(plaquette_flux(a) == doctest::Approx(spec.flux()).epsilon(1e-12));
        CHECK(plaquette_flux(b) == doctest::Approx(spec.flux()).epsilon(1e-12));
      }
  }
}

TEST_CASE("periodic hofstadter commutes with magnetic translations") {
  ModelSpec spec;
  spec.kind = ModelKind::hofstadter;
  spec.d = 2;
  spec.L = 4;  // 9 sites per side, q=3 fits
  spec.bc = Boundary::periodic;
  BlockOperator h = build_hamiltonian(spec, DisorderSpec{});
  Window win(2, 4);
  const int m = win.size();
  const int side = win.side();

  // Translation by q in the y direction leaves the Landau gauge invariant.
  Matrix t = Matrix::Zero(m, m);
  for (int x = 0; x < m; ++x) {
    Site s = win.site(x);
    Site moved = s;
    moved.coords[1] = ((moved.coords[1] + spec.flux_q + spec.L) % side + side) % side - spec.L;
    t(win.index_of(moved), x) = 1.0;
  }
  Matrix comm = t * h.matrix() - h.matrix() * t;
  CHECK(comm.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("periodic hofstadter needs the magnetic cell to fit") {
  ModelSpec spec;
  spec.kind = ModelKind::hofstadter;
  spec.d = 2;
  spec.L = 3;  // 7 sites per side, not divisible by 3
  spec.bc = Boundary::periodic;
  CHECK_THROWS_AS(build_hamiltonian(spec, DisorderSpec{}), Error);
}

TEST_CASE("ssh stack with zero interlayer coupling is a direct sum of chains") {
  ModelSpec spec;
  spec.kind = ModelKind::ssh_stack;
  spec.d = 2;
  spec.L = 3;
  spec.N = 2;
  spec.interlayer = 0.0;
  spec.bc = Boundary::periodic;
  BlockOperator h = build_hamiltonian(spec, DisorderSpec{});
  SpectralData data = eigendecompose(h);

  // single chain, periodic, same x extent
  const int m = 2 * spec.L + 1;
  Matrix chain = Matrix::Zero(2 * m, 2 * m);
  for (int x = 0; x < m; ++x) {
    chain(2 * x, 2 * x + 1) = spec.t1;
    chain(2 * x + 1, 2 * x) = spec.t1;
    int next = (x + 1) % m;
    chain(2 * next, 2 * x + 1) = spec.t2;
    chain(2 * x + 1, 2 * next) = spec.t2;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(chain);

  // every chain eigenvalue appears with multiplicity = number of layers
  for (int i = 0; i < 2 * m; ++i) {
    double target = solver.eigenvalues()(i);
    int found = 0;
    for (int j = 0; j < h.dim(); ++j)
      if (std::abs(data.eigenvalues(j) - target) < 1e-9) ++found;
    CHECK(found >= m);
  }
}

TEST_CASE("delone laplacian has bounded propagation and is hermitian") {
  ModelSpec spec;
  spec.kind = ModelKind::delone_laplacian;
  spec.d = 2;
  spec.L = 4;
  spec.delone_amplitude = 0.2;
  BlockOperator h = build_hamiltonian(spec, DisorderSpec{});
  CHECK(h.hermiticity_defect() <= 1e-12);
  CHECK(propagation(h) <= spec.delone_cutoff);
  CHECK(h.positions().has_value());
}

TEST_CASE("band structures") {
  SUBCASE("hofstadter 1/3 has three separated bands") {
    BandStructure bands = hofstadter_bands(1, 3);
    REQUIRE(bands.band_edges.size() == 3);
    CHECK(bands.gap_width(0) > 0.0);
    CHECK(bands.gap_width(1) > 0.0);
  }

  SUBCASE("ssh stack gap matches 2(|t2-t1| - 2 t_perp)") {
    ModelSpec spec;
    spec.kind = ModelKind::ssh_stack;
    spec.t1 = 0.5;
    spec.t2 = 1.0;
    spec.interlayer = 0.1;
    BandStructure bands = ssh_stack_bands(spec);
    CHECK(bands.gap_width(0) == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(bands.fermi_in_gap(0) == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("clean 1d ssh without stacking has gap 2|t2-t1|") {
    ModelSpec spec;
    spec.kind = ModelKind::ssh_stack;
    spec.t1 = 0.5;
    spec.t2 = 1.0;
    spec.interlayer = 0.0;
    BandStructure bands = ssh_stack_bands(spec);
    CHECK(bands.gap_width(0) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("neumann resolvent") {
  Window win(1, 15);
  BlockOperator delta = laplacian(win, 1, Boundary::periodic);
  const int n = win.size();

  SUBCASE("zero potential gives the exact resolvent at order zero") {
    NeumannResult r = neumann_resolvent(delta, Vector::Zero(n), 3.0, 0);
    CHECK(r.residuals.back() < 1e-12);
    CHECK(r.contraction == 0.0);
  }

  SUBCASE("bounded potential at c=10 converges below 1e-10 by order 20") {
    SequenceRng rng(11);
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(2.0 * rng.uniform() - 1.0, 0.0);
    NeumannResult r = neumann_resolvent(delta, v, 10.0, 20);
    CHECK(r.residuals.back() < 1e-10);
    // the geometric bound holds until the residual bottoms out in rounding
    for (size_t i = 0; i < r.residuals.size(); ++i)
      CHECK(r.residuals[i] <= r.bounds[i] + 1e-13);
  }

  SUBCASE("residuals decay geometrically at the measured rate") {
    SequenceRng rng(12);
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(2.0 * rng.uniform() - 1.0, 0.0);
    NeumannResult r = neumann_resolvent(delta, v, 4.0, 12);
    CHECK(r.measured_rate > 0.0);
    CHECK(r.measured_rate <= r.contraction * 1.05);
    for (size_t i = 1; i < r.residuals.size(); ++i)
      CHECK(r.residuals[i] <= r.residuals[i - 1] * r.contraction * 1.05);
  }

  SUBCASE("resolvent decays exponentially") {
    SequenceRng rng(13);
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(2.0 * rng.uniform() - 1.0, 0.0);
    NeumannResult r = neumann_resolvent(delta, v, 4.0, 12);
    DecayFit fit = classify_decay(decay_profile(r.resolvent), 2.0);
    CHECK(fit.cls == DecayClass::exponential);
    CHECK(fit.exp_rate > 0.0);
  }

  SUBCASE("contraction factor at or above one is rejected") {
    Vector v = Vector::Constant(n, 50.0);
    CHECK_THROWS_AS(neumann_resolvent(delta, v, 0.5, 5), Error);
  }
}

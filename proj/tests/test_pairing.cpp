#include <cmath>
#include <set>

#include "doctest.h"
#include "roelab/experiments.hpp"
#include "roelab/rng.hpp"

using namespace roelab;

namespace {

FermiProjection hofstadter_projection(int l, int flux_p = 1, std::uint64_t seed = 1,
                                      double w = 0.0) {
  ModelSpec spec;
  spec.kind = ModelKind::hofstadter;
  spec.d = 2;
  spec.L = l;
  spec.flux_p = flux_p;
  DisorderSpec dis;
  dis.W = w;
  dis.seed = seed;
  BlockOperator h = build_hamiltonian(spec, dis);
  SpectralData data = eigendecompose(h);
  BandStructure bands = hofstadter_bands(flux_p, 3);
  GapInfo gap;
  gap.has_gap = true;
  auto [lo, hi] = bands.gap_interval(0);
  gap.below = lo;
  gap.above = hi;
  gap.width = hi - lo;
  return fermi_projection_bulk(data, h, bands.fermi_in_gap(0), gap);
}

}  // namespace

TEST_CASE("hermitian inertia agrees with a dense eigensolve") {
  SequenceRng rng(8);
  const int n = 40;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  Matrix h = a + a.adjoint();
  HermitianInertia inertia = hermitian_inertia(h);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  int plus = 0, minus = 0;
  double smallest = 1e300;
  for (int i = 0; i < n; ++i) {
    if (solver.eigenvalues()(i) > 0)
      ++plus;
    else
      ++minus;
    smallest = std::min(smallest, std::abs(solver.eigenvalues()(i)));
  }
  CHECK(inertia.n_plus == plus);
  CHECK(inertia.n_minus == minus);
  CHECK(inertia.n_zero == 0);
  CHECK(inertia.sigma_min == doctest::Approx(smallest).epsilon(1e-6));
}

TEST_CASE("empty and full bands pair to zero") {
  Window win(2, 5);
  BlockOperator h(win, 1);
  h.set_hermitian_hint(true);

  FermiProjection empty{BlockOperator::zero(win, 1), 0.0, {}, 0};
  PairingResult r0 = index_pairing(empty, {3, 5});
  CHECK(r0.index == 0);
  for (const auto& w : r0.windows) CHECK(w.raw_index == 0);

  FermiProjection full{BlockOperator::identity(win, 1), 0.0, {}, win.size()};
  PairingResult r1 = index_pairing(full, {3, 5});
  CHECK(r1.index == 0);
}

TEST_CASE("odd dimension rejected") {
  Window win(1, 4);
  FermiProjection p{BlockOperator::zero(win, 1), 0.0, {}, 0};
  CHECK_THROWS_AS(index_pairing(p, {2, 4}), Error);
}

TEST_CASE("ladder beyond the window rejected") {
  Window win(2, 4);
  FermiProjection p{BlockOperator::zero(win, 1), 0.0, {}, 0};
  CHECK_THROWS_AS(index_pairing(p, {2, 8}), Error);
}

TEST_CASE("clean hofstadter pairs to +1 and matches the oracle") {
  FermiProjection p = hofstadter_projection(8);
  PairingResult r = index_pairing(p, {6, 8});
  CHECK(r.index == 1);
  CHECK(r.converged);
  for (const auto& w : r.windows) {
    CHECK(w.raw_index == 1);
    CHECK(w.sigma_min > r.tau);
    CHECK_FALSE(w.ill_conditioned);
  }

  Tripartition sectors = default_tripartition(p.p.window(), 4.0);
  double oracle = kitaev_chern_oracle(p.p, sectors);
  CHECK(std::lround(oracle) == r.index);
}

TEST_CASE("flux reversal negates the index") {
  FermiProjection p = hofstadter_projection(8, -1);
  PairingResult r = index_pairing(p, {6, 8});
  CHECK(r.index == -1);
  Tripartition sectors = default_tripartition(p.p.window(), 4.0);
  CHECK(std::lround(kitaev_chern_oracle(p.p, sectors)) == -1);
}

TEST_CASE("pairing invariances") {
  FermiProjection p = hofstadter_projection(8);
  PairingResult base = index_pairing(p, {6, 8});

  SUBCASE("diagonal gauge transformation") {
    Window win = p.p.window();
    SequenceRng rng(17);
    Vector phases(win.size());
    for (int i = 0; i < win.size(); ++i) phases(i) = std::polar(1.0, 6.28 * rng.uniform());
    FermiProjection gauged = p;
    for (int x = 0; x < win.size(); ++x)
      for (int y = 0; y < win.size(); ++y)
        gauged.p.block(x, y) *= phases(x) * std::conj(phases(y));
    PairingResult r = index_pairing(gauged, {6, 8});
    CHECK(r.index == base.index);
    for (size_t i = 0; i < r.windows.size(); ++i)
      CHECK(r.windows[i].raw_index == base.windows[i].raw_index);
  }

  SUBCASE("phase center translation by one lattice site") {
    PairingOptions opt;
    opt.center = {1.5, 0.5};
    PairingResult r = index_pairing(p, {6, 8}, opt);
    CHECK(r.index == base.index);
    opt.center = {0.5, -0.5};
    CHECK(index_pairing(p, {6, 8}, opt).index == base.index);
  }

  SUBCASE("threshold variation does not move the index") {
    for (double tau : {0.005, 0.05, 0.2}) {
      PairingOptions opt;
      opt.tau = tau;
      PairingResult r = index_pairing(p, {6, 8}, opt);
      CHECK(r.index == base.index);
    }
  }

  SUBCASE("kappa variation within the plateau") {
    for (double kappa : {0.15, 0.25, 0.4}) {
      PairingOptions opt;
      opt.kappa = kappa;
      PairingResult r = index_pairing(p, {6, 8}, opt);
      CHECK(r.index == base.index);
    }
  }
}

TEST_CASE("index is additive over decoupled copies") {
  ModelSpec spec;
  spec.kind = ModelKind::hofstadter;
  spec.d = 2;
  spec.L = 8;
  spec.N = 2;  // two decoupled copies of the same model
  BlockOperator h = build_hamiltonian(spec, DisorderSpec{});
  SpectralData data = eigendecompose(h);
  BandStructure bands = hofstadter_bands(1, 3);
  GapInfo gap;
  gap.has_gap = true;
  auto [lo, hi] = bands.gap_interval(0);
  gap.below = lo;
  gap.above = hi;
  gap.width = hi - lo;
  FermiProjection p = fermi_projection_bulk(data, h, bands.fermi_in_gap(0), gap);
  PairingResult r = index_pairing(p, {6, 8});
  CHECK(r.index == 2);
}

TEST_CASE("tripartition geometry") {
  Window win(2, 8);
  Tripartition part = default_tripartition(win, 4.0);
  CHECK_FALSE(part.touches_boundary);
  CHECK(part.a.size() > 0);
  CHECK(part.b.size() > 0);
  CHECK(part.c.size() > 0);
  // disjoint and inside the disk
  std::set<int> seen;
  for (const auto* sec : {&part.a, &part.b, &part.c})
    for (int s : *sec) {
      CHECK(seen.insert(s).second);
      Site site = win.site(s);
      CHECK(site.coords[0] * site.coords[0] + site.coords[1] * site.coords[1] <= 16);
    }
  Tripartition wide = default_tripartition(win, 7.5);
  CHECK(wide.touches_boundary);
}

TEST_CASE("oracle vanishes on site-diagonal projections") {
  Window win(2, 6);
  BlockOperator p(win, 1);
  SequenceRng rng(4);
  for (int x = 0; x < win.size(); ++x) p.block(x, x)(0, 0) = rng.uniform() > 0.5 ? 1.0 : 0.0;
  Tripartition part = default_tripartition(win, 3.0);
  CHECK(kitaev_chern_oracle(p, part) == 0.0);
}

TEST_CASE("oracle stays near the integer under weak disorder") {
  for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
    FermiProjection p = hofstadter_projection(8, 1, seed, 0.3);
    Tripartition sectors = default_tripartition(p.p.window(), 4.0);
    double oracle = kitaev_chern_oracle(p.p, sectors);
    CHECK(std::abs(oracle - 1.0) < 0.1);
    PairingResult r = index_pairing(p, {6, 8});
    CHECK(r.index == 1);
  }
}

TEST_CASE("weak phase experiment reports zero index for the ssh stack") {
  ModelSpec spec;
  spec.kind = ModelKind::ssh_stack;
  spec.d = 2;
  spec.L = 8;
  spec.N = 2;
  PairingExperimentConfig cfg;
  cfg.l_list = {6, 8};
  WeakPhaseReport rep = weak_phase_experiment(spec, DisorderSpec{}, cfg);
  CHECK(rep.pairing.index == 0);
  CHECK(rep.pairing.converged);
  for (const auto& w : rep.pairing.windows) CHECK(w.raw_index == 0);
  CHECK(rep.clean_gap_width == doctest::Approx(0.6).epsilon(1e-10));
}

TEST_CASE("gap detector aborts the pairing experiment under strong disorder") {
  ModelSpec spec;
  spec.kind = ModelKind::hofstadter;
  spec.d = 2;
  spec.L = 8;
  DisorderSpec dis;
  dis.W = 6.0;
  dis.seed = 5;
  PairingExperimentConfig cfg;
  cfg.l_list = {6, 8};
  CHECK_THROWS_AS(run_pairing_experiment(spec, dis, cfg), Error);
}

#pragma once

#include <cmath>

#include "roelab/block_operator.hpp"
#include "roelab/rng.hpp"

namespace roelab::testing {

inline BlockOperator random_banded(const Window& win, int internal_dim, int band,
                                   std::uint64_t seed, bool hermitian = false) {
  SequenceRng rng(seed);
  BlockOperator op(win, internal_dim);
  for (int x = 0; x < win.size(); ++x)
    for (int y = 0; y < win.size(); ++y) {
      Site sx = win.site(x), sy = win.site(y);
      bool in_band = true;
      for (int i = 0; i < win.dim(); ++i)
        if (std::abs(sx.coords[i] - sy.coords[i]) > band) in_band = false;
      if (!in_band) continue;
      for (int i = 0; i < internal_dim; ++i)
        for (int j = 0; j < internal_dim; ++j)
          op.block(x, y)(i, j) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
    }
  if (hermitian) {
    Matrix sym = (op.matrix() + op.matrix().adjoint()) / 2.0;
    op.matrix() = sym;
    op.set_hermitian_hint(true);
  }
  return op;
}

/// Random unit-modulus coboundary cocycle together with its gauge.
struct CoboundaryFixture {
  std::vector<Complex> phases;
  Window window;

  explicit CoboundaryFixture(const Window& win, std::uint64_t seed) : window(win) {
    SequenceRng rng(seed);
    phases.resize(static_cast<size_t>(win.size()) * win.size());
    for (auto& z : phases) z = std::polar(1.0, 2.0 * M_PI * rng.uniform());
    // normalized gauge: v(x,x) = 1, so w(x,x,x) = 1
    for (int i = 0; i < win.size(); ++i) phases[static_cast<size_t>(i) * win.size() + i] = 1.0;
  }

  Complex v(const Site& x, const Site& y) const {
    return phases[static_cast<size_t>(window.index_of(x)) * window.size() + window.index_of(y)];
  }
};

}  // namespace roelab::testing

#pragma once

#include <functional>
#include <map>
#include <string>

#include "roelab/block_operator.hpp"

namespace roelab {

/// U(1)-valued function on site triples encoding a magnetic twist.
struct Cocycle {
  std::function<Complex(const Site&, const Site&, const Site&)> eval;
};

/// U(1)-valued function on site pairs exhibiting a cocycle as a coboundary.
struct GaugeFunction {
  std::function<Complex(const Site&, const Site&)> eval;
};

/// Twisted product (S *_w T)_{x,y} = sum_z w(x,z,y) S_{x,z} T_{z,y}.
/// With w == nullptr this is the plain block product evaluated in the same
/// summation order, so the two agree bit-for-bit.
BlockOperator twisted_product(const BlockOperator& s, const BlockOperator& t, const Cocycle* w);

inline BlockOperator twisted_product(const BlockOperator& s, const BlockOperator& t,
                                     const Cocycle& w) {
  return twisted_product(s, t, &w);
}

/// Plain block product through the same summation loop as twisted_product.
inline BlockOperator product(const BlockOperator& s, const BlockOperator& t) {
  return twisted_product(s, t, nullptr);
}

struct CocycleCheckResult {
  bool ok = false;
  double max_violation = 0.0;
};

/// Samples the twist condition w(x,z,y) w(x,t,z) = w(x,t,y) w(t,z,y) on
/// random site quadruples; ok iff the max violation stays below 1e-10.
CocycleCheckResult cocycle_check(const Cocycle& w, const Window& window, int samples,
                                 std::uint64_t seed);

/// Untwisting gauge v(x,y) := w(x,y,e). Rejects w if the sampled cocycle
/// condition fails, since then the reconstruction identity cannot hold.
GaugeFunction untwist(const Cocycle& w, const Site& base, const Window& window,
                      int check_samples = 400, std::uint64_t seed = 7);

/// Entrywise gauge action (T_{x,y}) -> (v(x,y) T_{x,y}).
BlockOperator apply_gauge(const BlockOperator& t, const GaugeFunction& v);

/// w(x,z,y) = exp(i flux SignedArea(x,z,y)) for d = 2. Signed areas are
/// additive under triangulation, so the twist condition holds identically.
Cocycle magnetic_cocycle(double flux, int d = 2);

double signed_area(const Site& x, const Site& z, const Site& y);

/// Controlled approximation by a band-limited approximate identity: block
/// (x,y) is scaled by a piecewise-linear per-axis weight that equals 1 up
/// to offset R-1 and vanishes from offset R on. The result is exactly
/// (R-1)-banded per axis, and banded operators are recovered exactly once
/// R exceeds their band.
BlockOperator fejer_smooth(const BlockOperator& t, double cutoff);

double fejer_weight(int offset, double cutoff);

struct OffsetLess {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const { return a < b; }
};

/// k -> sup_n ||T_{n,n+k}|| over all offsets present in the window.
/// Block norms are spectral norms. An entry is present iff some block at
/// that offset is nonzero (exactly), so absent offsets certify bandedness.
/// max_offset_radius records how far the window could have reached; 0
/// means unknown (fit-only classification).
struct DecayProfile {
  std::map<std::vector<int>, double, OffsetLess> entries;
  double max_offset_radius = 0.0;
};

DecayProfile decay_profile(const BlockOperator& t);

enum class DecayClass { banded, rapid, exponential, none, inconclusive };

struct DecayFit {
  DecayClass cls = DecayClass::inconclusive;
  double band_radius = 0.0;       // for banded
  double exp_rate = 0.0;          // fitted a in exp(-a ||k||)
  double exp_residual = 0.0;      // rms residual of the exponential fit
  double poly_order = 0.0;        // fitted b in (1+||k||)^{-b}
  double poly_residual = 0.0;     // rms residual of the polynomial fit
  int shells_used = 0;
  std::string note;
};

std::string to_string(DecayClass cls);

/// Banded if the profile vanishes beyond some radius strictly inside the
/// window; otherwise compares least-squares fits of log p against ||k||
/// (exponential) and against log(1+||k||) (polynomial order). "rapid"
/// requires the fitted order to exceed `rapid_order_threshold`.
DecayFit classify_decay(const DecayProfile& profile, double window_margin,
                        double rapid_order_threshold = 6.0);

struct LocalizedNorm {
  Vector xi;            // unit vector achieving the ratio, full-window embedding
  double ratio = 0.0;   // ||T xi|| / ||T||
  std::vector<int> box_corner;  // lower corner of the best sub-box
  int box_side = 0;
};

/// Exhaustive sweep over window sub-boxes of Euclidean diameter <= S:
/// restricts T to vectors supported in the box and takes the best top
/// singular value. Ratio 1 with the full window as the only box when S
/// reaches the window diameter.
LocalizedNorm localize_norm(const BlockOperator& t, double support_diameter);

}  // namespace roelab

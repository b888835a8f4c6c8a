#include "roelab/roe_ops.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "roelab/rng.hpp"

namespace roelab {

BlockOperator twisted_product(const BlockOperator& s, const BlockOperator& t, const Cocycle* w) {
  if (!s.same_shape(t))
    throw Error(Error::Kind::precondition, "twisted_product: mismatched windows or block sizes");
  const Window& win = s.window();
  const int n = s.internal_dim();
  const int m = win.size();
  BlockOperator out(win, n, s.boundary());
  if (s.positions()) out.set_positions(*s.positions());

  std::vector<Site> sites = win.sites();
  Matrix acc(n, n);
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      acc.setZero();
      bool any = false;
      for (int z = 0; z < m; ++z) {
        if (s.block_is_zero(x, z) || t.block_is_zero(z, y)) continue;
        Complex weight =
            w ? w->eval(sites[x], sites[z], sites[y]) : Complex(1.0, 0.0);
        acc += weight * (s.block(x, z) * t.block(z, y));
        any = true;
      }
      if (any) out.block(x, y) = acc;
    }
  }
  return out;
}

CocycleCheckResult cocycle_check(const Cocycle& w, const Window& window, int samples,
                                 std::uint64_t seed) {
  SequenceRng rng(seed);
  const int m = window.size();
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    Site x = window.site(rng.index(m));
    Site t = window.site(rng.index(m));
    Site z = window.site(rng.index(m));
    Site y = window.site(rng.index(m));
    Complex lhs = w.eval(x, z, y) * w.eval(x, t, z);
    Complex rhs = w.eval(x, t, y) * w.eval(t, z, y);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {worst < 1e-10, worst};
}

GaugeFunction untwist(const Cocycle& w, const Site& base, const Window& window,
                      int check_samples, std::uint64_t seed) {
  CocycleCheckResult check = cocycle_check(w, window, check_samples, seed);
  if (!check.ok)
    throw Error(Error::Kind::precondition,
                "untwist: cocycle condition violated, max violation " +
                    std::to_string(check.max_violation));
  auto eval_w = w.eval;
  Site e = base;
  GaugeFunction v;
  v.eval = [eval_w, e](const Site& x, const Site& y) { return eval_w(x, y, e); };
  return v;
}

BlockOperator apply_gauge(const BlockOperator& t, const GaugeFunction& v) {
  const Window& win = t.window();
  const int n = t.internal_dim();
  const int m = win.size();
  BlockOperator out(win, n, t.boundary());
  if (t.positions()) out.set_positions(*t.positions());
  out.set_hermitian_hint(t.hermitian_hint());
  std::vector<Site> sites = win.sites();
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      if (t.block_is_zero(x, y)) continue;
      out.block(x, y) = v.eval(sites[x], sites[y]) * t.block(x, y);
    }
  return out;
}

double signed_area(const Site& x, const Site& z, const Site& y) {
  const double ax = z.coords[0] - x.coords[0];
  const double ay = z.coords[1] - x.coords[1];
  const double bx = y.coords[0] - x.coords[0];
  const double by = y.coords[1] - x.coords[1];
  return 0.5 * (ax * by - ay * bx);
}

Cocycle magnetic_cocycle(double flux, int d) {
  if (d != 2) throw Error(Error::Kind::precondition, "magnetic_cocycle: only d = 2 supported");
  Cocycle w;
  w.eval = [flux](const Site& x, const Site& z, const Site& y) {
    return std::polar(1.0, flux * signed_area(x, z, y));
  };
  return w;
}

double fejer_weight(int offset, double cutoff) {
  const double slope = std::min(cutoff, 1.0);
  const double raw = (cutoff - std::abs(static_cast<double>(offset))) / slope;
  return std::clamp(raw, 0.0, 1.0);
}

BlockOperator fejer_smooth(const BlockOperator& t, double cutoff) {
  if (!(cutoff > 0.0)) throw Error(Error::Kind::precondition, "fejer_smooth: cutoff must be > 0");
  const Window& win = t.window();
  const int n = t.internal_dim();
  const int m = win.size();
  BlockOperator out(win, n, t.boundary());
  if (t.positions()) out.set_positions(*t.positions());
  out.set_hermitian_hint(t.hermitian_hint());
  const int d = win.dim();
  for (int x = 0; x < m; ++x) {
    Site sx = win.site(x);
    for (int y = 0; y < m; ++y) {
      if (t.block_is_zero(x, y)) continue;
      Site sy = win.site(y);
      double weight = 1.0;
      for (int k = 0; k < d; ++k) weight *= fejer_weight(sx.coords[k] - sy.coords[k], cutoff);
      if (weight == 0.0) continue;  // block stays exactly zero
      out.block(x, y) = weight * t.block(x, y);
    }
  }
  return out;
}

DecayProfile decay_profile(const BlockOperator& t) {
  const Window& win = t.window();
  const int m = win.size();
  const int d = win.dim();
  const int side = win.side();
  const bool wrap = t.boundary() == Boundary::periodic;
  DecayProfile profile;
  profile.max_offset_radius =
      std::sqrt(static_cast<double>(d)) * (wrap ? side / 2 : 2 * win.half_width());
  for (int x = 0; x < m; ++x) {
    Site sx = win.site(x);
    for (int y = 0; y < m; ++y) {
      if (t.block_is_zero(x, y)) continue;
      Site sy = win.site(y);
      std::vector<int> k(d);
      for (int i = 0; i < d; ++i) {
        int diff = sy.coords[i] - sx.coords[i];
        if (wrap) {
          // minimal image on the torus
          if (diff > side / 2) diff -= side;
          if (diff < -side / 2) diff += side;
        }
        k[i] = diff;
      }
      double norm;
      if (t.internal_dim() == 1) {
        norm = std::abs(t.block(x, y)(0, 0));
      } else {
        Eigen::JacobiSVD<Matrix> svd(t.block(x, y));
        norm = svd.singularValues()(0);
      }
      auto it = profile.entries.find(k);
      if (it == profile.entries.end())
        profile.entries.emplace(std::move(k), norm);
      else
        it->second = std::max(it->second, norm);
    }
  }
  return profile;
}

std::string to_string(DecayClass cls) {
  switch (cls) {
    case DecayClass::banded: return "banded";
    case DecayClass::rapid: return "rapid";
    case DecayClass::exponential: return "exponential";
    case DecayClass::none: return "none";
    case DecayClass::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

struct Shell {
  double radius;
  double value;
};

// Least squares y = a + b * t; returns {a, b, rms residual}.
std::array<double, 3> line_fit(const std::vector<double>& t, const std::vector<double>& y) {
  const int n = static_cast<int>(t.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (int i = 0; i < n; ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  const double det = n * stt - st * st;
  const double b = (n * sty - st * sy) / det;
  const double a = (sy - b * st) / n;
  double rss = 0;
  for (int i = 0; i < n; ++i) {
    double r = y[i] - a - b * t[i];
    rss += r * r;
  }
  return {a, b, std::sqrt(rss / n)};
}

}  // namespace

DecayFit classify_decay(const DecayProfile& profile, double window_margin,
                        double rapid_order_threshold) {
  DecayFit fit;
  if (profile.entries.empty()) {
    fit.note = "empty profile";
    return fit;
  }

  // Collapse offsets to shells of equal |k| and find the data range.
  std::map<double, double> shells;  // radius -> sup value
  double max_radius = 0.0;
  double max_value = 0.0;
  for (const auto& [k, v] : profile.entries) {
    double acc = 0.0;
    for (int c : k) acc += static_cast<double>(c) * c;
    double r = std::sqrt(acc);
    max_radius = std::max(max_radius, r);
    max_value = std::max(max_value, v);
    auto it = shells.find(r);
    if (it == shells.end())
      shells.emplace(r, v);
    else
      it->second = std::max(it->second, v);
  }

  // Banded: offsets are absent (exactly zero blocks) well before the
  // window could have ended. Needs the reachable radius to be known.
  const double reach = profile.max_offset_radius;
  if (reach > 0.0 && max_radius < reach - window_margin - 1.0) {
    fit.cls = DecayClass::banded;
    fit.band_radius = max_radius;
    fit.note = "banded operators lie in the rapid, exponential and super-exponential classes";
    return fit;
  }

  // Fits ignore the boundary margin and the numerical noise floor of
  // dense operators.
  const double floor = max_value * 1e-13;
  const double r_keep = max_radius - window_margin;
  std::vector<Shell> kept;
  for (const auto& [r, v] : shells) {
    if (r > r_keep || v <= floor) continue;
    kept.push_back({r, v});
  }

  std::vector<double> rs, log_v;
  for (const auto& s : kept) {
    if (s.radius < 1.0 || s.value <= 0.0) continue;
    rs.push_back(s.radius);
    log_v.push_back(std::log(s.value));
  }
  fit.shells_used = static_cast<int>(rs.size());
  if (fit.shells_used < 4) {
    fit.cls = DecayClass::inconclusive;
    fit.note = "fewer than 4 usable shells";
    return fit;
  }

  auto exp_fit = line_fit(rs, log_v);
  fit.exp_rate = -exp_fit[1];
  fit.exp_residual = exp_fit[2];

  std::vector<double> log_r(rs.size());
  for (size_t i = 0; i < rs.size(); ++i) log_r[i] = std::log1p(rs[i]);
  auto poly_fit = line_fit(log_r, log_v);
  fit.poly_order = -poly_fit[1];
  fit.poly_residual = poly_fit[2];

  if (fit.exp_residual <= fit.poly_residual && fit.exp_rate > 0.0) {
    fit.cls = DecayClass::exponential;
  } else if (fit.poly_order > rapid_order_threshold) {
    fit.cls = DecayClass::rapid;
  } else {
    fit.cls = DecayClass::none;
  }
  return fit;
}

LocalizedNorm localize_norm(const BlockOperator& t, double support_diameter) {
  if (!(support_diameter >= 1.0))
    throw Error(Error::Kind::precondition, "localize_norm: support diameter must be >= 1");
  const Window& win = t.window();
  const int d = win.dim();
  const int side = win.side();
  const int n = t.internal_dim();

  // Largest box side whose site-set diameter (s-1)*sqrt(d) stays <= S.
  int box_side = static_cast<int>(std::floor(support_diameter / std::sqrt(double(d)))) + 1;
  box_side = std::clamp(box_side, 1, side);

  Eigen::BDCSVD<Matrix> full_svd(t.matrix());
  const double full_norm = full_svd.singularValues()(0);
  LocalizedNorm best;
  if (full_norm == 0.0) {
    best.xi = Vector::Zero(t.dim());
    best.ratio = 0.0;
    return best;
  }

  const int range = side - box_side + 1;
  std::vector<int> corner(d, 0);
  while (true) {
    // Collect flat indices of the sites inside the box at `corner`.
    std::vector<int> cols;
    std::vector<int> counter(d, 0);
    while (true) {
      Site s;
      s.coords.resize(d);
      for (int i = 0; i < d; ++i) s.coords[i] = corner[i] + counter[i] - win.half_width();
      cols.push_back(win.index_of(s));
      int axis = d - 1;
      while (axis >= 0 && ++counter[axis] == box_side) counter[axis--] = 0;
      if (axis < 0) break;
    }

    Matrix sub(t.dim(), static_cast<int>(cols.size()) * n);
    for (size_t c = 0; c < cols.size(); ++c)
      sub.middleCols(static_cast<int>(c) * n, n) = t.matrix().middleCols(cols[c] * n, n);
    Eigen::BDCSVD<Matrix> svd(sub, Eigen::ComputeThinV);
    const double sigma = svd.singularValues()(0);
    if (sigma > best.ratio * full_norm) {
      best.ratio = sigma / full_norm;
      best.box_corner.assign(d, 0);
      for (int i = 0; i < d; ++i) best.box_corner[i] = corner[i] - win.half_width();
      best.box_side = box_side;
      Vector v = svd.matrixV().col(0);
      best.xi = Vector::Zero(t.dim());
      for (size_t c = 0; c < cols.size(); ++c)
        best.xi.segment(cols[c] * n, n) = v.segment(static_cast<int>(c) * n, n);
    }

    int axis = d - 1;
    while (axis >= 0 && ++corner[axis] == range) corner[axis--] = 0;
    if (axis < 0) break;
  }
  if (box_side == side) best.ratio = 1.0;  // full window, no restriction
  return best;
}

}  // namespace roelab

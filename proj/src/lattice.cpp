#include "roelab/lattice.hpp"

#include <cmath>
#include <limits>

#include "roelab/rng.hpp"

namespace roelab {

std::string to_string(const Site& s) {
  std::string out = "(";
  for (int i = 0; i < s.dim(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.coords[i]);
  }
  out += ")";
  return out;
}

double distance(const Site& a, const Site& b) {
  double acc = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    double diff = a.coords[i] - b.coords[i];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

Window::Window(int d, int L) : d_(d), L_(L) {
  if (d < 1) throw Error(Error::Kind::precondition, "window dimension must be >= 1");
  if (L < 0) throw Error(Error::Kind::precondition, "window half-width must be >= 0");
  std::int64_t n = 1;
  for (int i = 0; i < d; ++i) {
    n *= 2 * static_cast<std::int64_t>(L) + 1;
    if (n > std::numeric_limits<int>::max())
      throw Error(Error::Kind::precondition, "window too large");
  }
  size_ = static_cast<int>(n);
}

Site Window::site(int index) const {
  Site s;
  s.coords.assign(d_, 0);
  int m = side();
  for (int i = d_ - 1; i >= 0; --i) {
    s.coords[i] = index % m - L_;
    index /= m;
  }
  return s;
}

int Window::index_of(const Site& s) const {
  int idx = 0;
  int m = side();
  for (int i = 0; i < d_; ++i) idx = idx * m + (s.coords[i] + L_);
  return idx;
}

bool Window::contains(const Site& s) const {
  if (s.dim() != d_) return false;
  for (int c : s.coords)
    if (c < -L_ || c > L_) return false;
  return true;
}

std::vector<Site> Window::sites() const {
  std::vector<Site> out;
  out.reserve(size_);
  for (int i = 0; i < size_; ++i) out.push_back(site(i));
  return out;
}

std::vector<Site> window_sites(int d, int L) { return Window(d, L).sites(); }

bool is_coarsely_dense(const PointSet& y, const Window& x, double radius) {
  const int n = x.size();
  for (int i = 0; i < n; ++i) {
    Site s = x.site(i);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : y.positions) {
      double acc = 0.0;
      for (int k = 0; k < x.dim(); ++k) {
        double diff = p[k] - s.coords[k];
        acc += diff * diff;
      }
      if (acc < best) best = acc;
      if (best <= radius * radius) break;
    }
    if (!(best <= radius * radius)) return false;
  }
  return true;
}

Site stack_embed(int k, const Site& s) {
  int d = s.dim() + 1;
  if (k < 1 || k > d) throw Error(Error::Kind::precondition, "stack_embed axis out of range");
  Site out;
  out.coords.reserve(d);
  for (int i = 0; i < k - 1; ++i) out.coords.push_back(s.coords[i]);
  out.coords.push_back(0);
  for (int i = k - 1; i < s.dim(); ++i) out.coords.push_back(s.coords[i]);
  return out;
}

std::vector<Site> half_space_sites(const Window& window, const HalfSpaceSpec& spec) {
  if (spec.axis < 1 || spec.axis > window.dim())
    throw Error(Error::Kind::precondition, "half-space axis out of range");
  std::vector<Site> out;
  for (int i = 0; i < window.size(); ++i) {
    Site s = window.site(i);
    int c = s.coords[spec.axis - 1];
    bool keep = spec.side == HalfSpaceSpec::Side::nonnegative ? c >= 0 : c <= 0;
    if (keep) out.push_back(std::move(s));
  }
  return out;
}

PointSet delone_perturb(const Window& window, double amplitude, std::uint64_t seed) {
  if (!(amplitude >= 0.0 && amplitude < 0.5))
    throw Error(Error::Kind::precondition, "delone amplitude must lie in [0, 0.5)");
  CounterRng rng(seed);
  PointSet out;
  const int n = window.size();
  const int d = window.dim();
  out.positions.reserve(n);
  for (int i = 0; i < n; ++i) {
    Site s = window.site(i);
    std::uint64_t key = site_key(s.coords);
    std::vector<double> p(d);
    for (int k = 0; k < d; ++k)
      p[k] = s.coords[k] + rng.uniform_sym(key + static_cast<std::uint64_t>(k), amplitude);
    out.positions.push_back(std::move(p));
  }

  double min_sq = std::numeric_limits<double>::infinity();
  if (amplitude == 0.0) {
    min_sq = n > 1 ? 1.0 : std::numeric_limits<double>::infinity();
  } else {
    // Perturbations stay within 0.5, so only lattice neighbours within
    // distance 2 can realize the minimum.
    for (int i = 0; i < n; ++i) {
      Site si = window.site(i);
      for (int j = i + 1; j < n; ++j) {
        Site sj = window.site(j);
        bool near = true;
        for (int k = 0; k < d; ++k)
          if (std::abs(si.coords[k] - sj.coords[k]) > 2) { near = false; break; }
        if (!near) continue;
        double acc = 0.0;
        for (int k = 0; k < d; ++k) {
          double diff = out.positions[i][k] - out.positions[j][k];
          acc += diff * diff;
        }
        if (acc < min_sq) min_sq = acc;
      }
    }
  }
  out.r_min = n > 1 ? std::sqrt(min_sq) : 1.0;

  double cov_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    Site s = window.site(i);
    double acc = 0.0;
    for (int k = 0; k < d; ++k) {
      double diff = out.positions[i][k] - s.coords[k];
      acc += diff * diff;
    }
    if (acc > cov_sq) cov_sq = acc;
  }
  out.r_cov = std::sqrt(cov_sq);
  return out;
}

}  // namespace roelab

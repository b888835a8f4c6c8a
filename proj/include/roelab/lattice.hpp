#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace roelab {

class Error : public std::runtime_error {
 public:
  enum class Kind { config, precondition, no_convergence };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// A point of Z^d.
struct Site {
  std::vector<int> coords;

  int dim() const { return static_cast<int>(coords.size()); }
  bool operator==(const Site& other) const { return coords == other.coords; }
};

std::string to_string(const Site& s);

double distance(const Site& a, const Site& b);

/// Centered box [-L, L]^d with the lexicographic site order. The order
/// fixes all matrix indexing, so outputs are bit-reproducible.
class Window {
 public:
  Window(int d, int L);

  int dim() const { return d_; }
  int half_width() const { return L_; }
  int size() const { return size_; }
  int side() const { return 2 * L_ + 1; }

  /// Site at a given position of the lexicographic enumeration.
  Site site(int index) const;
  /// Inverse of site(); O(d), no lookup table.
  int index_of(const Site& s) const;
  bool contains(const Site& s) const;

  std::vector<Site> sites() const;

 private:
  int d_;
  int L_;
  int size_;
};

/// Ordered list of the sites of [-L, L]^d in lexicographic order.
std::vector<Site> window_sites(int d, int L);

/// A finite point set in R^d with its Delone constants.
struct PointSet {
  std::vector<std::vector<double>> positions;  // lattice units
  double r_min = 0.0;                          // minimal pairwise separation
  double r_cov = 0.0;                          // covering radius w.r.t. the window
};

/// True iff every site of the window lies within Euclidean distance R of
/// some point of Y. An empty Y with a nonempty window gives false.
bool is_coarsely_dense(const PointSet& y, const Window& x, double radius);

/// Coordinate embedding Z^{d-1} -> Z^d inserting 0 at axis k (1-based).
Site stack_embed(int k, const Site& s);

/// Selects sites with x_k >= 0 (nonnegative) or x_k <= 0 (nonpositive).
struct HalfSpaceSpec {
  enum class Side { nonnegative, nonpositive };
  int axis = 1;  // 1-based
  Side side = Side::nonnegative;
};

/// Sub-list of window_sites(window) in the same order.
std::vector<Site> half_space_sites(const Window& window, const HalfSpaceSpec& spec);

/// Displaces every lattice site of the window by an i.i.d. uniform vector
/// in [-amplitude, amplitude]^d. Deterministic given the seed; amplitude
/// must stay below 0.5 so the point set remains Delone without rejection.
PointSet delone_perturb(const Window& window, double amplitude, std::uint64_t seed);

}  // namespace roelab

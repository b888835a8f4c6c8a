#pragma once

#include <string>
#include <vector>

namespace roelab {
namespace ktheory {

enum class Field { real, cplx };

enum class Cyclic { Z, Z2 };

/// Formal finite direct sum of cyclic groups; empty = trivial group.
struct Group {
  std::vector<Cyclic> summands;  // canonical order: all Z first, then Z/2

  void normalize();
  bool operator==(const Group& other) const { return summands == other.summands; }
  bool trivial() const { return summands.empty(); }
  int rank() const;  // number of Z summands
};

std::string to_string(const Group& g);

/// Exact K-theory by degree, periodic mod 2 (complex) or mod 8 (real).
struct GradedGroup {
  Field field = Field::cplx;
  int period = 2;
  std::vector<Group> by_degree;  // size == period

  const Group& at(int degree) const;
  bool operator==(const GradedGroup& other) const;
};

int period_of(Field field);

/// K_*(C): Z, 0 alternating. K_*(R): Z, Z/2, Z/2, 0, Z, 0, 0, 0.
GradedGroup k_of_field(Field field);

/// K-theory of the Roe algebra of Z^d: k_of_field shifted up by d, i.e.
/// degree i holds K_{i-d}(F).
GradedGroup roe_k(int d, Field field);

/// Free K_*(F)-module given by degree-shifted generators.
struct KModule {
  Field field = Field::cplx;
  struct Generator {
    int degree_shift;  // generator lives in degree `degree_shift` (mod period)
    int multiplicity;
  };
  std::vector<Generator> generators;

  int total_rank() const;
  /// Expand against the field's periodicity: degree i collects
  /// multiplicity copies of K_{i - shift}(F) per generator.
  GradedGroup expand() const;
};

/// K-theory of the group C*-algebra of Z^d (the d-torus): rank 2^d with
/// binom(d, j) generators of degree -j, j = 0..d.
KModule torus_k(int d, Field field);

/// The comparison map from the torus module to the Roe algebra K-theory:
/// every generator with j < d dies, the single j = d generator maps
/// isomorphically onto roe_k(d).
struct ComparisonMap {
  int d;
  Field field;
  KModule domain;
  std::vector<KModule::Generator> kernel_generators;  // the j < d summands
  KModule::Generator image_generator;                 // the j = d summand
  GradedGroup image;                                  // == roe_k(d, field)

  int kernel_rank() const;
};

ComparisonMap comparison_map(int d, Field field);

/// One boundary step of the coarse Mayer-Vietoris ladder: the dimension
/// shift isomorphism K_j(Roe Z^d) -> K_{j-1}(Roe Z^{d-1}). Rests on the
/// vanishing of the half-space K-theory, carried here as an axiom.
struct MvBoundary {
  int d;
  int degree;
  Field field;
  Group source;  // roe_k(d) at degree j
  Group target;  // roe_k(d-1) at degree j-1
  std::string axiom;
  bool is_isomorphism() const { return source == target; }
};

MvBoundary mv_boundary(int d, Field field, int degree);

/// Composite of d boundary steps from (d, j); lands in k_of_field at j-d.
Group mv_composite(int d, Field field, int degree);

/// Kitaev-style table: entry(class, dimension) = k_of_field at degree
/// (shift + dimension). Two complex rows (shift 0, 1) and eight real rows
/// (shift 0..7).
struct KitaevRow {
  Field field;
  int shift;
  std::vector<Group> entries;  // d = 0 .. d_max
};

std::vector<KitaevRow> kitaev_table(int d_max);

/// Aligned text rendering of the table (also the golden-file format).
std::string render_kitaev_table(const std::vector<KitaevRow>& rows);

long long binomial(int n, int k);

}  // namespace ktheory
}  // namespace roelab

#include "roelab/ktheory.hpp"

#include <algorithm>
#include <sstream>

#include "roelab/lattice.hpp"

namespace roelab {
namespace ktheory {

namespace {
int mod(int a, int m) { return ((a % m) + m) % m; }
}  // namespace

void Group::normalize() {
  std::sort(summands.begin(), summands.end(),
            [](Cyclic a, Cyclic b) { return static_cast<int>(a) < static_cast<int>(b); });
}

int Group::rank() const {
  return static_cast<int>(std::count(summands.begin(), summands.end(), Cyclic::Z));
}

std::string to_string(const Group& g) {
  if (g.summands.empty()) return "0";
  int z = 0, z2 = 0;
  for (Cyclic c : g.summands) (c == Cyclic::Z ? z : z2)++;
  std::ostringstream out;
  bool first = true;
  if (z > 0) {
    out << (z == 1 ? "Z" : "Z^" + std::to_string(z));
    first = false;
  }
  if (z2 > 0) {
    if (!first) out << "+";
    out << (z2 == 1 ? "Z/2" : "(Z/2)^" + std::to_string(z2));
  }
  return out.str();
}

const Group& GradedGroup::at(int degree) const { return by_degree[mod(degree, period)]; }

bool GradedGroup::operator==(const GradedGroup& other) const {
  return field == other.field && period == other.period && by_degree == other.by_degree;
}

int period_of(Field field) { return field == Field::cplx ? 2 : 8; }

GradedGroup k_of_field(Field field) {
  GradedGroup g;
  g.field = field;
  g.period = period_of(field);
  g.by_degree.assign(g.period, Group{});
  if (field == Field::cplx) {
    g.by_degree[0].summands = {Cyclic::Z};
  } else {
    g.by_degree[0].summands = {Cyclic::Z};
    g.by_degree[1].summands = {Cyclic::Z2};
    g.by_degree[2].summands = {Cyclic::Z2};
    g.by_degree[4].summands = {Cyclic::Z};
  }
  return g;
}

GradedGroup roe_k(int d, Field field) {
  if (d < 0) throw Error(Error::Kind::precondition, "roe_k: dimension must be >= 0");
  GradedGroup base = k_of_field(field);
  GradedGroup out = base;
  for (int i = 0; i < out.period; ++i) out.by_degree[i] = base.at(i - d);
  return out;
}

int KModule::total_rank() const {
  int r = 0;
  for (const auto& g : generators) r += g.multiplicity;
  return r;
}

GradedGroup KModule::expand() const {
  GradedGroup base = k_of_field(field);
  GradedGroup out;
  out.field = field;
  out.period = base.period;
  out.by_degree.assign(out.period, Group{});
  for (int i = 0; i < out.period; ++i) {
    for (const auto& gen : generators) {
      const Group& piece = base.at(i - gen.degree_shift);
      for (int c = 0; c < gen.multiplicity; ++c)
        out.by_degree[i].summands.insert(out.by_degree[i].summands.end(), piece.summands.begin(),
                                         piece.summands.end());
    }
    out.by_degree[i].normalize();
  }
  return out;
}

KModule torus_k(int d, Field field) {
  if (d < 0) throw Error(Error::Kind::precondition, "torus_k: dimension must be >= 0");
  KModule mod;
  mod.field = field;
  for (int j = 0; j <= d; ++j)
    mod.generators.push_back({-j, static_cast<int>(binomial(d, j))});
  return mod;
}

int ComparisonMap::kernel_rank() const {
  int r = 0;
  for (const auto& g : kernel_generators) r += g.multiplicity;
  return r;
}

ComparisonMap comparison_map(int d, Field field) {
  if (d < 1) throw Error(Error::Kind::precondition, "comparison_map: dimension must be >= 1");
  ComparisonMap cmp;
  cmp.d = d;
  cmp.field = field;
  cmp.domain = torus_k(d, field);
  for (const auto& gen : cmp.domain.generators) {
    if (gen.degree_shift == -d)
      cmp.image_generator = gen;
    else
      cmp.kernel_generators.push_back(gen);
  }
  cmp.image = roe_k(d, field);
  return cmp;
}

MvBoundary mv_boundary(int d, Field field, int degree) {
  if (d < 1) throw Error(Error::Kind::precondition, "mv_boundary: dimension must be >= 1");
  MvBoundary b;
  b.d = d;
  b.degree = degree;
  b.field = field;
  b.source = roe_k(d, field).at(degree);
  b.target = roe_k(d - 1, field).at(degree - 1);
  b.axiom = "K of the half-space Roe algebra vanishes";
  return b;
}

Group mv_composite(int d, Field field, int degree) {
  Group g = roe_k(d, field).at(degree);
  for (int step = d; step >= 1; --step) {
    MvBoundary b = mv_boundary(step, field, degree - (d - step));
    g = b.target;
  }
  return g;
}

std::vector<KitaevRow> kitaev_table(int d_max) {
  std::vector<KitaevRow> rows;
  for (int s = 0; s < 2; ++s) {
    KitaevRow row{Field::cplx, s, {}};
    for (int d = 0; d <= d_max; ++d) row.entries.push_back(k_of_field(Field::cplx).at(s + d));
    rows.push_back(std::move(row));
  }
  for (int s = 0; s < 8; ++s) {
    KitaevRow row{Field::real, s, {}};
    for (int d = 0; d <= d_max; ++d) row.entries.push_back(k_of_field(Field::real).at(s + d));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_kitaev_table(const std::vector<KitaevRow>& rows) {
  std::ostringstream out;
  size_t width = 8;
  for (const auto& row : rows)
    for (const auto& g : row.entries) width = std::max(width, to_string(g).size() + 2);
  out << "class";
  if (!rows.empty())
    for (size_t d = 0; d < rows[0].entries.size(); ++d) {
      std::string h = "d=" + std::to_string(d);
      out << std::string(width - h.size(), ' ') << h;
    }
  out << "\n";
  for (const auto& row : rows) {
    std::string label = (row.field == Field::cplx ? "C s=" : "R s=") + std::to_string(row.shift);
    out << label;
    if (label.size() < 5) out << std::string(5 - label.size(), ' ');
    for (const auto& g : row.entries) {
      std::string cell = to_string(g);
      out << std::string(width - cell.size(), ' ') << cell;
    }
    out << "\n";
  }
  return out.str();
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace ktheory
}  // namespace roelab

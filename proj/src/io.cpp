#include "roelab/io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace roelab {

std::string format_double(double value) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_triplets(std::ostream& out, const BlockOperator& op) {
  const int s = op.window().size();
  const int n = op.internal_dim();
  out << op.window().dim() << " " << op.window().half_width() << " " << n << "\n";
  for (int x = 0; x < s; ++x)
    for (int y = 0; y < s; ++y) {
      if (op.block_is_zero(x, y)) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Complex v = op.matrix()(x * n + i, y * n + j);
          out << x * n + i << " " << y * n + j << " " << format_double(v.real()) << " "
              << format_double(v.imag()) << "\n";
        }
    }
}

BlockOperator read_triplets(std::istream& in) {
  int d, l, n;
  if (!(in >> d >> l >> n)) throw Error(Error::Kind::config, "triplet file: bad header");
  BlockOperator op(Window(d, l), n);
  long row, col;
  std::string re_s, im_s;
  while (in >> row >> col >> re_s >> im_s) {
    double re, im;
    auto r1 = std::from_chars(re_s.data(), re_s.data() + re_s.size(), re);
    auto r2 = std::from_chars(im_s.data(), im_s.data() + im_s.size(), im);
    if (r1.ec != std::errc() || r2.ec != std::errc())
      throw Error(Error::Kind::config, "triplet file: bad number");
    if (row < 0 || col < 0 || row >= op.dim() || col >= op.dim())
      throw Error(Error::Kind::config, "triplet file: index out of range");
    op.matrix()(row, col) = Complex(re, im);
  }
  return op;
}

void write_triplets_file(const std::string& path, const BlockOperator& op) {
  std::ofstream out(path);
  if (!out) throw Error(Error::Kind::config, "cannot open " + path + " for writing");
  write_triplets(out, op);
}

BlockOperator read_triplets_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Error::Kind::config, "cannot open " + path);
  return read_triplets(in);
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::string out(16, '0');
  for (int i = 0; i < 16; ++i) out[15 - i] = "0123456789abcdef"[(h >> (4 * i)) & 0xf];
  return out;
}

}  // namespace roelab

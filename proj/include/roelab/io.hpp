#pragma once

#include <iosfwd>
#include <string>

#include "roelab/block_operator.hpp"

namespace roelab {

/// Sparse triplet format: header line "d L N", then for every nonzero
/// block its N^2 entries in row-major order, one line per entry:
/// "flat-row flat-col real imag" with flat indices site*N + internal.
/// Doubles are written with shortest-round-trip precision, so a
/// write/read cycle reproduces the operator exactly.
void write_triplets(std::ostream& out, const BlockOperator& op);
BlockOperator read_triplets(std::istream& in);

void write_triplets_file(const std::string& path, const BlockOperator& op);
BlockOperator read_triplets_file(const std::string& path);

std::string format_double(double value);

/// FNV-1a 64-bit, hex-encoded; used as the manifest hash.
std::string fnv1a_hex(const std::string& data);

}  // namespace roelab

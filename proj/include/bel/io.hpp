#pragma once

#include <string>

#include "bel/grid.hpp"

namespace bel {

// Binary field container "BFLD1": magic "BFLD1\n", little-endian u32 N,
// f64 L, u8 flag (0 = real stored as complex, 1 = complex), then N*N
// interleaved f64 pairs, row-major.
void write_bfld(const std::string& path, const Field& f);
Field read_bfld(const std::string& path);

// 8-bit grayscale PGM of |field| with a linear min/max mapping; the mapping
// is recorded in a sidecar <path>.json.
void write_pgm(const std::string& path, const Field& f);

// FNV-1a of a string, hex-encoded; used to stamp outputs with their config.
std::string fnv1a_hex(const std::string& text);

}  // namespace bel

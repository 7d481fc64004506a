#include "bel/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace bel {

namespace {
constexpr char kMagic[6] = {'B', 'F', 'L', 'D', '1', '\n'};
}

void write_bfld(const std::string& path, const Field& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(kMagic, sizeof(kMagic));
  const std::uint32_t n = static_cast<std::uint32_t>(f.n());
  const double side = f.grid().side;
  std::uint8_t flag = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i].imag() != 0.0) {
      flag = 1;
      break;
    }
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(&side), sizeof(side));
  out.write(reinterpret_cast<const char*>(&flag), sizeof(flag));
  out.write(reinterpret_cast<const char*>(f.data()),
            static_cast<std::streamsize>(f.size() * sizeof(cplx)));
  if (!out) throw std::runtime_error("short write to " + path);
}

Field read_bfld(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[6];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error(path + " is not a BFLD1 container");
  std::uint32_t n = 0;
  double side = 0.0;
  std::uint8_t flag = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  in.read(reinterpret_cast<char*>(&side), sizeof(side));
  in.read(reinterpret_cast<char*>(&flag), sizeof(flag));
  if (!in) throw std::runtime_error("truncated BFLD1 header in " + path);
  Field f(TorusGrid::make(static_cast<int>(n), side));
  in.read(reinterpret_cast<char*>(f.data()),
          static_cast<std::streamsize>(f.size() * sizeof(cplx)));
  if (!in) throw std::runtime_error("truncated BFLD1 payload in " + path);
  return f;
}

void write_pgm(const std::string& path, const Field& f) {
  double lo = 1e300, hi = -1e300;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = std::abs(f[i]);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi > lo ? hi - lo : 1.0;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "P5\n" << f.n() << " " << f.n() << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(f.n()));
  for (int a = 0; a < f.n(); ++a) {
    for (int b = 0; b < f.n(); ++b) {
      const double v = (std::abs(f.at(a, b)) - lo) / span;
      row[static_cast<std::size_t>(b)] =
          static_cast<unsigned char>(v * 255.0 + 0.5);
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
  std::ofstream side(path + ".json");
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "{\"min\": %.17g, \"max\": %.17g, \"mapping\": \"linear-abs\"}\n",
                lo, hi);
  side << buf;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace bel

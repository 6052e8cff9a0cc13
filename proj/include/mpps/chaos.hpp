#pragma once
// Two coupled 1-D chaotic maps and the quantizers that turn their orbits
// into key material. All arithmetic is IEEE-754 double with a pinned
// evaluation order (logistic term, coupling term, sum, mod 1), so orbits are
// bit-reproducible across runs and platforms with the same libm.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mpps {

enum class MapKind { CLS, CLT };

// One chaotic sub-key: initial value, control parameter, transient length.
struct SubKey {
  double y0 = 0.0;
  double mu = 0.0;
  int transient = 500;

  bool operator==(const SubKey&) const = default;
};

// Logistic map coupled with a sine term, reduced mod 1 into [0,1).
double iterate_cls(double x, double mu);

// Logistic map coupled with a tent term, reduced mod 1 into [0,1).
double iterate_clt(double x, double mu);

double iterate(MapKind kind, double x, double mu);

// Returns `count` consecutive states of the chosen map seeded at key.y0.
// The recorded window starts at iterate number key.transient (so transient=0
// and transient=1 both record from the first iterate onward).
std::vector<double> generate_orbit(MapKind kind, const SubKey& key,
                                   std::size_t count);

// Ascending argsort, 1-based: result[i] is the position (1..n) of the i-th
// smallest orbit value. Ties break toward the smaller original position.
std::vector<std::uint32_t> sort_index(const std::vector<double>& orbit);

// floor(x * 10^14) mod m for x in [0,1).
std::uint32_t quantize_mod(double x, std::uint32_t m);

// 0 if x <= 0.5 else 1.
std::uint8_t binarize(double x);

}  // namespace mpps

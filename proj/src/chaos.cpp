#include "mpps/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace mpps {

namespace {

void check_domain(double x, double mu) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("map state outside [0,1]");
  }
  if (!(mu >= 0.0 && mu <= 4.0)) {
    throw std::domain_error("map parameter outside [0,4]");
  }
}

double mod1(double y) { return std::fmod(y, 1.0); }

}  // namespace

double iterate_cls(double x, double mu) {
  check_domain(x, mu);
  const double t1 = mu * x * (1.0 - x);
  const double t2 = 0.25 * (4.0 - mu) * std::sin(std::numbers::pi * x);
  return mod1(t1 + t2);
}

double iterate_clt(double x, double mu) {
  check_domain(x, mu);
  const double t1 = mu * x * (1.0 - x);
  const double t2 = (x < 0.5) ? 0.5 * (4.0 - mu) * x
                              : 0.5 * (4.0 - mu) * (1.0 - x);
  return mod1(t1 + t2);
}

double iterate(MapKind kind, double x, double mu) {
  return kind == MapKind::CLS ? iterate_cls(x, mu) : iterate_clt(x, mu);
}

std::vector<double> generate_orbit(MapKind kind, const SubKey& key,
                                   std::size_t count) {
  if (key.transient < 0) {
    throw std::invalid_argument("negative transient length");
  }
  double x = key.y0;
  const int discard = std::max(key.transient - 1, 0);
  for (int i = 0; i < discard; ++i) {
    x = iterate(kind, x, key.mu);
  }
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    x = iterate(kind, x, key.mu);
    out.push_back(x);
  }
  return out;
}

std::vector<std::uint32_t> sort_index(const std::vector<double>& orbit) {
  std::vector<std::uint32_t> idx(orbit.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return orbit[a] < orbit[b];
                   });
  for (auto& v : idx) v += 1;  // 1-based positions
  return idx;
}

std::uint32_t quantize_mod(double x, std::uint32_t m) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw std::domain_error("quantize_mod input outside [0,1)");
  }
  if (m == 0) {
    throw std::invalid_argument("quantize_mod modulus must be positive");
  }
  const auto scaled = static_cast<std::uint64_t>(std::floor(x * 1e14));
  return static_cast<std::uint32_t>(scaled % m);
}

std::uint8_t binarize(double x) { return x <= 0.5 ? 0 : 1; }

}  // namespace mpps

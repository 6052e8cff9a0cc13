#pragma once
// Key material: the real-valued secret key (six chaotic sub-keys) and the
// equivalent key (permutation, complement bits, rule indices, keystreams)
// that suffices to encrypt/decrypt without the secret. JSON round-trips are
// bit-exact for all fields including doubles.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpps/chaos.hpp"
#include "mpps/dna.hpp"

namespace mpps {

struct SecretKey {
  // k[0] drives the permutation (CLS), k[1] the rule indices (CLT),
  // k[2] the complement bits (CLT), k[3..5] the keystreams (CLS).
  std::array<SubKey, 6> k{};
  bool operator==(const SecretKey&) const = default;
};

// Which linear combination the keystream arrays hold: the cipher's native
// S4/S5/S6, or the attack's recovered combinations
// (S4, S5^S4^S6, S6^S4).
enum class KeystreamForm { Native, Attack };

struct EquivalentKey {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  KeystreamForm form = KeystreamForm::Native;
  std::vector<std::uint32_t> s1;       // permutation of 1..3L
  std::vector<std::uint8_t> s3;        // 4L complement bits
  std::array<RuleIndex, 3> e{};        // encode rules (R, G, B)
  std::array<RuleIndex, 3> d{};        // decode rules (R, G, B)
  std::array<std::vector<std::uint8_t>, 3> ks{};  // keystreams, each length L

  std::size_t pixels() const { return std::size_t(width) * height; }
  bool operator==(const EquivalentKey&) const = default;
};

// Keystream-form conversions (s1/s3/rules unchanged; exact involutions).
EquivalentKey to_native_form(const EquivalentKey& key);
EquivalentKey to_attack_form(const EquivalentKey& key);

// JSON serialization. SecretKey: {"keys":[{y0,mu,transient} x6], "seed"?}.
// EquivalentKey: {width, height, flag, s1, s3, e, d, ks4, ks5, ks6}.
std::string secret_key_to_json(const SecretKey& key,
                               std::optional<std::uint64_t> seed = {});
SecretKey secret_key_from_json(const std::string& text);

std::string equivalent_key_to_json(const EquivalentKey& key);
EquivalentKey equivalent_key_from_json(const std::string& text);

void save_text(const std::string& path, const std::string& text);
std::string load_text(const std::string& path);

}  // namespace mpps

#pragma once
// Frozen reference vectors for the worked 2x2 example key and the
// degradation analyses. All values were cross-checked against an independent
// prototype before being pinned here; every byte is load-bearing.

#include <array>
#include <cstdint>
#include <vector>

#include "mpps/image.hpp"
#include "mpps/keys.hpp"

namespace fixtures {

inline mpps::SecretKey worked_secret_key() {
  mpps::SecretKey key;
  const double y0[6] = {0.11, 0.12, 0.13, 0.14, 0.15, 0.16};
  const double mu[6] = {3.91, 3.92, 3.93, 3.94, 3.95, 3.96};
  for (int i = 0; i < 6; ++i) {
    key.k[i].y0 = y0[i];
    key.k[i].mu = mu[i];
    key.k[i].transient = 500;
  }
  return key;
}

// Reference permutation, rules and keystreams derived from the worked key at
// 2x2 (window starting at iterate 500).
inline const std::vector<std::uint32_t> kS1{9, 1, 10, 2, 11, 5,
                                            7, 3, 12, 6, 4, 8};
inline const std::array<std::uint8_t, 3> kE{4, 5, 5};
inline const std::array<std::uint8_t, 3> kD{1, 7, 6};
inline const std::vector<std::uint8_t> kS3Derived{0, 0, 1, 1, 0, 1, 0, 0,
                                                  0, 1, 1, 1, 1, 1, 0, 0};
// The complement bit sequence the reference tables list alongside the worked
// example. It does NOT equal the sequence the worked key derives (the source
// material is internally inconsistent there); the printed ciphertexts match
// this sequence, so the cipher fixtures below use it.
inline const std::vector<std::uint8_t> kS3Printed{0, 0, 1, 1, 1, 1, 1, 0,
                                                  1, 1, 0, 1, 0, 1, 1, 0};
inline const std::vector<std::uint8_t> kKs4{99, 172, 189, 130};
inline const std::vector<std::uint8_t> kKs5{155, 45, 47, 189};
inline const std::vector<std::uint8_t> kKs6{193, 122, 164, 238};

inline mpps::RgbImage make_rgb(std::uint32_t width, std::uint32_t height,
                               std::vector<std::uint8_t> r,
                               std::vector<std::uint8_t> g,
                               std::vector<std::uint8_t> b) {
  mpps::RgbImage img;
  img.width = width;
  img.height = height;
  img.r = std::move(r);
  img.g = std::move(g);
  img.b = std::move(b);
  return img;
}

// The worked equivalent key with the printed complement bits (the variant
// that reproduces the printed ciphertexts).
inline mpps::EquivalentKey worked_equivalent_key() {
  mpps::EquivalentKey ek;
  ek.width = 2;
  ek.height = 2;
  ek.form = mpps::KeystreamForm::Native;
  ek.s1 = kS1;
  ek.s3 = kS3Printed;
  ek.e = {kE[0], kE[1], kE[2]};
  ek.d = {kD[0], kD[1], kD[2]};
  ek.ks = {kKs4, kKs5, kKs6};
  return ek;
}

// Plaintexts: the four constants and the 2x2 natural image whose stacked
// planes are 0..11.
inline mpps::RgbImage plain_natural() {
  return make_rgb(2, 2, {0, 1, 2, 3}, {4, 5, 6, 7}, {8, 9, 10, 11});
}

inline const std::vector<std::uint32_t> kIstarNatural{8, 0, 9, 1, 10, 4,
                                                      6, 2, 11, 5, 3, 7};

// Ciphertexts of the five reference plaintexts under
// worked_equivalent_key().
inline mpps::RgbImage cipher_of_0() {
  return make_rgb(2, 2, {198, 60, 216, 204}, {107, 69, 102, 24},
                  {49, 72, 224, 205});
}
inline mpps::RgbImage cipher_of_85() {
  return make_rgb(2, 2, {108, 60, 114, 204}, {59, 20, 51, 12},
                  {49, 72, 224, 205});
}
inline mpps::RgbImage cipher_of_170() {
  return make_rgb(2, 2, {153, 158, 141, 228}, {145, 20, 153, 12},
                  {110, 234, 181, 229});
}
inline mpps::RgbImage cipher_of_255() {
  return make_rgb(2, 2, {51, 158, 39, 228}, {148, 69, 153, 24},
                  {110, 234, 181, 229});
}
inline mpps::RgbImage cipher_of_natural() {
  return make_rgb(2, 2, {202, 48, 210, 196}, {99, 72, 106, 17},
                  {60, 76, 231, 205});
}

// Keyless unchaining of cipher_of_0() / cipher_of_255().
inline const std::vector<std::uint8_t> kW0R{198, 250, 228, 20};
inline const std::vector<std::uint8_t> kW0G{156, 173, 111, 71};
inline const std::vector<std::uint8_t> kW0B{247, 131, 76, 57};
inline const std::vector<std::uint8_t> kW255R{51, 173, 185, 195};
inline const std::vector<std::uint8_t> kW255G{201, 248, 58, 18};
inline const std::vector<std::uint8_t> kW255B{93, 41, 230, 147};

// Attack-form (hat) keystreams of the worked key.
inline const std::vector<std::uint8_t> kHat5{57, 251, 54, 209};
inline const std::vector<std::uint8_t> kHat6{162, 214, 25, 108};

// Candidates the searches must contain at the worked key (rules, keystream).
inline const std::vector<std::uint8_t> kRedCand01Ks{201, 6, 23, 40};
inline const std::vector<std::uint8_t> kGreenCand010Ks{147, 81, 156, 123};
inline const std::vector<std::uint8_t> kBlueCand111Ks{247, 131, 76, 57};

// Lexicographically smallest fully consistent joint rule assignment at the
// worked key, with its native-form keystreams.
inline const std::array<std::uint8_t, 6> kRepRules{0, 1, 1, 0, 1, 1};
inline const std::vector<std::uint8_t> kRepKs4Native{201, 6, 23, 40};
inline const std::vector<std::uint8_t> kRepKs5Native{100, 210, 208, 66};
inline const std::vector<std::uint8_t> kRepKs6Native{62, 133, 91, 17};

// Degradation expectations: (map, mu numerator, log2 denom, n, mode) ->
// component count, sorted cycle lengths, max tail.
struct GraphExpectation {
  const char* map;
  std::uint64_t mu_num;
  int mu_log2_denom;
  int n;
  const char* mode;
  std::size_t components;
  std::vector<std::size_t> sorted_cycles;
  std::size_t max_tail;
};

inline const std::vector<GraphExpectation> kGraphExpectations{
    {"cls", 121, 5, 9, "floor", 2, {1, 29}, 42},
    {"cls", 121, 5, 9, "round", 2, {1, 11}, 29},
    {"cls", 121, 5, 9, "ceil", 1, {1}, 25},
    {"clt", 123, 5, 8, "floor", 3, {1, 1, 7}, 18},
    {"clt", 123, 5, 8, "round", 3, {1, 1, 7}, 24},
    {"clt", 123, 5, 8, "ceil", 3, {1, 2, 11}, 33},
    {"cls", 61, 4, 5, "round", 4, {1, 1, 2, 3}, 6},
    {"cls", 61, 4, 6, "round", 4, {1, 1, 2, 9}, 5},
    {"cls", 61, 4, 7, "round", 4, {1, 1, 3, 5}, 10},
    {"cls", 61, 4, 8, "round", 2, {1, 10}, 23},
    {"clt", 63, 4, 4, "round", 2, {1, 1}, 4},
    {"clt", 63, 4, 5, "round", 4, {1, 1, 2, 3}, 6},
    {"clt", 63, 4, 6, "round", 4, {1, 1, 2, 9}, 5},
    {"clt", 63, 4, 7, "round", 3, {1, 1, 3}, 12},
};

}  // namespace fixtures

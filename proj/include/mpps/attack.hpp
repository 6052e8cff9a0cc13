#pragma once
// The chosen-plaintext attack: keyless unchaining of the XOR diffusion,
// complement-sequence recovery from one complementary plaintext pair,
// per-channel exhaustive rule searches over four constant images,
// cross-channel consistency filtering, permutation recovery via positional
// base-256 digit images, and full equivalent-key assembly.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mpps/image.hpp"
#include "mpps/keys.hpp"
#include "mpps/oracle.hpp"

namespace mpps {

// The four constant plaintext values used by the searches (each byte is one
// repeated 2-bit pattern, so together they exercise all four quad inputs).
inline constexpr std::array<std::uint8_t, 4> kSearchConstants{0, 85, 170, 255};

struct WPlanes {
  std::vector<std::uint8_t> r, g, b;
};

// Keyless unchaining of the ciphertext diffusion:
//   r = I**_r ^ S4,  g = I**_g ^ S5^S4^S6,  b = I**_b ^ S6^S4.
WPlanes partial_decrypt(const RgbImage& cipher);

// Complement bits from the unchained red planes of a complementary constant
// pair (alpha ^ beta = 255). Throws std::runtime_error on a 2-bit difference
// of 00 (impossible under a faithful oracle).
std::vector<std::uint8_t> s3_from_difference(
    const std::vector<std::uint8_t>& w_r_alpha,
    const std::vector<std::uint8_t>& w_r_beta);

// Queries the oracle with the two constant images and recovers s3.
std::vector<std::uint8_t> recover_s3(ChosenPlaintextOracle& oracle,
                                     std::uint8_t alpha, std::uint8_t beta,
                                     std::uint32_t M, std::uint32_t N);

struct ChannelCandidate {
  std::vector<RuleIndex> rules;         // R: (E1,D1); G: (E1,E2,D2); B: (E2,E3,D3)
  std::vector<std::uint8_t> keystream;  // length L
  bool operator==(const ChannelCandidate&) const = default;
};

struct CandidateSet {
  char channel = '?';  // 'R', 'G', or 'B'
  std::vector<ChannelCandidate> candidates;
};

// Unchained planes of the four constant-image responses, in
// kSearchConstants order.
using ConstantResponses = std::array<WPlanes, 4>;

CandidateSet search_red(const ConstantResponses& w, std::uint32_t L,
                        const std::vector<std::uint8_t>& s3);
CandidateSet search_green(const ConstantResponses& w, std::uint32_t L,
                          const std::vector<std::uint8_t>& s3);
CandidateSet search_blue(const ConstantResponses& w, std::uint32_t L);

struct FilterResult {
  CandidateSet red, green, blue;  // pruned sets
  // Lexicographically smallest fully consistent (E1,D1,E2,D2,E3,D3) triple.
  ChannelCandidate rep_red, rep_green, rep_blue;
};

FilterResult filter_consistent(const CandidateSet& red,
                               const CandidateSet& green,
                               const CandidateSet& blue);

// Number of positional digit images needed for a stacked length of n values.
std::uint32_t digit_image_count(std::uint64_t n);

// The k-th digit image: stacked position p (1..3L) carries byte
// floor((p-1) / 256^k) mod 256.
RgbImage digit_image(std::uint32_t M, std::uint32_t N, std::uint32_t k);

// Recovers the permutation through a fragment key (s1 ignored): submits the
// digit images, decrypts to the permuted stage, reads back source positions.
std::vector<std::uint32_t> recover_permutation(ChosenPlaintextOracle& oracle,
                                               const EquivalentKey& fragment);

struct AttackDiagnostics {
  std::size_t queries = 0;
  std::size_t red_candidates = 0;    // pre-filter
  std::size_t green_candidates = 0;  // pre-filter
  std::size_t blue_candidates = 0;   // pre-filter
  std::size_t red_pruned = 0, green_pruned = 0, blue_pruned = 0;
  std::size_t joint_candidates = 0;    // consistency-matched triples
  std::size_t returned_rank = 0;       // 1-based rank of the returned triple
  std::size_t verified_candidates = 0; // triples passing every response check
  std::size_t behavior_classes = 0;    // distinct decrypt behaviors among them
  bool ambiguous = false;              // >1 response-indistinguishable class
};

// Runs the end-to-end attack using exactly digit_image_count(3MN) + 4 oracle
// queries. Returns an attack-form equivalent key verified against every
// oracle response. When `diag` is given, all verified candidates are
// enumerated to report response-ambiguity (the returned key is the
// lexicographically first verified one either way).
EquivalentKey full_attack(ChosenPlaintextOracle& oracle, std::uint32_t M,
                          std::uint32_t N, AttackDiagnostics* diag = nullptr);

}  // namespace mpps

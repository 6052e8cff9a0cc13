#include "mpps/attack.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>

#include "mpps/cipher.hpp"

namespace mpps {

namespace {

// Number of worker threads for the hypothesis searches: MPPS_THREADS when
// set to a positive integer, otherwise the hardware concurrency.
unsigned search_threads() {
  if (const char* env = std::getenv("MPPS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Runs fn(i) for i in [0, total) across up to search_threads() workers.
// Each index is handled exactly once; workers own disjoint stripes.
template <typename Fn>
void parallel_for(std::size_t total, Fn&& fn) {
  const unsigned requested = search_threads();
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(requested, total));
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([w, workers, total, &fn] {
      for (std::size_t i = w; i < total; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<std::uint8_t> const_plane(std::uint8_t value, std::size_t L) {
  return std::vector<std::uint8_t>(L, value);
}

RgbImage const_image(std::uint8_t value, std::uint32_t M, std::uint32_t N) {
  return make_image(N, M, value);
}

// star = decode(complement(encode(alpha-plane))) for the red channel of a
// constant image: what the unchained red plane would hold minus its
// keystream.
std::vector<std::uint8_t> sim_red(std::uint8_t alpha, std::size_t L,
                                  RuleIndex s, RuleIndex t,
                                  const std::vector<std::uint8_t>& s3) {
  const auto R = encode_plane(const_plane(alpha, L), s);
  const auto Rs = complement_plane(R, s3);
  return decode_plane(Rs, t);
}

std::vector<std::uint8_t> sim_green(std::uint8_t alpha, std::size_t L,
                                    RuleIndex e1, RuleIndex e2, RuleIndex d2,
                                    const std::vector<std::uint8_t>& s3) {
  const auto R = encode_plane(const_plane(alpha, L), e1);
  const auto Rs = complement_plane(R, s3);
  const auto G = encode_plane(const_plane(alpha, L), e2);
  std::vector<std::uint8_t> Gss(4 * L);
  for (std::size_t i = 0; i < 4 * L; ++i) {
    Gss[i] = static_cast<std::uint8_t>(dna_add(
        static_cast<DnaSymbol>(G[i]), static_cast<DnaSymbol>(Rs[i])));
  }
  return decode_plane(Gss, d2);
}

std::vector<std::uint8_t> sim_blue(std::uint8_t alpha, std::size_t L,
                                   RuleIndex e2, RuleIndex e3, RuleIndex d3) {
  const auto G = encode_plane(const_plane(alpha, L), e2);
  const auto B = encode_plane(const_plane(alpha, L), e3);
  std::vector<std::uint8_t> Bss(4 * L);
  for (std::size_t i = 0; i < 4 * L; ++i) {
    Bss[i] = static_cast<std::uint8_t>(dna_add(
        static_cast<DnaSymbol>(B[i]), static_cast<DnaSymbol>(G[i])));
  }
  return decode_plane(Bss, d3);
}

// Shared skeleton for the three searches: `simulate(alpha, combo)` produces
// the keystream-free plane; a combo survives iff w ^ simulate agrees across
// all four constants, and that agreement IS its keystream.
template <typename Simulate>
std::vector<std::optional<std::vector<std::uint8_t>>> run_search(
    const ConstantResponses& w, char channel, std::size_t combos,
    Simulate&& simulate) {
  std::vector<std::optional<std::vector<std::uint8_t>>> out(combos);
  parallel_for(combos, [&](std::size_t combo) {
    std::vector<std::uint8_t> ks;
    bool ok = true;
    for (std::size_t a = 0; a < kSearchConstants.size(); ++a) {
      const std::vector<std::uint8_t>& plane =
          channel == 'R' ? w[a].r : (channel == 'G' ? w[a].g : w[a].b);
      const auto sim = simulate(kSearchConstants[a], combo);
      std::vector<std::uint8_t> cand(plane.size());
      for (std::size_t i = 0; i < plane.size(); ++i) {
        cand[i] = static_cast<std::uint8_t>(plane[i] ^ sim[i]);
      }
      if (a == 0) {
        ks = std::move(cand);
      } else if (ks != cand) {
        ok = false;
        break;
      }
    }
    if (ok) out[combo] = std::move(ks);
  });
  return out;
}

}  // namespace

WPlanes partial_decrypt(const RgbImage& cipher) {
  const std::size_t L = cipher.pixels();
  WPlanes w;
  w.r.resize(L);
  w.g.resize(L);
  w.b.resize(L);
  std::uint8_t pr = 0, pg = 0, pb = 0;
  for (std::size_t i = 0; i < L; ++i) {
    w.r[i] = static_cast<std::uint8_t>(cipher.r[i] ^ pr);
    w.b[i] = static_cast<std::uint8_t>(cipher.b[i] ^ pb ^ cipher.r[i] ^ pr);
    w.g[i] = static_cast<std::uint8_t>(cipher.g[i] ^ pg ^ w.b[i]);
    pr = cipher.r[i];
    pg = cipher.g[i];
    pb = cipher.b[i];
  }
  return w;
}

std::vector<std::uint8_t> s3_from_difference(
    const std::vector<std::uint8_t>& w_r_alpha,
    const std::vector<std::uint8_t>& w_r_beta) {
  if (w_r_alpha.size() != w_r_beta.size()) {
    throw std::invalid_argument("unchained plane length mismatch");
  }
  std::vector<std::uint8_t> s3;
  s3.reserve(4 * w_r_alpha.size());
  for (std::size_t i = 0; i < w_r_alpha.size(); ++i) {
    const std::uint8_t d =
        static_cast<std::uint8_t>(w_r_alpha[i] ^ w_r_beta[i]);
    for (int shift = 6; shift >= 0; shift -= 2) {
      const std::uint8_t q = (d >> shift) & 3;
      if (q == 3) {
        s3.push_back(0);
      } else if (q == 1 || q == 2) {
        s3.push_back(1);
      } else {
        throw std::runtime_error(
            "protocol error: complementary plaintexts produced an unchanged "
            "2-bit pair in the red channel");
      }
    }
  }
  return s3;
}

std::vector<std::uint8_t> recover_s3(ChosenPlaintextOracle& oracle,
                                     std::uint8_t alpha, std::uint8_t beta,
                                     std::uint32_t M, std::uint32_t N) {
  if ((alpha ^ beta) != 0xFF) {
    throw std::invalid_argument(
        "complement recovery needs alpha ^ beta == 255");
  }
  const RgbImage ca = oracle.submit(const_image(alpha, M, N));
  const RgbImage cb = oracle.submit(const_image(beta, M, N));
  return s3_from_difference(partial_decrypt(ca).r, partial_decrypt(cb).r);
}

CandidateSet search_red(const ConstantResponses& w, std::uint32_t L,
                        const std::vector<std::uint8_t>& s3) {
  const auto found =
      run_search(w, 'R', 64, [&](std::uint8_t alpha, std::size_t combo) {
        const auto s = static_cast<RuleIndex>(combo / 8);
        const auto t = static_cast<RuleIndex>(combo % 8);
        return sim_red(alpha, L, s, t, s3);
      });
  CandidateSet out;
  out.channel = 'R';
  for (std::size_t combo = 0; combo < found.size(); ++combo) {
    if (!found[combo]) continue;
    out.candidates.push_back(
        ChannelCandidate{{static_cast<RuleIndex>(combo / 8),
                          static_cast<RuleIndex>(combo % 8)},
                         *found[combo]});
  }
  return out;
}

CandidateSet search_green(const ConstantResponses& w, std::uint32_t L,
                          const std::vector<std::uint8_t>& s3) {
  const auto found =
      run_search(w, 'G', 512, [&](std::uint8_t alpha, std::size_t combo) {
        const auto e1 = static_cast<RuleIndex>(combo / 64);
        const auto e2 = static_cast<RuleIndex>((combo / 8) % 8);
        const auto d2 = static_cast<RuleIndex>(combo % 8);
        return sim_green(alpha, L, e1, e2, d2, s3);
      });
  CandidateSet out;
  out.channel = 'G';
  for (std::size_t combo = 0; combo < found.size(); ++combo) {
    if (!found[combo]) continue;
    out.candidates.push_back(
        ChannelCandidate{{static_cast<RuleIndex>(combo / 64),
                          static_cast<RuleIndex>((combo / 8) % 8),
                          static_cast<RuleIndex>(combo % 8)},
                         *found[combo]});
  }
  return out;
}

CandidateSet search_blue(const ConstantResponses& w, std::uint32_t L) {
  const auto found =
      run_search(w, 'B', 512, [&](std::uint8_t alpha, std::size_t combo) {
        const auto e2 = static_cast<RuleIndex>(combo / 64);
        const auto e3 = static_cast<RuleIndex>((combo / 8) % 8);
        const auto d3 = static_cast<RuleIndex>(combo % 8);
        return sim_blue(alpha, L, e2, e3, d3);
      });
  CandidateSet out;
  out.channel = 'B';
  for (std::size_t combo = 0; combo < found.size(); ++combo) {
    if (!found[combo]) continue;
    out.candidates.push_back(
        ChannelCandidate{{static_cast<RuleIndex>(combo / 64),
                          static_cast<RuleIndex>((combo / 8) % 8),
                          static_cast<RuleIndex>(combo % 8)},
                         *found[combo]});
  }
  return out;
}

namespace {

struct JointCandidate {
  std::array<RuleIndex, 6> rules{};  // (E1, D1, E2, D2, E3, D3)
  const ChannelCandidate* r = nullptr;
  const ChannelCandidate* g = nullptr;
  const ChannelCandidate* b = nullptr;
};

// All cross-channel matches (green shares E1 with red, blue shares E2 with
// green), ordered lexicographically by (E1, D1, E2, D2, E3, D3).
std::vector<JointCandidate> joint_candidates(const CandidateSet& red,
                                             const CandidateSet& green,
                                             const CandidateSet& blue) {
  std::vector<JointCandidate> out;
  for (const auto& r : red.candidates) {
    for (const auto& g : green.candidates) {
      if (g.rules[0] != r.rules[0]) continue;
      for (const auto& b : blue.candidates) {
        if (b.rules[0] != g.rules[1]) continue;
        JointCandidate jc;
        jc.rules = {r.rules[0], r.rules[1], g.rules[1],
                    g.rules[2], b.rules[1], b.rules[2]};
        jc.r = &r;
        jc.g = &g;
        jc.b = &b;
        out.push_back(jc);
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const JointCandidate& a, const JointCandidate& b) {
              return a.rules < b.rules;
            });
  return out;
}

}  // namespace

FilterResult filter_consistent(const CandidateSet& red,
                               const CandidateSet& green,
                               const CandidateSet& blue) {
  std::set<RuleIndex> g_e1;
  for (const auto& g : green.candidates) g_e1.insert(g.rules[0]);

  FilterResult out;
  out.red.channel = 'R';
  out.green.channel = 'G';
  out.blue.channel = 'B';
  for (const auto& r : red.candidates) {
    if (g_e1.count(r.rules[0])) out.red.candidates.push_back(r);
  }
  std::set<RuleIndex> r_e1;
  for (const auto& r : out.red.candidates) r_e1.insert(r.rules[0]);
  std::set<RuleIndex> b_e2;
  for (const auto& b : blue.candidates) b_e2.insert(b.rules[0]);
  for (const auto& g : green.candidates) {
    if (r_e1.count(g.rules[0]) && b_e2.count(g.rules[1])) {
      out.green.candidates.push_back(g);
    }
  }
  std::set<RuleIndex> g_e2;
  for (const auto& g : out.green.candidates) g_e2.insert(g.rules[1]);
  for (const auto& b : blue.candidates) {
    if (g_e2.count(b.rules[0])) out.blue.candidates.push_back(b);
  }

  const auto joints = joint_candidates(out.red, out.green, out.blue);
  if (joints.empty()) {
    throw std::runtime_error(
        "protocol error: no cross-channel-consistent rule candidates");
  }
  out.rep_red = *joints.front().r;
  out.rep_green = *joints.front().g;
  out.rep_blue = *joints.front().b;
  return out;
}

std::uint32_t digit_image_count(std::uint64_t n) {
  std::uint32_t k = 0;
  std::uint64_t p = 1;
  while (p < n) {
    p *= 256;
    ++k;
  }
  return std::max<std::uint32_t>(k, 1);
}

RgbImage digit_image(std::uint32_t M, std::uint32_t N, std::uint32_t k) {
  const std::size_t L = static_cast<std::size_t>(M) * N;
  std::uint64_t divisor = 1;
  for (std::uint32_t i = 0; i < k; ++i) divisor *= 256;
  std::vector<std::uint8_t> stacked(3 * L);
  for (std::size_t p = 0; p < 3 * L; ++p) {
    stacked[p] = static_cast<std::uint8_t>((p / divisor) % 256);
  }
  return unstack_planes(N, M, stacked);
}

namespace {

EquivalentKey with_identity_permutation(const EquivalentKey& fragment) {
  EquivalentKey frag = fragment;
  frag.s1.resize(3 * fragment.pixels());
  std::iota(frag.s1.begin(), frag.s1.end(), 1);
  return frag;
}

// Decrypts each digit-image ciphertext to the permuted stage via an
// identity-permutation fragment and reassembles per-position source indices.
// Returns std::nullopt when the digits do not form a permutation of
// 0..3L-1 (a wrong fragment, or corrupt responses).
std::optional<std::vector<std::uint32_t>> permutation_from_digits(
    const std::vector<RgbImage>& digit_ciphers, const EquivalentKey& frag) {
  const std::size_t L = frag.pixels();
  const std::size_t n = 3 * L;
  std::vector<std::uint64_t> src(n, 0);
  std::uint64_t scale = 1;
  for (const RgbImage& cipher : digit_ciphers) {
    const auto stars = stack_planes(decrypt(cipher, frag));
    for (std::size_t pos = 0; pos < n; ++pos) {
      src[pos] += static_cast<std::uint64_t>(stars[pos]) * scale;
    }
    scale *= 256;
  }
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> s1(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    if (src[pos] >= n || seen[src[pos]]) return std::nullopt;
    seen[src[pos]] = true;
    s1[pos] = static_cast<std::uint32_t>(src[pos] + 1);
  }
  return s1;
}

}  // namespace

std::vector<std::uint32_t> recover_permutation(ChosenPlaintextOracle& oracle,
                                               const EquivalentKey& fragment) {
  const std::size_t L = fragment.pixels();
  const std::uint32_t num = digit_image_count(3 * L);
  const EquivalentKey frag = with_identity_permutation(fragment);
  std::vector<RgbImage> ciphers;
  ciphers.reserve(num);
  for (std::uint32_t k = 0; k < num; ++k) {
    ciphers.push_back(
        oracle.submit(digit_image(fragment.height, fragment.width, k)));
  }
  const auto s1 = permutation_from_digits(ciphers, frag);
  if (!s1) {
    throw std::runtime_error(
        "protocol error: digit responses do not decode to a permutation");
  }
  return *s1;
}

EquivalentKey full_attack(ChosenPlaintextOracle& oracle, std::uint32_t M,
                          std::uint32_t N, AttackDiagnostics* diag) {
  const std::size_t L = static_cast<std::size_t>(M) * N;

  // Phase 1: the four constant images.
  std::array<RgbImage, 4> const_plains;
  std::array<RgbImage, 4> const_ciphers;
  ConstantResponses w;
  for (std::size_t a = 0; a < kSearchConstants.size(); ++a) {
    const_plains[a] = const_image(kSearchConstants[a], M, N);
    const_ciphers[a] = oracle.submit(const_plains[a]);
    w[a] = partial_decrypt(const_ciphers[a]);
  }

  // Complement bits from the (0, 255) pair.
  const auto s3 = s3_from_difference(w[0].r, w[3].r);

  // Per-channel hypothesis searches and the cross-channel filter.
  const auto red = search_red(w, static_cast<std::uint32_t>(L), s3);
  const auto green = search_green(w, static_cast<std::uint32_t>(L), s3);
  const auto blue = search_blue(w, static_cast<std::uint32_t>(L));
  const auto filtered = filter_consistent(red, green, blue);
  const auto joints =
      joint_candidates(filtered.red, filtered.green, filtered.blue);

  // Phase 2: the positional digit images (shared by all candidates).
  const std::uint32_t num = digit_image_count(3 * L);
  std::vector<RgbImage> digit_plains, digit_ciphers;
  digit_plains.reserve(num);
  digit_ciphers.reserve(num);
  for (std::uint32_t k = 0; k < num; ++k) {
    digit_plains.push_back(digit_image(M, N, k));
    digit_ciphers.push_back(oracle.submit(digit_plains.back()));
  }

  // Try candidates in lexicographic rule order; a candidate survives only
  // if its digit decryptions form a permutation AND the assembled key
  // reproduces every recorded response.
  auto assemble = [&](const JointCandidate& jc)
      -> std::optional<EquivalentKey> {
    EquivalentKey ek;
    ek.width = N;
    ek.height = M;
    ek.form = KeystreamForm::Attack;
    ek.s3 = s3;
    ek.e = {jc.rules[0], jc.rules[2], jc.rules[4]};
    ek.d = {jc.rules[1], jc.rules[3], jc.rules[5]};
    ek.ks = {jc.r->keystream, jc.g->keystream, jc.b->keystream};
    const auto s1 =
        permutation_from_digits(digit_ciphers, with_identity_permutation(ek));
    if (!s1) return std::nullopt;
    ek.s1 = *s1;
    for (std::uint32_t k = 0; k < num; ++k) {
      if (decrypt(digit_ciphers[k], ek) != digit_plains[k]) {
        return std::nullopt;
      }
    }
    for (std::size_t a = 0; a < kSearchConstants.size(); ++a) {
      if (decrypt(const_ciphers[a], ek) != const_plains[a]) {
        return std::nullopt;
      }
    }
    return ek;
  };

  std::optional<EquivalentKey> result;
  std::size_t result_rank = 0;
  std::size_t verified = 0;
  std::vector<std::string> behaviors;  // probe decryptions, serialized

  // Two fixed pseudo-random probe ciphertexts expose candidates that verify
  // against every response yet decrypt other inputs differently.
  std::array<RgbImage, 2> probes;
  if (diag) {
    std::mt19937 rng(0x9E3779B9u);
    for (auto& probe : probes) {
      probe = make_image(N, M);
      for (std::size_t i = 0; i < L; ++i) {
        probe.r[i] = static_cast<std::uint8_t>(rng() & 0xFF);
        probe.g[i] = static_cast<std::uint8_t>(rng() & 0xFF);
        probe.b[i] = static_cast<std::uint8_t>(rng() & 0xFF);
      }
    }
  }

  for (std::size_t rank = 0; rank < joints.size(); ++rank) {
    const auto ek = assemble(joints[rank]);
    if (!ek) continue;
    ++verified;
    if (!result) {
      result = ek;
      result_rank = rank + 1;
      if (!diag) break;  // first verified candidate is the answer
    }
    if (diag) {
      std::string sig;
      for (const RgbImage& probe : probes) {
        const RgbImage dec = decrypt(probe, *ek);
        sig.append(dec.r.begin(), dec.r.end());
        sig.append(dec.g.begin(), dec.g.end());
        sig.append(dec.b.begin(), dec.b.end());
      }
      if (std::find(behaviors.begin(), behaviors.end(), sig) ==
          behaviors.end()) {
        behaviors.push_back(std::move(sig));
      }
    }
  }

  if (!result) {
    throw std::runtime_error(
        "protocol error: no rule candidate reproduces the oracle responses");
  }
  if (diag) {
    diag->queries = kSearchConstants.size() + num;
    diag->red_candidates = red.candidates.size();
    diag->green_candidates = green.candidates.size();
    diag->blue_candidates = blue.candidates.size();
    diag->red_pruned = filtered.red.candidates.size();
    diag->green_pruned = filtered.green.candidates.size();
    diag->blue_pruned = filtered.blue.candidates.size();
    diag->joint_candidates = joints.size();
    diag->returned_rank = result_rank;
    diag->verified_candidates = verified;
    diag->behavior_classes = behaviors.size();
    diag->ambiguous = behaviors.size() > 1;
  }
  return *result;
}

}  // namespace mpps

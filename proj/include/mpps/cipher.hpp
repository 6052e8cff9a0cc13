#pragma once
// The full color-image cipher: plane permutation, DNA encode, conditional
// complement of the red plane, DNA diffusion, DNA decode, and chained XOR
// pixel diffusion — driven by either a SecretKey or an EquivalentKey.

#include <cstdint>
#include <vector>

#include "mpps/dna.hpp"
#include "mpps/image.hpp"
#include "mpps/keys.hpp"

namespace mpps {

// Expands a secret key into the equivalent key bound to an M x N image
// (M rows = height, N columns = width). Result is native-form.
EquivalentKey derive_equivalent_key(const SecretKey& key, std::uint32_t M,
                                    std::uint32_t N);

// Stacked-plane helpers: the 3L-vector is r, then g, then b, raster order.
std::vector<std::uint8_t> stack_planes(const RgbImage& img);
RgbImage unstack_planes(std::uint32_t width, std::uint32_t height,
                        const std::vector<std::uint8_t>& stacked);

// out[k] = in[s1[k] - 1] (s1 is 1-based).
std::vector<std::uint8_t> permute(const std::vector<std::uint8_t>& stacked,
                                  const std::vector<std::uint32_t>& s1);
std::vector<std::uint8_t> unpermute(const std::vector<std::uint8_t>& permuted,
                                    const std::vector<std::uint32_t>& s1);
RgbImage permute(const RgbImage& img, const std::vector<std::uint32_t>& s1);

// Byte plane <-> DNA symbol plane (4 symbols per byte, most significant
// 2-bit pair first).
std::vector<std::uint8_t> encode_plane(const std::vector<std::uint8_t>& plane,
                                       RuleIndex rule);
std::vector<std::uint8_t> decode_plane(const std::vector<std::uint8_t>& symbols,
                                       RuleIndex rule);

// Pointwise conditional complement: position i is complemented iff s3[i]=1.
std::vector<std::uint8_t> complement_plane(
    const std::vector<std::uint8_t>& symbols,
    const std::vector<std::uint8_t>& s3, bool inverse = false);

struct DnaPlanes {
  std::vector<std::uint8_t> r, g, b;
};

// R** = complement(R, s3); G** = G + R*; B** = B + G (symbol addition).
DnaPlanes dna_diffuse(const std::vector<std::uint8_t>& r,
                      const std::vector<std::uint8_t>& g,
                      const std::vector<std::uint8_t>& b,
                      const std::vector<std::uint8_t>& s3);
DnaPlanes dna_undiffuse(const std::vector<std::uint8_t>& rss,
                        const std::vector<std::uint8_t>& gss,
                        const std::vector<std::uint8_t>& bss,
                        const std::vector<std::uint8_t>& s3);

struct BytePlanes {
  std::vector<std::uint8_t> r, g, b;
};

// Chained XOR diffusion with zero initial values:
//   r'(i) = r'(i-1) ^ r(i) ^ ks4(i)
//   g'(i) = g'(i-1) ^ g(i) ^ b(i) ^ ks5(i)
//   b'(i) = b'(i-1) ^ b(i) ^ r(i) ^ ks6(i)
BytePlanes pixel_diffuse(const BytePlanes& in,
                         const std::vector<std::uint8_t>& ks4,
                         const std::vector<std::uint8_t>& ks5,
                         const std::vector<std::uint8_t>& ks6);
BytePlanes pixel_undiffuse(const BytePlanes& out,
                           const std::vector<std::uint8_t>& ks4,
                           const std::vector<std::uint8_t>& ks5,
                           const std::vector<std::uint8_t>& ks6);

RgbImage encrypt(const RgbImage& img, const SecretKey& key);
RgbImage encrypt(const RgbImage& img, const EquivalentKey& key);
RgbImage decrypt(const RgbImage& img, const SecretKey& key);
RgbImage decrypt(const RgbImage& img, const EquivalentKey& key);

}  // namespace mpps

#include "mpps/cipher.hpp"

#include <stdexcept>

#include "mpps/chaos.hpp"

namespace mpps {

EquivalentKey derive_equivalent_key(const SecretKey& key, std::uint32_t M,
                                    std::uint32_t N) {
  if (M == 0 || N == 0) throw std::invalid_argument("image dimensions must be positive");
  const std::size_t L = static_cast<std::size_t>(M) * N;

  EquivalentKey ek;
  ek.width = N;
  ek.height = M;
  ek.form = KeystreamForm::Native;

  const auto perm_orbit = generate_orbit(MapKind::CLS, key.k[0], 3 * L);
  ek.s1 = sort_index(perm_orbit);

  const auto rule_orbit = generate_orbit(MapKind::CLT, key.k[1], 6);
  for (int c = 0; c < 3; ++c) {
    ek.e[c] = static_cast<RuleIndex>(quantize_mod(rule_orbit[c], 8));
    ek.d[c] = static_cast<RuleIndex>(quantize_mod(rule_orbit[c + 3], 8));
  }

  const auto comp_orbit = generate_orbit(MapKind::CLT, key.k[2], 4 * L);
  ek.s3.resize(4 * L);
  for (std::size_t i = 0; i < 4 * L; ++i) ek.s3[i] = binarize(comp_orbit[i]);

  for (int c = 0; c < 3; ++c) {
    const auto ks_orbit = generate_orbit(MapKind::CLS, key.k[3 + c], L);
    ek.ks[c].resize(L);
    for (std::size_t i = 0; i < L; ++i) {
      ek.ks[c][i] = static_cast<std::uint8_t>(quantize_mod(ks_orbit[i], 256));
    }
  }
  return ek;
}

std::vector<std::uint8_t> stack_planes(const RgbImage& img) {
  const std::size_t L = img.pixels();
  std::vector<std::uint8_t> out;
  out.reserve(3 * L);
  out.insert(out.end(), img.r.begin(), img.r.end());
  out.insert(out.end(), img.g.begin(), img.g.end());
  out.insert(out.end(), img.b.begin(), img.b.end());
  return out;
}

RgbImage unstack_planes(std::uint32_t width, std::uint32_t height,
                        const std::vector<std::uint8_t>& stacked) {
  const std::size_t L = static_cast<std::size_t>(width) * height;
  if (stacked.size() != 3 * L) {
    throw std::invalid_argument("stacked vector length must be 3*width*height");
  }
  RgbImage img = make_image(width, height);
  std::copy(stacked.begin(), stacked.begin() + L, img.r.begin());
  std::copy(stacked.begin() + L, stacked.begin() + 2 * L, img.g.begin());
  std::copy(stacked.begin() + 2 * L, stacked.end(), img.b.begin());
  return img;
}

std::vector<std::uint8_t> permute(const std::vector<std::uint8_t>& stacked,
                                  const std::vector<std::uint32_t>& s1) {
  if (stacked.size() != s1.size()) {
    throw std::invalid_argument("permutation length mismatch");
  }
  std::vector<std::uint8_t> out(stacked.size());
  for (std::size_t k = 0; k < s1.size(); ++k) {
    const std::uint32_t idx = s1[k];
    if (idx < 1 || idx > stacked.size()) {
      throw std::invalid_argument("permutation entry out of range");
    }
    out[k] = stacked[idx - 1];
  }
  return out;
}

std::vector<std::uint8_t> unpermute(const std::vector<std::uint8_t>& permuted,
                                    const std::vector<std::uint32_t>& s1) {
  if (permuted.size() != s1.size()) {
    throw std::invalid_argument("permutation length mismatch");
  }
  std::vector<std::uint8_t> out(permuted.size());
  for (std::size_t k = 0; k < s1.size(); ++k) {
    const std::uint32_t idx = s1[k];
    if (idx < 1 || idx > permuted.size()) {
      throw std::invalid_argument("permutation entry out of range");
    }
    out[idx - 1] = permuted[k];
  }
  return out;
}

RgbImage permute(const RgbImage& img, const std::vector<std::uint32_t>& s1) {
  return unstack_planes(img.width, img.height, permute(stack_planes(img), s1));
}

std::vector<std::uint8_t> encode_plane(const std::vector<std::uint8_t>& plane,
                                       RuleIndex rule) {
  std::vector<std::uint8_t> out(plane.size() * 4);
  for (std::size_t i = 0; i < plane.size(); ++i) {
    const std::uint8_t byte = plane[i];
    out[4 * i] = static_cast<std::uint8_t>(
        encode(rule, static_cast<Quad>((byte >> 6) & 3)));
    out[4 * i + 1] = static_cast<std::uint8_t>(
        encode(rule, static_cast<Quad>((byte >> 4) & 3)));
    out[4 * i + 2] = static_cast<std::uint8_t>(
        encode(rule, static_cast<Quad>((byte >> 2) & 3)));
    out[4 * i + 3] =
        static_cast<std::uint8_t>(encode(rule, static_cast<Quad>(byte & 3)));
  }
  return out;
}

std::vector<std::uint8_t> decode_plane(const std::vector<std::uint8_t>& symbols,
                                       RuleIndex rule) {
  if (symbols.size() % 4 != 0) {
    throw std::invalid_argument("symbol plane length must be a multiple of 4");
  }
  std::vector<std::uint8_t> out(symbols.size() / 4);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint8_t byte = 0;
    for (int j = 0; j < 4; ++j) {
      const Quad q =
          decode(rule, static_cast<DnaSymbol>(symbols[4 * i + j]));
      byte = static_cast<std::uint8_t>((byte << 2) | q);
    }
    out[i] = byte;
  }
  return out;
}

std::vector<std::uint8_t> complement_plane(
    const std::vector<std::uint8_t>& symbols,
    const std::vector<std::uint8_t>& s3, bool inverse) {
  if (symbols.size() != s3.size()) {
    throw std::invalid_argument("complement bit vector length mismatch");
  }
  std::vector<std::uint8_t> out(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const auto sym = static_cast<DnaSymbol>(symbols[i]);
    out[i] = static_cast<std::uint8_t>(
        s3[i] ? (inverse ? complement_inverse(sym) : complement(sym)) : sym);
  }
  return out;
}

DnaPlanes dna_diffuse(const std::vector<std::uint8_t>& r,
                      const std::vector<std::uint8_t>& g,
                      const std::vector<std::uint8_t>& b,
                      const std::vector<std::uint8_t>& s3) {
  const auto rstar = complement_plane(r, s3);
  DnaPlanes out;
  out.r = rstar;
  out.g.resize(g.size());
  out.b.resize(b.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.g[i] = static_cast<std::uint8_t>(dna_add(
        static_cast<DnaSymbol>(g[i]), static_cast<DnaSymbol>(rstar[i])));
    out.b[i] = static_cast<std::uint8_t>(
        dna_add(static_cast<DnaSymbol>(b[i]), static_cast<DnaSymbol>(g[i])));
  }
  return out;
}

DnaPlanes dna_undiffuse(const std::vector<std::uint8_t>& rss,
                        const std::vector<std::uint8_t>& gss,
                        const std::vector<std::uint8_t>& bss,
                        const std::vector<std::uint8_t>& s3) {
  DnaPlanes out;
  out.g.resize(gss.size());
  out.b.resize(bss.size());
  for (std::size_t i = 0; i < gss.size(); ++i) {
    out.g[i] = static_cast<std::uint8_t>(dna_sub(
        static_cast<DnaSymbol>(gss[i]), static_cast<DnaSymbol>(rss[i])));
    out.b[i] = static_cast<std::uint8_t>(dna_sub(
        static_cast<DnaSymbol>(bss[i]), static_cast<DnaSymbol>(out.g[i])));
  }
  out.r = complement_plane(rss, s3, /*inverse=*/true);
  return out;
}

BytePlanes pixel_diffuse(const BytePlanes& in,
                         const std::vector<std::uint8_t>& ks4,
                         const std::vector<std::uint8_t>& ks5,
                         const std::vector<std::uint8_t>& ks6) {
  const std::size_t L = in.r.size();
  BytePlanes out;
  out.r.resize(L);
  out.g.resize(L);
  out.b.resize(L);
  std::uint8_t pr = 0, pg = 0, pb = 0;
  for (std::size_t i = 0; i < L; ++i) {
    pr = static_cast<std::uint8_t>(pr ^ in.r[i] ^ ks4[i]);
    pg = static_cast<std::uint8_t>(pg ^ in.g[i] ^ in.b[i] ^ ks5[i]);
    pb = static_cast<std::uint8_t>(pb ^ in.b[i] ^ in.r[i] ^ ks6[i]);
    out.r[i] = pr;
    out.g[i] = pg;
    out.b[i] = pb;
  }
  return out;
}

BytePlanes pixel_undiffuse(const BytePlanes& out,
                           const std::vector<std::uint8_t>& ks4,
                           const std::vector<std::uint8_t>& ks5,
                           const std::vector<std::uint8_t>& ks6) {
  const std::size_t L = out.r.size();
  BytePlanes in;
  in.r.resize(L);
  in.g.resize(L);
  in.b.resize(L);
  std::uint8_t pr = 0, pg = 0, pb = 0;
  for (std::size_t i = 0; i < L; ++i) {
    in.r[i] = static_cast<std::uint8_t>(out.r[i] ^ pr ^ ks4[i]);
    in.b[i] = static_cast<std::uint8_t>(out.b[i] ^ pb ^ in.r[i] ^ ks6[i]);
    in.g[i] = static_cast<std::uint8_t>(out.g[i] ^ pg ^ in.b[i] ^ ks5[i]);
    pr = out.r[i];
    pg = out.g[i];
    pb = out.b[i];
  }
  return in;
}

namespace {

void check_key_matches(const RgbImage& img, const EquivalentKey& key) {
  if (img.width != key.width || img.height != key.height) {
    throw std::invalid_argument(
        "image dimensions do not match the equivalent key");
  }
}

}  // namespace

RgbImage encrypt(const RgbImage& img, const EquivalentKey& key) {
  check_key_matches(img, key);
  const EquivalentKey& nk =
      key.form == KeystreamForm::Native ? key : to_native_form(key);
  const auto permuted = permute(stack_planes(img), nk.s1);
  const std::size_t L = img.pixels();

  const std::vector<std::uint8_t> pr(permuted.begin(), permuted.begin() + L);
  const std::vector<std::uint8_t> pg(permuted.begin() + L,
                                     permuted.begin() + 2 * L);
  const std::vector<std::uint8_t> pb(permuted.begin() + 2 * L, permuted.end());

  const auto R = encode_plane(pr, nk.e[0]);
  const auto G = encode_plane(pg, nk.e[1]);
  const auto B = encode_plane(pb, nk.e[2]);

  const DnaPlanes diffused = dna_diffuse(R, G, B, nk.s3);

  BytePlanes star;
  star.r = decode_plane(diffused.r, nk.d[0]);
  star.g = decode_plane(diffused.g, nk.d[1]);
  star.b = decode_plane(diffused.b, nk.d[2]);

  const BytePlanes cipher = pixel_diffuse(star, nk.ks[0], nk.ks[1], nk.ks[2]);

  RgbImage out = make_image(img.width, img.height);
  out.r = cipher.r;
  out.g = cipher.g;
  out.b = cipher.b;
  return out;
}

RgbImage decrypt(const RgbImage& img, const EquivalentKey& key) {
  check_key_matches(img, key);
  const EquivalentKey& nk =
      key.form == KeystreamForm::Native ? key : to_native_form(key);
  BytePlanes cipher;
  cipher.r = img.r;
  cipher.g = img.g;
  cipher.b = img.b;
  const BytePlanes star =
      pixel_undiffuse(cipher, nk.ks[0], nk.ks[1], nk.ks[2]);

  const auto Rss = encode_plane(star.r, nk.d[0]);
  const auto Gss = encode_plane(star.g, nk.d[1]);
  const auto Bss = encode_plane(star.b, nk.d[2]);

  const DnaPlanes planes = dna_undiffuse(Rss, Gss, Bss, nk.s3);

  const auto pr = decode_plane(planes.r, nk.e[0]);
  const auto pg = decode_plane(planes.g, nk.e[1]);
  const auto pb = decode_plane(planes.b, nk.e[2]);

  std::vector<std::uint8_t> permuted;
  permuted.reserve(3 * img.pixels());
  permuted.insert(permuted.end(), pr.begin(), pr.end());
  permuted.insert(permuted.end(), pg.begin(), pg.end());
  permuted.insert(permuted.end(), pb.begin(), pb.end());

  return unstack_planes(img.width, img.height, unpermute(permuted, nk.s1));
}

RgbImage encrypt(const RgbImage& img, const SecretKey& key) {
  return encrypt(img, derive_equivalent_key(key, img.height, img.width));
}

RgbImage decrypt(const RgbImage& img, const SecretKey& key) {
  return decrypt(img, derive_equivalent_key(key, img.height, img.width));
}

}  // namespace mpps

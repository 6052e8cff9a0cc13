#include "mpps/image.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mpps {

RgbImage make_image(std::uint32_t width, std::uint32_t height,
                    std::uint8_t fill) {
  RgbImage img;
  img.width = width;
  img.height = height;
  const std::size_t n = static_cast<std::size_t>(width) * height;
  img.r.assign(n, fill);
  img.g.assign(n, fill);
  img.b.assign(n, fill);
  return img;
}

namespace {

// Reads one whitespace-delimited token from a PPM header, skipping
// '#' comments that run to end of line.
std::string next_token(std::istream& in) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c) && c != '#') {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  if (c == '#') in.unget();
  return tok;
}

std::uint32_t parse_dim(const std::string& tok, const char* what) {
  if (tok.empty()) throw std::runtime_error(std::string("ppm: missing ") + what);
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(tok, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("ppm: bad ") + what + ": " + tok);
  }
  if (pos != tok.size() || v == 0 || v > 0xFFFFFFFFul) {
    throw std::runtime_error(std::string("ppm: bad ") + what + ": " + tok);
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

RgbImage read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);

  const std::string magic = next_token(in);
  if (magic != "P6") {
    throw std::runtime_error("ppm: expected P6 magic in " + path);
  }
  const std::uint32_t width = parse_dim(next_token(in), "width");
  const std::uint32_t height = parse_dim(next_token(in), "height");
  const std::string maxval = next_token(in);
  if (maxval != "255") {
    throw std::runtime_error("ppm: only maxval 255 supported, got " + maxval);
  }
  // Exactly one whitespace byte separates the header from pixel data; the
  // token reader has already consumed it.

  RgbImage img = make_image(width, height);
  const std::size_t n = img.pixels();
  std::vector<char> buf(n * 3);
  in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (static_cast<std::size_t>(in.gcount()) != buf.size()) {
    throw std::runtime_error("ppm: truncated pixel data in " + path);
  }
  for (std::size_t i = 0; i < n; ++i) {
    img.r[i] = static_cast<std::uint8_t>(buf[3 * i]);
    img.g[i] = static_cast<std::uint8_t>(buf[3 * i + 1]);
    img.b[i] = static_cast<std::uint8_t>(buf[3 * i + 2]);
  }
  return img;
}

void write_ppm(const std::string& path, const RgbImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "P6\n" << img.width << " " << img.height << "\n255\n";
  const std::size_t n = img.pixels();
  std::vector<char> buf(n * 3);
  for (std::size_t i = 0; i < n; ++i) {
    buf[3 * i] = static_cast<char>(img.r[i]);
    buf[3 * i + 1] = static_cast<char>(img.g[i]);
    buf[3 * i + 2] = static_cast<char>(img.b[i]);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("ppm: write failed for " + path);
}

RgbImage read_raw(const std::string& path, std::uint32_t width,
                  std::uint32_t height) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  RgbImage img = make_image(width, height);
  const std::size_t n = img.pixels();
  std::vector<char> buf(n * 3);
  in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (static_cast<std::size_t>(in.gcount()) != buf.size()) {
    throw std::runtime_error("raw: file shorter than 3*width*height bytes: " +
                             path);
  }
  char extra;
  if (in.read(&extra, 1)) {
    throw std::runtime_error("raw: file longer than 3*width*height bytes: " +
                             path);
  }
  for (std::size_t i = 0; i < n; ++i) {
    img.r[i] = static_cast<std::uint8_t>(buf[3 * i]);
    img.g[i] = static_cast<std::uint8_t>(buf[3 * i + 1]);
    img.b[i] = static_cast<std::uint8_t>(buf[3 * i + 2]);
  }
  return img;
}

void write_raw(const std::string& path, const RgbImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  const std::size_t n = img.pixels();
  std::vector<char> buf(n * 3);
  for (std::size_t i = 0; i < n; ++i) {
    buf[3 * i] = static_cast<char>(img.r[i]);
    buf[3 * i + 1] = static_cast<char>(img.g[i]);
    buf[3 * i + 2] = static_cast<char>(img.b[i]);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("raw: write failed for " + path);
}

}  // namespace mpps

#pragma once
// Planar RGB image container plus binary PPM (P6, maxval 255) and raw-RGB
// file I/O. Planes are stored separately in raster order.

#include <cstdint>
#include <string>
#include <vector>

namespace mpps {

struct RgbImage {
  std::uint32_t width = 0;   // N columns
  std::uint32_t height = 0;  // M rows
  std::vector<std::uint8_t> r, g, b;  // each length width*height

  std::size_t pixels() const { return std::size_t(width) * height; }
  bool operator==(const RgbImage&) const = default;
};

RgbImage make_image(std::uint32_t width, std::uint32_t height,
                    std::uint8_t fill = 0);

// Binary PPM, P6, maxval 255. Throws std::runtime_error on malformed input.
RgbImage read_ppm(const std::string& path);
void write_ppm(const std::string& path, const RgbImage& img);

// Headerless fallback: exactly 3*width*height bytes of interleaved RGB.
RgbImage read_raw(const std::string& path, std::uint32_t width,
                  std::uint32_t height);
void write_raw(const std::string& path, const RgbImage& img);

}  // namespace mpps

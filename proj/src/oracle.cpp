#include "mpps/oracle.hpp"

#include <cstdio>
#include <filesystem>
#include <stdexcept>

namespace mpps {

namespace fs = std::filesystem;

RgbImage ChosenPlaintextOracle::submit(const RgbImage& plain) {
  std::lock_guard<std::mutex> lock(mutex_);
  ++count_;
  return respond(plain);
}

InProcessOracle::InProcessOracle(const SecretKey& hidden)
    : secret_(hidden), have_secret_(true) {}

InProcessOracle::InProcessOracle(const EquivalentKey& hidden) {
  cache_[{hidden.width, hidden.height}] = hidden;
}

RgbImage InProcessOracle::respond(const RgbImage& plain) {
  const auto dims = std::make_pair(plain.width, plain.height);
  auto it = cache_.find(dims);
  if (it == cache_.end()) {
    if (!have_secret_) {
      throw std::runtime_error(
          "oracle holds an equivalent key for different image dimensions");
    }
    it = cache_
             .emplace(dims,
                      derive_equivalent_key(secret_, plain.height, plain.width))
             .first;
  }
  return encrypt(plain, it->second);
}

namespace {

std::string query_name(std::size_t index, const char* role) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "query_%03zu_%s.ppm", index, role);
  return buf;
}

}  // namespace

TranscriptReplayOracle::TranscriptReplayOracle(const std::string& directory) {
  if (!fs::is_directory(directory)) {
    throw std::runtime_error("transcript directory not found: " + directory);
  }
  for (std::size_t i = 1;; ++i) {
    const fs::path plain_path = fs::path(directory) / query_name(i, "plain");
    const fs::path cipher_path = fs::path(directory) / query_name(i, "cipher");
    if (!fs::exists(plain_path)) break;
    if (!fs::exists(cipher_path)) {
      throw std::runtime_error("transcript pair incomplete: missing " +
                               cipher_path.string());
    }
    pairs_.emplace_back(read_ppm(plain_path.string()),
                        read_ppm(cipher_path.string()));
  }
  if (pairs_.empty()) {
    throw std::runtime_error("transcript directory holds no query pairs: " +
                             directory);
  }
}

RgbImage TranscriptReplayOracle::respond(const RgbImage& plain) {
  for (const auto& [p, c] : pairs_) {
    if (p == plain) return c;
  }
  throw std::runtime_error(
      "transcript has no recorded response for the submitted plaintext");
}

RecordingOracle::RecordingOracle(ChosenPlaintextOracle& inner,
                                 std::string directory)
    : inner_(inner), dir_(std::move(directory)) {
  fs::create_directories(dir_);
}

RgbImage RecordingOracle::respond(const RgbImage& plain) {
  const RgbImage cipher = inner_.submit(plain);
  const std::size_t index = query_count();  // already incremented; 1-based
  write_ppm((fs::path(dir_) / query_name(index, "plain")).string(), plain);
  write_ppm((fs::path(dir_) / query_name(index, "cipher")).string(), cipher);
  return cipher;
}

}  // namespace mpps

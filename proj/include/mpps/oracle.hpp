#pragma once
// Chosen-plaintext oracle contract plus the three concrete oracles the
// attack runs against: in-process encryption under a hidden key, transcript
// replay from recorded plain/cipher pairs, and a recording wrapper that
// writes such transcripts.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "mpps/cipher.hpp"
#include "mpps/image.hpp"
#include "mpps/keys.hpp"

namespace mpps {

class ChosenPlaintextOracle {
 public:
  virtual ~ChosenPlaintextOracle() = default;

  // Deterministic; increments query_count by exactly one per call.
  RgbImage submit(const RgbImage& plain);
  std::size_t query_count() const { return count_; }

 protected:
  virtual RgbImage respond(const RgbImage& plain) = 0;

 private:
  std::mutex mutex_;  // submissions are serialized
  std::size_t count_ = 0;
};

// Encrypts under a hidden secret key held in-process.
class InProcessOracle : public ChosenPlaintextOracle {
 public:
  explicit InProcessOracle(const SecretKey& hidden);
  explicit InProcessOracle(const EquivalentKey& hidden);

 protected:
  RgbImage respond(const RgbImage& plain) override;

 private:
  SecretKey secret_{};
  bool have_secret_ = false;
  std::map<std::pair<std::uint32_t, std::uint32_t>, EquivalentKey> cache_;
};

// Replays a directory of query_%03d_plain.ppm / query_%03d_cipher.ppm pairs,
// matching submissions by plaintext content. Reads only; never writes.
class TranscriptReplayOracle : public ChosenPlaintextOracle {
 public:
  explicit TranscriptReplayOracle(const std::string& directory);
  std::size_t pair_count() const { return pairs_.size(); }
  const std::vector<std::pair<RgbImage, RgbImage>>& pairs() const {
    return pairs_;
  }

 protected:
  RgbImage respond(const RgbImage& plain) override;

 private:
  std::vector<std::pair<RgbImage, RgbImage>> pairs_;
};

// Forwards to an inner oracle and records each exchange as
// query_%03d_plain.ppm / query_%03d_cipher.ppm (1-based) in a directory.
class RecordingOracle : public ChosenPlaintextOracle {
 public:
  RecordingOracle(ChosenPlaintextOracle& inner, std::string directory);

 protected:
  RgbImage respond(const RgbImage& plain) override;

 private:
  ChosenPlaintextOracle& inner_;
  std::string dir_;
};

}  // namespace mpps

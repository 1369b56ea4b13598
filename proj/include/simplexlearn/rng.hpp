#pragma once

#include <cstdint>
#include <random>

namespace simplexlearn {

// Purpose tags mixed into stream ids so that unrelated consumers of the same
// master seed never share a substream.
enum class StreamKind : std::uint64_t {
  kTruth = 1,
  kSample = 2,
  kNoise = 3,
  kCovering = 4,
  kContest = 5,
  kMonteCarlo = 6,
  kProbe = 7,
  kTrial = 8,
  kFixture = 9,
};

std::uint64_t splitmix64(std::uint64_t x);

// Stable 64-bit mix of (kind, a, b).
std::uint64_t stream_key(StreamKind kind, std::uint64_t a = 0, std::uint64_t b = 0);

// A deterministic random stream. Its state is a pure function of
// (master_seed, stream_id) plus the draws taken from it so far.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Fresh stream keyed by (this stream's id, child), independent of how many
  // draws this stream has already produced.
  RngStream substream(std::uint64_t child) const;

  double uniform();  // [0, 1)
  double normal();   // N(0, 1)
  double exponential();  // Exp(1)
  std::uint64_t next_u64() { return engine_(); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::exponential_distribution<double> exponential_{1.0};
};

}  // namespace simplexlearn

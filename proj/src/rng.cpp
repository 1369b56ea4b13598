#include "simplexlearn/rng.hpp"

namespace simplexlearn {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_key(StreamKind kind, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = splitmix64(static_cast<std::uint64_t>(kind));
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ (b + 0x632be59bd9b4e019ULL));
  return h;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      engine_(splitmix64(master_seed ^ splitmix64(stream_id))) {}

RngStream RngStream::substream(std::uint64_t child) const {
  return RngStream(master_seed_, splitmix64(stream_id_ ^ splitmix64(child + 1)));
}

double RngStream::uniform() { return uniform_(engine_); }
double RngStream::normal() { return normal_(engine_); }
double RngStream::exponential() { return exponential_(engine_); }

}  // namespace simplexlearn

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hybridmc {

// Label in a hierarchical stream id, e.g. {"trial", 17} or {"rx", -1}.
struct StreamLabel {
  std::string tag;
  std::int64_t index = -1;  // -1 means "no index", a bare stage name

  StreamLabel(std::string t) : tag(std::move(t)) {}
  StreamLabel(std::string t, std::int64_t i) : tag(std::move(t)), index(i) {}
};

// Deterministic, splittable random stream. A stream is identified by
// (seed, label path); identical ids give identical draw sequences on every
// platform and under any parallel schedule. Children are derived from the
// id, not from the engine state, so deriving and drawing commute.
//
// Engine: xoshiro256++ seeded through splitmix64. Distribution transforms
// are implemented here rather than taken from <random> because the standard
// leaves normal/uniform sequences implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  RandomStream child(std::string_view tag) const;
  RandomStream child(std::string_view tag, std::int64_t index) const;

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01();

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal();
  double normal(double mean, double sd);

  bool bernoulli(double p);

  // Normal(mean, sd) conditioned on >= 0, by rejection.
  double truncated_normal_nonneg(double mean, double sd);

 private:
  RandomStream(std::uint64_t k0, std::uint64_t k1);
  void reseed();

  std::uint64_t key0_, key1_;       // derivation id, immutable after construction
  std::array<std::uint64_t, 4> s_;  // engine state
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Derives the stream for (seed, labels). labels must be non-empty.
RandomStream derive_stream(std::uint64_t seed, const std::vector<StreamLabel>& labels);

}  // namespace hybridmc

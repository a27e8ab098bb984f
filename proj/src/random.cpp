#include "hybridmc/random.hpp"

#include <cmath>
#include <stdexcept>

namespace hybridmc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  return splitmix64(x);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed)
    : RandomStream(mix(seed, 0x6d63686c696e6bULL), mix(~seed, 0x64696666ULL)) {}

RandomStream::RandomStream(std::uint64_t k0, std::uint64_t k1) : key0_(k0), key1_(k1) {
  reseed();
}

void RandomStream::reseed() {
  std::uint64_t x = key0_ ^ rotl(key1_, 32);
  for (auto& w : s_) w = splitmix64(x);
  // splitmix64 never yields four zero words from any input, but guard anyway
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

RandomStream RandomStream::child(std::string_view tag) const {
  std::uint64_t h = fnv1a(tag);
  return RandomStream(mix(key0_, h), mix(key1_, rotl(h, 17)));
}

RandomStream RandomStream::child(std::string_view tag, std::int64_t index) const {
  std::uint64_t h = fnv1a(tag);
  std::uint64_t i = static_cast<std::uint64_t>(index);
  return RandomStream(mix(mix(key0_, h), i), mix(mix(key1_, rotl(h, 17)), rotl(i, 23)));
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0,1] so the log is finite
  double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

double RandomStream::normal(double mean, double sd) { return mean + sd * normal(); }

bool RandomStream::bernoulli(double p) { return uniform01() < p; }

double RandomStream::truncated_normal_nonneg(double mean, double sd) {
  if (sd == 0.0) return mean < 0.0 ? 0.0 : mean;
  for (int i = 0; i < 10000; ++i) {
    double x = normal(mean, sd);
    if (x >= 0.0) return x;
  }
  // mean << -sd: the mass at x >= 0 is vanishing, return the boundary
  return 0.0;
}

RandomStream derive_stream(std::uint64_t seed, const std::vector<StreamLabel>& labels) {
  if (labels.empty()) throw std::invalid_argument("derive_stream: labels must be non-empty");
  RandomStream s(seed);
  for (const auto& l : labels) {
    s = (l.index < 0) ? s.child(l.tag) : s.child(l.tag, l.index);
  }
  return s;
}

}  // namespace hybridmc

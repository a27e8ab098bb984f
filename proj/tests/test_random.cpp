#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hybridmc/random.hpp"

using namespace hybridmc;

TEST_CASE("identical (seed, labels) replay identical sequences") {
  auto a = derive_stream(42, {{"trial", 0}, {"stage"}, {"cnd", 3}});
  auto b = derive_stream(42, {{"trial", 0}, {"stage"}, {"cnd", 3}});
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct labels give distinct sequences") {
  auto a = derive_stream(42, {{"trial", 0}});
  auto b = derive_stream(42, {{"trial", 1}});
  auto c = derive_stream(43, {{"trial", 0}});
  int diff_ab = 0, diff_ac = 0;
  for (int i = 0; i < 64; ++i) {
    diff_ab += a.next_u64() != b.next_u64();
    diff_ac += a.next_u64() != c.next_u64();
  }
  CHECK(diff_ab > 60);
  CHECK(diff_ac > 60);
}

TEST_CASE("tag vs indexed label do not collide") {
  RandomStream root(7);
  auto a = root.child("relay");
  auto b = root.child("relay", 0);
  CHECK(a.next_u64() != b.next_u64());
}

TEST_CASE("child derivation commutes with drawing") {
  RandomStream a(99);
  RandomStream b(99);
  (void)a.next_u64();  // drawing from the parent must not shift children
  auto ca = a.child("x", 1);
  auto cb = b.child("x", 1);
  for (int i = 0; i < 100; ++i) CHECK(ca.next_u64() == cb.next_u64());
}

TEST_CASE("large-sample normal mean and variance") {
  auto s = derive_stream(42, {{"lln"}});
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = s.normal();
    sum += x;
    sum2 += x * x;
  }
  double mean = sum / n;
  double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("uniform01 stays in [0,1)") {
  auto s = derive_stream(1, {{"u"}});
  for (int i = 0; i < 10000; ++i) {
    double u = s.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("truncated normal never negative") {
  auto s = derive_stream(5, {{"tn"}});
  for (int i = 0; i < 10000; ++i) CHECK(s.truncated_normal_nonneg(0.1, 0.5) >= 0.0);
  // degenerate spread behaves like a point mass
  CHECK(s.truncated_normal_nonneg(1.5, 0.0) == 1.5);
}

TEST_CASE("empty label path is rejected") {
  CHECK_THROWS_AS(derive_stream(42, {}), std::invalid_argument);
}

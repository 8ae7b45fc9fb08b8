#include <doctest.h>

#include <random>

#include "common.hpp"
#include "pemb/parallel.hpp"

using namespace pemb;

namespace {

BitSequence make(const std::string& bits, int threads = 1) {
  return build_rank_select(BitArray::from_string(bits), threads);
}

// Prefix counts and occurrence lists from a plain scan.
struct ScanOracle {
  std::vector<std::size_t> ones{0};
  std::vector<std::size_t> where[2];
  explicit ScanOracle(const std::string& bits) {
    for (std::size_t i = 0; i < bits.size(); ++i) {
      ones.push_back(ones.back() + (bits[i] == '1'));
      where[bits[i] == '1'].push_back(i + 1);
    }
  }
};

void check_against_scan(const std::string& bits, std::mt19937_64& rng, std::size_t samples) {
  const auto seq = make(bits, 4);
  const ScanOracle scan(bits);
  const std::size_t length = bits.size();
  REQUIRE(seq.size() == length);
  CHECK(seq.ones() == scan.ones.back());
  std::uniform_int_distribution<std::size_t> pos(0, length);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t i = pos(rng);
    REQUIRE(seq.rank1(i) == scan.ones[i]);
    REQUIRE(seq.rank0(i) == i - scan.ones[i]);
    if (i >= 1) REQUIRE(seq.access(i) == (bits[i - 1] == '1'));
    for (int b = 0; b < 2; ++b) {
      const auto& occ = scan.where[b];
      if (occ.empty()) continue;
      const std::size_t j = std::uniform_int_distribution<std::size_t>(1, occ.size())(rng);
      REQUIRE(seq.select(b == 1, j) == occ[j - 1]);
      REQUIRE(seq.rank(b == 1, seq.select(b == 1, j)) == j);
    }
  }
}

}  // namespace

TEST_CASE("empty sequence") {
  const auto seq = make("");
  CHECK(seq.size() == 0);
  CHECK(seq.rank1(0) == 0);
  CHECK(seq.rank0(0) == 0);
  CHECK(seq.select1(0) == 0);
  CHECK_THROWS_AS(seq.select1(1), std::out_of_range);
}

TEST_CASE("small sequences") {
  const auto s = make("0101");
  CHECK(s.rank0(0) == 0);
  CHECK(s.rank1(4) == 2);
  CHECK(s.select1(2) == 4);
  CHECK(s.select0(0) == 0);
  CHECK(s.select1(0) == 0);
  CHECK(make("1").access(1));
  CHECK_THROWS_AS(s.access(0), std::out_of_range);
  CHECK_THROWS_AS(s.access(5), std::out_of_range);
  CHECK_THROWS_AS(s.rank1(5), std::out_of_range);
  CHECK_THROWS_AS(s.select0(3), std::out_of_range);
  CHECK_THROWS_AS(BitArray::from_string("01x"), std::invalid_argument);
  CHECK_THROWS_AS(build_rank_select(BitArray(4), 0), std::invalid_argument);
}

TEST_CASE("fig1 A") {
  const auto a = make(testing::kFig1A);
  CHECK(a.rank1(28) == 14);
  CHECK(a.rank0(28) == 14);
  CHECK(a.select1(1) == 2);
  CHECK_FALSE(a.access(1));
  for (std::size_t i = 1; i <= 28; ++i) CHECK(a.access(i) == (a.rank1(i) - a.rank1(i - 1) == 1));
}

TEST_CASE("rank/select identities on every position") {
  std::mt19937_64 rng(7);
  for (const double density : {0.0, 0.03, 0.5, 0.97, 1.0}) {
    const auto bits = oracle::random_bits(20000, density, rng);
    const auto seq = make(bits, 3);
    for (std::size_t i = 1; i <= bits.size(); ++i) {
      const bool b = seq.access(i);
      REQUIRE(seq.rank(b, seq.select(b, seq.rank(b, i))) == seq.rank(b, i));
      REQUIRE(seq.select(b, seq.rank(b, i)) == i);
    }
    CHECK(seq.rank1(bits.size()) + seq.rank0(bits.size()) == bits.size());
  }
}

TEST_CASE("random 10^6 bits against a scan") {
  std::mt19937_64 rng(11);
  for (const double density : {0.5, 0.001, 0.999}) {
    check_against_scan(oracle::random_bits(1000000, density, rng), rng, 10000);
  }
  // Long runs cross many select samples inside one block range.
  check_against_scan(std::string(300000, '0') + std::string(300000, '1') + std::string(1000, '0'), rng, 10000);
}

TEST_CASE("build is independent of the thread count") {
  std::mt19937_64 rng(3);
  const auto bits = oracle::random_bits(200003, 0.3, rng);
  const auto reference = make(bits, 1);
  for (const int threads : {2, 4, 8}) {
    const auto seq = make(bits, threads);
    CHECK(seq.heap_size() == reference.heap_size());
    CHECK(seq.support_bits() == reference.support_bits());
    bool same = true;
    for (std::size_t i = 0; i <= bits.size() && same; i += 97) same = seq.rank1(i) == reference.rank1(i);
    for (std::size_t j = 1; j <= seq.ones() && same; j += 61) same = seq.select1(j) == reference.select1(j);
    for (std::size_t j = 1; j <= bits.size() - seq.ones() && same; j += 61) {
      same = seq.select0(j) == reference.select0(j);
    }
    CHECK(same);
  }
}

TEST_CASE("support budget is at most half a bit per payload bit") {
  std::mt19937_64 rng(5);
  for (const std::size_t length : {std::size_t{4096}, std::size_t{100000}, std::size_t{1000000}}) {
    const auto seq = make(oracle::random_bits(length, 0.5, rng));
    CHECK(seq.support_bits() <= length / 2);
  }
}

TEST_CASE("prefix sums") {
  CHECK(prefix_sum({}, 4).empty());
  const std::vector<std::uint64_t> ones{1, 1, 1};
  CHECK(prefix_sum(ones, 2) == std::vector<std::uint64_t>{0, 1, 2});
  std::mt19937_64 rng(1);
  std::vector<std::uint64_t> values(1000000);
  for (auto& v : values) v = rng() % 1000;
  std::vector<std::uint64_t> expected(values.size());
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    expected[i] = sum;
    sum += values[i];
  }
  for (const int threads : {1, 2, 4, 8}) CHECK(prefix_sum(values, threads) == expected);

  std::vector<std::uint32_t> counters{3, 0, 2, 5};
  CHECK(exclusive_scan_inplace(counters, 3) == 10);
  CHECK(counters == std::vector<std::uint32_t>{0, 3, 3, 5});
  CHECK_THROWS_AS(prefix_sum(ones, 0), std::invalid_argument);
}

TEST_CASE("static chunks cover the range") {
  for (std::size_t total : {0, 1, 7, 64, 1001}) {
    for (std::size_t parts : {1, 2, 3, 8}) {
      std::size_t covered = 0;
      for (std::size_t k = 0; k < parts; ++k) {
        const auto c = static_chunk(total, parts, k);
        CHECK(c.begin == covered);
        covered = c.end;
      }
      CHECK(covered == total);
    }
  }
}

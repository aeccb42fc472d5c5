#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bosegas/errors.hpp"
#include "bosegas/occupation.hpp"

using namespace bosegas;

namespace {

// brute-force composition count: oracle for sym_dim and enumeration size
std::int64_t count_compositions(int n, int d) {
  if (d == 0) return 1;
  std::int64_t total = 0;
  for (int first = 0; first <= n; ++first) total += count_compositions(n - first, d - 1);
  return total;
}

// brute-force arrangement count: oracle for multinomial
std::uint64_t count_arrangements(const OccupationVector& occ) {
  std::vector<int> word;
  for (int level = 0; level < occ.levels(); ++level) {
    for (int c = 0; c < occ[level]; ++c) word.push_back(level);
  }
  std::sort(word.begin(), word.end());
  std::uint64_t count = 0;
  do {
    ++count;
  } while (std::next_permutation(word.begin(), word.end()));
  return count;
}

}  // namespace

TEST_CASE("occupation enumeration order and counts") {
  const auto list = enumerate_occupations(2, 1);
  REQUIRE(list.size() == 3);
  CHECK(list[0].counts == std::vector<int>{2, 0});
  CHECK(list[1].counts == std::vector<int>{1, 1});
  CHECK(list[2].counts == std::vector<int>{0, 2});

  const auto empty = enumerate_occupations(0, 3);
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].counts == std::vector<int>{0, 0, 0, 0});

  CHECK(enumerate_occupations(3, 2).size() ==
        static_cast<std::size_t>(count_compositions(3, 2)));
}

TEST_CASE("occupation enumeration golden order (3, 2)") {
  const std::vector<std::vector<int>> expected{
      {3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1},
      {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3}};
  const auto list = enumerate_occupations(3, 2);
  REQUIRE(list.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(list[i].counts == expected[i]);
}

TEST_CASE("multinomial") {
  CHECK(multinomial(3, OccupationVector({1, 1, 1})) == 6);
  CHECK(multinomial(3, OccupationVector({3, 0, 0})) == 1);
  const OccupationVector occ({2, 2, 2});
  CHECK(multinomial(6, occ) == count_arrangements(occ));
  CHECK(multinomial(6, occ) == 90);
  CHECK_THROWS_AS(multinomial(5, occ), ValidationError);
}

TEST_CASE("binomial and sym_dim") {
  CHECK(sym_dim(2, 1) == 3);
  CHECK(sym_dim(0, 7) == 1);
  CHECK(sym_dim(3, 2) == count_compositions(3, 2));
  CHECK(binomial(5, 7) == 0);
  CHECK_THROWS_AS(binomial(100, 50), OverflowError);
}

TEST_CASE("occupation_profile") {
  const std::vector<int> a{0, 1, 0};
  CHECK(occupation_profile(a, 1).counts == std::vector<int>{2, 1});
  CHECK(occupation_profile(std::span<const int>{}, 2).counts == std::vector<int>{0, 0, 0});
  const std::vector<int> b{2, 2, 2, 0};
  CHECK(occupation_profile(b, 2).counts == std::vector<int>{1, 0, 3});
  const std::vector<int> bad{3};
  CHECK_THROWS_AS(occupation_profile(bad, 2), ValidationError);
}

TEST_CASE("multinomial sum identity and enumeration size") {
  for (int d = 0; d <= 3; ++d) {
    for (int n = 0; n <= 12; ++n) {
      const auto list = enumerate_occupations(n, d);
      CHECK(static_cast<std::int64_t>(list.size()) == sym_dim(n, d));
      std::uint64_t total = 0;
      for (const auto& occ : list) total += multinomial(n, occ);
      std::uint64_t power = 1;
      for (int i = 0; i < n; ++i) power *= static_cast<std::uint64_t>(d + 1);
      CHECK(total == power);
    }
  }
}

TEST_CASE("capacity limit is enforced") {
  const std::int64_t saved = capacity().max_sym_dim;
  capacity().max_sym_dim = 10;
  CHECK_THROWS_AS(enumerate_occupations(10, 3), CapacityError);
  capacity().max_sym_dim = saved;
  CHECK(enumerate_occupations(4, 1).size() == 5);
}

TEST_CASE("SymBasis ordinal lookup") {
  const SymBasis basis(4, 2);
  for (std::int64_t i = 0; i < basis.size(); ++i) {
    CHECK(basis.ordinal(basis.state(i)) == i);
  }
  CHECK(basis.find(OccupationVector({4, 0, 0})) == 0);
  CHECK(basis.find(OccupationVector({0, 0, 4})) == basis.size() - 1);
  CHECK(basis.find(OccupationVector({1, 1, 1})) == -1);
  CHECK_THROWS_AS(basis.ordinal(OccupationVector({1, 1, 1})), ValidationError);
}

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "cyclespace/errors.hpp"
#include "cyclespace/group.hpp"
#include "oracle.hpp"

using namespace cyclespace;

namespace {

GroupElement el(int m, std::vector<int> c) { return GroupElement(m, std::move(c)); }

std::set<std::vector<int>> as_set(const std::vector<GroupElement>& vs) {
  std::set<std::vector<int>> out;
  for (const auto& v : vs) out.emplace(v.coords().begin(), v.coords().end());
  return out;
}

}  // namespace

TEST_CASE("C_5^4 table") {
  VertexTable t(5, 4);
  CHECK(t.size() == 625);
  CHECK(t.at(0) == GroupElement::origin(5, 4));
  const std::vector<std::size_t> card{1, 8, 24, 8, 32, 48};
  const std::vector<std::size_t> first{0, 1, 9, 33, 41, 73};
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(t.blocks()[i].range.size() == card[i]);
    CHECK(t.blocks()[i].range.begin == first[i]);
  }
  const IndexRange s11 = t.level_set({1, 1});
  CHECK(s11.begin == 73);
  CHECK(s11.end == 121);
  CHECK(t.level_set({2, 0}).size() == 24);
  CHECK(t.ball(3).size() == 121);
}

TEST_CASE("C_3^1 order starts at the origin") {
  VertexTable t(3, 1);
  CHECK(t.size() == 3);
  CHECK(t.at(0).coord(0) == 0);
  CHECK(path_distance(t.at(1)) == 1);
  CHECK(path_distance(t.at(2)) == 1);
}

TEST_CASE("path distance and signatures") {
  CHECK(path_distance(el(4, {0, 1, 2, 1})) == 4);
  CHECK(path_distance(GroupElement::origin(5, 3)) == 0);
  CHECK(path_distance(el(5, {-2, 2, 0, 1})) == 5);
  CHECK(level_signature(el(4, {0, 1, 2, 1})) == level_signature(el(4, {-1, 0, 1, 2})));
  CHECK(same_level_vector(el(4, {1, 2}), el(4, {-1, 2})));
  CHECK_FALSE(same_level_vector(el(4, {1, 2}), el(4, {2, 1})));
  CHECK(level_signature(GroupElement::origin(5, 2)) == LevelSignature{0, 0});
  CHECK(level_signature(el(5, {-2, -2, 1})) == LevelSignature{1, 2});
}

TEST_CASE("neighbors") {
  CHECK(as_set(neighbors(el(5, {0, 1}))) ==
        std::set<std::vector<int>>{{1, 1}, {-1, 1}, {0, 2}, {0, 0}});
  CHECK(as_set(neighbors(GroupElement::origin(3, 2))) ==
        std::set<std::vector<int>>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  CHECK(as_set(neighbors(el(4, {2}))) == std::set<std::vector<int>>{{1}, {-1}});
}

TEST_CASE("raise, lower, reflect") {
  CHECK(as_set(raise(el(5, {-1, 1}), 0)) == std::set<std::vector<int>>{{-2, 1}});
  CHECK(as_set(raise(el(5, {0, 1}), 0)) == std::set<std::vector<int>>{{1, 1}, {-1, 1}});
  CHECK_THROWS_AS(raise(el(3, {1}), 0), std::domain_error);
  CHECK(as_set(lower(el(5, {-1, 1}), 0)) == std::set<std::vector<int>>{{0, 1}});
  CHECK(as_set(lower(el(4, {2, 0}), 0)) == std::set<std::vector<int>>{{1, 0}, {-1, 0}});
  CHECK_THROWS_AS(lower(el(5, {0, 1}), 0), std::domain_error);
  CHECK(reflect(el(5, {-1, 2}), 0) == el(5, {1, 2}));
  CHECK(reflect(el(4, {2, 0}), 0) == el(4, {2, 0}));
}

TEST_CASE("unsupported parameters") {
  CHECK_THROWS_AS(VertexTable(6, 2), ConfigError);
  CHECK_THROWS_AS(VertexTable(5, 0), ConfigError);
  CHECK_THROWS_AS(VertexTable(5, 4).level_set({0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(VertexTable(5, 6, 1000), BudgetExceeded);
}

TEST_CASE("cardinalities match enumeration") {
  for (int m : {3, 4, 5})
    for (int n = 1; n <= 5; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      std::map<std::pair<int, int>, std::size_t> count;
      for (const auto& v : oracle::all_vertices(m, n)) ++count[oracle::signature(m, v)];
      VertexTable t(m, n);
      std::size_t total = 0;
      std::size_t expect_begin = 0;
      int last_distance = -1;
      for (const auto& b : t.blocks()) {
        CHECK(b.range.begin == expect_begin);
        expect_begin = b.range.end;
        CHECK(b.signature.distance() >= last_distance);
        last_distance = b.signature.distance();
        CHECK(b.range.size() == count[{b.signature.p, b.signature.q}]);
        CHECK(level_set_cardinality(m, n, b.signature) == b.range.size());
        total += b.range.size();
      }
      CHECK(total == oracle::all_vertices(m, n).size());
      CHECK(t.blocks().size() == count.size());
    }
}

TEST_CASE("m = 3 shells: sum 2^r C(N,r) = 3^N") {
  VertexTable t(3, 2);
  std::vector<std::size_t> sizes;
  for (const auto& b : t.blocks()) sizes.push_back(b.range.size());
  CHECK(sizes == std::vector<std::size_t>{1, 4, 4});
  for (int n = 1; n <= 6; ++n) {
    VertexTable u(3, n);
    std::size_t binom = 1;
    for (int r = 0; r <= n; ++r) {
      CHECK(u.level_set({r, 0}).size() == (binom << r));
      binom = binom * static_cast<std::size_t>(n - r) / static_cast<std::size_t>(r + 1);
    }
  }
}

TEST_CASE("table order: distance, then q, then lexicographic") {
  for (int m : {3, 4, 5}) {
    VertexTable t(m, 3);
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      const auto a = t.signature(i), b = t.signature(i + 1);
      CHECK(a <= b);
      if (a == b) CHECK(t.at(i) < t.at(i + 1));
      CHECK(t.distance(i) == path_distance(t.at(i)));
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(t.index_of(t.at(i)) == i);
      CHECK(t.index_of_code(t.at(i).lexicographic_code()) == i);
    }
  }
}

TEST_CASE("graph properties") {
  for (int m : {3, 4, 5}) {
    VertexTable t(m, 3);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto& v = t.at(i);
      for (const auto& w : neighbors(v)) {
        const auto back = neighbors(w);
        CHECK(std::find(back.begin(), back.end(), v) != back.end());
        CHECK(std::abs(path_distance(v) - path_distance(w)) <= 1);
      }
      for (int k = 0; k < 3; ++k) {
        CHECK(level_signature(reflect(v, k)) == level_signature(v));
        CHECK(reflect(reflect(v, k), k) == v);
        const int l = v.level(k);
        if (l > 0 && l < max_level(m))
          for (const auto& up : raise(v, k)) {
            const auto down = as_set(lower(up, k));
            CHECK(down.count(std::vector<int>(v.coords().begin(), v.coords().end())) == 1);
            // Even m: the top level lowers to both signs.
            const bool top_pair = m % 2 == 0 && l + 1 == max_level(m);
            CHECK(down.size() == (top_pair ? 2u : 1u));
          }
      }
    }
  }
}

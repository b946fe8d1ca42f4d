#include <random>

#include "doctest.h"
#include "lagcob/invariants.hpp"
#include "lagcob/unobstruction.hpp"
#include "oracles.hpp"

using namespace lagcob;

TEST_CASE("properness of lifts") {
  auto M = build_surface(2, 1.0);
  CHECK_FALSE(lift_is_proper(small_circle(M)));
  CHECK(lift_is_proper(lickorish_alpha(M, 1)));
  CHECK(lift_is_proper(torus_boundary(M)));
  auto r = is_unobstructed(small_circle(M));
  CHECK_FALSE(r.proper);
  CHECK_FALSE(r.unobstructed);
}

TEST_CASE("a kink is a lift self-crossing") {
  auto M = build_surface(2, 1.0);
  auto k = kinked(parse_word("a1"), M);
  auto dp = self_intersections(k);
  REQUIRE(dp.size() == 1);
  auto w = lift_obstruction(k);
  REQUIRE(w.has_value());
  CHECK(w->period == 0);
  CHECK(w->point.seg1 == dp[0].seg1);
  CHECK(w->point.seg2 == dp[0].seg2);
  CHECK_FALSE(is_unobstructed(k).unobstructed);
  CHECK(oracle::lift_self_crosses(k, 1));
}

TEST_CASE("unobstructed examples") {
  for (int g = 2; g <= 4; ++g) {
    auto M = build_surface(g, 1.0);
    for (int i = 1; i <= g; ++i) {
      CHECK(is_unobstructed(lickorish_alpha(M, i)).unobstructed);
      CHECK(is_unobstructed(lickorish_beta(M, i)).unobstructed);
      if (i < g) CHECK(is_unobstructed(lickorish_gamma(M, i)).unobstructed);
    }
    for (int s = 1; s < g; ++s) CHECK(is_unobstructed(subsurface_boundary(M, s)).unobstructed);
  }
  auto M = build_surface(2, 1.0);
  auto f8 = figure_eight(parse_word("a1"), parse_word("b1"), M);
  CHECK(self_intersections(f8).size() == 2);
  CHECK(is_unobstructed(f8).unobstructed);
  CHECK(is_unobstructed(from_word(parse_word("a1b1"), M)).unobstructed);
}

TEST_CASE("window verdict matches the brute-force lift and is stable in the bound") {
  std::mt19937_64 rng(7);
  for (int g = 2; g <= 3; ++g) {
    auto M = build_surface(g, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
      GroupWord w = oracle::random_word(rng, g, 6);
      if (is_trivial(w, g)) continue;
      std::vector<CurveDiagram> cs{from_word(w, M), from_word_raw(free_reduce(w), M)};
      if (trial % 3 == 0) cs.push_back(kinked(w, M));
      for (const auto& c : cs) {
        if (!lift_is_proper(c)) continue;
        int K = lift_bound(c);
        bool embedded = !lift_obstruction(c, K).has_value();
        CHECK(embedded == !lift_obstruction(c, 2 * K).has_value());
        CHECK(embedded == !oracle::lift_self_crosses(c, K + 1));
      }
    }
  }
}

TEST_CASE("developed window is periodic") {
  auto M = build_surface(2, 1.0);
  auto c = from_word(parse_word("a1b1a2"), M);
  auto win = develop_lift(c, 2);
  int per = std::max(c.num_crossings(), 1);
  REQUIRE(win.chords.size() == static_cast<std::size_t>(5 * per));
  for (std::size_t q = per; q < win.chords.size(); ++q) {
    const auto& cur = win.chords[q];
    const auto& before = win.chords[q - per];
    CHECK(cur.chord == before.chord);
    CHECK(cur.period == before.period + 1);
    CHECK(is_trivial(concat(inverse(cur.tile), concat(win.period_word, before.tile)), 2));
  }
}

TEST_CASE("verdict survives moves that keep the double points") {
  std::mt19937_64 rng(11);
  auto M = build_surface(2, 1.0);
  std::vector<CurveDiagram> start{kinked(parse_word("a1b2"), M),
                                  figure_eight(parse_word("a1"), parse_word("b1"), M),
                                  from_word(parse_word("a1b1A2"), M)};
  for (const auto& c0 : start) {
    bool verdict = is_unobstructed(c0).unobstructed;
    CurveDiagram c = c0;
    std::size_t dp = self_intersections(c).size();
    for (int step = 0; step < 40; ++step) {
      auto mv = random_move(c, rng, false);
      if (!mv || std::holds_alternative<DetourEdit>(*mv)) continue;
      auto next = apply_move(c, *mv).curve;
      if (self_intersections(next).size() != dp) continue;
      c = next;
      CHECK(is_unobstructed(c).unobstructed == verdict);
    }
  }
}

TEST_CASE("bigon search") {
  for (int g = 2; g <= 3; ++g) {
    auto M = build_surface(g, 1.0);
    auto a1 = lickorish_alpha(M, 1);
    CHECK(find_bigons(a1, make_transverse(a1, lickorish_beta(M, 1))).empty());
    CHECK(in_minimal_position(a1, make_transverse(a1, lickorish_alpha(M, 2))));
    // Algebraic and geometric counts agree, so no bigons.
    std::vector<CurveDiagram> curves;
    for (int i = 1; i <= g; ++i) {
      curves.push_back(lickorish_alpha(M, i));
      curves.push_back(lickorish_beta(M, i));
      if (i < g) curves.push_back(lickorish_gamma(M, i));
    }
    for (std::size_t i = 0; i < curves.size(); ++i)
      for (std::size_t j = i + 1; j < curves.size(); ++j) {
        auto b = make_transverse(curves[i], curves[j]);
        auto pts = intersections(curves[i], b);
        int alg = symplectic_pairing(abelianize(curves[i].letters(), M->rank()),
                                     abelianize(b.letters(), M->rank()));
        if (static_cast<int>(pts.size()) == std::abs(alg)) CHECK(in_minimal_position(curves[i], b));
      }
  }
  auto M = build_surface(2, 1.0);
  auto a1 = lickorish_alpha(M, 1);
  CHECK_THROWS_AS(find_bigons(a1, a1), std::invalid_argument);
}

TEST_CASE("a curve crossing alpha twice with cancelling signs has a bigon") {
  auto M = build_surface(2, 1.0);
  auto a1 = lickorish_alpha(M, 1);
  // Out and back through the edge alpha_1 crosses, then around b2.
  auto c = make_transverse(a1, from_word_raw(parse_word("a1A1b2"), M));
  auto pts = intersections(a1, c);
  REQUIRE(pts.size() == 2);
  auto bigons = find_bigons(a1, c);
  CHECK_FALSE(bigons.empty());
  CHECK_FALSE(in_minimal_position(a1, c));
  CHECK(witness_to_json(bigons.front()).find("c2_forward") != std::string::npos);
}

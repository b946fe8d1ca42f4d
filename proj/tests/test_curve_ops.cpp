#include <algorithm>
#include <random>

#include "doctest.h"
#include "lagcob/curve_ops.hpp"
#include "lagcob/invariants.hpp"
#include "lagcob/unobstruction.hpp"
#include "oracles.hpp"

using namespace lagcob;

namespace {

std::vector<CurveDiagram> lickorish(const ModelPtr& M) {
  std::vector<CurveDiagram> out;
  for (int i = 1; i <= M->genus(); ++i) {
    out.push_back(lickorish_alpha(M, i));
    out.push_back(lickorish_beta(M, i));
    if (i < M->genus()) out.push_back(lickorish_gamma(M, i));
  }
  return out;
}

// Embedded curves obtained by twisting Lickorish curves along each other.
std::vector<CurveDiagram> embedded_corpus(const ModelPtr& M, std::mt19937_64& rng, int count) {
  auto base = lickorish(M);
  std::vector<CurveDiagram> out;
  while (static_cast<int>(out.size()) < count) {
    CurveDiagram c = base[rng() % base.size()];
    int twists = 1 + static_cast<int>(rng() % 2);
    for (int t = 0; t < twists; ++t) c = dehn_twist(base[rng() % base.size()], c);
    out.push_back(c);
  }
  return out;
}

double shoelace(const std::vector<Vec2>& p) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += cross(p[i], p[(i + 1) % p.size()]);
  return 0.5 * s;
}

// No two double points coincide (raw word curves can have triple points at the centre).
bool generic(const CurveDiagram& c) {
  auto pts = self_intersections(c);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (norm(pts[i].pos - pts[j].pos) < 1e-6) return false;
  return true;
}

std::vector<int> sum(std::vector<int> a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

}  // namespace

TEST_CASE("resolving the figure eight") {
  auto M = build_surface(2, 1.0);
  auto f8 = figure_eight(parse_word("a1"), parse_word("b1"), M);
  auto pts = self_intersections(f8);
  REQUIRE(pts.size() == 2);
  bool lobes_found = false;
  for (const auto& x : pts) {
    auto [a, b] = resolve_double_point(f8, x);
    CHECK(sum(homology_class(a), homology_class(b)) == homology_class(f8));
    CHECK(turning_number(a) + turning_number(b) == turning_number(f8));
    CHECK(holonomy(a) + holonomy(b) == doctest::Approx(holonomy(f8)).epsilon(1e-9));
    std::vector<std::vector<int>> hs{homology_class(a), homology_class(b)};
    std::sort(hs.begin(), hs.end());
    if (hs == std::vector<std::vector<int>>{{0, 1, 0, 0}, {1, 0, 0, 0}}) {
      lobes_found = true;
      CHECK(turning_number(a) + turning_number(b) == 0);
    }
  }
  CHECK(lobes_found);
}

TEST_CASE("resolving a kink splits off a contractible circle") {
  auto M = build_surface(2, 1.0);
  auto k = kinked(parse_word("a1"), M);
  auto pts = self_intersections(k);
  REQUIRE(pts.size() == 1);
  auto [a, b] = resolve_double_point(k, pts[0]);
  const CurveDiagram& loop = a.num_crossings() == 0 ? a : b;
  const CurveDiagram& rest = a.num_crossings() == 0 ? b : a;
  CHECK(loop.num_crossings() == 0);
  CHECK(std::abs(turning_number(loop)) == 1);
  CHECK(homology_class(rest) == std::vector<int>{1, 0, 0, 0});
  CHECK(turning_number(loop) + turning_number(rest) == turning_number(k));
  CHECK(self_intersections(rest).empty());
}

TEST_CASE("resolution rejects points that are not double points") {
  auto M = build_surface(2, 1.0);
  auto f8 = figure_eight(parse_word("a1"), parse_word("b1"), M);
  IntersectionPoint bogus;
  bogus.seg1 = 0;
  bogus.seg2 = 0;
  CHECK_THROWS_AS(resolve_double_point(f8, bogus), std::invalid_argument);
  CHECK_THROWS_AS(resolve_double_point(lickorish_alpha(M, 1), bogus), std::invalid_argument);
}

TEST_CASE("iterated resolution ends in embedded curves and conserves the totals") {
  std::mt19937_64 rng(5);
  int cases = 0;
  for (int g = 2; g <= 3; ++g) {
    auto M = build_surface(g, 1.0);
    for (int trial = 0; trial < 40 && cases < 25 * (g - 1); ++trial) {
      GroupWord w = oracle::random_word(rng, g, 7);
      CurveDiagram c = trial % 4 == 0 ? kinked(w, M) : from_word_raw(free_reduce(w), M);
      if (!generic(c)) continue;
      auto parts = resolve_all(c);
      std::vector<int> h(M->rank(), 0);
      int turning = 0;
      double hol = 0;
      for (const auto& p : parts) {
        CHECK(self_intersections(p).empty());
        CHECK(validate(p).empty());
        h = sum(h, homology_class(p));
        turning += turning_number(p);
        hol += holonomy(p);
      }
      // Each smoothing removes one double point; the rest become points between pieces.
      std::size_t between = 0;
      for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
          between += intersections(parts[i], parts[j]).size();
      CHECK(parts.size() - 1 + between == self_intersections(c).size());
      CHECK(h == homology_class(c));
      CHECK(turning == turning_number(c));
      CHECK(hol == doctest::Approx(holonomy(c)).epsilon(1e-6));
      ++cases;
    }
  }
  CHECK(cases >= 50);
}

TEST_CASE("surgery of alpha and beta") {
  auto M = build_surface(2, 1.0);
  auto a = lickorish_alpha(M, 1), b = lickorish_beta(M, 1);
  auto pts = intersections(a, b);
  REQUIRE(pts.size() == 1);
  REQUIRE(pts[0].degree == 1);
  auto s = surgery(a, b, pts[0]);
  CHECK(validate(s).empty());
  CHECK(homology_class(s) == std::vector<int>{1, 1, 0, 0});
  auto k = class_of(s), expect = class_of(a) + class_of(b);
  CHECK(k.same_topology(expect));
  CHECK(k.hol == doctest::Approx(expect.hol).epsilon(1e-6));

  auto back = intersections(b, a);
  REQUIRE(back.size() == 1);
  CHECK(back[0].degree == 0);
  CHECK_THROWS_AS(surgery(b, a, back[0]), std::invalid_argument);
  CHECK_THROWS_AS(surgery(a, a, pts[0]), std::invalid_argument);
}

TEST_CASE("surgery is additive on a random corpus") {
  std::mt19937_64 rng(9);
  int cases = 0;
  for (int g = 2; g <= 3 && cases < 60; ++g) {
    auto M = build_surface(g, 1.0);
    for (int trial = 0; trial < 200 && cases < 30 * (g - 1); ++trial) {
      auto c1 = from_word(oracle::random_word(rng, g, 5), M);
      auto c2 = make_transverse(c1, from_word(oracle::random_word(rng, g, 5), M));
      for (const auto& x : intersections(c1, c2)) {
        if (x.degree != 1) continue;
        auto s = surgery(c1, c2, x);
        CHECK(homology_class(s) == sum(homology_class(c1), homology_class(c2)));
        CHECK(turning_number(s) == turning_number(c1) + turning_number(c2));
        CHECK(holonomy(s) == doctest::Approx(holonomy(c1) + holonomy(c2)).epsilon(1e-6));
        ++cases;
        break;
      }
    }
  }
  CHECK(cases >= 50);
}

TEST_CASE("surgery of unobstructed minimal-position pairs stays unobstructed") {
  std::mt19937_64 rng(3);
  int cases = 0;
  for (int g = 2; g <= 3; ++g) {
    auto M = build_surface(g, 1.0);
    auto curves = lickorish(M);
    for (int s = 1; s < g; ++s) curves.push_back(subsurface_boundary(M, s));
    for (auto& c : embedded_corpus(M, rng, 4)) curves.push_back(c);
    for (std::size_t i = 0; i < curves.size(); ++i)
      for (std::size_t j = 0; j < curves.size(); ++j) {
        if (i == j) continue;
        const auto& c1 = curves[i];
        auto c2 = make_transverse(c1, curves[j]);
        auto pts = intersections(c1, c2);
        if (pts.empty() || !in_minimal_position(c1, c2)) continue;
        for (const auto& x : pts) {
          if (x.degree != 1) continue;
          auto s = surgery(c1, c2, x);
          if (!lift_is_proper(s)) continue;
          CHECK(is_unobstructed(s).unobstructed);
          ++cases;
          break;
        }
      }
  }
  CHECK(cases >= 20);
}

TEST_CASE("twist transvection on Lickorish pairs") {
  for (int g = 2; g <= 4; ++g) {
    auto M = build_surface(g, 1.0);
    auto curves = lickorish(M);
    for (const auto& a : curves)
      for (const auto& b : curves) {
        if (&a == &b) continue;
        auto t = dehn_twist(a, b);
        CHECK(validate(t).empty());
        CHECK(self_intersections(t).empty());
        int p = symplectic_pairing(homology_class(b), homology_class(a));
        std::vector<int> expect = homology_class(b);
        for (std::size_t i = 0; i < expect.size(); ++i) expect[i] += p * homology_class(a)[i];
        CHECK(homology_class(t) == expect);
        auto diff = class_of(t) - class_of(b) - class_of(a).scaled(p);
        CHECK(diff.m == 0);
        CHECK(std::all_of(diff.h.begin(), diff.h.end(), [](int v) { return v == 0; }));
        CHECK(std::isfinite(diff.hol));
      }
  }
}

TEST_CASE("twist transvection on random embedded pairs") {
  std::mt19937_64 rng(21);
  int cases = 0;
  for (int g = 2; g <= 3; ++g) {
    auto M = build_surface(g, 1.0);
    auto corpus = embedded_corpus(M, rng, 26);
    for (std::size_t i = 0; i + 1 < corpus.size(); i += 2) {
      const auto& a = corpus[i];
      const auto& b = corpus[i + 1];
      REQUIRE(self_intersections(a).empty());
      auto t = dehn_twist(a, b);
      CHECK(validate(t).empty());
      int p = algebraic_intersection(make_transverse(a, b), a);
      CHECK(p == symplectic_pairing(homology_class(b), homology_class(a)));
      auto diff = class_of(t) - class_of(b) - class_of(a).scaled(p);
      CHECK(diff.same_topology(CobordismClass{0.0, std::vector<int>(M->rank(), 0), 0, 2 * g - 2}));
      ++cases;
    }
  }
  CHECK(cases >= 25);
}

TEST_CASE("twist about a disjoint curve is the identity, and needs an embedded curve") {
  auto M = build_surface(2, 1.0);
  auto a1 = lickorish_alpha(M, 1), a2 = lickorish_alpha(M, 2);
  CHECK(curve_to_json(dehn_twist(a1, a2)) == curve_to_json(a2));
  auto f8 = figure_eight(parse_word("a1"), parse_word("b1"), M);
  CHECK_THROWS_AS(dehn_twist(f8, a2), std::invalid_argument);
  CHECK_THROWS_AS(dehn_twist(small_circle(M), a2), std::invalid_argument);
}

TEST_CASE("surgery with a copy of alpha reproduces the twist class") {
  for (int g = 2; g <= 3; ++g) {
    auto M = build_surface(g, 1.0);
    auto curves = lickorish(M);
    for (const auto& a : curves)
      for (const auto& b : curves) {
        if (&a == &b) continue;
        auto bt = make_transverse(a, b);
        auto pts = intersections(bt, a);
        if (pts.size() != 1) continue;
        CurveDiagram copy = pts[0].degree == 1 ? a : a.reversed();
        copy = make_transverse(bt, push_off(copy, 0.0));
        auto x = intersections(bt, copy);
        REQUIRE(x.size() == 1);
        REQUIRE(x[0].degree == 1);
        auto s = surgery(bt, copy, x[0]);
        CHECK(class_of(s).same_topology(class_of(dehn_twist(a, b))));
      }
  }
}

TEST_CASE("push off realizes a prescribed holonomy change") {
  auto M = build_surface(2, 100.0);
  std::vector<CurveDiagram> curves = lickorish(M);
  curves.push_back(torus_boundary(M));
  for (const auto& c : curves)
    for (double x : {0.0, 1.0 / 3, -1.0 / 3, 2.0, -2.0}) {
      auto p = push_off(c, x);
      CHECK(holonomy(p) - holonomy(c) == doctest::Approx(x).epsilon(1e-6).scale(1.0));
      CHECK(intersections(c, p).empty());
      CHECK(self_intersections(p).empty());
      CHECK(homology_class(p) == homology_class(c));
      CHECK(turning_number(p) == turning_number(c));
    }
  auto big = build_surface(2, 1000.0);
  for (double x : {10.0, -10.0}) {
    auto a = lickorish_alpha(big, 1);
    auto p = push_off(a, x);
    CHECK(holonomy(p) - holonomy(a) == doctest::Approx(x).epsilon(1e-7));
    CHECK(intersections(a, p).empty());
  }
  // Fingers through the sides reach past the face region next to the curve.
  auto g4 = build_surface(4, 100.0);
  for (const auto& c : {lickorish_alpha(g4, 1), lickorish_beta(g4, 1), lickorish_alpha(M, 1)})
    for (double x : {2.0, -2.0, 10.0, -10.0}) {
      auto p = push_off(c, x);
      CHECK(holonomy(p) - holonomy(c) == doctest::Approx(x).epsilon(1e-7));
      CHECK(intersections(c, p).empty());
      CHECK(self_intersections(p).empty());
      CHECK(turning_number(p) == turning_number(c));
    }
  // An embedded strip cannot hold more than the whole surface.
  CHECK_THROWS_AS(push_off(lickorish_alpha(M, 1), 150.0), std::runtime_error);
}

TEST_CASE("finger move adds a bigon") {
  for (int g = 2; g <= 3; ++g) {
    auto M = build_surface(g, 1.0);
    auto a1 = lickorish_alpha(M, 1);
    auto b1 = make_transverse(a1, lickorish_beta(M, 1));
    auto site = find_finger_site(b1, a1);
    REQUIRE(site.has_value());
    auto r = finger_move(b1, a1, *site);
    auto before = intersections(a1, b1), after = intersections(a1, r.curve);
    CHECK(after.size() == before.size() + 2);
    CHECK(algebraic_intersection(a1, r.curve) == algebraic_intersection(a1, b1));
    CHECK(oracle::count_crossings(a1, r.curve) == static_cast<int>(after.size()));
    CHECK_FALSE(find_bigons(a1, r.curve).empty());
    CHECK_FALSE(in_minimal_position(a1, r.curve));
    // The three inserted waypoints bound the swept triangle.
    std::vector<Vec2> tongue;
    for (const auto& n : r.curve.nodes())
      if (!n.is_cross()) tongue.push_back(n.pos);
    REQUIRE(tongue.size() == 3);
    CHECK(r.swept_area == doctest::Approx(shoelace(tongue)).epsilon(1e-9));
    CHECK(homology_class(r.curve) == homology_class(b1));
  }
  auto M = build_surface(2, 1.0);
  CHECK_THROWS_AS(finger_move(lickorish_beta(M, 1), lickorish_alpha(M, 1), FingerSite{5, 0}),
                  std::invalid_argument);
}

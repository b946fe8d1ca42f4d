#include <random>

#include "doctest.h"
#include "json.hpp"
#include "lagcob/curve_ops.hpp"
#include "lagcob/floer.hpp"
#include "lagcob/invariants.hpp"
#include "lagcob/unobstruction.hpp"
#include "oracles.hpp"

using namespace lagcob;

namespace {

std::vector<CurveDiagram> lickorish_set(const ModelPtr& M) {
  std::vector<CurveDiagram> out;
  for (int i = 1; i <= M->genus(); ++i) {
    out.push_back(lickorish_alpha(M, i));
    out.push_back(lickorish_beta(M, i));
    if (i < M->genus()) out.push_back(lickorish_gamma(M, i));
  }
  return out;
}

std::vector<CurveDiagram> twisted_corpus(const ModelPtr& M, std::mt19937_64& rng, int extra) {
  auto base = lickorish_set(M);
  std::vector<CurveDiagram> out = base;
  for (int k = 0; k < extra; ++k)
    out.push_back(dehn_twist(base[rng() % base.size()], base[rng() % base.size()]));
  return out;
}

CurveDiagram fingered(const CurveDiagram& c, const CurveDiagram& across) {
  auto site = find_finger_site(c, across);
  REQUIRE(site);
  return finger_move(c, across, *site).curve;
}

int d_rank_at_one(const FloerComplex& fc) {
  int n = static_cast<int>(fc.generators.size());
  return (n - homology_rank(fc)) / 2;
}

double shoelace(const std::vector<Vec2>& p) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += cross(p[i], p[(i + 1) % p.size()]);
  return 0.5 * s;
}

}  // namespace

TEST_CASE("novikov sums cancel equal exponents in pairs") {
  Novikov a;
  a.add_term(1.5);
  a.add_term(0.25);
  CHECK(a.exponents().size() == 2);
  a.add_term(1.5 + 1e-12);
  CHECK(a.exponents().size() == 1);
  CHECK(a.at_one() == 1);
  Novikov b;
  b.add_term(1.0);
  b.add_term(2.0);
  Novikov p = a * b;
  REQUIRE(p.exponents().size() == 2);
  CHECK(p.exponents()[0] == doctest::Approx(1.25));
  CHECK(p.exponents()[1] == doctest::Approx(2.25));
  p += p;
  CHECK(p.is_zero());
}

TEST_CASE("alpha and beta meet once with zero differential") {
  for (int g = 2; g <= 4; ++g) {
    auto M = std::make_shared<SurfaceModel>(g, 100.0);
    for (int i = 1; i <= g; ++i) {
      auto fc = build_complex(lickorish_alpha(M, i), lickorish_beta(M, i));
      REQUIRE(fc.generators.size() == 1);
      CHECK(fc.d[0][0].is_zero());
      CHECK(homology_rank(fc) == 1);
    }
    CHECK(floer_rank(lickorish_alpha(M, 1), lickorish_alpha(M, 2)) == 0);
  }
}

TEST_CASE("finger move adds two generators and a rank one differential") {
  for (int g = 2; g <= 3; ++g) {
    auto M = std::make_shared<SurfaceModel>(g, 100.0);
    auto a = lickorish_alpha(M, 1);
    auto b = fingered(make_transverse(a, lickorish_beta(M, 1)), a);
    auto fc = build_complex(a, b);
    REQUIRE(fc.generators.size() == 3);
    CHECK(d_rank_at_one(fc) == 1);
    CHECK(homology_rank(fc) == 1);
  }
}

TEST_CASE("lunes inside one face have the shoelace area of their boundary") {
  auto M = std::make_shared<SurfaceModel>(2, 100.0);
  auto a = lickorish_alpha(M, 1);
  auto b = fingered(make_transverse(a, lickorish_beta(M, 1)), a);
  auto n = static_cast<int>(intersections(a, b).size());
  int checked = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      for (const auto& lune : find_lunes(a, b, x, y, default_radius(a, b))) {
        CHECK(lune.area > 0);
        if (lune.boundary.num_crossings() > 0) continue;
        std::vector<Vec2> pts;
        for (const auto& node : lune.boundary.nodes()) pts.push_back(node.pos);
        CHECK(lune.area == doctest::Approx(shoelace(pts)).epsilon(1e-9));
        ++checked;
      }
    }
  CHECK(checked >= 1);
}

TEST_CASE("differential squares to zero and respects grading and energy") {
  for (int g = 2; g <= 3; ++g) {
    auto M = std::make_shared<SurfaceModel>(g, 100.0);
    std::mt19937_64 rng(40 + g);
    auto cs = twisted_corpus(M, rng, 5);
    int complexes = 0, nonzero = 0;
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) {
        if (i == j) continue;
        auto c2 = make_transverse(cs[i], cs[j]);
        for (int f = 0; f < 2; ++f) {
          auto fc = build_complex(cs[i], c2);
          ++complexes;
          CHECK(d_squared_zero(fc));
          const std::size_t n = fc.generators.size();
          for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
              if (fc.d[x][y].is_zero()) continue;
              ++nonzero;
              CHECK(fc.degree[x] != fc.degree[y]);
              for (double e : fc.d[x][y].exponents()) CHECK(e > 0);
            }
          // Euler characteristic: rank and algebraic count agree mod 2.
          CHECK((homology_rank(fc) - algebraic_intersection(fc.c1, fc.c2)) % 2 == 0);
          CHECK(homology_rank(fc) >= 0);
          auto site = find_finger_site(c2, cs[i]);
          if (!site) break;
          c2 = finger_move(c2, cs[i], *site).curve;
        }
      }
    CHECK(complexes >= 30);
    CHECK(nonzero >= 10);
  }
}

TEST_CASE("complex is stable when the window grows") {
  auto M = std::make_shared<SurfaceModel>(2, 100.0);
  std::mt19937_64 rng(5);
  auto cs = twisted_corpus(M, rng, 3);
  for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
    auto a = cs[i];
    auto b = make_transverse(a, cs[i + 1]);
    if (auto s = find_finger_site(b, a)) b = finger_move(b, a, *s).curve;
    int r = default_radius(a, b);
    auto f1 = build_complex(a, b, r);
    auto f2 = build_complex(a, b, r + 2);
    REQUIRE(f1.generators.size() == f2.generators.size());
    for (std::size_t x = 0; x < f1.d.size(); ++x)
      for (std::size_t y = 0; y < f1.d.size(); ++y)
        CHECK(f1.d[x][y].exponents().size() == f2.d[x][y].exponents().size());
  }
}

TEST_CASE("too small a window is signalled") {
  auto M = std::make_shared<SurfaceModel>(2, 100.0);
  auto a = lickorish_alpha(M, 1);
  // The strip between a curve and a pushed copy runs once around the curve.
  auto b = fingered(push_off(a, 0.5), a);
  CHECK_THROWS_AS(build_complex(a, b, 0), WindowExhausted);
  auto fc = build_complex(a, b);
  CHECK(fc.radius >= 1);
  CHECK(homology_rank(fc) == 2);
}

TEST_CASE("developed window grows with the surface group") {
  auto M = std::make_shared<SurfaceModel>(2, 100.0);
  auto a = lickorish_alpha(M, 1);
  auto b = make_transverse(a, lickorish_beta(M, 1));
  auto w0 = develop_window({a, b}, 0);
  CHECK(w0.tiles.size() == 1);
  CHECK(w0.crossings.size() == intersections(a, b).size() + self_intersections(a).size() +
                                   self_intersections(b).size());
  // Spheres in the genus 2 surface group have 1, 8, 56 elements.
  CHECK(develop_window({a, b}, 1).tiles.size() == 9);
  CHECK(develop_window({a, b}, 2).tiles.size() == 65);
  std::size_t prev = 0;
  for (int r = 0; r <= 2; ++r) {
    std::size_t now = develop_window({a, b}, r).crossings.size();
    CHECK(now >= prev);
    prev = now;
  }
  for (int r = 0; r <= 3; ++r)
    for (auto [tile, count] : base_lift_crossings(a, b, r)) CHECK(count <= 1);
}

TEST_CASE("product satisfies the Leibniz rule") {
  int triples = 0, with_triangles = 0;
  for (int g = 2; g <= 3; ++g) {
    auto M = std::make_shared<SurfaceModel>(g, 100.0);
    std::mt19937_64 rng(90 + g);
    auto cs = twisted_corpus(M, rng, 4);
    for (int it = 0; it < 40; ++it) {
      auto c0 = cs[rng() % cs.size()];
      auto c1 = make_transverse(c0, cs[rng() % cs.size()]);
      if (rng() % 2)
        if (auto s = find_finger_site(c1, c0)) c1 = finger_move(c1, c0, *s).curve;
      auto c2 = cs[rng() % cs.size()];
      Mu2 m = mu2(c0, c1, c2);
      ++triples;
      if (!m.terms.empty()) ++with_triangles;
      for (const auto& [ab, out] : m.terms)
        for (const auto& [y, sum] : out)
          for (double e : sum.exponents()) CHECK(e > 0);
      CHECK(leibniz_holds(c0, c1, c2));
    }
  }
  CHECK(triples >= 20);
  CHECK(with_triangles >= 5);
}

TEST_CASE("triangle between a curve, a transverse curve and a pushed copy") {
  auto M = std::make_shared<SurfaceModel>(2, 100.0);
  auto a = lickorish_alpha(M, 1);
  auto copy = fingered(push_off(a, 0.5), a);
  auto b = make_transverse(a, lickorish_beta(M, 1));
  Mu2 m = mu2(a, b, copy);
  CHECK(m.g02.size() == 2);
  CHECK_FALSE(m.terms.empty());
  CHECK(leibniz_holds(a, b, copy));
}

TEST_CASE("k0 class of unobstructed curves") {
  auto M = std::make_shared<SurfaceModel>(2, 100.0);
  std::mt19937_64 rng(3);
  for (const auto& c : twisted_corpus(M, rng, 6)) {
    auto k = k0_class(c);
    CHECK(k0_class(c.reversed()).approx_equal(-k));
    CHECK(k.approx_equal(class_of(c)));
  }
  CHECK_THROWS_AS(k0_class(kinked(parse_word("a1"), M)), std::invalid_argument);
  CHECK_THROWS_AS(build_complex(kinked(parse_word("a1"), M), lickorish_beta(M, 1)),
                  std::invalid_argument);
}

TEST_CASE("complex serialises differential terms") {
  auto M = std::make_shared<SurfaceModel>(2, 100.0);
  auto a = lickorish_alpha(M, 1);
  auto b = fingered(make_transverse(a, lickorish_beta(M, 1)), a);
  auto j = nlohmann::json::parse(complex_to_json(build_complex(a, b)));
  CHECK(j["generators"].size() == 3);
  REQUIRE(j["differential"].size() >= 1);
  for (const auto& e : j["differential"])
    for (const auto& t : e["terms"]) {
      CHECK(t["coeff"] == 1);
      CHECK(t["exp"].get<double>() > 0);
    }
}

TEST_CASE("rank is invariant under finger moves and push-offs and counts minimal points") {
  int compared = 0, minimal = 0;
  for (int g = 2; g <= 3; ++g) {
    auto M = std::make_shared<SurfaceModel>(g, 100.0);
    std::mt19937_64 rng(17 + g);
    auto cs = twisted_corpus(M, rng, 3);
    cs.push_back(tighten(from_word(parse_word("a1b1"), M)));
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) {
        if (i == j) continue;
        const auto& c1 = cs[i];
        auto c2 = make_transverse(c1, cs[j]);
        auto pts = intersections(c1, c2);
        if (pts.empty()) continue;
        int r0 = floer_rank(c1, c2);
        if (in_minimal_position(c1, c2)) {
          CHECK(r0 == static_cast<int>(pts.size()));
          ++minimal;
        }
        if (auto s = find_finger_site(c2, c1)) {
          CHECK(floer_rank(c1, finger_move(c2, c1, *s).curve) == r0);
          ++compared;
        }
        CHECK(floer_rank(c1, push_off(c2, 0.3)) == r0);
        CHECK(floer_rank(push_off(c1, -0.2), c2) == r0);
        compared += 2;
      }
  }
  CHECK(compared >= 10);
  CHECK(minimal >= 10);
}

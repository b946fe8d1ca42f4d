#include <cmath>
#include <set>

#include "doctest.h"
#include "lagcob/surface_group.hpp"
#include "lagcob/surface_model.hpp"

using namespace lagcob;

TEST_CASE("surface model basic counts") {
  for (int g = 2; g <= 5; ++g) {
    SurfaceModel m(g, 3.0);
    CHECK(m.num_sides() == 4 * g);
    CHECK(m.euler_characteristic() == 2 - 2 * g);
    CHECK(m.maslov_modulus() == 2 * g - 2);
    CHECK(m.vertex_link().size() == static_cast<std::size_t>(4 * g));
    std::set<int> corners(m.vertex_link().begin(), m.vertex_link().end());
    CHECK(corners.size() == static_cast<std::size_t>(4 * g));
  }
}

TEST_CASE("polygon area matches requested total area") {
  SurfaceModel m(3, 7.5);
  std::vector<Vec2> pts;
  for (int k = 0; k < m.num_sides(); ++k) pts.push_back(m.corner(k));
  CHECK(shoelace(pts) == doctest::Approx(7.5).epsilon(1e-12));
}

TEST_CASE("pairing is a fixed-point-free involution with opposite labels") {
  SurfaceModel m(4, 1.0);
  for (int s = 0; s < m.num_sides(); ++s) {
    int p = m.pairing(s);
    CHECK(p != s);
    CHECK(m.pairing(p) == s);
    CHECK(m.label(p).gen == m.label(s).gen);
    CHECK(m.label(p).sign == -m.label(s).sign);
    CHECK(m.side_rotation(p) == doctest::Approx(-m.side_rotation(s)));
  }
}

TEST_CASE("gluing carries a side onto its partner reversing the parameter") {
  SurfaceModel m(2, 2.0);
  for (int s = 0; s < m.num_sides(); ++s) {
    for (double t : {0.0, 0.25, 0.5, 1.0}) {
      Vec2 img = m.glue(s, m.point(s, t));
      Vec2 want = m.point(m.pairing(s), 1.0 - t);
      CHECK(norm(img - want) < 1e-12);
    }
  }
}

TEST_CASE("exit word around the vertex is the surface relator") {
  for (int g = 2; g <= 4; ++g) {
    SurfaceModel m(g, 1.0);
    GroupWord w;
    for (int s : m.vertex_exits()) w.push_back(m.exit_letter(s));
    CHECK(format_word(w) == format_word(relator(g)));
  }
}

TEST_CASE("exit letters and exit sides are inverse maps") {
  SurfaceModel m(3, 1.0);
  for (int s = 0; s < m.num_sides(); ++s) CHECK(m.exit_side(m.exit_letter(s)) == s);
  for (int s = 0; s < m.num_sides(); ++s)
    CHECK(m.exit_letter(m.pairing(s)) == m.exit_letter(s).inverse());
}

TEST_CASE("homology matrix is a signed permutation") {
  SurfaceModel m(3, 1.0);
  const auto& h = m.homology_matrix();
  REQUIRE(h.size() == 6u);
  for (int i = 0; i < 6; ++i) {
    int nz = 0, col = 0;
    for (int j = 0; j < 6; ++j) {
      if (h[i][j] != 0) ++nz;
      if (h[j][i] != 0) ++col;
      CHECK(std::abs(h[i][j]) <= 1);
    }
    CHECK(nz == 1);
    CHECK(col == 1);
  }
}

TEST_CASE("boundary corrections vanish at the midpoint and sum to kappa times chi") {
  SurfaceModel m(2, 5.0);
  double sum = 0;
  for (int s = 0; s < m.num_sides(); ++s) {
    CHECK(m.boundary_correction(s, 0.5) == doctest::Approx(0.0));
    sum += m.boundary_correction(s, 1.0);
  }
  CHECK(m.kappa() * m.euler_characteristic() == doctest::Approx(sum));
}

TEST_CASE("invalid surfaces are rejected") {
  CHECK_THROWS_AS(SurfaceModel(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SurfaceModel(2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SurfaceModel(2, -1.0), std::invalid_argument);
}

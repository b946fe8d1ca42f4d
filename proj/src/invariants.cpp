#include "lagcob/invariants.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace lagcob {

namespace {
int mod(int a, int n) { return ((a % n) + n) % n; }
}  // namespace

CobordismClass CobordismClass::operator+(const CobordismClass& o) const {
  if (h.size() != o.h.size() || modulus != o.modulus)
    throw std::invalid_argument("classes from different surfaces");
  CobordismClass r = *this;
  r.hol += o.hol;
  for (std::size_t i = 0; i < h.size(); ++i) r.h[i] += o.h[i];
  r.m = mod(m + o.m, modulus);
  return r;
}

CobordismClass CobordismClass::operator-() const {
  CobordismClass r = *this;
  r.hol = -hol;
  for (int& x : r.h) x = -x;
  r.m = mod(-m, modulus);
  return r;
}

CobordismClass CobordismClass::scaled(int k) const {
  CobordismClass r = *this;
  r.hol = k * hol;
  for (int& x : r.h) x *= k;
  r.m = mod(k * m, modulus);
  return r;
}

bool CobordismClass::approx_equal(const CobordismClass& o, double tol) const {
  return same_topology(o) && modulus == o.modulus && std::abs(hol - o.hol) <= tol;
}

bool CobordismClass::is_zero(double tol) const {
  for (int x : h)
    if (x != 0) return false;
  return m == 0 && std::abs(hol) <= tol;
}

std::vector<int> homology_class(const CurveDiagram& c) {
  const SurfaceModel& m = c.model();
  std::vector<int> crossings(m.rank(), 0);
  for (int k : c.cross_nodes()) {
    int s = c.node(k).side;
    crossings[m.edge_of(s)] += m.edge_sign(s);
  }
  const auto& M = m.homology_matrix();
  std::vector<int> h(m.rank(), 0);
  for (int i = 0; i < m.rank(); ++i)
    for (int j = 0; j < m.rank(); ++j) h[i] += M[i][j] * crossings[j];
  return h;
}

int turning_number(const CurveDiagram& c) {
  double turns = developed_angle(c) / kTwoPi;
  double r = std::round(turns);
  if (std::abs(turns - r) >= 0.01)
    throw std::runtime_error("developed angle is not an integer number of turns");
  return static_cast<int>(r);
}

int maslov(const CurveDiagram& c) { return mod(turning_number(c), c.model().maslov_modulus()); }

double holonomy(const CurveDiagram& c) {
  const SurfaceModel& m = c.model();
  double hol = 0.0;
  for (int k = 0; k < c.size(); ++k) hol += segment_area(c.seg_start(k), c.seg_end(k));
  for (int k : c.cross_nodes()) hol += m.boundary_correction(c.node(k).side, c.node(k).t.get_d());
  return hol + m.kappa() * turning_number(c);
}

CobordismClass class_of(const CurveDiagram& c) {
  CobordismClass k;
  k.hol = holonomy(c);
  k.h = homology_class(c);
  k.modulus = c.model().maslov_modulus();
  k.m = maslov(c);
  return k;
}

CobordismClass i_of_real(double x, int genus) {
  CobordismClass k;
  k.hol = x;
  k.h.assign(2 * genus, 0);
  k.modulus = 2 * genus - 2;
  return k;
}

CobordismClass class_T(int genus) {
  CobordismClass k = i_of_real(0.0, genus);
  k.m = mod(-1, k.modulus);
  return k;
}

int symplectic_pairing(const std::vector<int>& h1, const std::vector<int>& h2) {
  if (h1.size() != h2.size() || h1.size() % 2) throw std::invalid_argument("bad homology vectors");
  int s = 0;
  for (std::size_t i = 0; i < h1.size(); i += 2) s += h1[i] * h2[i + 1] - h1[i + 1] * h2[i];
  return s;
}

std::string class_to_json(const CobordismClass& k) {
  nlohmann::json j;
  j["hol"] = k.hol;
  j["h"] = k.h;
  j["m"] = k.m;
  j["modulus"] = k.modulus;
  return j.dump();
}

}  // namespace lagcob

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lagcob/curve_diagram.hpp"
#include "lagcob/invariants.hpp"

namespace lagcob {

// Finite sum of T^lambda with Z/2 coefficients; equal exponents cancel in pairs.
class Novikov {
 public:
  static constexpr double kTolerance = 1e-9;

  void add_term(double exponent);
  Novikov& operator+=(const Novikov& o);
  Novikov operator*(const Novikov& o) const;
  bool is_zero() const { return exps_.empty(); }
  // Coefficient at T = 1.
  int at_one() const { return static_cast<int>(exps_.size() % 2); }
  const std::vector<double>& exponents() const { return exps_; }

 private:
  std::vector<double> exps_;  // sorted, pairwise distinct beyond kTolerance
};

// Thrown when a closed candidate loop leaves the tiles of word length <= R.
struct WindowExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DevelopedTile {
  GroupWord word;
  std::vector<std::pair<int, int>> chords;  // (curve, chord index)
};

struct DevelopedCrossing {
  int tile = 0;
  int curve1 = 0, chord1 = 0;
  int curve2 = 0, chord2 = 0;
  Vec2 pos{};
};

// Tiles of word length <= R with the chords of every lift of every curve they contain, and
// the crossings between chords of different curves inside each tile.
struct DevelopedArrangement {
  int radius = 0;
  std::vector<DevelopedTile> tiles;
  std::vector<DevelopedCrossing> crossings;
};

DevelopedArrangement develop_window(const std::vector<CurveDiagram>& curves, int radius);
// Crossings of the lifts of c1 and c2 that pass through the base tile, per tile of the window.
std::map<std::size_t, int> base_lift_crossings(const CurveDiagram& c1, const CurveDiagram& c2,
                                               int radius);

// An embedded polygon in the universal cover with convex corners on the given curves.
struct Polygon {
  std::vector<int> corners;  // generator indices, output first
  CurveDiagram boundary;     // counterclockwise, corners as waypoints
  double area = 0.0;
  int max_tile_length = 0;
};

// Lunes from generator `from` to generator `to` of intersections(c1, c2): counterclockwise
// boundary runs along c1 from `to` to `from`, then along c2 back to `to`.
std::vector<Polygon> find_lunes(const CurveDiagram& c1, const CurveDiagram& c2, int from, int to,
                                int radius);

struct FloerComplex {
  CurveDiagram c1, c2;
  std::vector<IntersectionPoint> generators;
  std::vector<int> degree;
  // d[from][to]
  std::vector<std::vector<Novikov>> d;
  int radius = 0;
};

int default_radius(const CurveDiagram& c1, const CurveDiagram& c2);
// radius < 0 selects the default and doubles it on window exhaustion.
FloerComplex build_complex(const CurveDiagram& c1, const CurveDiagram& c2, int radius = -1);
bool d_squared_zero(const FloerComplex& fc);
int homology_rank(const FloerComplex& fc);
int floer_rank(const CurveDiagram& c1, const CurveDiagram& c2);

// Triangles with inputs a in CF(c0, c1), b in CF(c1, c2) and output y in CF(c0, c2):
// counterclockwise boundary runs c0 from y to a, c1 from a to b, c2 from b to y.
struct Mu2 {
  CurveDiagram c0, c1, c2;  // after perturbation to pairwise distinct parameters
  std::vector<IntersectionPoint> g01, g12, g02;
  // (a, b) -> y -> sum
  std::map<std::pair<int, int>, std::map<int, Novikov>> terms;
};
Mu2 mu2(const CurveDiagram& c0, const CurveDiagram& c1, const CurveDiagram& c2, int radius = -1);
std::vector<Polygon> find_triangles(const CurveDiagram& c0, const CurveDiagram& c1,
                                    const CurveDiagram& c2, int radius);
// d(mu2(a, b)) + mu2(da, b) + mu2(a, db) over Z/2 with matched exponents; true when zero.
bool leibniz_holds(const CurveDiagram& c0, const CurveDiagram& c1, const CurveDiagram& c2);

// Throws std::invalid_argument for obstructed curves.
CobordismClass k0_class(const CurveDiagram& c);

std::string complex_to_json(const FloerComplex& fc);

}  // namespace lagcob

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lagcob/curve_diagram.hpp"

namespace lagcob {

struct DevelopedChord {
  GroupWord tile;  // tile containing the chord, as a word from the base tile
  int chord = 0;
  int period = 0;
};

// The lift of a curve to the universal cover over periods -bound..bound.
struct LiftWindow {
  CurveDiagram curve;
  GroupWord period_word;
  std::vector<DevelopedChord> chords;
  int bound = 0;
};

// Least K with |g^K| > 2 * (longest chord prefix) + |g| after Dehn reduction.
int lift_bound(const CurveDiagram& c);
LiftWindow develop_lift(const CurveDiagram& c, int bound);
LiftWindow develop_lift(const CurveDiagram& c);

// A double point of the base curve whose branches lift into one tile, `period` apart.
struct LiftWitness {
  IntersectionPoint point;
  int period = 0;
};

bool lift_is_proper(const CurveDiagram& c);
// Empty optional when the lift is embedded; `bound` < 0 selects lift_bound(c).
std::optional<LiftWitness> lift_obstruction(const CurveDiagram& c, int bound = -1);
bool lift_is_embedded(const CurveDiagram& c);

struct UnobstructedResult {
  bool unobstructed = false;
  bool proper = false;
  std::optional<LiftWitness> witness;
};
UnobstructedResult is_unobstructed(const CurveDiagram& c);

// Two intersection points joined by arcs of c1 and c2 that close up in the universal cover.
struct BigonWitness {
  int x = 0;  // indices into intersections(c1, c2)
  int y = 0;
  IntersectionPoint px;
  IntersectionPoint py;
  // Segments traversed from x to y; c2 runs backwards when c2_forward is false.
  int c1_from = 0, c1_to = 0;
  int c2_from = 0, c2_to = 0;
  bool c2_forward = true;
};

// Throws std::invalid_argument when the curves share an edge parameter.
std::vector<BigonWitness> find_bigons(const CurveDiagram& c1, const CurveDiagram& c2);
bool in_minimal_position(const CurveDiagram& c1, const CurveDiagram& c2);

std::string witness_to_json(const LiftWitness& w);
std::string witness_to_json(const BigonWitness& w);

}  // namespace lagcob

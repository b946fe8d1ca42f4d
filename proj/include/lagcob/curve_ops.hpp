#pragma once

#include <optional>
#include <utility>

#include "lagcob/curve_diagram.hpp"

namespace lagcob {

// Orientation-respecting smoothing of a self double point. The two new corners sit a
// distance of order 1e-7 * side length from the point, so areas change by O(1e-14).
// Throws std::invalid_argument if x is not a double point of c.
std::pair<CurveDiagram, CurveDiagram> resolve_double_point(const CurveDiagram& c,
                                                           const IntersectionPoint& x);
// Repeatedly smooths double points until every piece is embedded.
std::vector<CurveDiagram> resolve_all(const CurveDiagram& c);

// Joins c1 and c2 at x, an entry of intersections(c1, c2) of degree 1.
CurveDiagram surgery(const CurveDiagram& c1, const CurveDiagram& c2, const IntersectionPoint& x);

// Left-handed twist: at each point of beta on alpha, beta follows a helix once around a
// thin collar of alpha, forwards at degree-1 points and backwards at degree-0 points.
// alpha must be embedded with straight chords; beta is made transverse first.
CurveDiagram dehn_twist(const CurveDiagram& alpha, const CurveDiagram& beta);

// Parallel copy of c, then trapezoid bumps (and thin fingers through sides when the face
// region saturates) until Hol changes by x.
// Throws std::runtime_error if the surface has no room left for the requested area.
CurveDiagram push_off(const CurveDiagram& c, double x);

struct FingerSite {
  int segment = 0;         // segment of the moved curve
  int target_segment = 0;  // segment of the curve crossed
  double at = 0.5;
  double target_at = 0.5;
};

// First site whose finger adds exactly two points and no double points.
std::optional<FingerSite> find_finger_site(const CurveDiagram& c, const CurveDiagram& across);
// Pushes a thin tongue of c across `across` at the site. Throws std::invalid_argument if the
// tongue would create anything besides two new intersection points.
MoveResult finger_move(const CurveDiagram& c, const CurveDiagram& across, const FingerSite& site);

}  // namespace lagcob

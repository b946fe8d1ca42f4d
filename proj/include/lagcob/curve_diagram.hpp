#pragma once

#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "lagcob/surface_group.hpp"
#include "lagcob/surface_model.hpp"

namespace lagcob {

// One traversal event: an interior waypoint, or an exit through `side` at parameter t.
// An exit at (s, t) re-enters the face at (pairing(s), 1 - t).
struct Node {
  enum class Kind { Point, Cross };
  Kind kind = Kind::Point;
  Vec2 pos{};
  int side = -1;
  Rational t;

  static Node point(Vec2 p) { return {Kind::Point, p, -1, Rational(0)}; }
  static Node cross(int side, const Rational& t) { return {Kind::Cross, {}, side, t}; }
  bool is_cross() const { return kind == Kind::Cross; }
};

// A transverse double point between segment seg1 of the first curve and seg2 of the second.
// Segment k ends at node k. For self-intersections seg1 < seg2.
struct IntersectionPoint {
  int seg1 = 0;
  int seg2 = 0;
  int chord1 = 0;
  int chord2 = 0;
  double u1 = 0.0;  // fraction along seg1
  double u2 = 0.0;  // fraction along seg2
  Vec2 pos{};
  bool exact = false;  // decided by boundary interleaving of two straight chords
  int degree = 0;
};

// Oriented closed curve drawn in the polygon. Nodes form a cyclic sequence; when the curve
// crosses the boundary at least once the last node is a crossing. Chord i is the part of
// the curve from the re-entry of crossing i-1 up to crossing i.
class CurveDiagram {
 public:
  CurveDiagram() = default;
  CurveDiagram(ModelPtr model, std::vector<Node> nodes);

  const SurfaceModel& model() const { return *model_; }
  const ModelPtr& model_ptr() const { return model_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int k) const { return nodes_[k]; }
  int size() const { return static_cast<int>(nodes_.size()); }
  int num_crossings() const { return static_cast<int>(cross_nodes_.size()); }
  // Node index of the i-th crossing.
  int cross_node(int i) const { return cross_nodes_[i]; }
  const std::vector<int>& cross_nodes() const { return cross_nodes_; }

  int next(int k) const { return (k + 1) % size(); }
  int prev(int k) const { return (k + size() - 1) % size(); }

  // Where the curve arrives at node k and where it leaves from.
  Vec2 in_point(int k) const;
  Vec2 out_point(int k) const;
  Vec2 seg_start(int k) const { return out_point(prev(k)); }
  Vec2 seg_end(int k) const { return in_point(k); }
  int chord_of_segment(int k) const { return chord_of_seg_[k]; }
  // True when segment k runs boundary to boundary with no waypoints.
  bool is_straight_chord(int k) const;
  // Waypoints of chord i, in order.
  std::vector<Vec2> chord_points(int i) const;

  // Exact cyclic boundary coordinates (side + t) of the endpoints of segment k.
  Rational start_boundary_position(int k) const;
  Rational end_boundary_position(int k) const;

  std::vector<Letter> letters() const;
  CurveDiagram reversed() const;

 private:
  ModelPtr model_;
  std::vector<Node> nodes_;
  std::vector<int> cross_nodes_;
  std::vector<int> chord_of_seg_;
};

std::vector<std::string> validate(const CurveDiagram& c);
// Same-edge parameter collisions between two curves.
bool params_jointly_distinct(const CurveDiagram& a, const CurveDiagram& b);
// Moves every edge parameter u to u + eta*u*(1-u), preserving their order.
CurveDiagram perturb_params(const CurveDiagram& c, const Rational& eta);
// Perturbs b until it shares no edge parameter with a.
CurveDiagram make_transverse(const CurveDiagram& a, const CurveDiagram& b);

std::vector<IntersectionPoint> self_intersections(const CurveDiagram& c);
std::vector<IntersectionPoint> intersections(const CurveDiagram& a, const CurveDiagram& b);
// Sum of +1 for degree-1 points and -1 for degree-0 points.
int algebraic_intersection(const CurveDiagram& a, const CurveDiagram& b);

// Total signed tangent rotation relative to the face trivialization, in radians.
double developed_angle(const CurveDiagram& c);

struct Slide {
  int crossing = 0;
  Rational t;
};
struct EdgePush {
  enum class Op { Insert, Remove };
  Op op = Op::Remove;
  int crossing = 0;
  int direction = 1;  // insert: +1 places the finger toward larger t on the exit side
};
struct VertexPush {
  int crossing = 0;  // first crossing of the run
  int length = 2;    // 2 or 4g-2
};
struct DetourEdit {
  enum class Op { Move, Insert, Erase };
  Op op = Op::Move;
  int node = 0;      // waypoint to move or erase; insert goes before this node
  Vec2 pos{};        // new position (move) or ignored
  double at = 0.5;   // insert: fraction along the segment ending at `node`
};
using Move = std::variant<Slide, EdgePush, VertexPush, DetourEdit>;

struct MoveResult {
  CurveDiagram curve;
  double swept_area = 0.0;
};

// Throws std::invalid_argument when the move does not apply.
MoveResult apply_move(const CurveDiagram& c, const Move& m);
std::string describe_move(const Move& m);
// Some applicable move, chosen with rng; VertexPush only if allow_vertex.
std::optional<Move> random_move(const CurveDiagram& c, std::mt19937_64& rng, bool allow_vertex);

GroupWord free_homotopy_word(const CurveDiagram& c);

// Crossing sequence for w without reduction; U-turn chords get interior bumps.
CurveDiagram from_word_raw(const GroupWord& w, const ModelPtr& model);
CurveDiagram from_word(const GroupWord& w, const ModelPtr& model);
// Builds nodes from a crossing list, adding bumps on chords that enter and leave through one side.
CurveDiagram diagram_from_crossings(const ModelPtr& model, const std::vector<Node>& crosses);
CurveDiagram tighten(const CurveDiagram& c);

CurveDiagram small_circle(const ModelPtr& model);
CurveDiagram lickorish_alpha(const ModelPtr& model, int i);
CurveDiagram lickorish_beta(const ModelPtr& model, int i);
CurveDiagram lickorish_gamma(const ModelPtr& model, int i);
CurveDiagram subsurface_boundary(const ModelPtr& model, int sub_genus);
CurveDiagram torus_boundary(const ModelPtr& model);
CurveDiagram kinked(const GroupWord& w, const ModelPtr& model);
CurveDiagram figure_eight(const GroupWord& u, const GroupWord& v, const ModelPtr& model);

std::string curve_to_json(const CurveDiagram& c);
CurveDiagram curve_from_json(const std::string& text);

}  // namespace lagcob

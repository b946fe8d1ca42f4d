#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "lagcob/geometry.hpp"

namespace lagcob {

using Rational = mpq_class;

// A generator of pi_1 with an exponent. Generators are 0-based:
// a_j is 2(j-1), b_j is 2(j-1)+1.
struct Letter {
  int gen = 0;
  int sign = 1;
  bool operator==(const Letter&) const = default;
  Letter inverse() const { return {gen, -sign}; }
};

struct SideLabel {
  int gen;   // 0-based generator index of the edge label
  int sign;  // +1 for a, b; -1 for A, B
};

class SurfaceModel {
 public:
  SurfaceModel(int genus, double total_area);

  int genus() const { return genus_; }
  int num_sides() const { return 4 * genus_; }
  int rank() const { return 2 * genus_; }
  int euler_characteristic() const { return 2 - 2 * genus_; }
  int maslov_modulus() const { return 2 * genus_ - 2; }
  double total_area() const { return total_area_; }

  int pairing(int side) const;
  const SideLabel& label(int side) const { return labels_[side]; }
  // Corners in the order met around the vertex; side k starts at corner k.
  const std::vector<int>& vertex_link() const { return link_; }
  // Sides crossed by a small counterclockwise loop around the vertex.
  const std::vector<int>& vertex_exits() const { return exits_; }

  Vec2 corner(int k) const;
  Vec2 point(int side, double t) const;
  Vec2 point(int side, const Rational& t) const { return point(side, t.get_d()); }
  double side_length() const { return side_length_; }
  Vec2 outward_normal(int side) const;

  // Direction transport when leaving through `side` and re-entering through pairing(side).
  double side_rotation(int side) const { return rotation_[side]; }
  // Image of a face point under the gluing that carries `side` onto pairing(side).
  Vec2 glue(int side, Vec2 p) const;

  // Group letter read when a curve exits through `side`.
  Letter exit_letter(int side) const { return exit_letter_[side]; }
  int exit_side(Letter l) const;

  // Edge index (0..2g-1) and orientation sign of a side for crossing counts.
  int edge_of(int side) const { return 2 * (side / 4) + (side % 2); }
  int edge_sign(int side) const { return side % 4 < 2 ? 1 : -1; }
  // Parameter of a side point on the positively oriented side of its edge.
  Rational edge_param(int side, const Rational& t) const {
    return edge_sign(side) > 0 ? t : Rational(1 - t);
  }

  const std::vector<std::vector<int>>& homology_matrix() const { return hmat_; }

  // Boundary correction C_s(t) of the holonomy for an exit through `side`.
  double boundary_correction(int side, double t) const;
  double kappa() const { return kappa_; }

  bool strictly_inside(Vec2 p, double margin = 0.0) const;

 private:
  int genus_;
  double total_area_;
  double radius_;
  double side_length_;
  std::vector<SideLabel> labels_;
  std::vector<int> link_;
  std::vector<int> exits_;
  std::vector<double> rotation_;
  std::vector<Letter> exit_letter_;
  std::vector<std::vector<int>> hmat_;
  std::vector<Vec2> shift_;  // translation part of each gluing
  double kappa_ = 0.0;
};

using ModelPtr = std::shared_ptr<const SurfaceModel>;

ModelPtr build_surface(int genus, double total_area);

std::string letter_name(Letter l);

}  // namespace lagcob

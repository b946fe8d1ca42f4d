#include "lagcob/surface_model.hpp"

#include <cmath>
#include <stdexcept>

namespace lagcob {

SurfaceModel::SurfaceModel(int genus, double total_area)
    : genus_(genus), total_area_(total_area) {
  if (genus < 2) throw std::invalid_argument("genus must be at least 2");
  if (!(total_area > 0.0) || !std::isfinite(total_area))
    throw std::invalid_argument("total_area must be a positive real");
  const int n = num_sides();
  radius_ = std::sqrt(2.0 * total_area / (n * std::sin(kTwoPi / n)));
  side_length_ = norm(corner(1) - corner(0));

  labels_.resize(n);
  rotation_.resize(n);
  exit_letter_.resize(n);
  for (int s = 0; s < n; ++s) {
    int h = s / 4, r = s % 4;
    labels_[s] = {2 * h + (r % 2), r < 2 ? 1 : -1};
    rotation_[s] = r < 2 ? kPi / genus - kPi : kPi - kPi / genus;
    int a = 2 * (genus - h - 1);
    switch (r) {
      case 0: exit_letter_[s] = {a + 1, 1}; break;
      case 1: exit_letter_[s] = {a, -1}; break;
      case 2: exit_letter_[s] = {a + 1, -1}; break;
      default: exit_letter_[s] = {a, 1}; break;
    }
  }

  int k = 0;
  for (int i = 0; i < n; ++i) {
    link_.push_back(k);
    int s = (k - 1 + n) % n;
    exits_.push_back(s);
    k = pairing(s);
  }

  hmat_.assign(rank(), std::vector<int>(rank(), 0));
  for (int s = 0; s < n; ++s) {
    Letter l = exit_letter_[s];
    hmat_[l.gen][edge_of(s)] = l.sign * edge_sign(s);
  }

  shift_.resize(n);
  for (int s = 0; s < n; ++s)
    shift_[s] = corner((pairing(s) + 1) % n) - rotate(corner(s), rotation_[s]);

  double delta0 = 0.0;
  for (int s = 0; s < n; ++s) delta0 += boundary_correction(s, 1.0);
  kappa_ = delta0 / euler_characteristic();
}

int SurfaceModel::pairing(int side) const { return side % 4 < 2 ? side + 2 : side - 2; }

Vec2 SurfaceModel::corner(int k) const {
  const int n = num_sides();
  double th = kTwoPi * (((k % n) + n) % n) / n;
  return {radius_ * std::cos(th), radius_ * std::sin(th)};
}

Vec2 SurfaceModel::point(int side, double t) const {
  return lerp(corner(side), corner(side + 1), t);
}

Vec2 SurfaceModel::outward_normal(int side) const {
  double th = kTwoPi * (side + 0.5) / num_sides();
  return {std::cos(th), std::sin(th)};
}

Vec2 SurfaceModel::glue(int side, Vec2 p) const {
  return rotate(p, rotation_[side]) + shift_[side];
}

int SurfaceModel::exit_side(Letter l) const {
  int h = genus_ - 1 - l.gen / 2;
  if (l.gen % 2 == 0) return 4 * h + (l.sign > 0 ? 3 : 1);
  return 4 * h + (l.sign > 0 ? 0 : 2);
}

double SurfaceModel::boundary_correction(int side, double t) const {
  auto f = [&](Vec2 x) { return 0.5 * cross(shift_[side], rotate(x, rotation_[side])); };
  return f(point(side, t)) - f(point(side, 0.5));
}

bool SurfaceModel::strictly_inside(Vec2 p, double margin) const {
  double apothem = radius_ * std::cos(kPi / num_sides());
  for (int s = 0; s < num_sides(); ++s)
    if (dot(p, outward_normal(s)) >= apothem - margin) return false;
  return true;
}

ModelPtr build_surface(int genus, double total_area) {
  return std::make_shared<const SurfaceModel>(genus, total_area);
}

std::string letter_name(Letter l) {
  char c = l.gen % 2 == 0 ? 'a' : 'b';
  if (l.sign < 0) c = static_cast<char>(c - 'a' + 'A');
  return std::string(1, c) + std::to_string(l.gen / 2 + 1);
}

}  // namespace lagcob

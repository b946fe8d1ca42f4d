#pragma once

#include <string>
#include <vector>

#include "lagcob/curve_diagram.hpp"

namespace lagcob {

// (Hol, H_1 class, Maslov residue mod 2g-2).
struct CobordismClass {
  double hol = 0.0;
  std::vector<int> h;
  int m = 0;
  int modulus = 2;

  CobordismClass operator+(const CobordismClass& o) const;
  CobordismClass operator-() const;
  CobordismClass operator-(const CobordismClass& o) const { return *this + (-o); }
  CobordismClass scaled(int k) const;
  bool same_topology(const CobordismClass& o) const { return h == o.h && m == o.m; }
  bool approx_equal(const CobordismClass& o, double tol = 1e-6) const;
  bool is_zero(double tol = 1e-6) const;
};

std::vector<int> homology_class(const CurveDiagram& c);
// Throws std::runtime_error if the developed angle is not close to a multiple of 2*pi.
int turning_number(const CurveDiagram& c);
int maslov(const CurveDiagram& c);
double holonomy(const CurveDiagram& c);
CobordismClass class_of(const CurveDiagram& c);
CobordismClass i_of_real(double x, int genus);
// The class (0, 0, -1).
CobordismClass class_T(int genus);
int symplectic_pairing(const std::vector<int>& h1, const std::vector<int>& h2);

std::string class_to_json(const CobordismClass& k);

}  // namespace lagcob

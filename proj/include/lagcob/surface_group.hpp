#pragma once

#include <string>
#include <vector>

#include "lagcob/surface_model.hpp"

namespace lagcob {

using GroupWord = std::vector<Letter>;

GroupWord parse_word(const std::string& text);
std::string format_word(const GroupWord& w);

GroupWord relator(int genus);
GroupWord inverse(const GroupWord& w);
GroupWord concat(const GroupWord& a, const GroupWord& b);
GroupWord power(const GroupWord& w, int k);
GroupWord free_reduce(const GroupWord& w);
std::vector<int> abelianize(const GroupWord& w, int rank);

GroupWord dehn_reduce(const GroupWord& w, int genus);
GroupWord dehn_reduce(const GroupWord& w, const SurfaceModel& model);
bool is_trivial(const GroupWord& w, int genus);
bool is_trivial(const GroupWord& w, const SurfaceModel& model);
// Dehn reduction applied to the cyclic word; result is a representative of the conjugacy class.
GroupWord cyclic_reduce(const GroupWord& w, int genus);
bool conjugate_eq(const GroupWord& u, const GroupWord& v, int genus);
bool conjugate_eq(const GroupWord& u, const GroupWord& v, const SurfaceModel& model);
int reduced_power_length(const GroupWord& w, int k, int genus);
int reduced_power_length(const GroupWord& w, int k, const SurfaceModel& model);

// Least l with |l| <= bound and u = w^l in pi_1, if any.
bool find_power(const GroupWord& u, const GroupWord& w, int bound, int genus, int& l);

}  // namespace lagcob

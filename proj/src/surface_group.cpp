#include "lagcob/surface_group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <queue>
#include <set>
#include <stdexcept>

namespace lagcob {

namespace {

// Cyclic rotations of the relator and its inverse.
const std::vector<GroupWord>& relator_rotations(int genus) {
  static std::mutex mu;
  static std::map<int, std::vector<GroupWord>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(genus);
  if (it != cache.end()) return it->second;
  std::vector<GroupWord> rots;
  for (const GroupWord& r : {relator(genus), inverse(relator(genus))}) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      GroupWord rot(r.begin() + i, r.end());
      rot.insert(rot.end(), r.begin(), r.begin() + i);
      rots.push_back(rot);
    }
  }
  return cache.emplace(genus, std::move(rots)).first->second;
}

int letter_code(Letter l) { return 2 * l.gen + (l.sign > 0 ? 0 : 1); }

std::vector<int> canonical_rotation(const GroupWord& w) {
  std::vector<int> codes;
  for (Letter l : w) codes.push_back(letter_code(l));
  std::vector<int> best = codes;
  for (std::size_t i = 1; i < codes.size(); ++i) {
    std::vector<int> rot(codes.begin() + i, codes.end());
    rot.insert(rot.end(), codes.begin(), codes.begin() + i);
    best = std::min(best, rot);
  }
  return best;
}

GroupWord rotate_word(const GroupWord& w, std::size_t i) {
  GroupWord r(w.begin() + i, w.end());
  r.insert(r.end(), w.begin(), w.begin() + i);
  return r;
}

// Replacements of exactly half a relator inside a cyclic word.
std::vector<GroupWord> half_swaps(const GroupWord& w, int genus) {
  std::vector<GroupWord> out;
  const std::size_t half = 2 * genus;
  if (w.size() < half) return out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    GroupWord rw = rotate_word(w, i);
    for (const GroupWord& r : relator_rotations(genus)) {
      if (!std::equal(r.begin(), r.begin() + half, rw.begin())) continue;
      GroupWord rest = inverse(GroupWord(r.begin() + half, r.end()));
      rest.insert(rest.end(), rw.begin() + half, rw.end());
      out.push_back(cyclic_reduce(rest, genus));
    }
  }
  return out;
}

}  // namespace

GroupWord parse_word(const std::string& text) {
  GroupWord w;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
      ++i;
      continue;
    }
    char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lc != 'a' && lc != 'b') throw std::invalid_argument("bad word letter: " + text);
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i + 1) throw std::invalid_argument("missing generator index: " + text);
    int idx = std::stoi(text.substr(i + 1, j - i - 1));
    if (idx < 1) throw std::invalid_argument("generator index must be positive");
    w.push_back({2 * (idx - 1) + (lc == 'b' ? 1 : 0), std::islower(static_cast<unsigned char>(c)) ? 1 : -1});
    i = j;
  }
  return w;
}

std::string format_word(const GroupWord& w) {
  std::string s;
  for (Letter l : w) s += letter_name(l);
  return s;
}

GroupWord relator(int genus) {
  GroupWord r;
  for (int j = 0; j < genus; ++j) {
    int a = 2 * j, b = 2 * j + 1;
    r.insert(r.end(), {{a, 1}, {b, 1}, {a, -1}, {b, -1}});
  }
  return r;
}

GroupWord inverse(const GroupWord& w) {
  GroupWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->inverse());
  return r;
}

GroupWord concat(const GroupWord& a, const GroupWord& b) {
  GroupWord r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

GroupWord power(const GroupWord& w, int k) {
  GroupWord base = k >= 0 ? w : inverse(w);
  GroupWord r;
  for (int i = 0; i < std::abs(k); ++i) r.insert(r.end(), base.begin(), base.end());
  return r;
}

GroupWord free_reduce(const GroupWord& w) {
  GroupWord out;
  for (Letter l : w) {
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

std::vector<int> abelianize(const GroupWord& w, int rank) {
  std::vector<int> v(rank, 0);
  for (Letter l : w) {
    if (l.gen >= rank) throw std::invalid_argument("generator out of range");
    v[l.gen] += l.sign;
  }
  return v;
}

GroupWord dehn_reduce(const GroupWord& w, int genus) {
  const auto& rots = relator_rotations(genus);
  const std::size_t rl = 4 * genus;
  GroupWord cur = free_reduce(w);
  for (;;) {
    std::size_t best_len = 0, best_pos = 0, best_rot = 0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t r = 0; r < rots.size(); ++r) {
        std::size_t m = 0;
        while (m < rl && i + m < cur.size() && cur[i + m] == rots[r][m]) ++m;
        if (2 * m > rl && m > best_len) {
          best_len = m;
          best_pos = i;
          best_rot = r;
        }
      }
    }
    if (best_len == 0) return cur;
    const GroupWord& r = rots[best_rot];
    GroupWord repl = inverse(GroupWord(r.begin() + best_len, r.end()));
    GroupWord next(cur.begin(), cur.begin() + best_pos);
    next.insert(next.end(), repl.begin(), repl.end());
    next.insert(next.end(), cur.begin() + best_pos + best_len, cur.end());
    cur = free_reduce(next);
  }
}

GroupWord dehn_reduce(const GroupWord& w, const SurfaceModel& model) {
  return dehn_reduce(w, model.genus());
}

bool is_trivial(const GroupWord& w, int genus) { return dehn_reduce(w, genus).empty(); }
bool is_trivial(const GroupWord& w, const SurfaceModel& model) {
  return is_trivial(w, model.genus());
}

GroupWord cyclic_reduce(const GroupWord& w, int genus) {
  const auto& rots = relator_rotations(genus);
  const std::size_t rl = 4 * genus;
  GroupWord cur = dehn_reduce(w, genus);
  for (;;) {
    while (cur.size() >= 2 && cur.front() == cur.back().inverse()) {
      cur.erase(cur.begin());
      cur.pop_back();
      cur = dehn_reduce(cur, genus);
    }
    bool moved = false;
    const std::size_t n = cur.size();
    for (std::size_t i = 0; i < n && !moved; ++i) {
      for (const GroupWord& r : rots) {
        std::size_t m = 0;
        while (m < rl && m < n && cur[(i + m) % n] == r[m]) ++m;
        if (2 * m > rl && i + m > n) {
          cur = dehn_reduce(rotate_word(cur, i), genus);
          moved = true;
          break;
        }
      }
    }
    if (!moved) return cur;
  }
}

bool conjugate_eq(const GroupWord& u, const GroupWord& v, int genus) {
  GroupWord cu = cyclic_reduce(u, genus), cv = cyclic_reduce(v, genus);
  if (cu.size() != cv.size()) return false;
  auto target = canonical_rotation(cv);
  std::set<std::vector<int>> seen{canonical_rotation(cu)};
  std::queue<GroupWord> q;
  q.push(cu);
  while (!q.empty() && seen.size() < 4096) {
    GroupWord w = q.front();
    q.pop();
    if (canonical_rotation(w) == target) return true;
    for (GroupWord& nb : half_swaps(w, genus)) {
      if (seen.insert(canonical_rotation(nb)).second) q.push(std::move(nb));
    }
  }
  return seen.count(target) > 0;
}

bool conjugate_eq(const GroupWord& u, const GroupWord& v, const SurfaceModel& model) {
  return conjugate_eq(u, v, model.genus());
}

int reduced_power_length(const GroupWord& w, int k, int genus) {
  if (is_trivial(w, genus)) throw std::invalid_argument("word is trivial");
  return static_cast<int>(dehn_reduce(power(w, k), genus).size());
}

int reduced_power_length(const GroupWord& w, int k, const SurfaceModel& model) {
  return reduced_power_length(w, k, model.genus());
}

bool find_power(const GroupWord& u, const GroupWord& w, int bound, int genus, int& l) {
  for (int a = 0; a <= bound; ++a) {
    for (int k : {a, -a}) {
      if (is_trivial(concat(u, power(w, -k)), genus)) {
        l = k;
        return true;
      }
      if (a == 0) break;
    }
  }
  return false;
}

}  // namespace lagcob

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lagcob/curve_diagram.hpp"

namespace lagcob {

struct SuiteCheck {
  std::string id;
  std::string property;  // the relation being checked, in words
  bool pass = false;
  std::map<std::string, double> measured;
  double tolerance = 0.0;
};

struct SuiteReport {
  std::string name;
  int genus = 2;
  std::uint64_t seed = 0;
  std::vector<SuiteCheck> checks;
  double runtime_seconds = 0.0;

  bool all_pass() const;
};

const std::vector<std::string>& suite_names();
// Throws std::invalid_argument for an unknown name. A tolerance >= 0 replaces the tolerance
// of every check that measures a numeric error.
SuiteReport run_suite(const std::string& name, int genus, std::uint64_t seed,
                      double tolerance = -1.0);

std::string report_to_json(const SuiteReport& r, bool with_runtime = true);
std::string report_to_text(const SuiteReport& r);

// Shared corpora.
GroupWord random_reduced_word(std::mt19937_64& rng, int genus, int max_len);
std::vector<CurveDiagram> lickorish_family(const ModelPtr& model);
// Lickorish curves twisted along each other; embedded and essential.
std::vector<CurveDiagram> twisted_family(const ModelPtr& model, std::mt19937_64& rng, int count);

}  // namespace lagcob

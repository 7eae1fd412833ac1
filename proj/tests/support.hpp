#pragma once

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "ctrlsel/instance_io.hpp"
#include "ctrlsel/pipeline.hpp"

namespace test_support {

inline std::string fixture(const std::string& name) { return std::string(CTRLSEL_FIXTURES) + "/" + name; }

inline ctrlsel::StructuredSystem load(const std::string& name) { return ctrlsel::load_instance(fixture(name)); }

inline nlohmann::json load_json(const std::string& name) {
  std::ifstream in(fixture(name));
  return nlohmann::json::parse(in);
}

struct Views {
  ctrlsel::SystemDigraph dg;
  ctrlsel::SystemBipartite bg;
  ctrlsel::SccDecomposition scc;
  ctrlsel::SourceCostProfile profile;

  explicit Views(const ctrlsel::StructuredSystem& sys)
      : dg(ctrlsel::build_system_digraph(sys)),
        bg(ctrlsel::build_bipartite(sys)),
        scc(ctrlsel::scc_decompose(dg)),
        profile(ctrlsel::build_cost_profile(sys, scc)) {}
};

// 1-based (i, j) helpers matching the instance file convention.
inline ctrlsel::Entry at(int i, int j) { return {i - 1, j - 1}; }

inline ctrlsel::InputLink link(int i, int j, long cost) { return {at(i, j), ctrlsel::Rational(cost)}; }

}  // namespace test_support

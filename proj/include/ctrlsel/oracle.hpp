#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ctrlsel/model.hpp"
#include "ctrlsel/system.hpp"

namespace ctrlsel {

struct ProblemSpec {
  Problem problem = Problem::P1;
  long k = 0;  // P3 only
};

/// Every structurally controllable subset of b_pattern, as bitmasks.
struct FeasibleSubsets {
  struct Item {
    std::uint32_t mask = 0;
    std::size_t sparsity = 0;
    Rational cost;
  };
  std::vector<Item> items;
};

inline constexpr std::size_t oracle_link_limit = 18;

/// Throws Errc::TooLarge when the system has more than oracle_link_limit links.
FeasibleSubsets enumerate_feasible(const StructuredSystem& sys);

/// Ground-truth optimum by exhaustive enumeration. P1 minimizes cardinality, P2
/// cost, P3 cost subject to cardinality <= k, P4 (cardinality, cost)
/// lexicographically. Ties go to the lexicographically smallest link list.
/// model_objective holds the problem's objective (for P4: gamma * sparsity +
/// cost, gamma = n * w_max). nullopt means infeasible.
std::optional<InputSelection> brute_force_solve(const StructuredSystem& sys, const ProblemSpec& spec);
std::optional<InputSelection> brute_force_solve(const FeasibleSubsets& table, const StructuredSystem& sys,
                                                const ProblemSpec& spec);

enum class AssumptionMode { Grouped, Unconstrained, Dedicated };

struct InstanceGenSpec {
  int n_min = 1;
  int n_max = 6;
  int m_min = 1;
  int m_max = 3;
  double a_density = 0.3;
  double b_density = 0.4;
  long cost_min = 1;
  long cost_max = 20;
  AssumptionMode mode = AssumptionMode::Grouped;
  std::size_t max_links = 12;
  /// Upper bound on |E_XX| + |E_UX| + r; 0 disables the check.
  std::size_t max_columns = 0;
  /// Regenerate until (A,B) is structurally controllable.
  bool require_controllable = true;
  int max_attempts = 10000;
  std::uint64_t seed = 0;
};

/// Seeded and reproducible. In Grouped mode every input is attached either to
/// a single source SCC or only to non-source states. Throws
/// Errc::GenerationExhausted after max_attempts rejected draws.
StructuredSystem generate_instance(const InstanceGenSpec& spec);

/// Generic-rank test: draws integer realizations in [1, 10^6] for the A pattern
/// and the selected B entries and checks rank [B AB ... A^{n-1}B] = n exactly.
/// Controllable if any of `trials` draws has full rank.
bool numeric_rank_controllable(const StructuredSystem& sys, const LinkMask& selected, std::mt19937_64& rng,
                               int trials = 2);

}  // namespace ctrlsel

#include "ctrlsel/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "ctrlsel/error.hpp"
#include "ctrlsel/graph.hpp"

namespace ctrlsel {

FeasibleSubsets enumerate_feasible(const StructuredSystem& sys) {
  const std::size_t links = sys.link_count();
  if (links > oracle_link_limit) {
    throw Error(Errc::TooLarge, "brute force supports at most " + std::to_string(oracle_link_limit) +
                                    " input links, got " + std::to_string(links));
  }
  SystemDigraph dg = build_system_digraph(sys);
  SystemBipartite bg = build_bipartite(sys);
  SccDecomposition scc = scc_decompose(dg);

  // Reachability needs a link into every source SCC; test that on bitmasks first.
  std::vector<std::uint32_t> source_masks;
  for (const auto& group : scc.source_links) {
    std::uint32_t mask = 0;
    for (std::size_t k : group) mask |= std::uint32_t{1} << k;
    source_masks.push_back(mask);
  }

  FeasibleSubsets out;
  LinkMask selected(links);
  const std::uint32_t end = std::uint32_t{1} << links;
  for (std::uint32_t mask = 0; mask < end; ++mask) {
    bool touches_sources = std::all_of(source_masks.begin(), source_masks.end(),
                                       [&](std::uint32_t s) { return (s & mask) != 0; });
    if (!touches_sources) continue;
    for (std::size_t k = 0; k < links; ++k) selected[k] = ((mask >> k) & 1U) != 0;
    if (!is_structurally_controllable(dg, bg, selected).controllable) continue;
    out.items.push_back({mask, static_cast<std::size_t>(std::popcount(mask)), sys.cost_of(selected)});
  }
  return out;
}

namespace {

std::vector<std::size_t> link_list(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; mask != 0; ++k, mask >>= 1) {
    if (mask & 1U) out.push_back(k);
  }
  return out;
}

}  // namespace

std::optional<InputSelection> brute_force_solve(const FeasibleSubsets& table, const StructuredSystem& sys,
                                                const ProblemSpec& spec) {
  Rational gamma = 0;
  if (spec.problem == Problem::P4) {
    if (sys.max_cost() == 0) throw Error(Errc::ZeroMaxCost, "sparsity penalty needs a positive maximum link cost");
    gamma = sys.max_cost() * sys.states();
  }
  auto objective = [&](const FeasibleSubsets::Item& item) -> Rational {
    switch (spec.problem) {
      case Problem::P1: return Rational(static_cast<long>(item.sparsity));
      case Problem::P2:
      case Problem::P3: return item.cost;
      case Problem::P4: return gamma * static_cast<long>(item.sparsity) + item.cost;
    }
    return 0;
  };
  // Strict ordering key: problem order, then lexicographic link list.
  auto better = [&](const FeasibleSubsets::Item& a, const FeasibleSubsets::Item& b) {
    if (spec.problem == Problem::P4) {
      if (a.sparsity != b.sparsity) return a.sparsity < b.sparsity;
      if (a.cost != b.cost) return a.cost < b.cost;
    } else {
      Rational oa = objective(a);
      Rational ob = objective(b);
      if (oa != ob) return oa < ob;
    }
    return link_list(a.mask) < link_list(b.mask);
  };

  const FeasibleSubsets::Item* best = nullptr;
  for (const auto& item : table.items) {
    if (spec.problem == Problem::P3 && static_cast<long>(item.sparsity) > spec.k) continue;
    if (best == nullptr || better(item, *best)) best = &item;
  }
  if (best == nullptr) return std::nullopt;

  InputSelection sel;
  sel.links = sys.no_links();
  for (std::size_t k : link_list(best->mask)) {
    sel.links[k] = true;
    sel.entries.push_back(sys.b_pattern()[k].entry);
  }
  sel.total_cost = best->cost;
  sel.sparsity = best->sparsity;
  sel.model_objective = objective(*best);
  sel.certificate = is_structurally_controllable(sys, sel.links);
  return sel;
}

std::optional<InputSelection> brute_force_solve(const StructuredSystem& sys, const ProblemSpec& spec) {
  return brute_force_solve(enumerate_feasible(sys), sys, spec);
}

namespace {

StructuredSystem draw_instance(const InstanceGenSpec& spec, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_dist(spec.n_min, spec.n_max);
  std::uniform_int_distribution<int> m_dist(spec.m_min, spec.m_max);
  std::uniform_int_distribution<long> cost_dist(spec.cost_min, spec.cost_max);
  std::bernoulli_distribution a_coin(spec.a_density);
  std::bernoulli_distribution b_coin(spec.b_density);
  const int n = n_dist(rng);
  const int m = m_dist(rng);

  std::vector<Entry> a;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (a_coin(rng)) a.push_back({i, j});
    }
  }
  std::vector<InputLink> b;
  auto add_link = [&](int state, int input) { b.push_back({{state, input}, Rational(cost_dist(rng))}); };

  switch (spec.mode) {
    case AssumptionMode::Unconstrained:
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
          if (b_coin(rng)) add_link(i, j);
        }
      }
      break;
    case AssumptionMode::Dedicated: {
      std::uniform_int_distribution<int> state_dist(0, n - 1);
      for (int j = 0; j < m; ++j) {
        if (b_coin(rng)) add_link(state_dist(rng), j);
      }
      break;
    }
    case AssumptionMode::Grouped: {
      StructuredSystem probe(n, 0, a, {});
      SccDecomposition scc = scc_decompose(build_system_digraph(probe));
      std::vector<std::vector<int>> groups(static_cast<std::size_t>(scc.source_count) + 1);
      for (int x = 0; x < n; ++x) groups[static_cast<std::size_t>(scc.group_of(x))].push_back(x);
      if (groups.back().empty()) groups.pop_back();
      // sources are visited in a random order by the first inputs, the rest pick any group
      std::vector<std::size_t> order(static_cast<std::size_t>(scc.source_count));
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      std::uniform_int_distribution<std::size_t> group_dist(0, groups.size() - 1);
      for (int j = 0; j < m; ++j) {
        auto uj = static_cast<std::size_t>(j);
        std::size_t g = uj < order.size() ? order[uj] : group_dist(rng);
        for (int x : groups[g]) {
          if (b_coin(rng)) add_link(x, j);
        }
      }
      break;
    }
  }
  return StructuredSystem(n, m, std::move(a), std::move(b));
}

}  // namespace

StructuredSystem generate_instance(const InstanceGenSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
    StructuredSystem sys = draw_instance(spec, rng);
    if (sys.link_count() > spec.max_links) continue;
    if (spec.max_columns != 0) {
      SccDecomposition scc = scc_decompose(build_system_digraph(sys));
      std::size_t cols = sys.a_pattern().size() + sys.link_count() + static_cast<std::size_t>(scc.source_count);
      if (cols > spec.max_columns) continue;
    }
    if (spec.require_controllable && !check_assumption_sc(sys)) continue;
    return sys;
  }
  throw Error(Errc::GenerationExhausted,
              "no acceptable instance after " + std::to_string(spec.max_attempts) + " attempts");
}

namespace {

std::size_t rank_of(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

bool numeric_rank_controllable(const StructuredSystem& sys, const LinkMask& selected, std::mt19937_64& rng,
                               int trials) {
  const auto n = static_cast<std::size_t>(sys.states());
  const auto m = static_cast<std::size_t>(sys.inputs());
  std::uniform_int_distribution<long> value(1, 1000000);
  for (int t = 0; t < trials; ++t) {
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n, Rational(0)));
    for (const Entry& e : sys.a_pattern()) {
      a[static_cast<std::size_t>(e.row)][static_cast<std::size_t>(e.col)] = value(rng);
    }
    // Controllability matrix, n rows by n*m columns, built block by block.
    std::vector<std::vector<Rational>> krylov(n, std::vector<Rational>(n * m, Rational(0)));
    std::vector<std::vector<Rational>> block(n, std::vector<Rational>(m, Rational(0)));
    auto links = sys.b_pattern();
    for (std::size_t k = 0; k < links.size(); ++k) {
      if (selected[k]) {
        block[static_cast<std::size_t>(links[k].entry.row)][static_cast<std::size_t>(links[k].entry.col)] = value(rng);
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) krylov[i][p * m + j] = block[i][j];
      }
      std::vector<std::vector<Rational>> next(n, std::vector<Rational>(m, Rational(0)));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < n; ++l) {
          if (a[i][l] == 0) continue;
          for (std::size_t j = 0; j < m; ++j) next[i][j] += a[i][l] * block[l][j];
        }
      }
      block = std::move(next);
    }
    if (m > 0 && rank_of(krylov) == n) return true;
  }
  return false;
}

}  // namespace ctrlsel

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "ctrlsel/oracle.hpp"
#include "support.hpp"

using namespace ctrlsel;
using test_support::at;
using test_support::link;
using test_support::Views;

TEST_CASE("digraph and bipartite orientation") {
  StructuredSystem sys(2, 1, {at(2, 1)}, {link(1, 1, 1)});
  SystemDigraph dg = build_system_digraph(sys);
  REQUIRE(dg.state_edges.size() == 1);
  CHECK(dg.state_edges[0].from == 0);
  CHECK(dg.state_edges[0].to == 1);
  SystemBipartite bg = build_bipartite(sys);
  REQUIRE(bg.edges.size() == 2);
  CHECK(bg.edges[0].left == 1);
  CHECK(bg.edges[0].right == 0);
  CHECK(bg.edges[1].kind == EdgeKind::Input);
  CHECK(bg.edges[1].right == 2);
  CHECK(edge_label(bg, 0) == "(x1R,x2L)");
  CHECK(edge_label(bg, 1) == "(u1,x1L)");
  CHECK(left_label(2) == "x3L");
}

TEST_CASE("chain is controllable from its head") {
  StructuredSystem sys(3, 1, {at(2, 1), at(3, 2)}, {link(1, 1, 1)});
  auto cert = is_structurally_controllable(sys, sys.all_links());
  CHECK(cert.controllable);
  CHECK(cert.matching.size() == 3);
}

TEST_CASE("dilation breaks controllability") {
  // x1 drives x2 and x3: one state cannot match both
  StructuredSystem sys(3, 1, {at(2, 1), at(3, 1)}, {link(1, 1, 1)});
  auto cert = is_structurally_controllable(sys, sys.all_links());
  CHECK(cert.all_reachable);
  CHECK_FALSE(cert.left_covered);
  CHECK_FALSE(cert.controllable);
}

TEST_CASE("inaccessible state breaks controllability") {
  StructuredSystem sys(2, 1, {at(1, 1), at(2, 2)}, {link(1, 1, 1)});
  auto cert = is_structurally_controllable(sys, sys.all_links());
  CHECK_FALSE(cert.all_reachable);
  CHECK(cert.left_covered);
  CHECK_FALSE(cert.controllable);
}

TEST_CASE("no links means nothing is reachable") {
  StructuredSystem sys(2, 0, {at(2, 1), at(1, 2)}, {});
  auto cert = is_structurally_controllable(sys, sys.no_links());
  CHECK_FALSE(cert.controllable);
  CHECK(std::none_of(cert.reachable.begin(), cert.reachable.end(), [](bool b) { return b; }));
}

TEST_CASE("scc numbering puts sources first") {
  StructuredSystem sys = test_support::load("section6.json");
  Views v(sys);
  CHECK(v.scc.component_count() == 6);
  CHECK(v.scc.source_count == 2);
  CHECK(v.scc.components[0] == std::vector<int>{0, 1, 2});
  CHECK(v.scc.components[1] == std::vector<int>{3, 4, 5});
  CHECK(v.scc.group_of(6) == 2);
  CHECK(v.scc.source_links[0].size() == 3);
  CHECK(v.scc.source_links[1].size() == 3);
}

namespace {

StructuredSystem random_system(std::mt19937_64& rng, int n, int m, double pa, double pb) {
  std::bernoulli_distribution ea(pa);
  std::bernoulli_distribution eb(pb);
  std::vector<Entry> a;
  std::vector<InputLink> b;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (ea(rng)) a.push_back({i, j});
    }
    for (int j = 0; j < m; ++j) {
      if (eb(rng)) b.push_back({{i, j}, 1});
    }
  }
  return StructuredSystem(n, m, a, b);
}

}  // namespace

TEST_CASE("scc partition is complete and the condensation acyclic") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 9);
    StructuredSystem sys = random_system(rng, n, 1, 0.25, 0.0);
    Views v(sys);
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (int c = 0; c < v.scc.component_count(); ++c) {
      for (int s : v.scc.components[static_cast<std::size_t>(c)]) {
        ++seen[static_cast<std::size_t>(s)];
        CHECK(v.scc.component_of[static_cast<std::size_t>(s)] == c);
      }
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; }));
    // condensation: Kahn's algorithm must consume every component
    int cc = v.scc.component_count();
    std::vector<std::vector<int>> out(static_cast<std::size_t>(cc));
    std::vector<int> indeg(static_cast<std::size_t>(cc), 0);
    for (const auto& e : v.dg.state_edges) {
      int a = v.scc.component_of[static_cast<std::size_t>(e.from)];
      int b = v.scc.component_of[static_cast<std::size_t>(e.to)];
      if (a == b) continue;
      out[static_cast<std::size_t>(a)].push_back(b);
      ++indeg[static_cast<std::size_t>(b)];
    }
    for (int c = 0; c < cc; ++c) CHECK(v.scc.is_source(c) == (indeg[static_cast<std::size_t>(c)] == 0));
    std::vector<int> queue;
    for (int c = 0; c < cc; ++c) {
      if (indeg[static_cast<std::size_t>(c)] == 0) queue.push_back(c);
    }
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (int d : out[static_cast<std::size_t>(queue[h])]) {
        if (--indeg[static_cast<std::size_t>(d)] == 0) queue.push_back(d);
      }
    }
    CHECK(static_cast<int>(queue.size()) == cc);
    // determinism
    Views again(sys);
    CHECK(again.scc.components == v.scc.components);
  }
}

namespace {

std::size_t brute_matching(const SystemBipartite& bg, const std::vector<bool>& allowed) {
  std::size_t best = 0;
  std::size_t e = bg.edges.size();
  for (std::uint32_t mask = 0; mask < (1u << e); ++mask) {
    std::vector<bool> left(static_cast<std::size_t>(bg.n), false);
    std::vector<bool> right(static_cast<std::size_t>(bg.right_count()), false);
    bool ok = true;
    std::size_t size = 0;
    for (std::size_t k = 0; k < e && ok; ++k) {
      if (!(mask >> k & 1u)) continue;
      if (!allowed[k]) {
        ok = false;
        break;
      }
      auto l = static_cast<std::size_t>(bg.edges[k].left);
      auto r = static_cast<std::size_t>(bg.edges[k].right);
      if (left[l] || right[r]) ok = false;
      left[l] = right[r] = true;
      ++size;
    }
    if (ok) best = std::max(best, size);
  }
  return best;
}

}  // namespace

TEST_CASE("hopcroft-karp matches brute force and leaves no augmenting path") {
  std::mt19937_64 rng(5);
  int checked = 0;
  while (checked < 400) {
    int n = 1 + static_cast<int>(rng() % 8);
    int m = static_cast<int>(rng() % 3);
    StructuredSystem sys = random_system(rng, n, m, 0.2, 0.3);
    SystemBipartite bg = build_bipartite(sys);
    if (bg.edges.size() > 12) continue;
    std::vector<bool> allowed(bg.edges.size());
    for (std::size_t k = 0; k < allowed.size(); ++k) allowed[k] = rng() % 4 != 0;
    Matching mt = max_matching(bg, allowed);
    CHECK(mt.size() == brute_matching(bg, allowed));
    CHECK_FALSE(has_augmenting_path(bg, allowed, mt));
    for (std::size_t e : mt.edges()) CHECK(allowed[e]);
    ++checked;
  }
}

TEST_CASE("structural controllability agrees with the generic rank test") {
  std::mt19937_64 rng(23);
  std::mt19937_64 draw(99);
  int agree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    StructuredSystem sys = random_system(rng, n, 2, 0.3, 0.3);
    LinkMask mask = sys.all_links();
    bool structural = is_structurally_controllable(sys, mask).controllable;
    agree += structural == numeric_rank_controllable(sys, mask, draw) ? 1 : 0;
  }
  CHECK(agree == 200);
}

TEST_CASE("edge sets of small and fixture systems") {
  StructuredSystem one(1, 1, {}, {link(1, 1, 1)});
  SystemDigraph dg = build_system_digraph(one);
  CHECK(dg.state_edges.empty());
  REQUIRE(dg.input_edges.size() == 1);
  CHECK(dg.input_edges[0].input == 0);
  CHECK(dg.input_edges[0].state == 0);

  StructuredSystem two(2, 0, {at(2, 1)}, {});
  SystemBipartite bg = build_bipartite(two);
  REQUIRE(bg.edges.size() == 1);
  CHECK(edge_label(bg, 0) == "(x1R,x2L)");
  CHECK(bg.input_edge_count() == 0);

  StructuredSystem ex2 = test_support::load("example2.json");
  CHECK(build_system_digraph(ex2).input_edges.size() == 4);
  CHECK(is_structurally_controllable(ex2, ex2.all_links()).controllable);

  StructuredSystem sec6 = test_support::load("section6.json");
  SystemBipartite sb = build_bipartite(sec6);
  CHECK(sb.n == 10);
  CHECK(sb.m == 6);
  CHECK(sb.right_count() == 16);
}

TEST_CASE("random patterns: edge counts and bipartite endpoints") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    StructuredSystem sys = random_system(rng, 5, 3, 0.3, 0.3);
    SystemBipartite bg = build_bipartite(sys);
    CHECK(bg.state_edge_count == sys.a_pattern().size());
    CHECK(bg.input_edge_count() == sys.link_count());
    for (std::size_t e = 0; e < bg.edges.size(); ++e) {
      const auto& edge = bg.edges[e];
      CHECK(edge.left >= 0);
      CHECK(edge.left < bg.n);
      if (edge.kind == EdgeKind::State) {
        CHECK(edge.right < bg.n);
      } else {
        CHECK(edge.right >= bg.n);
        CHECK(edge.right < bg.right_count());
      }
    }
  }
}

TEST_CASE("matching corner cases") {
  StructuredSystem none(3, 0, {}, {});
  SystemBipartite bg = build_bipartite(none);
  CHECK(max_matching(bg, {}).size() == 0);

  std::vector<Entry> full;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) full.push_back(at(i, j));
  }
  StructuredSystem complete(3, 0, full, {});
  SystemBipartite cb = build_bipartite(complete);
  Matching mt = max_matching(cb, std::vector<bool>(cb.edges.size(), true));
  CHECK(mt.size() == 3);
  CHECK(mt.covers_left());
}

TEST_CASE("one link per source reaches every state") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 6);
    StructuredSystem pattern = random_system(rng, n, 0, 0.25, 0.0);
    Views pv(pattern);
    std::vector<InputLink> b;
    for (int s = 0; s < pv.scc.source_count; ++s) b.push_back({{pv.scc.components[static_cast<std::size_t>(s)][0], s}, 1});
    StructuredSystem sys(n, std::max(1, pv.scc.source_count),
                         {pattern.a_pattern().begin(), pattern.a_pattern().end()}, b);
    SystemDigraph dg = build_system_digraph(sys);
    std::vector<bool> reach = is_input_reachable(dg, sys.all_links());
    CHECK(std::all_of(reach.begin(), reach.end(), [](bool x) { return x; }));
  }
}

TEST_CASE("full B over a perfectly matchable single-source pattern") {
  // cycle x1 -> x2 -> x3 -> x1: one SCC, perfect matching on E_XX
  std::vector<InputLink> b;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 2; ++j) b.push_back(link(i, j, 1));
  }
  StructuredSystem sys(3, 2, {at(2, 1), at(3, 2), at(1, 3)}, b);
  Views v(sys);
  CHECK(v.scc.component_count() == 1);
  CHECK(v.scc.source_count == 1);
  CHECK(is_structurally_controllable(sys, sys.all_links()).controllable);
}

TEST_CASE("reported sparsest selection of the ten-state fixture is controllable") {
  StructuredSystem sys = test_support::load("section6.json");
  LinkMask mask = sys.no_links();
  mask[*sys.link_index(at(2, 1))] = true;
  mask[*sys.link_index(at(4, 4))] = true;
  CHECK(is_structurally_controllable(sys, mask).controllable);
}

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ctrlsel/system.hpp"

namespace ctrlsel {

/// G(A,B): state vertices 0..n-1, input vertices n..n+m-1. A_ij = * gives the
/// state edge x_j -> x_i; B_ij = * gives the input link u_j -> x_i.
struct SystemDigraph {
  struct StateEdge {
    int from = 0;
    int to = 0;
  };
  struct InputEdge {
    int input = 0;
    int state = 0;
    std::size_t link = 0;  // index into b_pattern()
  };

  int n = 0;
  int m = 0;
  std::vector<StateEdge> state_edges;
  std::vector<InputEdge> input_edges;
  std::vector<std::vector<int>> successors;  // per state, over state edges only
};

SystemDigraph build_system_digraph(const StructuredSystem& sys);

enum class EdgeKind { State, Input };

/// B(A,B) with left side X_L and right side X_R followed by U. Edge order is
/// canonical: E_XX by (i,j) of A, then E_UX by (i,j) of B.
struct SystemBipartite {
  struct Edge {
    EdgeKind kind = EdgeKind::State;
    int left = 0;   // x^L index
    int right = 0;  // x^R index for State edges, n + input index for Input edges
  };

  int n = 0;
  int m = 0;
  std::vector<Edge> edges;
  std::size_t state_edge_count = 0;

  std::size_t input_edge_count() const { return edges.size() - state_edge_count; }
  /// Bipartite edge index of b_pattern()[link].
  std::size_t input_edge(std::size_t link) const { return state_edge_count + link; }
  int right_count() const { return n + m; }
};

SystemBipartite build_bipartite(const StructuredSystem& sys);

/// Human-readable vertex names, 0-based in, 1-based out: "x3L", "x2R", "u1".
std::string left_label(int state);
std::string right_label(const SystemBipartite& bg, int right);
std::string edge_label(const SystemBipartite& bg, std::size_t edge);

/// SCC partition of G(A). Components are numbered with source components first,
/// each block ordered by the smallest contained state index.
struct SccDecomposition {
  std::vector<std::vector<int>> components;  // sorted state indices
  std::vector<int> component_of;             // per state
  int source_count = 0;                      // r; components [0, r) are sources
  std::vector<std::vector<std::size_t>> source_links;  // per source: b_pattern indices into X_i

  int component_count() const { return static_cast<int>(components.size()); }
  bool is_source(int component) const { return component < source_count; }
  /// Source index of the state's component, or source_count for non-source states.
  int group_of(int state) const {
    int c = component_of[static_cast<std::size_t>(state)];
    return c < source_count ? c : source_count;
  }
};

SccDecomposition scc_decompose(const SystemDigraph& dg);

/// Matching over a bipartite edge subset; left_edge[v] is the edge covering x^L_v or -1.
struct Matching {
  std::vector<long> left_edge;
  std::vector<long> right_edge;

  std::size_t size() const;
  std::vector<std::size_t> edges() const;
  bool covers_left() const;
};

/// Hopcroft-Karp over the edges with allowed[e] set (allowed.size() == bg.edges.size()).
Matching max_matching(const SystemBipartite& bg, const std::vector<bool>& allowed);

/// True iff an augmenting path exists for `matching` within the allowed edges.
bool has_augmenting_path(const SystemBipartite& bg, const std::vector<bool>& allowed,
                         const Matching& matching);

/// Per state: reachable from some input through the selected links and E_A.
std::vector<bool> is_input_reachable(const SystemDigraph& dg, const LinkMask& selected);

struct ControllabilityCertificate {
  bool controllable = false;
  std::vector<bool> reachable;
  Matching matching;
  bool all_reachable = false;
  bool left_covered = false;
};

/// Structural controllability of (A, B') where B' keeps only the selected links.
ControllabilityCertificate is_structurally_controllable(const StructuredSystem& sys,
                                                        const LinkMask& selected);
ControllabilityCertificate is_structurally_controllable(const SystemDigraph& dg,
                                                        const SystemBipartite& bg,
                                                        const LinkMask& selected);

}  // namespace ctrlsel

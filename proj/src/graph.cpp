#include "ctrlsel/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace ctrlsel {

SystemDigraph build_system_digraph(const StructuredSystem& sys) {
  SystemDigraph dg;
  dg.n = sys.states();
  dg.m = sys.inputs();
  dg.successors.resize(static_cast<std::size_t>(dg.n));
  for (const Entry& e : sys.a_pattern()) {
    dg.state_edges.push_back({e.col, e.row});
    dg.successors[static_cast<std::size_t>(e.col)].push_back(e.row);
  }
  auto links = sys.b_pattern();
  for (std::size_t k = 0; k < links.size(); ++k) {
    dg.input_edges.push_back({links[k].entry.col, links[k].entry.row, k});
  }
  return dg;
}

SystemBipartite build_bipartite(const StructuredSystem& sys) {
  SystemBipartite bg;
  bg.n = sys.states();
  bg.m = sys.inputs();
  for (const Entry& e : sys.a_pattern()) {
    bg.edges.push_back({EdgeKind::State, e.row, e.col});
  }
  bg.state_edge_count = bg.edges.size();
  for (const InputLink& link : sys.b_pattern()) {
    bg.edges.push_back({EdgeKind::Input, link.entry.row, bg.n + link.entry.col});
  }
  return bg;
}

std::string left_label(int state) { return "x" + std::to_string(state + 1) + "L"; }

std::string right_label(const SystemBipartite& bg, int right) {
  if (right < bg.n) return "x" + std::to_string(right + 1) + "R";
  return "u" + std::to_string(right - bg.n + 1);
}

std::string edge_label(const SystemBipartite& bg, std::size_t edge) {
  const auto& e = bg.edges[edge];
  return "(" + right_label(bg, e.right) + "," + left_label(e.left) + ")";
}

SccDecomposition scc_decompose(const SystemDigraph& dg) {
  const int n = dg.n;
  constexpr int unvisited = -1;
  std::vector<int> index(static_cast<std::size_t>(n), unvisited);
  std::vector<int> lowlink(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  std::vector<std::vector<int>> raw;
  int counter = 0;

  // Iterative Tarjan: frames hold (vertex, next successor position).
  std::vector<std::pair<int, std::size_t>> frames;
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != unvisited) continue;
    frames.push_back({root, 0});
    index[static_cast<std::size_t>(root)] = lowlink[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto& succ = dg.successors[static_cast<std::size_t>(v)];
      if (pos < succ.size()) {
        int w = succ[pos++];
        auto wi = static_cast<std::size_t>(w);
        if (index[wi] == unvisited) {
          index[wi] = lowlink[wi] = counter++;
          stack.push_back(w);
          on_stack[wi] = true;
          frames.push_back({w, 0});
        } else if (on_stack[wi]) {
          lowlink[static_cast<std::size_t>(v)] = std::min(lowlink[static_cast<std::size_t>(v)], index[wi]);
        }
        continue;
      }
      int done = v;
      frames.pop_back();
      auto di = static_cast<std::size_t>(done);
      if (!frames.empty()) {
        auto parent = static_cast<std::size_t>(frames.back().first);
        lowlink[parent] = std::min(lowlink[parent], lowlink[di]);
      }
      if (lowlink[di] == index[di]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = false;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        raw.push_back(std::move(comp));
      }
    }
  }

  std::vector<int> raw_of(static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < raw.size(); ++c) {
    for (int v : raw[c]) raw_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
  }
  std::vector<bool> has_incoming(raw.size(), false);
  for (const auto& e : dg.state_edges) {
    int from = raw_of[static_cast<std::size_t>(e.from)];
    int to = raw_of[static_cast<std::size_t>(e.to)];
    if (from != to) has_incoming[static_cast<std::size_t>(to)] = true;
  }

  std::vector<std::size_t> order(raw.size());
  for (std::size_t c = 0; c < raw.size(); ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (has_incoming[x] != has_incoming[y]) return !has_incoming[x];
    return raw[x].front() < raw[y].front();
  });

  SccDecomposition scc;
  scc.component_of.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    std::size_t c = order[pos];
    if (!has_incoming[c]) ++scc.source_count;
    for (int v : raw[c]) scc.component_of[static_cast<std::size_t>(v)] = static_cast<int>(pos);
    scc.components.push_back(std::move(raw[c]));
  }
  scc.source_links.resize(static_cast<std::size_t>(scc.source_count));
  for (const auto& link : dg.input_edges) {
    int c = scc.component_of[static_cast<std::size_t>(link.state)];
    if (c < scc.source_count) scc.source_links[static_cast<std::size_t>(c)].push_back(link.link);
  }
  return scc;
}

std::size_t Matching::size() const {
  return static_cast<std::size_t>(
      std::count_if(left_edge.begin(), left_edge.end(), [](long e) { return e >= 0; }));
}

std::vector<std::size_t> Matching::edges() const {
  std::vector<std::size_t> out;
  for (long e : left_edge) {
    if (e >= 0) out.push_back(static_cast<std::size_t>(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Matching::covers_left() const {
  return std::all_of(left_edge.begin(), left_edge.end(), [](long e) { return e >= 0; });
}

namespace {

struct Adjacency {
  std::vector<std::vector<std::size_t>> out;  // per left vertex: allowed edge ids
};

Adjacency allowed_adjacency(const SystemBipartite& bg, const std::vector<bool>& allowed) {
  Adjacency adj;
  adj.out.resize(static_cast<std::size_t>(bg.n));
  for (std::size_t e = 0; e < bg.edges.size(); ++e) {
    if (allowed[e]) adj.out[static_cast<std::size_t>(bg.edges[e].left)].push_back(e);
  }
  return adj;
}

}  // namespace

Matching max_matching(const SystemBipartite& bg, const std::vector<bool>& allowed) {
  const auto nl = static_cast<std::size_t>(bg.n);
  const auto nr = static_cast<std::size_t>(bg.right_count());
  Adjacency adj = allowed_adjacency(bg, allowed);
  Matching mt;
  mt.left_edge.assign(nl, -1);
  mt.right_edge.assign(nr, -1);

  constexpr int inf = std::numeric_limits<int>::max();
  std::vector<int> dist(nl);

  auto right_mate = [&](std::size_t r) -> long {
    long e = mt.right_edge[r];
    return e < 0 ? -1 : bg.edges[static_cast<std::size_t>(e)].left;
  };

  auto bfs = [&]() {
    std::deque<std::size_t> queue;
    bool found = false;
    for (std::size_t v = 0; v < nl; ++v) {
      if (mt.left_edge[v] < 0) {
        dist[v] = 0;
        queue.push_back(v);
      } else {
        dist[v] = inf;
      }
    }
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t e : adj.out[v]) {
        auto r = static_cast<std::size_t>(bg.edges[e].right);
        long w = right_mate(r);
        if (w < 0) {
          found = true;
        } else if (dist[static_cast<std::size_t>(w)] == inf) {
          dist[static_cast<std::size_t>(w)] = dist[v] + 1;
          queue.push_back(static_cast<std::size_t>(w));
        }
      }
    }
    return found;
  };

  // Layered DFS; recursion depth is bounded by n.
  auto dfs = [&](auto&& self, std::size_t v) -> bool {
    for (std::size_t e : adj.out[v]) {
      auto r = static_cast<std::size_t>(bg.edges[e].right);
      long w = right_mate(r);
      if (w < 0 || (dist[static_cast<std::size_t>(w)] == dist[v] + 1 &&
                    self(self, static_cast<std::size_t>(w)))) {
        mt.left_edge[v] = static_cast<long>(e);
        mt.right_edge[r] = static_cast<long>(e);
        return true;
      }
    }
    dist[v] = inf;
    return false;
  };

  while (bfs()) {
    for (std::size_t v = 0; v < nl; ++v) {
      if (mt.left_edge[v] < 0) dfs(dfs, v);
    }
  }
  return mt;
}

bool has_augmenting_path(const SystemBipartite& bg, const std::vector<bool>& allowed,
                         const Matching& matching) {
  const auto nl = static_cast<std::size_t>(bg.n);
  Adjacency adj = allowed_adjacency(bg, allowed);
  std::vector<bool> seen(nl, false);
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < nl; ++v) {
    if (matching.left_edge[v] < 0) {
      seen[v] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : adj.out[v]) {
      if (static_cast<long>(e) == matching.left_edge[v]) continue;
      auto r = static_cast<std::size_t>(bg.edges[e].right);
      long back = matching.right_edge[r];
      if (back < 0) return true;
      auto w = static_cast<std::size_t>(bg.edges[static_cast<std::size_t>(back)].left);
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return false;
}

std::vector<bool> is_input_reachable(const SystemDigraph& dg, const LinkMask& selected) {
  std::vector<bool> reached(static_cast<std::size_t>(dg.n), false);
  std::vector<int> stack;
  for (const auto& link : dg.input_edges) {
    if (selected[link.link] && !reached[static_cast<std::size_t>(link.state)]) {
      reached[static_cast<std::size_t>(link.state)] = true;
      stack.push_back(link.state);
    }
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : dg.successors[static_cast<std::size_t>(v)]) {
      if (!reached[static_cast<std::size_t>(w)]) {
        reached[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
    }
  }
  return reached;
}

ControllabilityCertificate is_structurally_controllable(const SystemDigraph& dg,
                                                        const SystemBipartite& bg,
                                                        const LinkMask& selected) {
  ControllabilityCertificate cert;
  cert.reachable = is_input_reachable(dg, selected);
  cert.all_reachable = std::all_of(cert.reachable.begin(), cert.reachable.end(), [](bool b) { return b; });
  std::vector<bool> allowed(bg.edges.size(), false);
  for (std::size_t e = 0; e < bg.state_edge_count; ++e) allowed[e] = true;
  for (std::size_t k = 0; k < selected.size(); ++k) {
    if (selected[k]) allowed[bg.input_edge(k)] = true;
  }
  cert.matching = max_matching(bg, allowed);
  cert.left_covered = cert.matching.covers_left();
  cert.controllable = cert.all_reachable && cert.left_covered;
  return cert;
}

ControllabilityCertificate is_structurally_controllable(const StructuredSystem& sys,
                                                        const LinkMask& selected) {
  return is_structurally_controllable(build_system_digraph(sys), build_bipartite(sys), selected);
}

}  // namespace ctrlsel

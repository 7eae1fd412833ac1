#include "ctrlsel/model.hpp"

#include <algorithm>
#include <sstream>

#include "ctrlsel/error.hpp"

namespace ctrlsel {

const char* problem_name(Problem p) {
  switch (p) {
    case Problem::P1: return "p1";
    case Problem::P2: return "p2";
    case Problem::P3: return "p3";
    case Problem::P4: return "p4";
  }
  return "?";
}

std::size_t IlpModel::add_column(VariableTag tag, Rational cost, Rational up, std::string label) {
  columns.push_back(tag);
  objective.push_back(std::move(cost));
  upper.push_back(std::move(up));
  column_labels.push_back(std::move(label));
  return columns.size() - 1;
}

Rational IlpModel::evaluate(const std::vector<Rational>& x) const {
  Rational total = offset;
  for (std::size_t j = 0; j < objective.size(); ++j) total += objective[j] * x[j];
  return total;
}

SourceCostProfile build_cost_profile(const StructuredSystem& sys, const SccDecomposition& scc) {
  SourceCostProfile profile;
  auto links = sys.b_pattern();
  for (const auto& group : scc.source_links) {
    std::optional<std::size_t> best;
    for (std::size_t k : group) {
      if (!best) {
        best = k;
        continue;
      }
      const InputLink& cand = links[k];
      const InputLink& cur = links[*best];
      auto cand_key = std::pair(cand.entry.col, cand.entry.row);
      auto cur_key = std::pair(cur.entry.col, cur.entry.row);
      if (cand.cost < cur.cost || (cand.cost == cur.cost && cand_key < cur_key)) best = k;
    }
    // A source without links leaves the system uncontrollable; builders reject it.
    profile.min_cost.push_back(best ? links[*best].cost : Rational(0));
    profile.argmin_link.push_back(best.value_or(sys.link_count()));
  }
  return profile;
}

bool check_assumption_sc(const StructuredSystem& sys) {
  return is_structurally_controllable(sys, sys.all_links()).controllable;
}

GroupingCheck check_assumption_grouped(const StructuredSystem& sys, const SccDecomposition& scc) {
  // First group seen per input and the state that put it there.
  std::vector<int> group(static_cast<std::size_t>(sys.inputs()), -1);
  std::vector<int> first_state(static_cast<std::size_t>(sys.inputs()), -1);
  for (const InputLink& link : sys.b_pattern()) {
    auto u = static_cast<std::size_t>(link.entry.col);
    int g = scc.group_of(link.entry.row);
    if (group[u] < 0) {
      group[u] = g;
      first_state[u] = link.entry.row;
      continue;
    }
    // Two non-source targets are allowed; any other change of group is not.
    if (group[u] != g) {
      return {false, link.entry.col, first_state[u], link.entry.row};
    }
  }
  return {};
}

namespace {

IlpModel build_base(const StructuredSystem& sys, const SccDecomposition& scc, const SystemBipartite& bg,
                    std::string name) {
  if (!check_assumption_sc(sys)) {
    throw Error(Errc::InfeasibleSystem, "(A,B) is not structurally controllable with every link selected");
  }
  IlpModel model;
  model.name = std::move(name);
  for (std::size_t e = 0; e < bg.edges.size(); ++e) {
    model.add_column({VarKind::Match, e}, 0, 1, "y" + edge_label(bg, e));
  }
  model.match_count = bg.edges.size();
  const auto r = static_cast<std::size_t>(scc.source_count);
  for (std::size_t i = 0; i < r; ++i) {
    model.add_column({VarKind::Reach, i}, 0, 1, "z" + std::to_string(i + 1));
  }
  model.reach_count = r;

  const auto n = static_cast<std::size_t>(bg.n);
  const auto nr = static_cast<std::size_t>(bg.right_count());
  std::vector<ModelRow> left(n);
  std::vector<ModelRow> right(nr);
  for (std::size_t v = 0; v < n; ++v) {
    left[v] = {RowKind::LeftMatch, Sense::Equal, 1, {}, "match[" + left_label(static_cast<int>(v)) + "]"};
  }
  for (std::size_t w = 0; w < nr; ++w) {
    right[w] = {RowKind::RightDegree, Sense::LessEqual, 1, {},
                "degree[" + right_label(bg, static_cast<int>(w)) + "]"};
  }
  for (std::size_t e = 0; e < bg.edges.size(); ++e) {
    left[static_cast<std::size_t>(bg.edges[e].left)].terms.push_back({e, 1});
    right[static_cast<std::size_t>(bg.edges[e].right)].terms.push_back({e, 1});
  }
  for (auto& row : left) model.rows.push_back(std::move(row));
  for (auto& row : right) model.rows.push_back(std::move(row));
  for (std::size_t i = 0; i < r; ++i) {
    ModelRow reach{RowKind::Reach, Sense::LessEqual, 0, {}, "reach[" + std::to_string(i + 1) + "]"};
    std::vector<std::pair<std::size_t, int>> terms;
    for (std::size_t link : scc.source_links[i]) terms.push_back({bg.input_edge(link), -1});
    terms.push_back({model.match_count + i, 1});
    std::sort(terms.begin(), terms.end());
    reach.terms = std::move(terms);
    model.rows.push_back(std::move(reach));
  }
  return model;
}

void set_weighted_objective(IlpModel& model, const StructuredSystem& sys, const SystemBipartite& bg,
                            const SourceCostProfile& profile) {
  auto links = sys.b_pattern();
  for (std::size_t k = 0; k < links.size(); ++k) model.objective[bg.input_edge(k)] = links[k].cost;
  model.offset = 0;
  for (std::size_t i = 0; i < model.reach_count; ++i) {
    model.objective[model.match_count + i] = -profile.min_cost[i];
    model.offset += profile.min_cost[i];
  }
}

}  // namespace

IlpModel build_p1_ilp(const StructuredSystem& sys, const SccDecomposition& scc, const SystemBipartite& bg) {
  IlpModel model = build_base(sys, scc, bg, "p1");
  for (std::size_t e = bg.state_edge_count; e < bg.edges.size(); ++e) model.objective[e] = 1;
  for (std::size_t i = 0; i < model.reach_count; ++i) model.objective[model.match_count + i] = -1;
  model.offset = static_cast<long>(model.reach_count);
  return model;
}

IlpModel build_p2_ilp(const StructuredSystem& sys, const SccDecomposition& scc, const SystemBipartite& bg,
                      const SourceCostProfile& profile) {
  IlpModel model = build_base(sys, scc, bg, "p2");
  set_weighted_objective(model, sys, bg, profile);
  return model;
}

IlpModel build_p3_ilp(const StructuredSystem& sys, const SccDecomposition& scc, const SystemBipartite& bg,
                      const SourceCostProfile& profile, long k) {
  IlpModel model = build_base(sys, scc, bg, "p3");
  set_weighted_objective(model, sys, bg, profile);
  ModelRow card{RowKind::Cardinality, Sense::LessEqual, k - static_cast<long>(model.reach_count), {}, "card"};
  for (std::size_t e = bg.state_edge_count; e < bg.edges.size(); ++e) card.terms.push_back({e, 1});
  for (std::size_t i = 0; i < model.reach_count; ++i) card.terms.push_back({model.match_count + i, -1});
  model.rows.push_back(std::move(card));
  return model;
}

P4Model build_p4_as_p2(const StructuredSystem& sys, const SccDecomposition& scc, const SystemBipartite& bg) {
  Rational w_max = sys.max_cost();
  if (w_max == 0) throw Error(Errc::ZeroMaxCost, "sparsity penalty needs a positive maximum link cost");
  Rational gamma = w_max * sys.states();
  std::vector<InputLink> shifted_links(sys.b_pattern().begin(), sys.b_pattern().end());
  for (InputLink& link : shifted_links) link.cost += gamma;
  std::vector<Entry> a(sys.a_pattern().begin(), sys.a_pattern().end());
  StructuredSystem shifted(sys.states(), sys.inputs(), std::move(a), std::move(shifted_links), sys.name());
  SourceCostProfile profile = build_cost_profile(shifted, scc);
  IlpModel model = build_p2_ilp(shifted, scc, bg, profile);
  model.name = "p4";
  return {std::move(model), std::move(gamma), std::move(shifted), std::move(profile)};
}

InputSelection recover_selection(const IlpModel& model, const std::vector<Rational>& solution,
                                 const StructuredSystem& sys, const SccDecomposition& scc,
                                 const SourceCostProfile& profile) {
  for (std::size_t j = 0; j < solution.size(); ++j) {
    if (solution[j] != 0 && solution[j] != 1) {
      throw Error(Errc::NonIntegralSolution,
                  "column " + model.column_labels[j] + " = " + to_string(solution[j]) + " is not 0/1");
    }
  }
  InputSelection sel;
  sel.links = sys.no_links();
  std::size_t state_edges = sys.a_pattern().size();
  for (std::size_t j = 0; j < model.match_count; ++j) {
    std::size_t e = model.columns[j].index;
    if (e >= state_edges && solution[j] == 1) {
      sel.matched_links.push_back(e - state_edges);
      sel.links[e - state_edges] = true;
    }
  }
  for (std::size_t i = 0; i < model.reach_count; ++i) {
    if (solution[model.match_count + i] == 0) {
      std::size_t link = profile.argmin_link[i];
      if (link >= sys.link_count()) {
        throw Error(Errc::CertificateFailure, "source " + std::to_string(i + 1) + " has no input link");
      }
      if (scc.group_of(sys.b_pattern()[link].entry.row) != static_cast<int>(i)) {
        throw Error(Errc::CertificateFailure, "repair link for source " + std::to_string(i + 1) + " lands elsewhere");
      }
      sel.repair_links.push_back(link);
      sel.links[link] = true;
    }
  }
  auto links = sys.b_pattern();
  for (std::size_t k = 0; k < links.size(); ++k) {
    if (!sel.links[k]) continue;
    sel.entries.push_back(links[k].entry);
    sel.total_cost += links[k].cost;
    ++sel.sparsity;
  }
  sel.model_objective = model.evaluate(solution);
  sel.certificate = is_structurally_controllable(sys, sel.links);
  if (!sel.certificate.controllable) {
    throw Error(Errc::CertificateFailure, "recovered selection is not structurally controllable");
  }
  return sel;
}

IlpModel relax(IlpModel model) {
  model.integral = false;
  return model;
}

StandardForm standard_form(const IlpModel& model) {
  const std::size_t cols = model.column_count();
  std::size_t eq_rows = 0;
  for (const auto& row : model.rows) eq_rows += row.sense == Sense::Equal ? 1 : 0;
  StandardForm sf;
  sf.matrix = IntMatrix(model.row_count() + eq_rows + cols, cols);
  std::size_t at = 0;
  for (const auto& row : model.rows) {
    for (auto [c, v] : row.terms) sf.matrix(at, c) = v;
    sf.rhs.push_back(row.rhs);
    sf.row_labels.push_back(row.label);
    ++at;
  }
  for (const auto& row : model.rows) {
    if (row.sense != Sense::Equal) continue;
    for (auto [c, v] : row.terms) sf.matrix(at, c) = -v;
    sf.rhs.push_back(-row.rhs);
    sf.row_labels.push_back("-" + row.label);
    ++at;
  }
  for (std::size_t j = 0; j < cols; ++j) {
    sf.matrix(at, j) = 1;
    // Model upper bounds are 0/1 by construction.
    sf.rhs.push_back(model.upper[j].get_num().get_si());
    sf.row_labels.push_back("bound[" + model.column_labels[j] + "]");
    ++at;
  }
  return sf;
}

std::string to_lp_debug(const IlpModel& model) {
  std::ostringstream out;
  out << "model " << model.name << "\n";
  out << "integral " << (model.integral ? "yes" : "no") << "\n";
  out << "columns " << model.column_count() << "\n";
  for (std::size_t j = 0; j < model.column_count(); ++j) {
    out << "  c" << j + 1 << " " << model.column_labels[j] << " cost " << to_string(model.objective[j])
        << " upper " << to_string(model.upper[j]) << "\n";
  }
  out << "rows " << model.row_count() << "\n";
  for (std::size_t i = 0; i < model.row_count(); ++i) {
    const auto& row = model.rows[i];
    out << "  r" << i + 1 << " " << row.label << " " << (row.sense == Sense::Equal ? "=" : "<=") << " "
        << row.rhs << " :";
    for (auto [c, v] : row.terms) out << " " << (v > 0 ? "+" : "-") << "c" << c + 1;
    out << "\n";
  }
  out << "offset " << to_string(model.offset) << "\n";
  return out.str();
}

}  // namespace ctrlsel

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctrlsel/graph.hpp"
#include "ctrlsel/int_matrix.hpp"
#include "ctrlsel/rational.hpp"
#include "ctrlsel/system.hpp"

namespace ctrlsel {

enum class Problem { P1, P2, P3, P4 };

const char* problem_name(Problem p);

enum class VarKind { Match, Reach, Generic };

/// Column semantics: Match columns carry a bipartite edge index, Reach
/// columns a source index.
struct VariableTag {
  VarKind kind = VarKind::Generic;
  std::size_t index = 0;
};

enum class RowKind { LeftMatch, RightDegree, Reach, Cardinality, Generic };
enum class Sense { Equal, LessEqual };

struct ModelRow {
  RowKind kind = RowKind::Generic;
  Sense sense = Sense::LessEqual;
  long rhs = 0;
  std::vector<std::pair<std::size_t, int>> terms;  // (column, coefficient in {-1, 1})
  std::string label;
};

/// min objective . x + offset  s.t. rows,  0 <= x <= upper,  x integral when `integral`.
struct IlpModel {
  std::string name;
  std::vector<VariableTag> columns;
  std::vector<std::string> column_labels;
  std::vector<Rational> objective;
  std::vector<Rational> upper;
  std::vector<ModelRow> rows;
  Rational offset = 0;
  bool integral = true;

  // Variable directory layout: [0, match_count) are Match columns in canonical
  // edge order, then reach_count Reach columns by source index.
  std::size_t match_count = 0;
  std::size_t reach_count = 0;

  std::size_t column_count() const { return columns.size(); }
  std::size_t row_count() const { return rows.size(); }
  std::size_t add_column(VariableTag tag, Rational cost, Rational up, std::string label);
  Rational evaluate(const std::vector<Rational>& x) const;  // includes offset
};

/// Per source SCC: cheapest link cost and the link attaining it.
struct SourceCostProfile {
  std::vector<Rational> min_cost;
  std::vector<std::size_t> argmin_link;  // b_pattern index
};

/// Ties resolve to the lexicographically smallest (input, state) pair.
SourceCostProfile build_cost_profile(const StructuredSystem& sys, const SccDecomposition& scc);

bool check_assumption_sc(const StructuredSystem& sys);

struct GroupingCheck {
  bool ok = true;
  int input = -1;  // witness input vertex (0-based) when !ok
  int state_a = -1;
  int state_b = -1;
};

/// Source-SCC grouped input constraint: no input reaches two different
/// source SCCs, nor a source SCC and a non-source SCC.
GroupingCheck check_assumption_grouped(const StructuredSystem& sys, const SccDecomposition& scc);

IlpModel build_p1_ilp(const StructuredSystem& sys, const SccDecomposition& scc, const SystemBipartite& bg);
IlpModel build_p2_ilp(const StructuredSystem& sys, const SccDecomposition& scc, const SystemBipartite& bg,
                      const SourceCostProfile& profile);
IlpModel build_p3_ilp(const StructuredSystem& sys, const SccDecomposition& scc, const SystemBipartite& bg,
                      const SourceCostProfile& profile, long k);

/// Sparsest-then-cheapest selection as a weighted problem over costs w + gamma,
/// gamma = n * w_max.
struct P4Model {
  IlpModel model;
  Rational gamma;
  StructuredSystem shifted;
  SourceCostProfile shifted_profile;
};

P4Model build_p4_as_p2(const StructuredSystem& sys, const SccDecomposition& scc, const SystemBipartite& bg);

struct InputSelection {
  LinkMask links;
  std::vector<Entry> entries;  // selected B positions, canonical order
  Rational total_cost = 0;
  std::size_t sparsity = 0;
  Rational model_objective = 0;  // model optimum + offset
  std::vector<std::size_t> matched_links;  // E*_mat as b_pattern indices
  std::vector<std::size_t> repair_links;   // E*_rea as b_pattern indices
  ControllabilityCertificate certificate;
};

/// Maps an integral model solution back to input links. Throws
/// Errc::NonIntegralSolution or Errc::CertificateFailure.
InputSelection recover_selection(const IlpModel& model, const std::vector<Rational>& solution,
                                 const StructuredSystem& sys, const SccDecomposition& scc,
                                 const SourceCostProfile& profile);

IlpModel relax(IlpModel model);

/// Inequality standard form {x : A x <= b, x >= 0}: every model row as a <= row
/// in model order, the equality rows again negated, then the identity block
/// for the upper bounds.
struct StandardForm {
  IntMatrix matrix;
  std::vector<long> rhs;
  std::vector<std::string> row_labels;
};

StandardForm standard_form(const IlpModel& model);

/// Plain-text dump used for golden-file tests and `--dump-model`.
std::string to_lp_debug(const IlpModel& model);

}  // namespace ctrlsel

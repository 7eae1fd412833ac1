#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ctrlsel/model.hpp"
#include "ctrlsel/rational.hpp"

namespace ctrlsel {

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* lp_status_name(LpStatus s);

/// Column of the internal equality form: a model column, the slack of a
/// <= row, or the phase-one artificial of a row.
struct ExtColumn {
  enum class Kind { Structural, Slack, Artificial };
  Kind kind = Kind::Structural;
  std::size_t index = 0;  // model column for Structural, model row otherwise
};

struct LpBasis {
  std::vector<ExtColumn> columns;
  std::vector<std::size_t> basic;  // per model row: index into columns
  std::vector<bool> at_upper;      // per column, meaningful for nonbasic ones
  std::vector<Rational> basic_values;
};

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> x;  // model columns
  Rational objective = 0;   // objective . x + offset
  LpBasis basis;
  std::vector<Rational> row_duals;  // per model row; <= 0 on <= rows
  Rational dual_objective = 0;      // includes offset
  std::size_t pivots = 0;
  std::size_t bland_pivots = 0;
};

struct SimplexOptions {
  /// Consecutive degenerate pivots tolerated under Dantzig pricing before
  /// switching to Bland's rule until the next non-degenerate step.
  std::size_t degenerate_limit = 25;
  /// Force Bland's rule throughout.
  bool bland_only = false;
};

/// Two-phase bounded-variable primal simplex in exact arithmetic. Returns a
/// basic (vertex) optimum. Throws std::invalid_argument if the model still
/// carries integrality flags.
LpOutcome solve_lp(const IlpModel& model, const SimplexOptions& options = {});

struct IntegralityCheck {
  bool integral = true;
  std::optional<std::size_t> first_fractional;
};

/// 0/1 check on every coordinate of an Optimal outcome.
IntegralityCheck assert_integral(const LpOutcome& outcome);

/// Exact primal feasibility of x for the model rows and bounds.
bool is_feasible_point(const IlpModel& model, const std::vector<Rational>& x);

/// Rebuilds the basis matrix from the model, checks it is nonsingular and that
/// solving it reproduces the basic values of the returned vector.
bool verify_basis(const IlpModel& model, const LpOutcome& outcome);

/// Checks that row_duals plus induced bound multipliers are dual feasible and
/// that the dual objective equals the primal objective.
bool verify_dual_certificate(const IlpModel& model, const LpOutcome& outcome);

}  // namespace ctrlsel

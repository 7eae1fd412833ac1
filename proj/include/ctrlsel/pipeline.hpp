#pragma once

#include <optional>
#include <string>

#include "ctrlsel/model.hpp"
#include "ctrlsel/oracle.hpp"
#include "ctrlsel/simplex.hpp"
#include "ctrlsel/tu.hpp"

namespace ctrlsel {

enum class SolveStatus {
  Optimal,
  Infeasible,           // P3 with k below the sparsest selection
  AssumptionViolation,  // not structurally controllable, or grouped constraint broken in strict mode
  Fractional,           // lenient mode only: the LP vertex was not 0/1
};

const char* solve_status_name(SolveStatus s);

struct AssumptionReport {
  bool structurally_controllable = false;
  GroupingCheck grouping;
  int source_count = 0;
};

AssumptionReport check_assumptions(const StructuredSystem& sys);

struct SolveOptions {
  GroupingMode grouping = GroupingMode::Strict;
  SimplexOptions simplex;
};

struct SolveResult {
  ProblemSpec spec;
  SolveStatus status = SolveStatus::AssumptionViolation;
  AssumptionReport assumptions;
  bool strict = true;
  std::optional<IlpModel> model;
  std::optional<LpOutcome> lp;
  std::optional<IntegralityCheck> integrality;
  std::optional<InputSelection> selection;
  std::optional<Rational> optimum;  // model optimum including the constant offset
  std::optional<Rational> gamma;    // P4 sparsity penalty
  std::string message;
};

/// check -> build -> relax -> simplex -> integrality -> recover -> certify.
/// Throws Errc::NonIntegralSolution when a grouped instance yields a fractional
/// vertex and Errc::CertificateFailure when recovery is inconsistent; both are
/// internal invariant failures.
SolveResult solve_problem(const StructuredSystem& sys, const ProblemSpec& spec, const SolveOptions& options = {});

/// Same report shape, from exhaustive enumeration.
SolveResult oracle_problem(const StructuredSystem& sys, const ProblemSpec& spec);

}  // namespace ctrlsel

#include "ctrlsel/pipeline.hpp"

#include "ctrlsel/error.hpp"

namespace ctrlsel {

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::AssumptionViolation: return "assumption_violation";
    case SolveStatus::Fractional: return "fractional";
  }
  return "?";
}

AssumptionReport check_assumptions(const StructuredSystem& sys) {
  AssumptionReport report;
  SccDecomposition scc = scc_decompose(build_system_digraph(sys));
  report.structurally_controllable = check_assumption_sc(sys);
  report.grouping = check_assumption_grouped(sys, scc);
  report.source_count = scc.source_count;
  return report;
}

SolveResult solve_problem(const StructuredSystem& sys, const ProblemSpec& spec, const SolveOptions& options) {
  SolveResult result;
  result.spec = spec;
  result.strict = options.grouping == GroupingMode::Strict;
  result.assumptions = check_assumptions(sys);
  if (!result.assumptions.structurally_controllable) {
    result.message = "(A,B) is not structurally controllable with every link selected";
    return result;
  }
  const GroupingCheck& grouping = result.assumptions.grouping;
  if (!grouping.ok && result.strict) {
    result.message = "grouped input constraint violated by u" + std::to_string(grouping.input + 1);
    return result;
  }

  SystemDigraph dg = build_system_digraph(sys);
  SystemBipartite bg = build_bipartite(sys);
  SccDecomposition scc = scc_decompose(dg);
  SourceCostProfile profile = build_cost_profile(sys, scc);
  IlpModel model;
  switch (spec.problem) {
    case Problem::P1: model = build_p1_ilp(sys, scc, bg); break;
    case Problem::P2: model = build_p2_ilp(sys, scc, bg, profile); break;
    case Problem::P3: model = build_p3_ilp(sys, scc, bg, profile, spec.k); break;
    case Problem::P4: {
      P4Model p4 = build_p4_as_p2(sys, scc, bg);
      model = std::move(p4.model);
      result.gamma = p4.gamma;
      // Uniform shift: the argmin links of the shifted profile equal the original ones.
      profile = std::move(p4.shifted_profile);
      break;
    }
  }
  IlpModel relaxed = relax(std::move(model));
  LpOutcome lp = solve_lp(relaxed, options.simplex);
  result.model = relaxed;
  if (lp.status == LpStatus::Infeasible) {
    result.status = SolveStatus::Infeasible;
    result.message = "no selection satisfies the constraints";
    result.lp = std::move(lp);
    return result;
  }
  if (lp.status == LpStatus::Unbounded) {
    throw Error(Errc::Unbounded, "relaxation reported unbounded; bounded 0/1 models cannot be");
  }
  result.integrality = assert_integral(lp);
  result.optimum = lp.objective;
  if (!result.integrality->integral) {
    std::size_t j = *result.integrality->first_fractional;
    if (grouping.ok) {
      throw Error(Errc::NonIntegralSolution, "fractional vertex on a grouped instance at column " +
                                                 relaxed.column_labels[j] + " = " + to_string(lp.x[j]));
    }
    result.status = SolveStatus::Fractional;
    result.message = "LP vertex is fractional at " + relaxed.column_labels[j];
    result.lp = std::move(lp);
    return result;
  }
  result.selection = recover_selection(relaxed, lp.x, sys, scc, profile);
  result.status = SolveStatus::Optimal;
  if (!grouping.ok) result.message = "grouped input constraint violated; LP vertex happened to be integral";
  result.lp = std::move(lp);
  return result;
}

SolveResult oracle_problem(const StructuredSystem& sys, const ProblemSpec& spec) {
  SolveResult result;
  result.spec = spec;
  result.strict = false;
  result.assumptions = check_assumptions(sys);
  if (spec.problem == Problem::P4) result.gamma = sys.max_cost() * sys.states();
  auto best = brute_force_solve(sys, spec);
  if (!best) {
    result.status = result.assumptions.structurally_controllable ? SolveStatus::Infeasible
                                                                 : SolveStatus::AssumptionViolation;
    return result;
  }
  result.status = SolveStatus::Optimal;
  result.optimum = best->model_objective;
  result.selection = std::move(best);
  return result;
}

}  // namespace ctrlsel

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>

#include "ctrlsel/error.hpp"
#include "ctrlsel/instance_io.hpp"
#include "ctrlsel/pipeline.hpp"

using namespace ctrlsel;

namespace {

enum Exit { Ok = 0, Usage = 1, Infeasible = 2, Assumption = 3, ParseError = 4, Internal = 5 };

struct Args {
  std::string instance;
  std::string problem = "p1";
  std::optional<long> k;
  bool lenient = false;
  std::string format = "text";
  std::string out;
  std::string which = "m";
  std::string method = "exhaustive";
  bool dump_model = false;
};

Problem parse_problem(const std::string& s) {
  static const std::map<std::string, Problem> names = {
      {"p1", Problem::P1}, {"p2", Problem::P2}, {"p3", Problem::P3}, {"p4", Problem::P4}};
  return names.at(s);
}

ProblemSpec problem_spec(const Args& a) {
  ProblemSpec spec{parse_problem(a.problem), 0};
  if (spec.problem == Problem::P3) {
    if (!a.k) throw CLI::ValidationError("--k", "p3 requires --k");
    spec.k = *a.k;
  } else if (a.k) {
    throw CLI::ValidationError("--k", "--k is only valid with p3");
  }
  return spec;
}

ReportFormat report_format(const Args& a) { return a.format == "machine" ? ReportFormat::Machine : ReportFormat::Text; }

void emit(const Args& a, const std::string& text) {
  if (a.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(a.out);
  if (!out) throw Error(Errc::Parse, a.out + ": cannot write");
  out << text;
}

int status_exit(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return Ok;
    case SolveStatus::Infeasible:
      return Infeasible;
    case SolveStatus::AssumptionViolation:
      return Assumption;
    case SolveStatus::Fractional:
      return Ok;
  }
  return Internal;
}

int run_solve(const Args& a, bool oracle) {
  ProblemSpec spec = problem_spec(a);
  StructuredSystem sys = load_instance(a.instance);
  auto start = std::chrono::steady_clock::now();
  SolveOptions options;
  options.grouping = a.lenient ? GroupingMode::Lenient : GroupingMode::Strict;
  SolveResult result = oracle ? oracle_problem(sys, spec) : solve_problem(sys, spec, options);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (a.dump_model && result.model) std::cerr << to_lp_debug(*result.model);
  emit(a, render_report(sys, result, report_format(a), oracle ? "oracle" : "lp", ms));
  if (result.status == SolveStatus::Fractional) std::cerr << "warning: LP vertex is fractional\n";
  return status_exit(result.status);
}

int run_check(const Args& a) {
  StructuredSystem sys = load_instance(a.instance);
  emit(a, render_assumptions(sys, check_assumptions(sys), report_format(a)));
  return Ok;
}

int run_tu(const Args& a) {
  StructuredSystem sys = load_instance(a.instance);
  SystemDigraph dg = build_system_digraph(sys);
  SystemBipartite bg = build_bipartite(sys);
  SccDecomposition scc = scc_decompose(dg);
  AugmentedIncidence mat;
  if (a.which == "m") {
    mat = build_incidence_m(bg, scc, sys, GroupingMode::Lenient);
  } else if (a.which == "mhat") {
    mat = build_incidence_m_hat(bg, scc, sys, GroupingMode::Lenient);
  } else {
    ProblemSpec spec = problem_spec(a);
    IlpModel model;
    SourceCostProfile profile = build_cost_profile(sys, scc);
    switch (spec.problem) {
      case Problem::P1:
        model = build_p1_ilp(sys, scc, bg);
        break;
      case Problem::P2:
        model = build_p2_ilp(sys, scc, bg, profile);
        break;
      case Problem::P3:
        model = build_p3_ilp(sys, scc, bg, profile, spec.k);
        break;
      case Problem::P4:
        model = build_p4_as_p2(sys, scc, bg).model;
        break;
    }
    mat = build_standard_form_matrix(relax(model));
  }
  TuVerdict verdict = a.method == "gh" ? tu_ghouila_houri(mat.matrix) : tu_exhaustive(mat.matrix);
  emit(a, render_tu(mat, verdict, a.which, report_format(a)));
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-cost input selection for structural controllability"};
  app.require_subcommand(1);
  Args a;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("instance", a.instance, "Instance file")->required();
    sub->add_option("--format", a.format, "Report format")->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--out", a.out, "Write the report to a file");
  };
  auto add_problem = [&](CLI::App* sub) {
    sub->add_option("--problem", a.problem, "p1, p2, p3 or p4")->check(CLI::IsMember({"p1", "p2", "p3", "p4"}));
    sub->add_option("--k", a.k, "Sparsity bound for p3");
  };

  CLI::App* solve = app.add_subcommand("solve", "Solve through the LP relaxation");
  add_common(solve);
  add_problem(solve);
  solve->add_flag("--lenient,!--strict", a.lenient, "Proceed when inputs are not grouped by source SCC");
  solve->add_flag("--dump-model", a.dump_model, "Print the model to stderr");

  CLI::App* check = app.add_subcommand("check", "Check the assumptions only");
  add_common(check);

  CLI::App* tu = app.add_subcommand("tu", "Certify or refute total unimodularity");
  add_common(tu);
  add_problem(tu);
  tu->add_option("--which", a.which, "m, mhat or mlp")->check(CLI::IsMember({"m", "mhat", "mlp"}));
  tu->add_option("--method", a.method, "exhaustive or gh")->check(CLI::IsMember({"exhaustive", "gh"}));

  CLI::App* oracle = app.add_subcommand("oracle", "Solve by exhaustive enumeration");
  add_common(oracle);
  add_problem(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? Ok : Usage;
  }

  try {
    if (solve->parsed()) return run_solve(a, false);
    if (oracle->parsed()) return run_solve(a, true);
    if (check->parsed()) return run_check(a);
    return run_tu(a);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const Error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::Parse:
      case Errc::InvalidSystem:
        return ParseError;
      case Errc::InfeasibleSystem:
      case Errc::GroupingViolation:
        return Assumption;
      case Errc::NonIntegralSolution:
      case Errc::CertificateFailure:
        return Internal;
      default:
        return Usage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Internal;
  }
}

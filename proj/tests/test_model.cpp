#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "ctrlsel/error.hpp"
#include "support.hpp"

using namespace ctrlsel;
using test_support::at;
using test_support::link;
using test_support::Views;

namespace {

StructuredSystem single() { return StructuredSystem(1, 1, {}, {link(1, 1, 3)}); }

}  // namespace

TEST_CASE("p1 on the one-state system") {
  StructuredSystem sys = single();
  Views v(sys);
  IlpModel model = build_p1_ilp(sys, v.scc, v.bg);
  const char* golden =
      "model p1\n"
      "integral yes\n"
      "columns 2\n"
      "  c1 y(u1,x1L) cost 1 upper 1\n"
      "  c2 z1 cost -1 upper 1\n"
      "rows 4\n"
      "  r1 match[x1L] = 1 : +c1\n"
      "  r2 degree[x1R] <= 1 :\n"
      "  r3 degree[u1] <= 1 : +c1\n"
      "  r4 reach[1] <= 0 : -c1 +c2\n"
      "offset 1\n";
  CHECK(to_lp_debug(model) == golden);

  IlpModel lp = relax(model);
  CHECK_FALSE(lp.integral);
  CHECK(lp.column_count() == model.column_count());
  CHECK(lp.row_count() == model.row_count());
  for (std::size_t r = 0; r < lp.row_count(); ++r) CHECK(lp.rows[r].rhs == model.rows[r].rhs);

  StandardForm sf = standard_form(lp);
  CHECK(sf.matrix.rows() == 7);
  CHECK(sf.matrix.cols() == 2);
  CHECK(sf.rhs == std::vector<long>{1, 1, 1, 0, -1, 1, 1});
  CHECK(sf.matrix(4, 0) == -1);
  CHECK(sf.matrix(5, 0) == 1);
  CHECK(sf.matrix(6, 1) == 1);
}

TEST_CASE("p2 and p3 objectives use the cheapest source link") {
  StructuredSystem sys = single();
  Views v(sys);
  IlpModel p2 = build_p2_ilp(sys, v.scc, v.bg, v.profile);
  CHECK(p2.objective == std::vector<Rational>{3, -3});
  CHECK(p2.offset == 3);
  IlpModel p3 = build_p3_ilp(sys, v.scc, v.bg, v.profile, 1);
  REQUIRE(p3.row_count() == 5);
  CHECK(p3.rows.back().kind == RowKind::Cardinality);
  CHECK(p3.rows.back().rhs == 0);
  // the cardinality row is placed before the doubling in standard form
  StandardForm sf = standard_form(relax(p3));
  CHECK(sf.matrix.rows() == 5 + 1 + 2);
  CHECK(sf.row_labels[4] == "card");
}

TEST_CASE("evaluation includes the offset") {
  StructuredSystem sys = single();
  Views v(sys);
  IlpModel p1 = build_p1_ilp(sys, v.scc, v.bg);
  CHECK(p1.evaluate({1, 1}) == 1);
  CHECK(p1.evaluate({1, 0}) == 2);
}

TEST_CASE("builders reject uncontrollable systems") {
  StructuredSystem sys(2, 1, {}, {link(1, 1, 1)});
  Views v(sys);
  CHECK_FALSE(check_assumption_sc(sys));
  CHECK_THROWS_AS(build_p1_ilp(sys, v.scc, v.bg), Error);
}

TEST_CASE("p4 needs a positive maximum cost") {
  StructuredSystem sys = single().with_uniform_cost(0);
  Views v(sys);
  try {
    build_p4_as_p2(sys, v.scc, v.bg);
    FAIL("expected ZeroMaxCost");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroMaxCost);
  }
}

TEST_CASE("p4 shifts every link by n * w_max") {
  StructuredSystem sys = test_support::load("section6.json");
  Views v(sys);
  P4Model p4 = build_p4_as_p2(sys, v.scc, v.bg);
  CHECK(p4.gamma == 980);
  for (std::size_t k = 0; k < sys.link_count(); ++k) {
    CHECK(p4.shifted.b_pattern()[k].cost == sys.b_pattern()[k].cost + 980);
  }
  CHECK(p4.shifted_profile.argmin_link == v.profile.argmin_link);
}

TEST_CASE("cost profile ties break toward the smallest (input, state)") {
  // x1 <-> x2 form one source; u2 -> x1 and u1 -> x2 both cost 2
  StructuredSystem sys(2, 2, {at(1, 2), at(2, 1)}, {link(1, 2, 2), link(2, 1, 2)});
  Views v(sys);
  REQUIRE(v.profile.min_cost.size() == 1);
  CHECK(v.profile.min_cost[0] == 2);
  CHECK(sys.b_pattern()[v.profile.argmin_link[0]].entry == at(2, 1));
}

TEST_CASE("grouping check on the ten-state fixture and a violation") {
  StructuredSystem sec6 = test_support::load("section6.json");
  CHECK(check_assumption_grouped(sec6, Views(sec6).scc).ok);

  StructuredSystem ex2 = test_support::load("example2.json");
  Views v(ex2);
  CHECK(v.scc.source_count == 1);
  CHECK(v.scc.components[0] == std::vector<int>{0, 1});
  GroupingCheck g = check_assumption_grouped(ex2, v.scc);
  CHECK_FALSE(g.ok);
  CHECK(g.input == 0);
}

TEST_CASE("an input feeding only non-source states is grouped") {
  // x1 -> x2, x1 -> x3; u1 feeds x1, u2 feeds x2 and x3
  StructuredSystem sys(3, 2, {at(2, 1), at(3, 1)}, {link(1, 1, 1), link(2, 2, 1), link(3, 2, 1)});
  Views v(sys);
  CHECK(check_assumption_grouped(sys, v.scc).ok);
}

TEST_CASE("recovery rejects fractional points and adds repair links") {
  StructuredSystem sys = single();
  Views v(sys);
  IlpModel p2 = build_p2_ilp(sys, v.scc, v.bg, v.profile);
  CHECK_THROWS_AS(recover_selection(p2, {1, Rational(1, 2)}, sys, v.scc, v.profile), Error);

  InputSelection matched = recover_selection(p2, {1, 1}, sys, v.scc, v.profile);
  CHECK(matched.matched_links == std::vector<std::size_t>{0});
  CHECK(matched.repair_links.empty());
  CHECK(matched.total_cost == 3);

  // a cycle on x1 matches it without an input, so reachability needs a repair link
  StructuredSystem loop(1, 1, {at(1, 1)}, {link(1, 1, 4)});
  Views lv(loop);
  IlpModel lp2 = build_p2_ilp(loop, lv.scc, lv.bg, lv.profile);
  InputSelection repaired = recover_selection(lp2, {1, 0, 0}, loop, lv.scc, lv.profile);
  CHECK(repaired.matched_links.empty());
  CHECK(repaired.repair_links == std::vector<std::size_t>{0});
  CHECK(repaired.certificate.controllable);
  CHECK(repaired.model_objective == 4);
}

namespace {

std::vector<IlpModel> all_models(const StructuredSystem& sys, const Views& v) {
  std::vector<IlpModel> out;
  out.push_back(build_p1_ilp(sys, v.scc, v.bg));
  out.push_back(build_p2_ilp(sys, v.scc, v.bg, v.profile));
  for (long k = 0; k <= static_cast<long>(sys.link_count()); ++k) {
    out.push_back(build_p3_ilp(sys, v.scc, v.bg, v.profile, k));
  }
  out.push_back(build_p4_as_p2(sys, v.scc, v.bg).model);
  return out;
}

}  // namespace

TEST_CASE("built models have unit coefficients and unit upper bounds") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    InstanceGenSpec gen;
    gen.seed = seed;
    StructuredSystem sys = generate_instance(gen);
    Views v(sys);
    for (const IlpModel& m : all_models(sys, v)) {
      CHECK(m.column_count() == m.match_count + m.reach_count);
      for (const auto& row : m.rows) {
        for (auto [c, coef] : row.terms) {
          CHECK((coef == 1 || coef == -1));
          CHECK(c < m.column_count());
        }
      }
      for (const auto& u : m.upper) CHECK(u == 1);
    }
  }
}

TEST_CASE("standard form shape and rhs") {
  StructuredSystem sys = test_support::load("section6.json");
  Views v(sys);
  IlpModel p1 = relax(build_p1_ilp(sys, v.scc, v.bg));
  CHECK(relax(p1).integral == p1.integral);
  StandardForm sf = standard_form(p1);
  const std::size_t n = 10;
  const std::size_t r = 2;
  const std::size_t nv = 2 * n + 6;
  const std::size_t ne = sys.a_pattern().size() + sys.link_count();
  CHECK(sf.matrix.rows() == (nv + r) + n + (ne + r));
  CHECK(sf.matrix.cols() == ne + r);
  std::vector<long> rhs;
  rhs.insert(rhs.end(), n, 1);  // X_L
  rhs.insert(rhs.end(), n + 6, 1);
  rhs.insert(rhs.end(), r, 0);
  rhs.insert(rhs.end(), n, -1);
  rhs.insert(rhs.end(), ne + r, 1);
  CHECK(sf.rhs == rhs);
  IlpModel p3 = relax(build_p3_ilp(sys, v.scc, v.bg, v.profile, 3));
  CHECK(standard_form(p3).matrix.rows() == sf.matrix.rows() + 1);
}

TEST_CASE("p1 objective counts matched plus repair links on every integral point") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    InstanceGenSpec gen;
    gen.seed = 300 + seed;
    gen.n_max = 4;
    gen.max_links = 6;
    StructuredSystem sys = generate_instance(gen);
    Views v(sys);
    IlpModel p1 = build_p1_ilp(sys, v.scc, v.bg);
    std::size_t cols = p1.column_count();
    if (cols > 16) continue;
    for (std::uint32_t mask = 0; mask < (1u << cols); ++mask) {
      std::vector<Rational> x(cols);
      for (std::size_t j = 0; j < cols; ++j) x[j] = (mask >> j) & 1u;
      if (!is_feasible_point(relax(p1), x)) continue;
      InputSelection sel = recover_selection(p1, x, sys, v.scc, v.profile);
      CHECK(p1.evaluate(x) == static_cast<long>(sel.matched_links.size() + sel.repair_links.size()));
    }
  }
}

TEST_CASE("p3 optimum is non-increasing in k and bounded below by p2") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    InstanceGenSpec gen;
    gen.seed = 700 + seed;
    StructuredSystem sys = generate_instance(gen);
    Rational p1 = *solve_problem(sys, {Problem::P1, 0}).optimum;
    Rational p2 = *solve_problem(sys, {Problem::P2, 0}).optimum;
    std::optional<Rational> prev;
    for (long k = 0; k <= static_cast<long>(sys.link_count()); ++k) {
      SolveResult r = solve_problem(sys, {Problem::P3, k});
      CHECK((r.status == SolveStatus::Optimal) == (Rational(k) >= p1));
      if (r.status != SolveStatus::Optimal) continue;
      CHECK(*r.optimum >= p2);
      if (prev) CHECK(*r.optimum <= *prev);
      if (Rational(k) == p1) CHECK(static_cast<long>(r.selection->sparsity) <= k);
      prev = r.optimum;
    }
  }
}

TEST_CASE("uniform costs: p2 equals p1 on every feasible point") {
  StructuredSystem sys = test_support::load("section6.json").with_uniform_cost(1);
  Views v(sys);
  IlpModel p1 = build_p1_ilp(sys, v.scc, v.bg);
  IlpModel p2 = build_p2_ilp(sys, v.scc, v.bg, v.profile);
  CHECK(p1.objective == p2.objective);
  CHECK(p1.offset == p2.offset);
}

TEST_CASE("ten-state p2 selection") {
  StructuredSystem sys = test_support::load("section6.json");
  SolveResult r = solve_problem(sys, {Problem::P2, 0});
  REQUIRE(r.selection);
  CHECK(r.selection->entries == std::vector<Entry>{at(1, 1), at(5, 3), at(7, 6), at(8, 5)});
  CHECK(r.selection->matched_links.size() + r.selection->repair_links.size() == 4);

  // the all-matched point with every source reached is also optimal
  Views v(sys);
  IlpModel p2 = build_p2_ilp(sys, v.scc, v.bg, v.profile);
  std::vector<Rational> x(p2.column_count(), 0);
  auto a = sys.a_pattern();
  for (Entry e : {at(2, 3), at(3, 1), at(4, 6), at(6, 5), at(9, 7), at(10, 8)}) {
    x[static_cast<std::size_t>(std::find(a.begin(), a.end(), e) - a.begin())] = 1;
  }
  for (Entry e : {at(1, 1), at(5, 3), at(7, 6), at(8, 5)}) x[v.bg.input_edge(*sys.link_index(e))] = 1;
  for (std::size_t i = 0; i < p2.reach_count; ++i) x[p2.match_count + i] = 1;
  REQUIRE(is_feasible_point(relax(p2), x));
  CHECK(p2.evaluate(x) == 13);
  InputSelection all_matched = recover_selection(p2, x, sys, v.scc, v.profile);
  CHECK(all_matched.repair_links.empty());
  CHECK(all_matched.matched_links.size() == 4);
}

TEST_CASE("grouping holds for dedicated inputs and strongly connected patterns") {
  StructuredSystem dedicated(3, 3, {at(2, 1), at(3, 1)}, {link(1, 1, 1), link(2, 2, 1), link(3, 3, 1)});
  CHECK(check_assumption_grouped(dedicated, Views(dedicated).scc).ok);
  StructuredSystem cycle(3, 1, {at(2, 1), at(3, 2), at(1, 3)}, {link(1, 1, 1), link(2, 1, 1), link(3, 1, 1)});
  CHECK(check_assumption_grouped(cycle, Views(cycle).scc).ok);
  StructuredSystem sec6 = test_support::load("section6.json");
  CHECK(check_assumption_sc(sec6));
}

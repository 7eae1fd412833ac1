#include "ctrlsel/instance_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ctrlsel/error.hpp"

namespace ctrlsel {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(Errc::Parse, where + ": " + what);
}

long get_int(const json& node, const std::string& where) {
  if (!node.is_number_integer()) fail(where, "expected an integer");
  return node.get<long>();
}

int get_index(const json& node, const std::string& where, int limit) {
  long v = get_int(node, where);
  if (v < 1 || v > limit) fail(where, "index " + std::to_string(v) + " outside 1.." + std::to_string(limit));
  return static_cast<int>(v - 1);
}

}  // namespace

StructuredSystem parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(line_col(text, e.byte), e.what());
  }
  if (!doc.is_object()) fail("$", "expected an object");
  for (const char* key : {"n", "m", "a_pattern", "b_pattern"}) {
    if (!doc.contains(key)) fail("$", std::string("missing key '") + key + "'");
  }
  long n = get_int(doc["n"], "$.n");
  long m = get_int(doc["m"], "$.m");
  if (n < 1) fail("$.n", "must be at least 1");
  if (m < 0) fail("$.m", "must be non-negative");
  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail("$.name", "expected a string");
    name = doc["name"].get<std::string>();
  }

  const json& a_doc = doc["a_pattern"];
  if (!a_doc.is_array()) fail("$.a_pattern", "expected an array");
  std::vector<Entry> a;
  for (std::size_t k = 0; k < a_doc.size(); ++k) {
    std::string where = "$.a_pattern[" + std::to_string(k) + "]";
    const json& item = a_doc[k];
    if (!item.is_array() || item.size() != 2) fail(where, "expected [i, j]");
    a.push_back({get_index(item[0], where + "[0]", static_cast<int>(n)),
                 get_index(item[1], where + "[1]", static_cast<int>(n))});
  }

  const json& b_doc = doc["b_pattern"];
  if (!b_doc.is_array()) fail("$.b_pattern", "expected an array");
  std::vector<InputLink> b;
  for (std::size_t k = 0; k < b_doc.size(); ++k) {
    std::string where = "$.b_pattern[" + std::to_string(k) + "]";
    const json& item = b_doc[k];
    if (!item.is_array() || (item.size() != 3 && item.size() != 4)) {
      fail(where, "expected [i, j, cost] or [i, j, numerator, denominator]");
    }
    Entry e{get_index(item[0], where + "[0]", static_cast<int>(n)),
            get_index(item[1], where + "[1]", static_cast<int>(m))};
    long num = get_int(item[2], where + "[2]");
    long den = item.size() == 4 ? get_int(item[3], where + "[3]") : 1;
    if (den <= 0) fail(where + "[3]", "denominator must be positive");
    if (num < 0) fail(where + "[2]", "cost must be non-negative");
    Rational cost(num, den);
    cost.canonicalize();
    b.push_back({e, cost});
  }
  try {
    return StructuredSystem(static_cast<int>(n), static_cast<int>(m), std::move(a), std::move(b), std::move(name));
  } catch (const Error& e) {
    fail("$", e.what());
  }
}

StructuredSystem load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const Error& e) {
    throw Error(Errc::Parse, path.string() + ":" + e.what());
  }
}

std::string write_instance(const StructuredSystem& sys) {
  ordered_json doc;
  if (!sys.name().empty()) doc["name"] = sys.name();
  doc["n"] = sys.states();
  doc["m"] = sys.inputs();
  doc["a_pattern"] = ordered_json::array();
  for (const Entry& e : sys.a_pattern()) doc["a_pattern"].push_back({e.row + 1, e.col + 1});
  doc["b_pattern"] = ordered_json::array();
  for (const InputLink& link : sys.b_pattern()) {
    ordered_json item = {link.entry.row + 1, link.entry.col + 1};
    item.push_back(link.cost.get_num().get_si());
    if (!is_integer(link.cost)) item.push_back(link.cost.get_den().get_si());
    doc["b_pattern"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

namespace {

std::string link_name(Entry e) {
  return "(u" + std::to_string(e.col + 1) + ",x" + std::to_string(e.row + 1) + ")";
}

ordered_json grouping_json(const GroupingCheck& g) {
  ordered_json out;
  out["ok"] = g.ok;
  if (!g.ok) {
    out["witness_input"] = "u" + std::to_string(g.input + 1);
    out["witness_states"] = {"x" + std::to_string(g.state_a + 1), "x" + std::to_string(g.state_b + 1)};
  }
  return out;
}

std::string rational_text(const Rational& q) {
  std::string exact = to_string(q);
  return is_integer(q) ? exact : exact + " (" + to_decimal(q) + ")";
}

}  // namespace

std::string render_report(const StructuredSystem& sys, const SolveResult& result, ReportFormat format,
                          std::string_view source, double elapsed_ms) {
  auto links = sys.b_pattern();
  if (format == ReportFormat::Machine) {
    ordered_json out;
    out["source"] = source;
    out["problem"] = problem_name(result.spec.problem);
    if (result.spec.problem == Problem::P3) out["k"] = result.spec.k;
    out["status"] = solve_status_name(result.status);
    out["strict"] = result.strict;
    out["assumptions"] = {{"structurally_controllable", result.assumptions.structurally_controllable},
                          {"grouped", grouping_json(result.assumptions.grouping)},
                          {"source_sccs", result.assumptions.source_count}};
    if (result.optimum) {
      out["optimum"] = {{"exact", to_string(*result.optimum)}, {"decimal", to_decimal(*result.optimum)}};
    }
    if (result.gamma) out["gamma"] = to_string(*result.gamma);
    if (result.integrality) out["integral"] = result.integrality->integral;
    if (result.selection) {
      const InputSelection& sel = *result.selection;
      ordered_json list = ordered_json::array();
      for (std::size_t k = 0; k < links.size(); ++k) {
        if (!sel.links[k]) continue;
        list.push_back({{"input", links[k].entry.col + 1},
                        {"state", links[k].entry.row + 1},
                        {"cost", to_string(links[k].cost)}});
      }
      out["links"] = std::move(list);
      out["sparsity"] = sel.sparsity;
      out["total_cost"] = to_string(sel.total_cost);
      out["certificate"] = {{"controllable", sel.certificate.controllable},
                            {"all_reachable", sel.certificate.all_reachable},
                            {"left_matched", sel.certificate.left_covered}};
    }
    if (result.lp) out["pivots"] = result.lp->pivots;
    if (!result.message.empty()) out["message"] = result.message;
    return out.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "problem   " << problem_name(result.spec.problem);
  if (result.spec.problem == Problem::P3) out << " (k = " << result.spec.k << ")";
  out << "  [" << source << "]\n";
  out << "status    " << solve_status_name(result.status) << "\n";
  out << "structurally controllable: " << (result.assumptions.structurally_controllable ? "yes" : "no")
      << "\n";
  out << "inputs grouped by source SCC: ";
  if (result.assumptions.grouping.ok) {
    out << "yes\n";
  } else {
    const auto& g = result.assumptions.grouping;
    out << "no, u" << g.input + 1 << " links x" << g.state_a + 1 << " and x" << g.state_b + 1 << "\n";
  }
  if (result.optimum) out << "optimum   " << rational_text(*result.optimum) << "\n";
  if (result.gamma) out << "gamma     " << to_string(*result.gamma) << "\n";
  if (result.integrality) out << "integral  " << (result.integrality->integral ? "yes" : "no") << "\n";
  if (result.selection) {
    const InputSelection& sel = *result.selection;
    out << "links    ";
    for (std::size_t k = 0; k < links.size(); ++k) {
      if (sel.links[k]) out << " " << link_name(links[k].entry) << "=" << to_string(links[k].cost);
    }
    out << "\nsparsity  " << sel.sparsity << "\n";
    out << "cost      " << rational_text(sel.total_cost) << "\n";
    out << "certified " << (sel.certificate.controllable ? "yes" : "no") << "\n";
  }
  if (!result.message.empty()) out << "note      " << result.message << "\n";
  out << "time      " << elapsed_ms << " ms\n";
  return out.str();
}

std::string render_assumptions(const StructuredSystem& sys, const AssumptionReport& report, ReportFormat format) {
  bool costs_ok = true;  // guaranteed by StructuredSystem validation
  if (format == ReportFormat::Machine) {
    ordered_json out;
    out["name"] = sys.name();
    out["structurally_controllable"] = report.structurally_controllable;
    out["costs_valid"] = costs_ok;
    out["min_cost"] = to_string(sys.min_cost());
    out["max_cost"] = to_string(sys.max_cost());
    out["grouped"] = grouping_json(report.grouping);
    out["source_sccs"] = report.source_count;
    return out.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "structurally controllable: " << (report.structurally_controllable ? "pass" : "FAIL") << "\n";
  out << "costs in [" << to_string(sys.min_cost()) << ", " << to_string(sys.max_cost())
      << "]): " << (costs_ok ? "pass" : "FAIL") << "\n";
  out << "inputs grouped by source SCC: ";
  if (report.grouping.ok) {
    out << "pass\n";
  } else {
    out << "FAIL, u" << report.grouping.input + 1 << " links x" << report.grouping.state_a + 1 << " and x"
        << report.grouping.state_b + 1 << "\n";
  }
  out << "source SCCs: " << report.source_count << "\n";
  return out.str();
}

std::string render_tu(const AugmentedIncidence& matrix, const TuVerdict& verdict, std::string_view which,
                      ReportFormat format) {
  const char* method = verdict.method == TuMethod::Exhaustive ? "exhaustive" : "ghouila-houri";
  if (format == ReportFormat::Machine) {
    ordered_json out;
    out["matrix"] = which;
    out["rows"] = matrix.matrix.rows();
    out["cols"] = matrix.matrix.cols();
    out["method"] = method;
    out["is_tu"] = verdict.is_tu;
    if (verdict.witness) {
      ordered_json rows = ordered_json::array();
      ordered_json cols = ordered_json::array();
      for (auto r : verdict.witness->rows) rows.push_back(r + 1);
      for (auto c : verdict.witness->cols) cols.push_back(c + 1);
      out["witness"] = {{"rows", rows}, {"cols", cols}, {"determinant", verdict.witness->determinant}};
    }
    ordered_json data = ordered_json::array();
    for (std::size_t i = 0; i < matrix.matrix.rows(); ++i) {
      auto row = matrix.matrix.row(i);
      data.push_back(std::vector<std::int64_t>(row.begin(), row.end()));
    }
    out["row_labels"] = matrix.row_labels;
    out["col_labels"] = matrix.col_labels;
    out["data"] = std::move(data);
    return out.dump(2) + "\n";
  }
  std::ostringstream out;
  out << dump_matrix(matrix);
  out << "method " << method << "\n";
  out << "verdict " << (verdict.is_tu ? "TU" : "NOT TU") << "\n";
  if (verdict.witness) {
    out << "witness rows";
    for (auto r : verdict.witness->rows) out << " " << r + 1;
    out << " cols";
    for (auto c : verdict.witness->cols) out << " " << c + 1;
    out << " det " << verdict.witness->determinant << "\n";
  }
  return out.str();
}

}  // namespace ctrlsel

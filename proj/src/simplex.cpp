#include "ctrlsel/simplex.hpp"

#include <stdexcept>

namespace ctrlsel {

const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

namespace {

constexpr std::size_t none = static_cast<std::size_t>(-1);

class Solver {
 public:
  Solver(const IlpModel& model, const SimplexOptions& options) : model_(model), options_(options) { setup(); }

  LpOutcome run();

 private:
  enum class Phase { One, Two };
  enum class Step { Moved, Optimal, Unbounded };

  Rational& cell(std::size_t i, std::size_t j) { return tab_[i * ncols_ + j]; }
  const Rational& cell(std::size_t i, std::size_t j) const { return tab_[i * ncols_ + j]; }

  Rational nonbasic_value(std::size_t j) const { return at_upper_[j] ? upper_[j] : Rational(0); }

  std::size_t add_column(ExtColumn col, bool bounded, Rational up);
  void setup();
  Step step();
  void pivot(std::size_t r, std::size_t j);
  void drive_out_artificials();
  Rational current_cost() const;

  const IlpModel& model_;
  SimplexOptions options_;

  std::size_t m_ = 0;
  std::size_t ncols_ = 0;
  std::vector<ExtColumn> cols_;
  std::vector<bool> has_upper_;
  std::vector<Rational> upper_;
  std::vector<bool> at_upper_;
  std::vector<bool> excluded_;
  std::vector<Rational> cost_;
  std::vector<int> row_sign_;
  std::vector<std::size_t> initial_basic_;
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> row_of_;  // per column: basis row or none
  std::vector<Rational> beta_;
  std::vector<Rational> tab_;

  std::size_t pivots_ = 0;
  std::size_t bland_pivots_ = 0;
  std::size_t degenerate_run_ = 0;
};

std::size_t Solver::add_column(ExtColumn col, bool bounded, Rational up) {
  cols_.push_back(col);
  has_upper_.push_back(bounded);
  upper_.push_back(std::move(up));
  at_upper_.push_back(false);
  excluded_.push_back(false);
  return cols_.size() - 1;
}

void Solver::setup() {
  m_ = model_.row_count();
  const std::size_t n = model_.column_count();
  for (std::size_t j = 0; j < n; ++j) add_column({ExtColumn::Kind::Structural, j}, true, model_.upper[j]);

  // Structurals start at their lower bound 0, so the residual of row i is rhs_i.
  std::vector<std::size_t> slack_of(m_, none);
  for (std::size_t i = 0; i < m_; ++i) {
    if (model_.rows[i].sense == Sense::LessEqual) slack_of[i] = add_column({ExtColumn::Kind::Slack, i}, false, 0);
  }
  row_sign_.assign(m_, 1);
  initial_basic_.assign(m_, none);
  for (std::size_t i = 0; i < m_; ++i) {
    const ModelRow& row = model_.rows[i];
    if (row.sense == Sense::LessEqual && row.rhs >= 0) {
      initial_basic_[i] = slack_of[i];
      continue;
    }
    row_sign_[i] = row.rhs < 0 ? -1 : 1;
    initial_basic_[i] = add_column({ExtColumn::Kind::Artificial, i}, false, 0);
  }

  ncols_ = cols_.size();
  tab_.assign(m_ * ncols_, Rational(0));
  beta_.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    const ModelRow& row = model_.rows[i];
    const int sign = row_sign_[i];
    for (auto [c, v] : row.terms) cell(i, c) = sign * v;
    if (slack_of[i] != none) cell(i, slack_of[i]) = sign;
    cell(i, initial_basic_[i]) = 1;
    beta_[i] = sign * row.rhs;
  }
  basic_ = initial_basic_;
  row_of_.assign(ncols_, none);
  for (std::size_t i = 0; i < m_; ++i) row_of_[basic_[i]] = i;
}

void Solver::pivot(std::size_t r, std::size_t j) {
  Rational inv = 1 / cell(r, j);
  for (std::size_t c = 0; c < ncols_; ++c) {
    if (cell(r, c) != 0) cell(r, c) *= inv;
  }
  for (std::size_t i = 0; i < m_; ++i) {
    if (i == r || cell(i, j) == 0) continue;
    Rational factor = cell(i, j);
    for (std::size_t c = 0; c < ncols_; ++c) {
      if (cell(r, c) != 0) cell(i, c) -= factor * cell(r, c);
    }
  }
  row_of_[basic_[r]] = none;
  basic_[r] = j;
  row_of_[j] = r;
  ++pivots_;
}

Solver::Step Solver::step() {
  const bool bland = options_.bland_only || degenerate_run_ >= options_.degenerate_limit;

  // Pricing.
  std::size_t entering = none;
  int direction = 0;
  Rational best = 0;
  for (std::size_t j = 0; j < ncols_; ++j) {
    if (row_of_[j] != none || excluded_[j]) continue;
    Rational d = cost_[j];
    for (std::size_t i = 0; i < m_; ++i) {
      if (cost_[basic_[i]] != 0 && cell(i, j) != 0) d -= cost_[basic_[i]] * cell(i, j);
    }
    int dir = 0;
    if (!at_upper_[j] && d < 0 && (!has_upper_[j] || upper_[j] > 0)) dir = 1;
    if (at_upper_[j] && d > 0) dir = -1;
    if (dir == 0) continue;
    Rational gain = abs(d);
    if (entering == none || (!bland && gain > best)) {
      entering = j;
      direction = dir;
      best = gain;
      if (bland) break;
    }
  }
  if (entering == none) return Step::Optimal;

  // Ratio test; ties go to the smallest column index.
  std::optional<Rational> step_len;
  std::size_t leave_row = none;
  bool leave_to_upper = false;
  if (has_upper_[entering]) step_len = upper_[entering];
  for (std::size_t i = 0; i < m_; ++i) {
    const Rational& a = cell(i, entering);
    if (a == 0) continue;
    Rational alpha = direction * a;
    std::size_t b = basic_[i];
    std::optional<Rational> limit;
    bool to_upper = false;
    if (alpha > 0) {
      limit = beta_[i] / alpha;
    } else if (has_upper_[b]) {
      limit = (upper_[b] - beta_[i]) / -alpha;
      to_upper = true;
    }
    if (!limit) continue;
    bool better = !step_len || *limit < *step_len ||
                  (*limit == *step_len && leave_row != none && b < basic_[leave_row]);
    if (better) {
      step_len = limit;
      leave_row = i;
      leave_to_upper = to_upper;
    }
  }
  if (!step_len) return Step::Unbounded;

  const Rational& t = *step_len;
  if (t == 0) {
    ++degenerate_run_;
  } else {
    degenerate_run_ = 0;
  }
  if (bland) ++bland_pivots_;

  Rational entering_value = nonbasic_value(entering) + direction * t;
  if (t != 0) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (cell(i, entering) != 0) beta_[i] -= direction * t * cell(i, entering);
    }
  }
  if (leave_row == none) {
    at_upper_[entering] = !at_upper_[entering];
    return Step::Moved;
  }
  std::size_t leaving = basic_[leave_row];
  at_upper_[leaving] = leave_to_upper;
  pivot(leave_row, entering);
  beta_[leave_row] = entering_value;
  at_upper_[entering] = false;
  return Step::Moved;
}

Rational Solver::current_cost() const {
  Rational total = 0;
  for (std::size_t i = 0; i < m_; ++i) total += cost_[basic_[i]] * beta_[i];
  for (std::size_t j = 0; j < ncols_; ++j) {
    if (row_of_[j] == none && at_upper_[j]) total += cost_[j] * upper_[j];
  }
  return total;
}

void Solver::drive_out_artificials() {
  for (std::size_t r = 0; r < m_; ++r) {
    if (cols_[basic_[r]].kind != ExtColumn::Kind::Artificial) continue;
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (row_of_[j] != none || excluded_[j] || cell(r, j) == 0) continue;
      // Degenerate exchange: the artificial sits at 0, so every value is unchanged.
      Rational value = nonbasic_value(j);
      at_upper_[basic_[r]] = false;
      pivot(r, j);
      beta_[r] = value;
      at_upper_[j] = false;
      break;
    }
  }
}

LpOutcome Solver::run() {
  LpOutcome out;

  cost_.assign(ncols_, Rational(0));
  bool any_artificial = false;
  for (std::size_t j = 0; j < ncols_; ++j) {
    if (cols_[j].kind == ExtColumn::Kind::Artificial) {
      cost_[j] = 1;
      any_artificial = true;
    }
  }
  if (any_artificial) {
    Step s;
    while ((s = step()) == Step::Moved) {
    }
    if (current_cost() != 0) {
      out.status = LpStatus::Infeasible;
      out.pivots = pivots_;
      out.bland_pivots = bland_pivots_;
      return out;
    }
  }

  for (std::size_t j = 0; j < ncols_; ++j) {
    if (cols_[j].kind == ExtColumn::Kind::Artificial) {
      excluded_[j] = true;
      has_upper_[j] = true;
      upper_[j] = 0;
    }
  }
  drive_out_artificials();

  cost_.assign(ncols_, Rational(0));
  for (std::size_t j = 0; j < model_.column_count(); ++j) cost_[j] = model_.objective[j];
  degenerate_run_ = 0;
  Step s;
  while ((s = step()) == Step::Moved) {
  }
  out.pivots = pivots_;
  out.bland_pivots = bland_pivots_;
  if (s == Step::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  out.status = LpStatus::Optimal;
  const std::size_t n = model_.column_count();
  out.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.x[j] = row_of_[j] != none ? beta_[row_of_[j]] : nonbasic_value(j);
  }
  out.objective = model_.evaluate(out.x);

  out.basis.columns = cols_;
  out.basis.basic = basic_;
  out.basis.at_upper = at_upper_;
  out.basis.basic_values = beta_;

  // Columns of the initial identity basis hold B^{-1}.
  out.row_duals.assign(m_, Rational(0));
  for (std::size_t i = 0; i < m_; ++i) {
    Rational y = 0;
    for (std::size_t k = 0; k < m_; ++k) {
      if (cost_[basic_[k]] != 0) y += cost_[basic_[k]] * cell(k, initial_basic_[i]);
    }
    out.row_duals[i] = row_sign_[i] * y;
  }
  Rational dual = model_.offset;
  for (std::size_t i = 0; i < m_; ++i) dual += model_.rows[i].rhs * out.row_duals[i];
  std::vector<Rational> reduced(model_.objective);
  for (std::size_t i = 0; i < m_; ++i) {
    for (auto [c, v] : model_.rows[i].terms) reduced[c] -= v * out.row_duals[i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (reduced[j] < 0) dual += model_.upper[j] * reduced[j];
  }
  out.dual_objective = dual;
  return out;
}

/// Dense exact Gaussian elimination; returns nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[k]);
    std::swap(b[p], b[k]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Rational f = a[i][k] / a[k][k];
      for (std::size_t c = k; c < n; ++c) a[i][c] -= f * a[k][c];
      b[i] -= f * b[k];
    }
  }
  for (std::size_t k = 0; k < n; ++k) b[k] /= a[k][k];
  return b;
}

}  // namespace

LpOutcome solve_lp(const IlpModel& model, const SimplexOptions& options) {
  if (model.integral) throw std::invalid_argument("solve_lp expects a relaxed model");
  Solver solver(model, options);
  return solver.run();
}

IntegralityCheck assert_integral(const LpOutcome& outcome) {
  for (std::size_t j = 0; j < outcome.x.size(); ++j) {
    if (outcome.x[j] != 0 && outcome.x[j] != 1) return {false, j};
  }
  return {};
}

bool is_feasible_point(const IlpModel& model, const std::vector<Rational>& x) {
  if (x.size() != model.column_count()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < 0 || x[j] > model.upper[j]) return false;
  }
  for (const auto& row : model.rows) {
    Rational lhs = 0;
    for (auto [c, v] : row.terms) lhs += v * x[c];
    if (row.sense == Sense::Equal ? lhs != row.rhs : lhs > row.rhs) return false;
  }
  return true;
}

bool verify_basis(const IlpModel& model, const LpOutcome& outcome) {
  if (outcome.status != LpStatus::Optimal) return false;
  const std::size_t m = model.row_count();
  const auto& basis = outcome.basis;
  if (basis.basic.size() != m) return false;

  auto column_entry = [&](const ExtColumn& col, std::size_t row) -> Rational {
    switch (col.kind) {
      case ExtColumn::Kind::Structural:
        for (auto [c, v] : model.rows[row].terms) {
          if (c == col.index) return v;
        }
        return 0;
      case ExtColumn::Kind::Slack:
      case ExtColumn::Kind::Artificial:
        return col.index == row ? 1 : 0;
    }
    return 0;
  };

  std::vector<bool> is_basic(basis.columns.size(), false);
  for (std::size_t b : basis.basic) is_basic[b] = true;

  // Right-hand side after moving nonbasic structurals at their upper bound.
  std::vector<Rational> rhs(m);
  for (std::size_t i = 0; i < m; ++i) rhs[i] = model.rows[i].rhs;
  for (std::size_t k = 0; k < basis.columns.size(); ++k) {
    const ExtColumn& col = basis.columns[k];
    if (is_basic[k] || !basis.at_upper[k] || col.kind != ExtColumn::Kind::Structural) continue;
    for (std::size_t i = 0; i < m; ++i) rhs[i] -= column_entry(col, i) * model.upper[col.index];
  }
  std::vector<std::vector<Rational>> mat(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < m; ++p) mat[i][p] = column_entry(basis.columns[basis.basic[p]], i);
  }
  auto values = solve_square(std::move(mat), std::move(rhs));
  if (!values) return false;
  for (std::size_t p = 0; p < m; ++p) {
    const ExtColumn& col = basis.columns[basis.basic[p]];
    const Rational& v = (*values)[p];
    if (v != basis.basic_values[p]) return false;
    if (col.kind == ExtColumn::Kind::Structural && outcome.x[col.index] != v) return false;
    if (col.kind == ExtColumn::Kind::Artificial && v != 0) return false;
  }
  for (std::size_t k = 0; k < basis.columns.size(); ++k) {
    const ExtColumn& col = basis.columns[k];
    if (is_basic[k] || col.kind != ExtColumn::Kind::Structural) continue;
    Rational expect = basis.at_upper[k] ? model.upper[col.index] : Rational(0);
    if (outcome.x[col.index] != expect) return false;
  }
  return true;
}

bool verify_dual_certificate(const IlpModel& model, const LpOutcome& outcome) {
  if (outcome.status != LpStatus::Optimal || outcome.row_duals.size() != model.row_count()) return false;
  Rational dual = model.offset;
  std::vector<Rational> reduced(model.objective);
  for (std::size_t i = 0; i < model.row_count(); ++i) {
    const Rational& y = outcome.row_duals[i];
    if (model.rows[i].sense == Sense::LessEqual && y > 0) return false;
    dual += model.rows[i].rhs * y;
    for (auto [c, v] : model.rows[i].terms) reduced[c] -= v * y;
  }
  // Bound multiplier w_j = max(0, -reduced_j) makes every column dual feasible.
  for (std::size_t j = 0; j < reduced.size(); ++j) {
    if (reduced[j] < 0) dual += model.upper[j] * reduced[j];
  }
  return dual == outcome.objective && dual == outcome.dual_objective;
}

}  // namespace ctrlsel

#include "ctrlsel/tu.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <sstream>

#include "ctrlsel/error.hpp"

namespace ctrlsel {

namespace {

void require_grouping(const StructuredSystem& sys, const SccDecomposition& scc, GroupingMode mode) {
  if (mode == GroupingMode::Lenient) return;
  GroupingCheck check = check_assumption_grouped(sys, scc);
  if (!check.ok) {
    throw Error(Errc::GroupingViolation, "input u" + std::to_string(check.input + 1) + " links x" +
                                             std::to_string(check.state_a + 1) + " and x" +
                                             std::to_string(check.state_b + 1) + " in different groups");
  }
}

}  // namespace

AugmentedIncidence build_incidence_m(const SystemBipartite& bg, const SccDecomposition& scc,
                                     const StructuredSystem& sys, GroupingMode mode) {
  require_grouping(sys, scc, mode);
  const auto n = static_cast<std::size_t>(bg.n);
  const auto n_v = n + static_cast<std::size_t>(bg.right_count());
  const auto r = static_cast<std::size_t>(scc.source_count);
  const std::size_t n_e = bg.edges.size();

  AugmentedIncidence out;
  out.matrix = IntMatrix(n_v + r, n_e + r);
  for (std::size_t v = 0; v < n; ++v) out.row_labels.push_back(left_label(static_cast<int>(v)));
  for (int w = 0; w < bg.right_count(); ++w) out.row_labels.push_back(right_label(bg, w));
  for (std::size_t i = 0; i < r; ++i) out.row_labels.push_back("reach" + std::to_string(i + 1));
  for (std::size_t e = 0; e < n_e; ++e) out.col_labels.push_back(edge_label(bg, e));
  for (std::size_t i = 0; i < r; ++i) out.col_labels.push_back("slack" + std::to_string(i + 1));

  for (std::size_t e = 0; e < n_e; ++e) {
    const auto& edge = bg.edges[e];
    out.matrix(static_cast<std::size_t>(edge.left), e) = 1;
    out.matrix(n + static_cast<std::size_t>(edge.right), e) = 1;
    if (edge.kind == EdgeKind::Input) {
      int c = scc.component_of[static_cast<std::size_t>(edge.left)];
      if (scc.is_source(c)) out.matrix(n_v + static_cast<std::size_t>(c), e) = -1;
    }
  }
  for (std::size_t i = 0; i < r; ++i) out.matrix(n_v + i, n_e + i) = 1;
  return out;
}

AugmentedIncidence build_incidence_m_hat(const SystemBipartite& bg, const SccDecomposition& scc,
                                         const StructuredSystem& sys, GroupingMode mode) {
  AugmentedIncidence base = build_incidence_m(bg, scc, sys, mode);
  IntMatrix extra(1, base.matrix.cols());
  const std::size_t n_e = bg.edges.size();
  for (std::size_t e = bg.state_edge_count; e < n_e; ++e) extra(0, e) = 1;
  for (std::size_t j = n_e; j < base.matrix.cols(); ++j) extra(0, j) = -1;
  base.matrix.append_rows(extra);
  base.row_labels.push_back("card");
  return base;
}

AugmentedIncidence build_standard_form_matrix(const IlpModel& model) {
  StandardForm sf = standard_form(model);
  return {std::move(sf.matrix), std::move(sf.row_labels), model.column_labels};
}

namespace {

/// Next bitmask with the same popcount (Gosper's hack).
std::uint64_t next_combination(std::uint64_t x) {
  std::uint64_t c = x & (~x + 1);
  std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

std::vector<std::size_t> bits_of(std::uint64_t mask) {
  std::vector<std::size_t> out;
  while (mask != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

std::optional<TuWitness> entry_witness(const IntMatrix& mat) {
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    for (std::size_t j = 0; j < mat.cols(); ++j) {
      if (std::abs(mat(i, j)) > 1) return TuWitness{{i}, {j}, mat(i, j)};
    }
  }
  return std::nullopt;
}

/// Exhaustive search over `oriented`, whose column count is the small side.
TuVerdict exhaustive_oriented(const IntMatrix& oriented, bool transposed) {
  TuVerdict verdict;
  verdict.method = TuMethod::Exhaustive;
  const std::size_t h = oriented.rows();
  const std::size_t w = oriented.cols();

  auto finish = [&](std::vector<std::size_t> rows, std::vector<std::size_t> cols, std::int64_t det) {
    verdict.is_tu = false;
    if (transposed) std::swap(rows, cols);
    verdict.witness = TuWitness{std::move(rows), std::move(cols), det};
    return verdict;
  };

  if (auto bad = entry_witness(oriented)) return finish(bad->rows, bad->cols, bad->determinant);

  // Per row: bitmask of its nonzero columns.
  std::vector<std::uint64_t> row_mask(h, 0);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      if (oriented(i, j) != 0) row_mask[i] |= std::uint64_t{1} << j;
    }
  }

  std::vector<std::size_t> candidates;
  std::vector<std::size_t> chosen;
  for (std::size_t k = 2; k <= std::min(h, w); ++k) {
    const std::uint64_t limit = std::uint64_t{1} << w;
    for (std::uint64_t cmask = (std::uint64_t{1} << k) - 1; cmask < limit; cmask = next_combination(cmask)) {
      candidates.clear();
      for (std::size_t i = 0; i < h; ++i) {
        if (std::popcount(row_mask[i] & cmask) >= 2) candidates.push_back(i);
      }
      if (candidates.size() < k) continue;
      std::vector<std::size_t> cols = bits_of(cmask);
      bool columns_dense = std::all_of(cols.begin(), cols.end(), [&](std::size_t c) {
        int count = 0;
        for (std::size_t i : candidates) count += oriented(i, c) != 0 ? 1 : 0;
        return count >= 2;
      });
      if (!columns_dense) continue;

      // k-subsets of candidate rows in lexicographic order.
      std::vector<std::size_t> pick(k);
      for (std::size_t t = 0; t < k; ++t) pick[t] = t;
      while (true) {
        chosen.clear();
        for (std::size_t t : pick) chosen.push_back(candidates[t]);
        bool reducible = std::any_of(cols.begin(), cols.end(), [&](std::size_t c) {
          int count = 0;
          for (std::size_t i : chosen) count += oriented(i, c) != 0 ? 1 : 0;
          return count < 2;
        });
        if (!reducible) {
          ++verdict.submatrices_checked;
          std::int64_t det = bareiss_determinant(oriented.submatrix(chosen, cols));
          if (det < -1 || det > 1) return finish(chosen, cols, det);
        }
        std::size_t t = k;
        while (t > 0 && pick[t - 1] == candidates.size() - k + t - 1) --t;
        if (t == 0) break;
        ++pick[t - 1];
        for (std::size_t s = t; s < k; ++s) pick[s] = pick[s - 1] + 1;
      }
    }
  }
  return verdict;
}

}  // namespace

TuVerdict tu_exhaustive(const IntMatrix& mat) {
  const std::size_t small = std::min(mat.rows(), mat.cols());
  if (small > exhaustive_limit) {
    throw Error(Errc::TooLarge, "exhaustive TU check supports min(rows, cols) <= " +
                                    std::to_string(exhaustive_limit) + ", got " + std::to_string(small));
  }
  if (mat.cols() <= mat.rows()) return exhaustive_oriented(mat, false);
  return exhaustive_oriented(mat.transposed(), true);
}

namespace {

/// Searches a signing of `rows` (sparse) whose column sums stay in {-1,0,1}.
class SigningSearch {
 public:
  SigningSearch(const IntMatrix& mat) : mat_(mat), sums_(mat.cols(), 0), remaining_(mat.cols(), 0) {}

  bool signable(const std::vector<std::size_t>& rows) {
    rows_ = &rows;
    std::fill(sums_.begin(), sums_.end(), 0);
    std::fill(remaining_.begin(), remaining_.end(), 0);
    for (std::size_t i : rows) {
      for (std::size_t c = 0; c < mat_.cols(); ++c) remaining_[c] += mat_(i, c) != 0 ? 1 : 0;
    }
    return assign(0);
  }

 private:
  bool assign(std::size_t pos) {
    if (pos == rows_->size()) return true;
    const std::size_t row = (*rows_)[pos];
    // The first row's sign is free by symmetry.
    const int signs[2] = {1, -1};
    const int tries = pos == 0 ? 1 : 2;
    for (int t = 0; t < tries; ++t) {
      const int s = signs[t];
      bool ok = true;
      for (std::size_t c = 0; c < mat_.cols(); ++c) {
        std::int64_t a = mat_(row, c);
        if (a == 0) continue;
        sums_[c] += s * a;
        --remaining_[c];
        if (std::abs(sums_[c]) > 1 + remaining_[c]) ok = false;
      }
      if (ok && assign(pos + 1)) return true;
      for (std::size_t c = 0; c < mat_.cols(); ++c) {
        std::int64_t a = mat_(row, c);
        if (a == 0) continue;
        sums_[c] -= s * a;
        ++remaining_[c];
      }
    }
    return false;
  }

  const IntMatrix& mat_;
  const std::vector<std::size_t>* rows_ = nullptr;
  std::vector<std::int64_t> sums_;
  std::vector<std::int64_t> remaining_;
};

}  // namespace

TuVerdict tu_ghouila_houri(const IntMatrix& mat) {
  const bool transposed = mat.rows() > mat.cols();
  const IntMatrix oriented = transposed ? mat.transposed() : mat;
  const std::size_t p = oriented.rows();
  if (p > ghouila_houri_limit) {
    throw Error(Errc::TooLarge, "Ghouila-Houri check supports min(rows, cols) <= " +
                                    std::to_string(ghouila_houri_limit) + ", got " + std::to_string(p));
  }
  TuVerdict verdict;
  verdict.method = TuMethod::GhouilaHouri;
  if (auto bad = entry_witness(mat)) {
    verdict.is_tu = false;
    verdict.witness = bad;
    return verdict;
  }

  SigningSearch search(oriented);
  std::vector<std::size_t> rows;
  // Subsets by increasing size, so the first failure is inclusion-minimal.
  for (std::size_t s = 1; s <= p; ++s) {
    const std::uint64_t limit = std::uint64_t{1} << p;
    for (std::uint64_t mask = (std::uint64_t{1} << s) - 1; mask < limit; mask = next_combination(mask)) {
      rows = bits_of(mask);
      ++verdict.submatrices_checked;
      if (search.signable(rows)) continue;

      // No signing for these rows, so the row-restricted matrix is not TU.
      std::vector<std::size_t> all_cols(oriented.cols());
      for (std::size_t c = 0; c < all_cols.size(); ++c) all_cols[c] = c;
      TuVerdict inner = tu_exhaustive(oriented.submatrix(rows, all_cols));
      verdict.is_tu = false;
      if (inner.witness) {
        TuWitness w = *inner.witness;
        for (auto& i : w.rows) i = rows[i];
        if (transposed) std::swap(w.rows, w.cols);
        verdict.witness = std::move(w);
      }
      return verdict;
    }
  }
  return verdict;
}

std::string dump_matrix(const AugmentedIncidence& m) {
  std::ostringstream out;
  out << "rows " << m.matrix.rows() << " cols " << m.matrix.cols() << "\n";
  out << "row_labels";
  for (const auto& l : m.row_labels) out << " " << l;
  out << "\ncol_labels";
  for (const auto& l : m.col_labels) out << " " << l;
  out << "\n";
  for (std::size_t i = 0; i < m.matrix.rows(); ++i) {
    for (std::size_t j = 0; j < m.matrix.cols(); ++j) out << (j ? " " : "") << m.matrix(i, j);
    out << "\n";
  }
  return out.str();
}

}  // namespace ctrlsel

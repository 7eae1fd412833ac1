#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctrlsel/graph.hpp"
#include "ctrlsel/int_matrix.hpp"
#include "ctrlsel/model.hpp"

namespace ctrlsel {

/// A {0,+-1} matrix with row and column labels.
struct AugmentedIncidence {
  IntMatrix matrix;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
};

enum class GroupingMode { Strict, Lenient };

/// Augmented incidence matrix of B(A,B): rows X_L, X_R, U, then one row per
/// source SCC; columns are edges in canonical order, then one slack column per
/// source SCC. In strict mode an input linked into more than one group raises
/// Errc::GroupingViolation.
AugmentedIncidence build_incidence_m(const SystemBipartite& bg, const SccDecomposition& scc,
                                     const StructuredSystem& sys, GroupingMode mode = GroupingMode::Strict);

/// M plus a final cardinality row: 1 on input-link columns, -1 on slack columns.
AugmentedIncidence build_incidence_m_hat(const SystemBipartite& bg, const SccDecomposition& scc,
                                         const StructuredSystem& sys, GroupingMode mode = GroupingMode::Strict);

/// The full inequality-form constraint matrix of a relaxed model ([M; -M_XL; I]
/// for p1/p2, the M-hat analogue for p3).
AugmentedIncidence build_standard_form_matrix(const IlpModel& model);

enum class TuMethod { Exhaustive, GhouilaHouri };

struct TuWitness {
  std::vector<std::size_t> rows;  // 0-based
  std::vector<std::size_t> cols;  // 0-based
  std::int64_t determinant = 0;
};

struct TuVerdict {
  bool is_tu = true;
  std::optional<TuWitness> witness;
  TuMethod method = TuMethod::Exhaustive;
  std::size_t submatrices_checked = 0;
};

inline constexpr std::size_t exhaustive_limit = 14;
inline constexpr std::size_t ghouila_houri_limit = 22;

/// Every square submatrix, by Bareiss determinant. Submatrices with a row or
/// column holding at most one nonzero expand to a smaller minor and are
/// skipped; the smaller minor is checked on its own. Requires
/// min(rows, cols) <= exhaustive_limit, else Errc::TooLarge. Entries outside
/// {0,+-1} refute immediately with a 1x1 witness.
TuVerdict tu_exhaustive(const IntMatrix& mat);

/// Ghouila-Houri: every subset of rows (of the smaller side, by transposition)
/// admits a +-1 signing whose signed sums lie in {-1,0,1}. Requires
/// min(rows, cols) <= ghouila_houri_limit. A refuted subset is turned into a
/// determinant witness by exhaustive search inside it.
TuVerdict tu_ghouila_houri(const IntMatrix& mat);

/// "rows"/"cols" header lines, then one row of space-separated entries per line.
std::string dump_matrix(const AugmentedIncidence& m);

}  // namespace ctrlsel

#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctrlsel/rational.hpp"

namespace ctrlsel {

/// A (row, col) position in a structured matrix. 0-based; the instance file
/// and the CLI reports use 1-based indices.
struct Entry {
  int row = 0;
  int col = 0;

  auto operator<=>(const Entry&) const = default;
};

/// A nonzero of B: input u_col actuates state x_row at the given cost.
struct InputLink {
  Entry entry;
  Rational cost;

  bool operator==(const InputLink&) const = default;
};

/// Selection over the links of a system, indexed like b_pattern().
using LinkMask = std::vector<bool>;

/// Sparsity patterns of A (n x n) and B (n x m) with a non-negative rational
/// cost per input link. Patterns are stored sorted by (row, col), which is the
/// canonical edge order used by every matrix built downstream.
class StructuredSystem {
 public:
  StructuredSystem() = default;

  /// Validates ranges, duplicates and costs; throws Error(Errc::InvalidSystem).
  StructuredSystem(int n, int m, std::vector<Entry> a_pattern, std::vector<InputLink> b_pattern,
                   std::string name = {});

  int states() const { return n_; }
  int inputs() const { return m_; }
  const std::string& name() const { return name_; }

  std::span<const Entry> a_pattern() const { return a_; }
  std::span<const InputLink> b_pattern() const { return b_; }
  std::size_t link_count() const { return b_.size(); }

  std::optional<std::size_t> link_index(Entry e) const;

  /// Zero when B is empty.
  Rational min_cost() const;
  Rational max_cost() const;

  LinkMask all_links() const { return LinkMask(b_.size(), true); }
  LinkMask no_links() const { return LinkMask(b_.size(), false); }
  Rational cost_of(const LinkMask& mask) const;

  /// Copy with every link cost replaced by `cost`.
  StructuredSystem with_uniform_cost(const Rational& cost) const;

  bool operator==(const StructuredSystem& other) const = default;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<Entry> a_;
  std::vector<InputLink> b_;
  std::string name_;
};

}  // namespace ctrlsel

#include "ctrlsel/system.hpp"

#include <algorithm>

#include "ctrlsel/error.hpp"

namespace ctrlsel {

namespace {

std::string one_based(Entry e) {
  return "(" + std::to_string(e.row + 1) + "," + std::to_string(e.col + 1) + ")";
}

}  // namespace

StructuredSystem::StructuredSystem(int n, int m, std::vector<Entry> a_pattern,
                                   std::vector<InputLink> b_pattern, std::string name)
    : n_(n), m_(m), a_(std::move(a_pattern)), b_(std::move(b_pattern)), name_(std::move(name)) {
  if (n_ < 1) throw Error(Errc::InvalidSystem, "state dimension must be at least 1");
  if (m_ < 0) throw Error(Errc::InvalidSystem, "input dimension must be non-negative");
  for (const Entry& e : a_) {
    if (e.row < 0 || e.row >= n_ || e.col < 0 || e.col >= n_) {
      throw Error(Errc::InvalidSystem, "A entry " + one_based(e) + " out of range");
    }
  }
  for (InputLink& link : b_) {
    link.cost.canonicalize();
    if (link.entry.row < 0 || link.entry.row >= n_ || link.entry.col < 0 || link.entry.col >= m_) {
      throw Error(Errc::InvalidSystem, "B entry " + one_based(link.entry) + " out of range");
    }
    if (link.cost < 0) {
      throw Error(Errc::InvalidSystem, "B entry " + one_based(link.entry) + " has negative cost");
    }
  }
  std::sort(a_.begin(), a_.end());
  if (auto dup = std::adjacent_find(a_.begin(), a_.end()); dup != a_.end()) {
    throw Error(Errc::InvalidSystem, "duplicate A entry " + one_based(*dup));
  }
  std::sort(b_.begin(), b_.end(),
            [](const InputLink& x, const InputLink& y) { return x.entry < y.entry; });
  auto same_entry = [](const InputLink& x, const InputLink& y) { return x.entry == y.entry; };
  if (auto dup = std::adjacent_find(b_.begin(), b_.end(), same_entry); dup != b_.end()) {
    throw Error(Errc::InvalidSystem, "duplicate B entry " + one_based(dup->entry));
  }
}

std::optional<std::size_t> StructuredSystem::link_index(Entry e) const {
  auto it = std::lower_bound(b_.begin(), b_.end(), e,
                             [](const InputLink& link, Entry key) { return link.entry < key; });
  if (it == b_.end() || it->entry != e) return std::nullopt;
  return static_cast<std::size_t>(it - b_.begin());
}

Rational StructuredSystem::min_cost() const {
  if (b_.empty()) return 0;
  Rational best = b_.front().cost;
  for (const InputLink& link : b_) best = std::min(best, link.cost);
  return best;
}

Rational StructuredSystem::max_cost() const {
  Rational best = 0;
  for (const InputLink& link : b_) best = std::max(best, link.cost);
  return best;
}

Rational StructuredSystem::cost_of(const LinkMask& mask) const {
  Rational total = 0;
  for (std::size_t i = 0; i < b_.size(); ++i) {
    if (mask[i]) total += b_[i].cost;
  }
  return total;
}

StructuredSystem StructuredSystem::with_uniform_cost(const Rational& cost) const {
  StructuredSystem copy = *this;
  for (InputLink& link : copy.b_) {
    link.cost = cost;
    link.cost.canonicalize();
  }
  return copy;
}

}  // namespace ctrlsel

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace apery {

/// A set of naturals that contains every n >= tail().
///
/// The tail is kept minimal, so two sets compare equal exactly when they have
/// the same members.
class ValueSet {
 public:
  ValueSet() = default;
  /// below[n] says whether n < tail is a member; every n >= tail is a member.
  ValueSet(std::vector<bool> below, std::size_t tail);
  static ValueSet from_members(std::span<const std::size_t> members, std::size_t tail);

  bool contains(std::size_t n) const { return n >= tail_ || below_[n]; }
  /// Least T with [T, inf) contained in the set.
  std::size_t tail() const { return tail_; }
  std::size_t min() const;
  /// Members strictly below `bound`, ascending.
  std::vector<std::size_t> members_below(std::size_t bound) const;
  /// Naturals not in the set, ascending.
  std::vector<std::size_t> gaps() const;

  /// Least member congruent to j mod e, for j = 0..e-1.
  std::vector<std::size_t> apery(std::size_t e) const;

  /// {k + n : n in V}.
  ValueSet shifted_up(std::size_t k) const;
  /// {n : n + k in V}.
  ValueSet shifted_down(std::size_t k) const;

  friend ValueSet set_union(const ValueSet& a, const ValueSet& b);
  friend ValueSet set_intersection(const ValueSet& a, const ValueSet& b);
  friend bool operator==(const ValueSet& a, const ValueSet& b) = default;
  bool is_subset_of(const ValueSet& other) const;

  /// "{0,6,7,12,...}" with the tail written as "n+".
  std::string to_string() const;

 private:
  std::vector<bool> below_;
  std::size_t tail_ = 0;
};

}  // namespace apery

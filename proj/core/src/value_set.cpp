#include "apery/value_set.hpp"

#include <algorithm>
#include <limits>

#include "apery/field.hpp"

namespace apery {

ValueSet::ValueSet(std::vector<bool> below, std::size_t tail) : below_(std::move(below)), tail_(tail) {
  below_.resize(tail_, false);
  while (tail_ > 0 && below_[tail_ - 1]) --tail_;
  below_.resize(tail_);
}

ValueSet ValueSet::from_members(std::span<const std::size_t> members, std::size_t tail) {
  std::vector<bool> below(tail, false);
  for (std::size_t n : members) {
    if (n < tail) below[n] = true;
  }
  return ValueSet(std::move(below), tail);
}

std::size_t ValueSet::min() const {
  for (std::size_t n = 0; n < tail_; ++n) {
    if (below_[n]) return n;
  }
  return tail_;
}

std::vector<std::size_t> ValueSet::members_below(std::size_t bound) const {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < bound; ++n) {
    if (contains(n)) out.push_back(n);
  }
  return out;
}

std::vector<std::size_t> ValueSet::gaps() const {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < tail_; ++n) {
    if (!below_[n]) out.push_back(n);
  }
  return out;
}

std::vector<std::size_t> ValueSet::apery(std::size_t e) const {
  if (e == 0) throw DefectError("Apery set with respect to 0");
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> out(e, unset);
  std::size_t found = 0;
  for (std::size_t n = 0; found < e; ++n) {
    if (contains(n) && out[n % e] == unset) {
      out[n % e] = n;
      ++found;
    }
  }
  return out;
}

ValueSet ValueSet::shifted_up(std::size_t k) const {
  std::vector<bool> below(tail_ + k, false);
  for (std::size_t n = 0; n < tail_; ++n) below[n + k] = below_[n];
  return ValueSet(std::move(below), tail_ + k);
}

ValueSet ValueSet::shifted_down(std::size_t k) const {
  if (k >= tail_) return ValueSet({}, 0);
  std::vector<bool> below(tail_ - k);
  for (std::size_t n = 0; n + k < tail_; ++n) below[n] = below_[n + k];
  return ValueSet(std::move(below), tail_ - k);
}

ValueSet set_union(const ValueSet& a, const ValueSet& b) {
  const std::size_t tail = std::min(a.tail_, b.tail_);
  std::vector<bool> below(tail);
  for (std::size_t n = 0; n < tail; ++n) below[n] = a.contains(n) || b.contains(n);
  return ValueSet(std::move(below), tail);
}

ValueSet set_intersection(const ValueSet& a, const ValueSet& b) {
  const std::size_t tail = std::max(a.tail_, b.tail_);
  std::vector<bool> below(tail);
  for (std::size_t n = 0; n < tail; ++n) below[n] = a.contains(n) && b.contains(n);
  return ValueSet(std::move(below), tail);
}

bool ValueSet::is_subset_of(const ValueSet& other) const {
  const std::size_t bound = std::max(tail_, other.tail_);
  for (std::size_t n = 0; n < bound; ++n) {
    if (contains(n) && !other.contains(n)) return false;
  }
  return true;
}

std::string ValueSet::to_string() const {
  std::string out = "{";
  for (std::size_t n = 0; n < tail_; ++n) {
    if (below_[n]) out += std::to_string(n) + ",";
  }
  out += std::to_string(tail_) + "+}";
  return out;
}

}  // namespace apery

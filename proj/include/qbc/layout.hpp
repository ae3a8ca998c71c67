#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qbc {

// Ordered leg dimensions of a tensor-product space, plus a grouping of
// contiguous legs into parties (senders or receivers). By default every leg
// is its own party.
class SystemLayout {
 public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<std::size_t> dims);
  SystemLayout(std::vector<std::size_t> dims, std::vector<std::size_t> party_of_leg);

  std::size_t legs() const { return dims_.size(); }
  std::size_t dim(std::size_t leg) const { return dims_.at(leg); }
  std::size_t total_dim() const { return total_; }
  const std::vector<std::size_t>& dims() const { return dims_; }

  std::size_t parties() const { return party_begin_.size(); }
  std::size_t party_of(std::size_t leg) const { return party_of_leg_.at(leg); }
  // Half-open leg range [first, last) of a party.
  std::size_t party_first_leg(std::size_t party) const;
  std::size_t party_last_leg(std::size_t party) const;
  std::size_t party_dim(std::size_t party) const;
  const std::vector<std::size_t>& party_of_leg() const { return party_of_leg_; }

  // Sub-layout of the given legs, in the given order; parties reset to one
  // per leg.
  SystemLayout select(std::span<const std::size_t> legs) const;
  // Legs of `this` followed by legs of `other`; party ids of `other` shifted.
  SystemLayout concat(const SystemLayout& other) const;

  std::string describe() const;

  friend bool operator==(const SystemLayout&, const SystemLayout&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> party_of_leg_;
  std::vector<std::size_t> party_begin_;
  std::size_t total_ = 1;
};

}  // namespace qbc

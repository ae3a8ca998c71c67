#include "qbc/layout.hpp"

#include <sstream>

#include "qbc/errors.hpp"
#include "qbc/types.hpp"

namespace qbc {
namespace {

std::vector<std::size_t> one_party_per_leg(std::size_t legs) {
  std::vector<std::size_t> parties(legs);
  for (std::size_t i = 0; i < legs; ++i) parties[i] = i;
  return parties;
}

}  // namespace

SystemLayout::SystemLayout(std::vector<std::size_t> dims)
    : SystemLayout(dims, one_party_per_leg(dims.size())) {}

SystemLayout::SystemLayout(std::vector<std::size_t> dims,
                           std::vector<std::size_t> party_of_leg)
    : dims_(std::move(dims)), party_of_leg_(std::move(party_of_leg)) {
  if (party_of_leg_.size() != dims_.size()) {
    throw DimensionError("layout: party list length differs from leg count");
  }
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] == 0) throw DimensionError("layout: leg dimension must be >= 1");
    if (total_ > kMaxDimension / dims_[i]) {
      throw CapacityExceeded("layout: total dimension exceeds " +
                             std::to_string(kMaxDimension));
    }
    total_ *= dims_[i];
    const std::size_t party = party_of_leg_[i];
    const std::size_t expected_new = party_begin_.size();
    if (party == expected_new) {
      party_begin_.push_back(i);
    } else if (party_begin_.empty() || party != expected_new - 1) {
      throw DimensionError("layout: parties must be contiguous and numbered in order");
    }
  }
}

std::size_t SystemLayout::party_first_leg(std::size_t party) const {
  return party_begin_.at(party);
}

std::size_t SystemLayout::party_last_leg(std::size_t party) const {
  return party + 1 < party_begin_.size() ? party_begin_[party + 1] : dims_.size();
}

std::size_t SystemLayout::party_dim(std::size_t party) const {
  std::size_t d = 1;
  for (std::size_t leg = party_first_leg(party); leg < party_last_leg(party); ++leg) {
    d *= dims_[leg];
  }
  return d;
}

SystemLayout SystemLayout::select(std::span<const std::size_t> legs) const {
  std::vector<std::size_t> dims;
  dims.reserve(legs.size());
  for (const auto leg : legs) {
    if (leg >= dims_.size()) throw DimensionError("layout: leg index out of range");
    dims.push_back(dims_[leg]);
  }
  return SystemLayout(std::move(dims));
}

SystemLayout SystemLayout::concat(const SystemLayout& other) const {
  std::vector<std::size_t> dims = dims_;
  std::vector<std::size_t> parties = party_of_leg_;
  const std::size_t shift = this->parties();
  for (std::size_t i = 0; i < other.legs(); ++i) {
    dims.push_back(other.dims_[i]);
    parties.push_back(other.party_of_leg_[i] + shift);
  }
  return SystemLayout(std::move(dims), std::move(parties));
}

std::string SystemLayout::describe() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) out << (party_of_leg_[i] == party_of_leg_[i - 1] ? "*" : ",");
    out << dims_[i];
  }
  out << ')';
  return out.str();
}

}  // namespace qbc

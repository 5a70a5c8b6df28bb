#include "modcsp/group.hpp"

#include "modcsp/error.hpp"
#include "modcsp/number.hpp"

namespace modcsp {

GroupSpec::GroupSpec(std::vector<std::uint32_t> moduli) {
  if (moduli.empty()) throw Error(Errc::invalid_modulus, "group needs at least one component");
  for (auto m : moduli) {
    if (m < 2) throw Error(Errc::invalid_modulus, "component modulus must be >= 2, got " + std::to_string(m));
    order_ *= m;
    if (order_ > (std::uint64_t{1} << 32)) throw Error(Errc::size_limit, "group order exceeds 2^32");
  }
  moduli_ = std::make_shared<const std::vector<std::uint32_t>>(std::move(moduli));
}

ResidueVector GroupSpec::zero() const { return ResidueVector(*this, std::vector<std::uint32_t>(rank(), 0)); }

ResidueVector GroupSpec::element(std::vector<std::uint32_t> residues) const {
  if (residues.size() != rank())
    throw Error(Errc::length_mismatch, "expected " + std::to_string(rank()) + " residues, got " +
                                           std::to_string(residues.size()));
  for (std::size_t i = 0; i < residues.size(); ++i)
    if (residues[i] >= modulus(i))
      throw Error(Errc::semantic_error, "residue " + std::to_string(residues[i]) + " out of range for Z/" +
                                            std::to_string(modulus(i)));
  return ResidueVector(*this, std::move(residues));
}

ResidueVector GroupSpec::reduce(const std::vector<std::int64_t>& values) const {
  if (values.size() != rank()) throw Error(Errc::length_mismatch, "residue count does not match group rank");
  std::vector<std::uint32_t> r(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) r[i] = static_cast<std::uint32_t>(mod_reduce(values[i], modulus(i)));
  return ResidueVector(*this, std::move(r));
}

std::uint64_t GroupSpec::index_of(const ResidueVector& r) const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < rank(); ++i) idx = idx * modulus(i) + r[i];
  return idx;
}

ResidueVector GroupSpec::at(std::uint64_t index) const {
  std::vector<std::uint32_t> r(rank());
  for (std::size_t i = rank(); i-- > 0;) {
    r[i] = static_cast<std::uint32_t>(index % modulus(i));
    index /= modulus(i);
  }
  return ResidueVector(*this, std::move(r));
}

std::string GroupSpec::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (i) s += " x ";
    s += "Z/" + std::to_string(modulus(i));
  }
  return s;
}

ResidueVector::ResidueVector(GroupSpec group, std::vector<std::uint32_t> residues)
    : group_(std::move(group)), residues_(std::move(residues)) {
  if (residues_.size() != group_.rank()) throw Error(Errc::length_mismatch, "residue count does not match group rank");
}

bool ResidueVector::is_zero() const noexcept {
  for (auto r : residues_)
    if (r) return false;
  return true;
}

ResidueVector ResidueVector::operator-() const {
  ResidueVector out = *this;
  for (std::size_t i = 0; i < out.residues_.size(); ++i)
    if (out.residues_[i]) out.residues_[i] = group_.modulus(i) - out.residues_[i];
  return out;
}

ResidueVector& ResidueVector::operator+=(const ResidueVector& o) {
  if (!(group_ == o.group_)) throw Error(Errc::group_mismatch, group_.to_string() + " vs " + o.group_.to_string());
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    std::uint64_t s = std::uint64_t{residues_[i]} + o.residues_[i];
    residues_[i] = static_cast<std::uint32_t>(s % group_.modulus(i));
  }
  return *this;
}

ResidueVector& ResidueVector::operator-=(const ResidueVector& o) { return *this += -o; }

std::string ResidueVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(residues_[i]);
  }
  return s + ")";
}

ResidueVector group_add(const ResidueVector& a, const ResidueVector& b) { return a + b; }

}  // namespace modcsp

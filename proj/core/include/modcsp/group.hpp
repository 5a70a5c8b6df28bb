#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace modcsp {

class ResidueVector;

// Shape of G = Z/M_1 x ... x Z/M_k. Copies share the moduli list.
class GroupSpec {
 public:
  explicit GroupSpec(std::vector<std::uint32_t> moduli);
  static GroupSpec cyclic(std::uint32_t modulus) { return GroupSpec({modulus}); }

  std::size_t rank() const noexcept { return moduli_->size(); }
  std::uint32_t modulus(std::size_t i) const { return (*moduli_)[i]; }
  const std::vector<std::uint32_t>& moduli() const noexcept { return *moduli_; }
  std::uint64_t order() const noexcept { return order_; }

  ResidueVector zero() const;
  // Throws SemanticError when a residue is out of range.
  ResidueVector element(std::vector<std::uint32_t> residues) const;
  // Reduces arbitrary integers into canonical range.
  ResidueVector reduce(const std::vector<std::int64_t>& values) const;

  // Mixed-radix index in [0, order()), first component most significant.
  std::uint64_t index_of(const ResidueVector& r) const;
  ResidueVector at(std::uint64_t index) const;

  std::string to_string() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.moduli_ == b.moduli_ || *a.moduli_ == *b.moduli_;
  }

 private:
  std::shared_ptr<const std::vector<std::uint32_t>> moduli_;
  std::uint64_t order_ = 1;
};

class ResidueVector {
 public:
  ResidueVector(GroupSpec group, std::vector<std::uint32_t> residues);

  const GroupSpec& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return residues_.size(); }
  std::uint32_t operator[](std::size_t i) const { return residues_[i]; }
  const std::vector<std::uint32_t>& residues() const noexcept { return residues_; }
  bool is_zero() const noexcept;

  ResidueVector operator-() const;
  ResidueVector& operator+=(const ResidueVector& o);
  ResidueVector& operator-=(const ResidueVector& o);
  friend ResidueVector operator+(ResidueVector a, const ResidueVector& b) { return a += b; }
  friend ResidueVector operator-(ResidueVector a, const ResidueVector& b) { return a -= b; }

  std::string to_string() const;  // "(1,2)"

  friend bool operator==(const ResidueVector& a, const ResidueVector& b) {
    return a.residues_ == b.residues_ && a.group_ == b.group_;
  }
  friend std::strong_ordering operator<=>(const ResidueVector& a, const ResidueVector& b) {
    return a.residues_ <=> b.residues_;
  }

 private:
  GroupSpec group_;
  std::vector<std::uint32_t> residues_;
};

// Throws GroupMismatch when the operands live in different groups.
ResidueVector group_add(const ResidueVector& a, const ResidueVector& b);

}  // namespace modcsp

#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace modcsp::detail {

// k-subsets of [0, n) in colexicographic order, starting from {0..k-1}.
class ColexCombination {
 public:
  ColexCombination(std::size_t n, std::size_t k) : n_(n), c_(k) { std::iota(c_.begin(), c_.end(), 0U); }

  const std::vector<std::uint32_t>& current() const noexcept { return c_; }

  // Moves to the successor. `toggle(i)` is called for every element whose
  // membership changed. Returns false once the last subset has been passed.
  template <class Toggle>
  bool next(Toggle&& toggle) {
    const std::size_t k = c_.size();
    std::size_t j = 0;
    while (j < k) {
      std::size_t limit = j + 1 < k ? c_[j + 1] : n_;
      if (c_[j] + 1 < limit) break;
      ++j;
    }
    if (j == k) return false;
    toggle(c_[j]);
    ++c_[j];
    toggle(c_[j]);
    for (std::size_t i = 0; i < j; ++i) {
      if (c_[i] == i) continue;
      toggle(c_[i]);
      c_[i] = static_cast<std::uint32_t>(i);
      toggle(c_[i]);
    }
    return true;
  }
  bool next() {
    return next([](std::uint32_t) {});
  }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> c_;
};

// Position of each residue of Z/M in the sorted target list, -1 if absent.
inline std::vector<int> target_ranks(std::uint32_t modulus, const std::vector<std::uint32_t>& targets) {
  std::vector<int> rank(modulus, -1);
  for (std::size_t i = 0; i < targets.size(); ++i) rank[targets[i]] = static_cast<int>(i);
  return rank;
}

}  // namespace modcsp::detail

#pragma once

#include <cstdint>

namespace modcsp {

// A non-negative count, or "pick it for me".
template <class Tag>
class CountOrAuto {
 public:
  static CountOrAuto automatic() { return CountOrAuto(true, 0); }
  static CountOrAuto fixed(std::int64_t value) { return CountOrAuto(false, value); }

  bool is_auto() const noexcept { return auto_; }
  std::int64_t value() const noexcept { return value_; }

 private:
  CountOrAuto(bool a, std::int64_t v) : auto_(a), value_(v) {}
  bool auto_;
  std::int64_t value_;
};

using Rounds = CountOrAuto<struct RoundsTag>;
using Trials = CountOrAuto<struct TrialsTag>;

}  // namespace modcsp

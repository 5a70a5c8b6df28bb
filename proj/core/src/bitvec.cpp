#include "modcsp/bitvec.hpp"

#include "modcsp/error.hpp"

namespace modcsp {

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i);
    else if (bits[i] != '0')
      throw Error(Errc::parse_error, "bit string may only contain 0 and 1");
  }
  return v;
}

std::string BitVector::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

}  // namespace modcsp

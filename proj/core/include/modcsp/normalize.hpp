#pragma once

#include "modcsp/instance.hpp"

namespace modcsp {

// Rewrites a single-modulus instance so that g_j(0) = 0 and g_j(1) is 0 or 1.
// A variable of weight w keeps its index and gains w-1 tied copies appended
// after the original n variables; weight-0 variables stay with weight 0.
HornInstance normalize_unit_weights(const HornInstance& inst);
Lin2Instance normalize_unit_weights(const Lin2Instance& inst);

// First n bits of x.
Assignment restrict_to(const Assignment& x, std::size_t n);

}  // namespace modcsp

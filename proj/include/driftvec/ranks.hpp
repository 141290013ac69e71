#pragma once

#include <span>
#include <vector>

namespace driftvec {

// Average ranks (1-based): tied values share the mean of the positions they
// occupy. descending=true gives rank 1 to the largest value.
std::vector<double> average_ranks(std::span<const double> values, bool descending = false);

}  // namespace driftvec

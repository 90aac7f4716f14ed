#pragma once

#include <vector>

namespace tfact {

/// A set partition of {0..p-1} as a list of blocks, each sorted, blocks
/// ordered by their smallest element.
using SetPartition = std::vector<std::vector<int>>;

/// All partitions of {0..p-1} via restricted growth strings, starting from
/// the one-block partition and ending with the partition into singletons.
/// Throws std::invalid_argument when p exceeds `p_max`.
std::vector<SetPartition> set_partitions(int p, int p_max = 5);

/// Bell number B_p.
long long bell_number(int p);

}  // namespace tfact

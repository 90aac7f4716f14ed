#include "tfact/set_partitions.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tfact {

std::vector<SetPartition> set_partitions(int p, int p_max) {
  if (p < 1) throw std::invalid_argument("set_partitions needs p >= 1");
  if (p > p_max) {
    throw std::invalid_argument("p = " + std::to_string(p) + " exceeds the partition cap " + std::to_string(p_max));
  }
  // a[i] is the block of element i; a[i] <= 1 + max(a[0..i-1]).
  std::vector<int> a(static_cast<std::size_t>(p), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(p), 0);
  std::vector<SetPartition> out;
  for (;;) {
    int blocks = 0;
    for (int v : a) blocks = std::max(blocks, v + 1);
    SetPartition part(static_cast<std::size_t>(blocks));
    for (int i = 0; i < p; ++i) part[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])].push_back(i);
    out.push_back(std::move(part));

    int i = p - 1;
    while (i > 0 && a[static_cast<std::size_t>(i)] > prefix_max[static_cast<std::size_t>(i - 1)]) --i;
    if (i == 0) break;
    ++a[static_cast<std::size_t>(i)];
    prefix_max[static_cast<std::size_t>(i)] = std::max(prefix_max[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < p; ++j) {
      a[static_cast<std::size_t>(j)] = 0;
      prefix_max[static_cast<std::size_t>(j)] = prefix_max[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

long long bell_number(int p) {
  // Bell triangle.
  std::vector<long long> row{1};
  for (int n = 1; n <= p; ++n) {
    std::vector<long long> next{row.back()};
    for (long long v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace tfact

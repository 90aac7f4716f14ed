#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tfact {

/// A bijection of {0, ..., k-1}.
///
/// Internally labels are 0-based. The external (JSON/CLI) convention is
/// 1-based, matching the usual cycle notation `(1 2 3)`; use
/// `from_one_based` / `one_based` at the boundary.
class Permutation {
 public:
  Permutation() = default;

  /// Validates that `images` is a bijection; throws std::invalid_argument.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int k);
  /// The k-cycle 0 -> 1 -> ... -> k-1 -> 0.
  static Permutation long_cycle(int k);
  static Permutation from_one_based(std::span<const int> images);

  /// Parses cycle notation on {1..k}, e.g. "(1 2 3)(4)", "(1,2)" or the
  /// compact "(123456789)" form (one digit per element, only when k <= 9).
  /// Elements that do not appear are fixed points.
  static Permutation parse_cycles(std::string_view text, int k);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int s) const { return images_[static_cast<std::size_t>(s)]; }
  std::span<const int> images() const { return images_; }
  std::vector<int> one_based() const;

  Permutation inverse() const;
  /// (*this * rhs)(s) = (*this)(rhs(s)).
  Permutation operator*(const Permutation& rhs) const;

  /// #(pi): number of cycles, fixed points included.
  int cycle_count() const;
  bool is_identity() const;

  /// Same permutation with the images of s1 and s2 exchanged.
  Permutation with_swapped_images(int s1, int s2) const;

  std::string to_cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// #(a b^{-1}) without materializing the product.
int cycle_count_of_quotient(const Permutation& a, const Permutation& b);

/// Cayley distance d(a, b) = k - #(a b^{-1}).
int cayley_distance(const Permutation& a, const Permutation& b);

/// Block-diagonal concatenation: `parts[i]` acts on labels shifted by the
/// sizes of the preceding parts.
Permutation direct_sum(std::span<const Permutation> parts);

}  // namespace tfact

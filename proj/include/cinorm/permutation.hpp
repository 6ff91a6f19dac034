#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cinorm {

using Point = std::uint32_t;

/// Canonical cycle form: every cycle has length >= 2, starts at its minimum,
/// and cycles are ordered by their minimum.
struct CycleDecomposition {
  std::vector<std::vector<Point>> cycles;

  bool operator==(const CycleDecomposition&) const = default;
};

/// Finitely supported bijection of the positive integers.
///
/// Only moved points are stored. Products are read left to right, the first
/// factor acts first: (x y)(y z) = (x z y).
class Permutation {
 public:
  Permutation() = default;

  /// Images of 1..n, i.e. images[i] is the image of point i + 1.
  static Permutation from_images(std::span<const Point> images);
  /// Left-to-right product of the given cycles; cycles may overlap.
  static Permutation from_cycles(const std::vector<std::vector<Point>>& cycles);
  /// Sparse (point, image) table; fixed entries are dropped. Throws
  /// ParseError unless the table is a bijection of its domain.
  static Permutation from_pairs(std::vector<std::pair<Point, Point>> pairs);
  static Permutation transposition(Point a, Point b);
  /// Cycle notation, e.g. "(1 2 3)(5 6)"; "()" is the identity.
  static Permutation parse(std::string_view text);

  Point operator()(Point x) const;
  Point preimage(Point x) const;

  bool is_identity() const { return map_.empty(); }
  bool is_even() const;

  /// Moved points in increasing order.
  std::vector<Point> support() const;
  std::size_t support_size() const { return map_.size(); }
  /// Largest moved point, 0 for the identity.
  Point largest_moved_point() const { return map_.empty() ? 0 : map_.back().first; }

  Permutation inverse() const;
  CycleDecomposition cycles() const;
  /// Multiset of cycle lengths (>= 2), sorted decreasing.
  std::vector<std::size_t> cycle_type() const;

  std::string to_string() const;

  const std::vector<std::pair<Point, Point>>& entries() const { return map_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<std::pair<Point, Point>> map) : map_(std::move(map)) {}

  std::vector<std::pair<Point, Point>> map_;  // sorted by source, no fixed points

  friend Permutation compose(const Permutation& a, const Permutation& b);
};

/// Applies a first, then b.
Permutation compose(const Permutation& a, const Permutation& b);
inline Permutation operator*(const Permutation& a, const Permutation& b) { return compose(a, b); }

/// The product t * s * t^-1 read left to right.
Permutation conjugate(const Permutation& s, const Permutation& t);
/// b * c * b^-1 * c^-1 read left to right.
Permutation commutator(const Permutation& b, const Permutation& c);

/// |{x : s(x) != t(x)}|, the metric induced by the support norm.
std::size_t support_distance(const Permutation& s, const Permutation& t);

std::size_t supp_norm(const Permutation& s);
/// Minimal number of transpositions: support size minus number of cycles.
std::size_t tr_norm(const Permutation& s);
/// Minimal number of 3-cycles whose product is s. Throws OddPermutation.
///
/// Evaluated by breadth-first search over the alternating group on
/// max(5, |supp s|) points, one table per degree, cached process-wide.
/// Supports beyond kMaxThreeCycleDegree points raise OutOfRange.
std::size_t three_cycle_norm(const Permutation& s);
inline constexpr std::size_t kMaxThreeCycleDegree = 9;

/// Relabels the support of s onto 1..k preserving the relative order.
Permutation compress_support(const Permutation& s);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/// All permutations of {1..n} (n <= 10), in lexicographic order of images.
std::vector<Permutation> all_permutations(std::size_t n);
/// The even members of all_permutations(n).
std::vector<Permutation> all_even_permutations(std::size_t n);

}  // namespace cinorm

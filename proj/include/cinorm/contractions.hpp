#pragma once

#include <cstddef>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cinorm/audit.hpp"
#include "cinorm/permutation.hpp"

namespace cinorm {

struct CutResult {
  Permutation image;
  std::vector<Point> erased_points;  // the k largest support points, descending
};

/// c_k: erases the k largest support points; points sent into the erased
/// range are rerouted to their first return below it.
CutResult cut(const Permutation& s, std::size_t k);

/// c_0(s), ..., c_max_k(s).
std::vector<Permutation> cut_ladder(const Permutation& s, std::size_t max_k);

struct SplitPair {
  Permutation left;
  Permutation right;
};

/// left * right == s with supp(left) <= k and supp(right) <= supp(s) - k + 1.
/// The k-th point of the canonical cycle listing decides where its cycle is
/// cut. Throws OutOfRange unless 1 <= k <= supp(s).
SplitPair split(const Permutation& s, std::size_t k);

/// A set D with s(D) disjoint from D and |D| >= supp(s) / 3, taken from the
/// odd positions of each canonical cycle. Throws IdentityInput.
std::vector<Point> displaced_set(const Permutation& s);

/// Accumulates the four cutting-map inequalities over a sample.
class CutLemmaAudit {
 public:
  /// The ladder bound is checked on all pairs k < m <= full_window and on
  /// consecutive pairs above it; the default window is max_k.
  explicit CutLemmaAudit(std::size_t max_k,
                         std::size_t full_window = std::numeric_limits<std::size_t>::max());

  /// d(c_k s, c_m s) <= 2|k - m| and the norm-decrease bound.
  void add_single(const Permutation& s, const std::vector<Permutation>& ladder);
  /// Equal-support non-expansiveness and the general factor-2 bound.
  void add_pair(const Permutation& s, const Permutation& t,
                const std::vector<Permutation>& ladder_s,
                const std::vector<Permutation>& ladder_t);
  void merge(const CutLemmaAudit& other);

  std::size_t max_k() const { return max_k_; }
  std::size_t pairs() const { return pairs_; }
  const std::vector<BoundStats>& bounds() const { return bounds_; }
  bool ok() const;
  nlohmann::ordered_json to_json() const;

 private:
  std::size_t max_k_;
  std::size_t full_window_;
  std::size_t pairs_ = 0;
  std::vector<BoundStats> bounds_;  // ladder, equal_support, general, norm_decrease
};

/// Checks every pair in the sample for all k <= max_k.
CutLemmaAudit verify_cut_lemmas(const std::vector<std::pair<Permutation, Permutation>>& sample,
                                std::size_t max_k);

/// All ordered pairs of S_n, ladders cached per element.
CutLemmaAudit verify_cut_lemmas_exhaustive(std::size_t n, std::size_t max_k);

/// Random pairs in S_degree: independent, equal-support and nearby pairs in
/// rotation. max_k defaults to the degree; the ladder bound is checked on all
/// k < m <= 8 and on consecutive k above that.
CutLemmaAudit verify_cut_lemmas_random(std::size_t degree, std::size_t count,
                                       std::mt19937_64& rng,
                                       std::size_t max_k = std::numeric_limits<std::size_t>::max());

}  // namespace cinorm

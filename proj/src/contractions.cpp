#include "cinorm/contractions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cinorm/error.hpp"

namespace cinorm {

CutResult cut(const Permutation& s, std::size_t k) {
  const auto support = s.support();
  const std::size_t l = support.size();
  CutResult out;
  const std::size_t kept = k >= l ? 0 : l - k;
  for (std::size_t i = l; i > kept; --i) out.erased_points.push_back(support[i - 1]);
  if (kept == 0) return out;
  const Point threshold = support[kept - 1];
  std::vector<std::pair<Point, Point>> map;
  map.reserve(kept);
  for (const auto& [x, image] : s.entries()) {
    if (x > threshold) break;
    Point y = image;
    while (y > threshold) y = s(y);  // first return below the threshold
    map.emplace_back(x, y);
  }
  out.image = Permutation::from_pairs(std::move(map));
  return out;
}

std::vector<Permutation> cut_ladder(const Permutation& s, std::size_t max_k) {
  std::vector<Permutation> ladder;
  ladder.reserve(max_k + 1);
  for (std::size_t k = 0; k <= max_k; ++k) {
    if (k > 0 && ladder.back().is_identity()) {
      ladder.push_back(ladder.back());
    } else {
      ladder.push_back(cut(s, k).image);
    }
  }
  return ladder;
}

SplitPair split(const Permutation& s, std::size_t k) {
  const std::size_t n = s.support_size();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::OutOfRange, "split position " + std::to_string(k) +
                                           " outside 1.." + std::to_string(n));
  }
  const auto cycles = s.cycles().cycles;
  std::vector<std::vector<Point>> left;
  std::vector<std::vector<Point>> right;
  std::size_t seen = 0;
  for (const auto& cycle : cycles) {
    if (seen >= k) {
      right.push_back(cycle);
    } else if (seen + cycle.size() <= k) {
      left.push_back(cycle);
    } else {
      // (a_1 .. a_j) = (a_1 .. a_p)(a_1 a_{p+1} .. a_j)
      const std::size_t p = k - seen;
      left.emplace_back(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(p));
      std::vector<Point> tail{cycle.front()};
      tail.insert(tail.end(), cycle.begin() + static_cast<std::ptrdiff_t>(p), cycle.end());
      right.push_back(std::move(tail));
    }
    seen += cycle.size();
  }
  return {Permutation::from_cycles(left), Permutation::from_cycles(right)};
}

std::vector<Point> displaced_set(const Permutation& s) {
  if (s.is_identity()) throw Error(ErrorCode::IdentityInput, "the identity displaces nothing");
  std::vector<Point> out;
  for (const auto& cycle : s.cycles().cycles) {
    // The last point of an odd cycle maps back onto the first, so skip it.
    const std::size_t stop = cycle.size() % 2 == 0 ? cycle.size() : cycle.size() - 1;
    for (std::size_t i = 0; i < stop; i += 2) out.push_back(cycle[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

enum Bound { kLadder, kEqualSupport, kGeneral, kNormDecrease };

std::size_t gap(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

}  // namespace

CutLemmaAudit::CutLemmaAudit(std::size_t max_k, std::size_t full_window)
    : max_k_(max_k), full_window_(std::min(max_k, full_window)) {
  bounds_.resize(4);
  bounds_[kLadder].lemma = "cut_ladder";
  bounds_[kLadder].statement = "d(c_k s, c_m s) <= 2|k - m|";
  bounds_[kEqualSupport].lemma = "cut_equal_support";
  bounds_[kEqualSupport].statement = "supp s = supp t implies d(c_k s, c_k t) <= d(s, t)";
  bounds_[kGeneral].lemma = "cut_general";
  bounds_[kGeneral].statement = "d(c_k s, c_k t) <= 2 d(s, t)";
  bounds_[kNormDecrease].lemma = "cut_norm_decrease";
  bounds_[kNormDecrease].statement = "|c_k s|_supp <= max(|s|_supp - k, 0)";
}

void CutLemmaAudit::add_single(const Permutation& s, const std::vector<Permutation>& ladder) {
  const std::size_t top = std::min(max_k_, ladder.size() - 1);
  const std::size_t norm = s.support_size();
  for (std::size_t k = 0; k <= top; ++k) {
    const std::size_t bound = norm > k ? norm - k : 0;
    auto& b = bounds_[kNormDecrease];
    if (b.record(ladder[k].support_size(), bound) && b.witness.empty()) {
      b.witness = "s = " + s.to_string() + ", k = " + std::to_string(k);
    }
    const std::size_t last = k < full_window_ ? std::min(top, full_window_) : std::min(top, k + 1);
    for (std::size_t m = k + 1; m <= last; ++m) {
      auto& l = bounds_[kLadder];
      if (l.record(support_distance(ladder[k], ladder[m]), 2 * gap(k, m)) && l.witness.empty()) {
        l.witness = "s = " + s.to_string() + ", k = " + std::to_string(k) +
                    ", m = " + std::to_string(m);
      }
    }
  }
}

void CutLemmaAudit::add_pair(const Permutation& s, const Permutation& t,
                             const std::vector<Permutation>& ladder_s,
                             const std::vector<Permutation>& ladder_t) {
  ++pairs_;
  const std::size_t d = support_distance(s, t);
  const bool same_support = s.support() == t.support();
  const std::size_t top = std::min({max_k_, ladder_s.size() - 1, ladder_t.size() - 1});
  for (std::size_t k = 0; k <= top; ++k) {
    const std::size_t dk = support_distance(ladder_s[k], ladder_t[k]);
    auto describe = [&] {
      return "s = " + s.to_string() + ", t = " + t.to_string() + ", k = " + std::to_string(k);
    };
    auto& g = bounds_[kGeneral];
    if (g.record(dk, 2 * d) && g.witness.empty()) g.witness = describe();
    if (same_support) {
      auto& e = bounds_[kEqualSupport];
      if (e.record(dk, d) && e.witness.empty()) e.witness = describe();
    }
  }
}

void CutLemmaAudit::merge(const CutLemmaAudit& other) {
  pairs_ += other.pairs_;
  for (std::size_t i = 0; i < bounds_.size(); ++i) bounds_[i].merge(other.bounds_[i]);
}

bool CutLemmaAudit::ok() const {
  return std::all_of(bounds_.begin(), bounds_.end(), [](const auto& b) { return b.ok(); });
}

nlohmann::ordered_json CutLemmaAudit::to_json() const {
  nlohmann::ordered_json j;
  j["max_k"] = max_k_;
  j["pairs"] = pairs_;
  auto& arr = j["bounds"] = nlohmann::ordered_json::array();
  for (const auto& b : bounds_) arr.push_back(b.to_json());
  j["ok"] = ok();
  return j;
}

CutLemmaAudit verify_cut_lemmas(const std::vector<std::pair<Permutation, Permutation>>& sample,
                                std::size_t max_k) {
  CutLemmaAudit audit(max_k);
  for (const auto& [s, t] : sample) {
    const auto ls = cut_ladder(s, max_k);
    const auto lt = cut_ladder(t, max_k);
    audit.add_single(s, ls);
    audit.add_single(t, lt);
    audit.add_pair(s, t, ls, lt);
  }
  return audit;
}

CutLemmaAudit verify_cut_lemmas_exhaustive(std::size_t n, std::size_t max_k) {
  const auto elements = all_permutations(n);
  std::vector<std::vector<Permutation>> ladders;
  ladders.reserve(elements.size());
  CutLemmaAudit audit(max_k);
  for (const auto& s : elements) {
    ladders.push_back(cut_ladder(s, max_k));
    audit.add_single(s, ladders.back());
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = 0; j < elements.size(); ++j) {
      audit.add_pair(elements[i], elements[j], ladders[i], ladders[j]);
    }
  }
  return audit;
}

namespace {

Permutation random_partial(std::size_t degree, std::mt19937_64& rng) {
  std::vector<Point> points(degree);
  std::iota(points.begin(), points.end(), Point{1});
  std::shuffle(points.begin(), points.end(), rng);
  const std::size_t m = std::uniform_int_distribution<std::size_t>(0, degree)(rng);
  std::vector<Point> images(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(m));
  std::shuffle(images.begin(), images.end(), rng);
  std::vector<std::pair<Point, Point>> map;
  for (std::size_t i = 0; i < m; ++i) map.emplace_back(points[i], images[i]);
  return Permutation::from_pairs(std::move(map));
}

Permutation shuffle_support(const Permutation& s, std::mt19937_64& rng) {
  auto support = s.support();
  auto images = support;
  std::shuffle(images.begin(), images.end(), rng);
  std::vector<std::pair<Point, Point>> map;
  for (std::size_t i = 0; i < support.size(); ++i) map.emplace_back(support[i], images[i]);
  return conjugate(s, Permutation::from_pairs(std::move(map)));
}

}  // namespace

CutLemmaAudit verify_cut_lemmas_random(std::size_t degree, std::size_t count,
                                       std::mt19937_64& rng, std::size_t max_k) {
  max_k = std::min(max_k, degree);
  CutLemmaAudit audit(max_k, 8);
  std::uniform_int_distribution<Point> point(1, static_cast<Point>(degree));
  for (std::size_t i = 0; i < count; ++i) {
    const Permutation s = random_partial(degree, rng);
    Permutation t;
    switch (i % 3) {
      case 0:
        t = random_partial(degree, rng);
        break;
      case 1:
        t = shuffle_support(s, rng);
        break;
      default:
        t = s * Permutation::transposition(point(rng), point(rng));
        break;
    }
    const auto ls = cut_ladder(s, max_k);
    const auto lt = cut_ladder(t, max_k);
    audit.add_single(s, ls);
    audit.add_pair(s, t, ls, lt);
  }
  return audit;
}

}  // namespace cinorm

#include "cinorm/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "cinorm/error.hpp"
#include "cinorm/finite_group.hpp"
#include "cinorm/wordnorm.hpp"

namespace cinorm {

namespace {

Point lookup(const std::vector<std::pair<Point, Point>>& map, Point x) {
  auto it = std::lower_bound(map.begin(), map.end(), x,
                             [](const auto& e, Point v) { return e.first < v; });
  return (it != map.end() && it->first == x) ? it->second : x;
}

}  // namespace

Permutation Permutation::from_images(std::span<const Point> images) {
  std::vector<std::pair<Point, Point>> map;
  std::vector<bool> seen(images.size() + 1, false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const Point x = static_cast<Point>(i + 1);
    const Point y = images[i];
    if (y < 1 || y > images.size() || seen[y]) {
      throw Error(ErrorCode::ParseError, "image table is not a bijection of 1.." +
                                             std::to_string(images.size()));
    }
    seen[y] = true;
    if (x != y) map.emplace_back(x, y);
  }
  return Permutation(std::move(map));
}

Permutation Permutation::from_cycles(const std::vector<std::vector<Point>>& cycles) {
  Permutation result;
  for (const auto& cycle : cycles) {
    if (cycle.size() < 2) {
      if (cycle.size() == 1 && cycle[0] == 0) {
        throw Error(ErrorCode::ParseError, "points are positive integers");
      }
      continue;
    }
    std::vector<Point> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == 0) throw Error(ErrorCode::ParseError, "points are positive integers");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::ParseError, "repeated point inside a cycle");
    }
    std::vector<std::pair<Point, Point>> map;
    map.reserve(cycle.size());
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      map.emplace_back(cycle[i], cycle[(i + 1) % cycle.size()]);
    }
    std::sort(map.begin(), map.end());
    result = compose(result, Permutation(std::move(map)));
  }
  return result;
}

Permutation Permutation::from_pairs(std::vector<std::pair<Point, Point>> pairs) {
  std::erase_if(pairs, [](const auto& e) { return e.first == e.second; });
  std::sort(pairs.begin(), pairs.end());
  std::vector<Point> domain;
  std::vector<Point> image;
  for (const auto& [from, to] : pairs) {
    if (from == 0 || to == 0) throw Error(ErrorCode::ParseError, "points are positive integers");
    domain.push_back(from);
    image.push_back(to);
  }
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(domain.begin(), domain.end()) != domain.end() || domain != image) {
    throw Error(ErrorCode::ParseError, "point table is not a bijection");
  }
  return Permutation(std::move(pairs));
}

Permutation Permutation::transposition(Point a, Point b) {
  if (a == b) return {};
  return from_cycles({{a, b}});
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  if (i == text.size()) throw Error(ErrorCode::ParseError, "empty permutation text");
  while (i < text.size()) {
    if (text[i] != '(') {
      throw Error(ErrorCode::ParseError, "expected '(' in \"" + std::string(text) + "\"");
    }
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      skip_space();
      if (i == text.size()) throw Error(ErrorCode::ParseError, "unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw Error(ErrorCode::ParseError, "unexpected character in \"" + std::string(text) + "\"");
      }
      std::uint64_t value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (value > 0xFFFFFFFFull) throw Error(ErrorCode::ParseError, "point out of range");
        ++i;
      }
      if (value == 0) throw Error(ErrorCode::ParseError, "points are positive integers");
      cycle.push_back(static_cast<Point>(value));
    }
    cycles.push_back(std::move(cycle));
    skip_space();
  }
  return from_cycles(cycles);
}

Point Permutation::operator()(Point x) const { return lookup(map_, x); }

Point Permutation::preimage(Point x) const {
  for (const auto& [from, to] : map_) {
    if (to == x) return from;
  }
  return x;
}

bool Permutation::is_even() const {
  // A k-cycle is a product of k - 1 transpositions.
  return tr_norm(*this) % 2 == 0;
}

std::vector<Point> Permutation::support() const {
  std::vector<Point> out;
  out.reserve(map_.size());
  for (const auto& e : map_) out.push_back(e.first);
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<std::pair<Point, Point>> inv;
  inv.reserve(map_.size());
  for (const auto& [from, to] : map_) inv.emplace_back(to, from);
  std::sort(inv.begin(), inv.end());
  return Permutation(std::move(inv));
}

CycleDecomposition Permutation::cycles() const {
  CycleDecomposition out;
  std::vector<bool> done(map_.size(), false);
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (done[i]) continue;
    std::vector<Point> cycle;
    Point x = map_[i].first;
    do {
      cycle.push_back(x);
      auto it = std::lower_bound(map_.begin(), map_.end(), x,
                                 [](const auto& e, Point v) { return e.first < v; });
      done[static_cast<std::size_t>(it - map_.begin())] = true;
      x = it->second;
    } while (x != cycle.front());
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> type;
  for (const auto& c : cycles().cycles) type.push_back(c.size());
  std::sort(type.rbegin(), type.rend());
  return type;
}

std::string Permutation::to_string() const {
  if (map_.empty()) return "()";
  std::ostringstream os;
  for (const auto& cycle : cycles().cycles) {
    os << '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) os << ' ';
      os << cycle[i];
    }
    os << ')';
  }
  return os.str();
}

Permutation compose(const Permutation& a, const Permutation& b) {
  std::vector<std::pair<Point, Point>> out;
  out.reserve(a.map_.size() + b.map_.size());
  auto ia = a.map_.begin();
  auto ib = b.map_.begin();
  auto emit = [&](Point x) {
    const Point y = b(a(x));
    if (y != x) out.emplace_back(x, y);
  };
  while (ia != a.map_.end() || ib != b.map_.end()) {
    if (ib == b.map_.end() || (ia != a.map_.end() && ia->first < ib->first)) {
      emit(ia->first);
      ++ia;
    } else if (ia == a.map_.end() || ib->first < ia->first) {
      emit(ib->first);
      ++ib;
    } else {
      emit(ia->first);
      ++ia;
      ++ib;
    }
  }
  return Permutation(std::move(out));
}

Permutation conjugate(const Permutation& s, const Permutation& t) {
  return compose(compose(t, s), t.inverse());
}

Permutation commutator(const Permutation& b, const Permutation& c) {
  return compose(compose(compose(b, c), b.inverse()), c.inverse());
}

std::size_t support_distance(const Permutation& s, const Permutation& t) {
  const auto& a = s.entries();
  const auto& b = t.entries();
  std::size_t count = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      ++count;  // moved by s only
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      ++count;
      ++j;
    } else {
      if (a[i].second != b[j].second) ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::size_t supp_norm(const Permutation& s) { return s.support_size(); }

std::size_t tr_norm(const Permutation& s) {
  return s.support_size() - s.cycles().cycles.size();
}

Permutation compress_support(const Permutation& s) {
  const auto support = s.support();
  std::vector<Point> images(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    const Point y = s(support[i]);
    const auto pos = std::lower_bound(support.begin(), support.end(), y) - support.begin();
    images[i] = static_cast<Point>(pos + 1);
  }
  return Permutation::from_images(images);
}

namespace {

struct ThreeCycleTables {
  std::mutex mutex;
  std::map<std::size_t, std::shared_ptr<const word::NormTable>> by_degree;

  std::shared_ptr<const word::NormTable> get(std::size_t degree) {
    std::lock_guard lock(mutex);
    auto& slot = by_degree[degree];
    if (!slot) {
      auto alt = symmetric_group(degree, true);
      std::vector<ElementId> gens;
      for (Point a = 1; a <= degree; ++a) {
        for (Point b = 1; b <= degree; ++b) {
          for (Point c = 1; c <= degree; ++c) {
            if (a < b && a < c && b != c) {
              gens.push_back(alt->id_of(Permutation::from_cycles({{a, b, c}})));
            }
          }
        }
      }
      slot = std::make_shared<word::NormTable>(word::bfs_norm(alt, std::move(gens)));
    }
    return slot;
  }
};

ThreeCycleTables& three_cycle_tables() {
  static ThreeCycleTables tables;
  return tables;
}

}  // namespace

std::size_t three_cycle_norm(const Permutation& s) {
  if (!s.is_even()) throw Error(ErrorCode::OddPermutation, s.to_string() + " is odd");
  if (s.is_identity()) return 0;
  const Permutation c = compress_support(s);
  const std::size_t degree = std::max<std::size_t>(5, c.support_size());
  if (degree > kMaxThreeCycleDegree) {
    throw Error(ErrorCode::OutOfRange, "3-cycle norm tables stop at support " +
                                           std::to_string(kMaxThreeCycleDegree));
  }
  auto table = three_cycle_tables().get(degree);
  const auto& alt = static_cast<const SymmetricGroup&>(table->group());
  return (*table)[alt.id_of(c)];
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& [from, to] : p.entries()) {
    h ^= (static_cast<std::size_t>(from) << 32 | to) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<Permutation> all_permutations(std::size_t n) {
  if (n > 10) throw Error(ErrorCode::OutOfRange, "refusing to enumerate S_n for n > 10");
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{1});
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

std::vector<Permutation> all_even_permutations(std::size_t n) {
  auto all = all_permutations(n);
  std::erase_if(all, [](const Permutation& p) { return !p.is_even(); });
  return all;
}

}  // namespace cinorm

#include "cinorm/covering.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <unordered_set>

#include "cinorm/contractions.hpp"
#include "cinorm/error.hpp"
#include "cinorm/finite_group.hpp"

namespace cinorm {

namespace {

void require_degree(const Permutation& s, std::size_t n) {
  if (s.largest_moved_point() > n) {
    throw Error(ErrorCode::SupportExceedsDegree,
                s.to_string() + " does not act on 1.." + std::to_string(n));
  }
}

bool has_two_cycle(const Permutation& s) {
  const auto type = s.cycle_type();
  return std::find(type.begin(), type.end(), 2) != type.end();
}

Permutation power(const Permutation& s, int sign) { return sign < 0 ? s.inverse() : s; }

}  // namespace

std::size_t orbit_count(const Permutation& s, std::size_t n) {
  require_degree(s, n);
  return n - s.support_size() + s.cycles().cycles.size();
}

ConjugacyClass conjugacy_class(const Permutation& s, std::size_t n) {
  require_degree(s, n);
  if (n > kMaxCoveringDegree) {
    throw Error(ErrorCode::OutOfRange, "classes are materialized up to degree " +
                                           std::to_string(kMaxCoveringDegree));
  }
  std::unordered_set<Permutation, PermutationHash> seen{s};
  std::vector<Permutation> queue{s};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Point a = 1; a < n; ++a) {
      Permutation next = conjugate(queue[head], Permutation::transposition(a, a + 1));
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::sort(queue.begin(), queue.end());
  return {n, s, std::move(queue)};
}

bool brenner_hypotheses(const Permutation& s, std::size_t n, std::string* reason) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  if (s.largest_moved_point() > n) return fail("support exceeds degree");
  if (!s.is_even()) return fail("not in the alternating group");
  if (!has_two_cycle(s)) return fail("no orbit of length two");
  const auto r = static_cast<long long>(orbit_count(s, n));
  if (static_cast<long long>(n) - 2 * r < -1) {
    return fail("n - 2r = " + std::to_string(static_cast<long long>(n) - 2 * r) + " < -1");
  }
  return true;
}

nlohmann::ordered_json CoveringReport::to_json() const {
  nlohmann::ordered_json j;
  j["sigma"] = sigma.to_string();
  j["degree"] = degree;
  j["orbits"] = orbits;
  j["class_size"] = class_size;
  j["group_order"] = group_order;
  j["level_sizes"] = level_sizes;
  j["covered_by_fourth_power"] = covered;
  if (covering_exponent) {
    j["covering_exponent"] = *covering_exponent;
  } else {
    j["covering_exponent"] = nullptr;
  }
  return j;
}

CoveringReport brenner_check(const Permutation& s, std::size_t n) {
  std::string reason;
  if (!brenner_hypotheses(s, n, &reason)) {
    throw Error(ErrorCode::HypothesisUnmet, s.to_string() + " in degree " + std::to_string(n) +
                                                ": " + reason);
  }
  const auto cls = conjugacy_class(s, n);
  const auto alt = symmetric_group(n, true);
  std::vector<ElementId> members;
  members.reserve(cls.members.size());
  for (const auto& m : cls.members) members.push_back(alt->id_of(m));

  CoveringReport report;
  report.sigma = s;
  report.degree = n;
  report.orbits = orbit_count(s, n);
  report.class_size = members.size();
  report.group_order = alt->order();

  // Levels are not nested (the identity need not lie in C), so each power is
  // computed from the previous one.
  constexpr std::size_t kMaxExponent = 8;
  std::vector<ElementId> level = members;
  std::vector<char> in_next(alt->order());
  for (std::size_t e = 1; e <= kMaxExponent; ++e) {
    if (e > 1) {
      std::fill(in_next.begin(), in_next.end(), 0);
      std::vector<ElementId> next;
      for (auto x : level) {
        for (auto c : members) {
          const ElementId y = alt->multiply(x, c);
          if (!in_next[y]) {
            in_next[y] = 1;
            next.push_back(y);
          }
        }
      }
      level = std::move(next);
    }
    report.level_sizes.push_back(level.size());
    if (level.size() == alt->order()) {
      report.covering_exponent = e;
      break;
    }
  }
  report.covered = report.covering_exponent && *report.covering_exponent <= 4;
  return report;
}

Permutation conjugator_between(const Permutation& from, const Permutation& to, std::size_t n) {
  require_degree(from, n);
  require_degree(to, n);
  auto by_length = [](std::vector<std::vector<Point>> cycles) {
    std::stable_sort(cycles.begin(), cycles.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return cycles;
  };
  const auto cf = by_length(from.cycles().cycles);
  const auto ct = by_length(to.cycles().cycles);
  if (from.cycle_type() != to.cycle_type()) {
    throw Error(ErrorCode::HypothesisUnmet, from.to_string() + " and " + to.to_string() +
                                                " are not conjugate");
  }
  // t sends each cycle of `to` onto the matching cycle of `from`.
  std::vector<std::pair<Point, Point>> map;
  for (std::size_t i = 0; i < cf.size(); ++i) {
    for (std::size_t j = 0; j < cf[i].size(); ++j) map.emplace_back(ct[i][j], cf[i][j]);
  }
  std::vector<Point> fixed_from;
  std::vector<Point> fixed_to;
  for (Point x = 1; x <= n; ++x) {
    if (from(x) == x) fixed_from.push_back(x);
    if (to(x) == x) fixed_to.push_back(x);
  }
  for (std::size_t i = 0; i < fixed_to.size(); ++i) map.emplace_back(fixed_to[i], fixed_from[i]);
  return Permutation::from_pairs(std::move(map));
}

namespace {

struct AltTypes {
  std::shared_ptr<const SymmetricGroup> group;
  std::vector<std::uint64_t> type_code;  // cycle type packed per element
};

std::uint64_t pack_type(const std::uint8_t* images, std::size_t degree) {
  std::uint8_t counts[16] = {};
  bool seen[16] = {};
  for (std::size_t i = 0; i < degree; ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t x = i; !seen[x]; x = images[x]) {
      seen[x] = true;
      ++len;
    }
    ++counts[len];
  }
  std::uint64_t code = 0;
  for (std::size_t len = 1; len <= degree; ++len) code = code * 16 + counts[len];
  return code;
}

const AltTypes& alt_types(std::size_t degree) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<AltTypes>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[degree];
  if (!slot) {
    slot = std::make_unique<AltTypes>();
    slot->group = symmetric_group(degree, true);
    slot->type_code.resize(slot->group->order());
    for (ElementId a = 0; a < slot->group->order(); ++a) {
      slot->type_code[a] = pack_type(slot->group->images(a), degree);
    }
  }
  return *slot;
}

Permutation canonical_of_type(const std::vector<std::size_t>& type) {
  std::vector<std::vector<Point>> cycles;
  Point next = 1;
  for (auto len : type) {
    std::vector<Point> c(len);
    std::iota(c.begin(), c.end(), next);
    next += static_cast<Point>(len);
    cycles.push_back(std::move(c));
  }
  return Permutation::from_cycles(cycles);
}

/// An odd permutation on {1..d} commuting with s, if one exists.
std::optional<Permutation> odd_centralizer(const Permutation& s, std::size_t d) {
  for (const auto& cycle : s.cycles().cycles) {
    if (cycle.size() % 2 == 0) return Permutation::from_cycles({cycle});
  }
  std::vector<Point> fixed;
  for (Point x = 1; x <= d && fixed.size() < 2; ++x) {
    if (s(x) == x) fixed.push_back(x);
  }
  if (fixed.size() == 2) return Permutation::transposition(fixed[0], fixed[1]);
  return std::nullopt;
}

CommutatorWitness search_witness(const Permutation& r, std::size_t d) {
  const auto& types = alt_types(d);
  const auto& alt = *types.group;
  const ElementId rid = alt.id_of(r);
  std::optional<CommutatorWitness> odd_fallback;
  for (ElementId b = 0; b < alt.order(); ++b) {
    const ElementId binv = alt.inverse(b);
    const ElementId y = alt.multiply(binv, rid);  // need c b^-1 c^-1 = b^-1 r
    if (types.type_code[y] != types.type_code[binv]) continue;
    const Permutation pb = alt.element(b);
    const Permutation pbinv = pb.inverse();
    Permutation c = conjugator_between(pbinv, alt.element(y), d);
    if (!c.is_even()) {
      if (auto z = odd_centralizer(pbinv, d)) {
        c = c * *z;
      } else {
        if (!odd_fallback) odd_fallback = CommutatorWitness{pb, c};
        continue;
      }
    }
    return {pb, c};
  }
  if (odd_fallback) return *odd_fallback;
  throw Error(ErrorCode::SearchExhausted, "no commutator witness for " + r.to_string() +
                                              " in degree " + std::to_string(d));
}

}  // namespace

CommutatorWitness commutator_witness(const Permutation& g, std::size_t n) {
  require_degree(g, n);
  if (!g.is_even()) throw Error(ErrorCode::OddPermutation, g.to_string() + " is odd");
  if (g.is_identity()) return {};
  const std::size_t d = std::max<std::size_t>(5, g.support_size());
  if (d > kMaxThreeCycleDegree) {
    throw Error(ErrorCode::OutOfRange, "commutator search covers supports up to " +
                                           std::to_string(kMaxThreeCycleDegree) + " points");
  }
  const auto type = g.cycle_type();

  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::vector<std::size_t>>, CommutatorWitness> memo;
  CommutatorWitness base;
  const Permutation rep = canonical_of_type(type);
  {
    std::lock_guard lock(mutex);
    auto it = memo.find({d, type});
    if (it == memo.end()) it = memo.emplace(std::pair{d, type}, search_witness(rep, d)).first;
    base = it->second;
  }
  // [t b t^-1, t c t^-1] = t [b, c] t^-1.
  const std::size_t degree = std::max<std::size_t>(n, 5);
  const Permutation t = conjugator_between(rep, g, degree);
  CommutatorWitness out{conjugate(base.b, t), conjugate(base.c, t)};
  if (commutator(out.b, out.c) != g) {
    throw Error(ErrorCode::RecompositionMismatch, "commutator witness for " + g.to_string());
  }
  return out;
}

Permutation ConjugateProductCertificate::recompose() const {
  Permutation acc;
  for (const auto& f : factors) acc = acc * conjugate(power(base, f.sign), f.conjugator);
  return acc;
}

double ConjugateProductCertificate::factor_bound() const {
  return 8.0 * static_cast<double>(target.support_size()) /
             static_cast<double>(base.support_size()) +
         4.0;
}

nlohmann::ordered_json ConjugateProductCertificate::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = "conjugate_product";
  j["target"] = target.to_string();
  j["base"] = base.to_string();
  auto& arr = j["factors"] = nlohmann::ordered_json::array();
  for (const auto& f : factors) {
    arr.push_back({{"conjugator", f.conjugator.to_string()}, {"sign", f.sign}});
  }
  j["diagnostics"] = diagnostics;
  return j;
}

nlohmann::ordered_json commutator_certificate(const Permutation& g, const CommutatorWitness& w) {
  nlohmann::ordered_json j;
  j["kind"] = "commutator";
  j["target"] = g.to_string();
  j["b"] = w.b.to_string();
  j["c"] = w.c.to_string();
  return j;
}

void verify_commutator_certificate(const nlohmann::json& j) {
  Permutation g, b, c;
  try {
    g = Permutation::parse(j.at("target").get<std::string>());
    b = Permutation::parse(j.at("b").get<std::string>());
    c = Permutation::parse(j.at("c").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedCertificate, e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedCertificate, e.what());
  }
  const auto product = commutator(b, c);
  if (product != g) {
    throw Error(ErrorCode::RecompositionMismatch,
                "[b, c] = " + product.to_string() + ", not " + g.to_string());
  }
}

ConjugateProductCertificate ConjugateProductCertificate::from_json(const nlohmann::json& j) {
  try {
    ConjugateProductCertificate c;
    c.target = Permutation::parse(j.at("target").get<std::string>());
    c.base = Permutation::parse(j.at("base").get<std::string>());
    for (const auto& f : j.at("factors")) {
      const int sign = f.at("sign").get<int>();
      if (sign != 1 && sign != -1) throw Error(ErrorCode::MalformedCertificate, "sign must be +1 or -1");
      c.factors.push_back({Permutation::parse(f.at("conjugator").get<std::string>()), sign});
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedCertificate, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedCertificate) throw;
    throw Error(ErrorCode::MalformedCertificate, e.what());
  }
}

namespace {

/// Breadth-first search in the Cayley graph of A_w with respect to the
/// Sym(w)-class of a compressed base element.
struct ClassSearch {
  std::shared_ptr<const SymmetricGroup> alt;
  std::vector<ElementId> members;
  std::vector<Permutation> conjugators;  // conjugate(base, conjugators[j]) = members[j]
  std::vector<std::uint8_t> dist;
  std::vector<ElementId> parent;
  std::vector<std::uint32_t> via;
};

constexpr std::uint8_t kUnreached = 0xFF;

std::shared_ptr<const ClassSearch> class_search(const Permutation& base, std::size_t w) {
  static std::mutex mutex;
  static std::map<Permutation, std::shared_ptr<const ClassSearch>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[base];
  if (slot) return slot;

  auto cs = std::make_shared<ClassSearch>();
  cs->alt = symmetric_group(w, true);
  const auto& alt = *cs->alt;
  std::vector<char> is_member(alt.order(), 0);
  std::vector<Permutation> elems{base};
  cs->conjugators.push_back(Permutation{});
  cs->members.push_back(alt.id_of(base));
  is_member[cs->members.back()] = 1;
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (Point a = 1; a < w; ++a) {
      const Permutation t = Permutation::transposition(a, a + 1);
      Permutation next = conjugate(elems[head], t);
      const ElementId id = alt.id_of(next);
      if (is_member[id]) continue;
      is_member[id] = 1;
      cs->members.push_back(id);
      cs->conjugators.push_back(t * cs->conjugators[head]);
      elems.push_back(std::move(next));
    }
  }

  cs->dist.assign(alt.order(), kUnreached);
  cs->parent.assign(alt.order(), 0);
  cs->via.assign(alt.order(), 0);
  std::vector<ElementId> frontier{alt.identity()};
  cs->dist[alt.identity()] = 0;
  for (std::uint8_t level = 0; !frontier.empty() && level < kUnreached - 1; ++level) {
    std::vector<ElementId> next;
    for (auto x : frontier) {
      for (std::uint32_t j = 0; j < cs->members.size(); ++j) {
        const ElementId y = alt.multiply(x, cs->members[j]);
        if (cs->dist[y] != kUnreached) continue;
        cs->dist[y] = static_cast<std::uint8_t>(level + 1);
        cs->parent[y] = x;
        cs->via[y] = j;
        next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  slot = std::move(cs);
  return slot;
}

/// Carries a permutation of {1..w} onto the sorted window.
Permutation relabel(const Permutation& p, const std::vector<Point>& window) {
  std::vector<std::pair<Point, Point>> map;
  for (const auto& [x, y] : p.entries()) map.emplace_back(window[x - 1], window[y - 1]);
  return Permutation::from_pairs(std::move(map));
}

/// Inverse of relabel for permutations supported in the window.
Permutation compress_to(const Permutation& p, const std::vector<Point>& window) {
  auto index = [&](Point x) {
    return static_cast<Point>(std::lower_bound(window.begin(), window.end(), x) - window.begin() + 1);
  };
  std::vector<std::pair<Point, Point>> map;
  for (const auto& [x, y] : p.entries()) map.emplace_back(index(x), index(y));
  return Permutation::from_pairs(std::move(map));
}

std::vector<Point> free_points(const std::vector<Point>& taken, std::size_t count) {
  std::vector<Point> out;
  for (Point x = 1; out.size() < count; ++x) {
    if (!std::binary_search(taken.begin(), taken.end(), x)) out.push_back(x);
  }
  return out;
}

}  // namespace

ConjugateProductCertificate express_as_conjugates(const Permutation& h, const Permutation& g) {
  if (g.is_identity()) throw Error(ErrorCode::IdentityBase, "cannot build from the identity");
  if (!h.is_even()) {
    throw Error(ErrorCode::OddPermutation,
                h.to_string() + " is odd; conjugates of an even base only reach even targets");
  }

  ConjugateProductCertificate cert;
  cert.target = h;
  cert.diagnostics["requested_base"] = g.to_string();

  // Bring the base into A_inf with a 2-cycle.
  Permutation base = g;
  std::vector<std::string> added;
  if (!g.is_even() || !has_two_cycle(g)) {
    const std::size_t extra = g.is_even() ? 2 : 1;
    const auto fresh = free_points(g.support(), 2 * extra);
    for (std::size_t i = 0; i < extra; ++i) {
      const auto t = Permutation::transposition(fresh[2 * i], fresh[2 * i + 1]);
      base = base * t;
      added.push_back(t.to_string());
    }
  }
  cert.base = base;
  cert.diagnostics["added_transpositions"] = added;
  if (h.is_identity()) {
    cert.diagnostics["blocks"] = nlohmann::ordered_json::array();
    return cert;
  }

  std::vector<Point> window = base.support();
  if (window.size() < 5) {
    for (auto x : free_points(window, 5 - window.size())) window.push_back(x);
    std::sort(window.begin(), window.end());
  }
  const std::size_t w = window.size();
  cert.diagnostics["window"] = window;
  if (w > kMaxCoveringDegree) {
    throw Error(ErrorCode::BlockSearchFailed,
                "window of " + std::to_string(w) + " points exceeds the materialization bound " +
                    std::to_string(kMaxCoveringDegree) + " (base " + base.to_string() + ")");
  }

  // Chop h into even blocks of support at most w.
  std::vector<Permutation> blocks;
  Permutation rest = h;
  while (!rest.is_identity()) {
    if (rest.support_size() <= w) {
      blocks.push_back(rest);
      break;
    }
    bool found = false;
    for (std::size_t k = w; k >= 2 && !found; --k) {
      auto parts = split(rest, k);
      if (parts.left.is_identity() || !parts.left.is_even()) continue;
      blocks.push_back(std::move(parts.left));
      rest = std::move(parts.right);
      found = true;
    }
    if (!found) {
      throw Error(ErrorCode::BlockSearchFailed, "no even prefix block of " + rest.to_string());
    }
  }

  const auto search = class_search(compress_to(base, window), w);
  const auto& alt = *search->alt;
  auto& block_log = cert.diagnostics["blocks"] = nlohmann::ordered_json::array();
  for (const auto& block : blocks) {
    // Swap the points of the block that lie outside the window with unused
    // window points.
    const auto support = block.support();
    std::vector<Point> outside;
    std::vector<Point> vacant;
    std::set_difference(support.begin(), support.end(), window.begin(), window.end(),
                        std::back_inserter(outside));
    std::set_difference(window.begin(), window.end(), support.begin(), support.end(),
                        std::back_inserter(vacant));
    std::vector<std::pair<Point, Point>> swaps;
    for (std::size_t i = 0; i < outside.size(); ++i) {
      swaps.emplace_back(outside[i], vacant[i]);
      swaps.emplace_back(vacant[i], outside[i]);
    }
    const Permutation delta = Permutation::from_pairs(std::move(swaps));
    const Permutation moved = conjugate(block, delta);
    const ElementId target = alt.id_of(compress_to(moved, window));
    if (search->dist[target] == kUnreached) {
      throw Error(ErrorCode::BlockSearchFailed,
                  "block " + block.to_string() + " is not a product of conjugates of " +
                      base.to_string() + " inside the window");
    }
    std::vector<std::uint32_t> path;
    for (ElementId x = target; x != alt.identity(); x = search->parent[x]) {
      path.push_back(search->via[x]);
    }
    std::reverse(path.begin(), path.end());
    for (auto j : path) {
      cert.factors.push_back({delta * relabel(search->conjugators[j], window), 1});
    }
    block_log.push_back({{"block", block.to_string()},
                         {"transport", delta.to_string()},
                         {"conjugates", path.size()}});
  }

  if (cert.recompose() != h) {
    throw Error(ErrorCode::RecompositionMismatch, "certificate for " + h.to_string());
  }
  cert.diagnostics["factor_bound"] = cert.factor_bound();
  cert.diagnostics["within_bound"] =
      static_cast<double>(cert.factors.size()) <= cert.factor_bound();
  return cert;
}

}  // namespace cinorm

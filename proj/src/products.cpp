#include "cinorm/products.hpp"

#include <algorithm>
#include <cstdlib>

#include "cinorm/error.hpp"

namespace cinorm::prod {

Elem Factor::parse(std::string_view text) const {
  const std::string s(text);
  std::size_t used = 0;
  Elem v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Error(ErrorCode::ParseError, "bad element '" + s + "'");
  return v;
}

namespace {

class Cyclic final : public Factor {
 public:
  Cyclic(std::size_t n, CyclicNorm norm) : n_(static_cast<Elem>(n)), norm_(norm) {
    if (n == 0) throw Error(ErrorCode::OutOfRange, "modulus must be positive");
  }
  std::string name() const override {
    return "Z/" + std::to_string(n_) + (norm_ == CyclicNorm::Word ? " (word)" : " (discrete)");
  }
  Elem multiply(Elem a, Elem b) const override { return (a + b) % n_; }
  Elem inverse(Elem a) const override { return (n_ - a) % n_; }
  std::uint64_t norm(Elem a) const override {
    if (a == 0) return 0;
    if (norm_ == CyclicNorm::Discrete) return 1;
    return static_cast<std::uint64_t>(std::min(a, n_ - a));
  }
  std::vector<Elem> ball(std::uint64_t r) const override {
    std::vector<Elem> out;
    for (Elem a = 0; a < n_; ++a) {
      if (norm(a) <= r) out.push_back(a);
    }
    return out;
  }
  std::optional<std::uint64_t> diameter() const override {
    if (n_ == 1) return 0;
    return norm_ == CyclicNorm::Discrete ? 1 : static_cast<std::uint64_t>(n_ / 2);
  }
  Elem parse(std::string_view text) const override {
    const Elem v = Factor::parse(text);
    if (v < 0 || v >= n_) throw Error(ErrorCode::ParseError, "residue out of range");
    return v;
  }
  bool word_norm() const { return norm_ == CyclicNorm::Word; }
  Elem modulus() const { return n_; }

 private:
  Elem n_;
  CyclicNorm norm_;
};

class Integers final : public Factor {
 public:
  std::string name() const override { return "Z"; }
  Elem multiply(Elem a, Elem b) const override { return a + b; }
  Elem inverse(Elem a) const override { return -a; }
  std::uint64_t norm(Elem a) const override { return static_cast<std::uint64_t>(std::llabs(a)); }
  std::vector<Elem> ball(std::uint64_t r) const override {
    std::vector<Elem> out{0};
    for (Elem a = 1; a <= static_cast<Elem>(r); ++a) {
      out.push_back(a);
      out.push_back(-a);
    }
    return out;
  }
  std::optional<std::uint64_t> diameter() const override { return std::nullopt; }
};

class Oracle final : public Factor {
 public:
  explicit Oracle(GroupPtr g) : g_(std::move(g)) {
    if (!g_) throw Error(ErrorCode::ConfigInvalid, "missing group");
  }
  std::string name() const override { return g_->description() + " (discrete)"; }
  Elem identity() const override { return g_->identity(); }
  Elem multiply(Elem a, Elem b) const override {
    return g_->multiply(static_cast<ElementId>(a), static_cast<ElementId>(b));
  }
  Elem inverse(Elem a) const override { return g_->inverse(static_cast<ElementId>(a)); }
  std::uint64_t norm(Elem a) const override { return a == identity() ? 0 : 1; }
  std::vector<Elem> ball(std::uint64_t r) const override {
    std::vector<Elem> out{identity()};
    if (r == 0) return out;
    for (ElementId a = 0; a < g_->order(); ++a) {
      if (a != g_->identity()) out.push_back(a);
    }
    return out;
  }
  std::optional<std::uint64_t> diameter() const override { return g_->order() > 1 ? 1 : 0; }
  std::string format(Elem a) const override { return g_->label(static_cast<ElementId>(a)); }
  Elem parse(std::string_view text) const override { return g_->parse(text); }

 private:
  GroupPtr g_;
};

std::size_t element_count(const Factor& f) {
  const auto d = f.diameter();
  return d ? f.ball(*d).size() : static_cast<std::size_t>(-1);
}

}  // namespace

FactorPtr cyclic(std::size_t n, CyclicNorm norm) { return std::make_shared<Cyclic>(n, norm); }
FactorPtr integers() { return std::make_shared<Integers>(); }
FactorPtr finite_oracle(GroupPtr group) { return std::make_shared<Oracle>(std::move(group)); }

ProjectionFamily collapse_projection() {
  return {"collapse", [](const Factor& f, Elem) { return f.identity(); }};
}

ProjectionFamily shrink_projection() {
  return {"shrink", [](const Factor& f, Elem a) -> Elem {
            if (dynamic_cast<const Integers*>(&f) != nullptr) return a > 0 ? a - 1 : (a < 0 ? a + 1 : 0);
            if (const auto* c = dynamic_cast<const Cyclic*>(&f); c != nullptr && c->word_norm()) {
              if (a == 0) return 0;
              return 2 * a <= c->modulus() ? a - 1 : (a + 1) % c->modulus();
            }
            return f.identity();
          }};
}

ProjectionFamily identity_projection() {
  return {"identity", [](const Factor&, Elem a) { return a; }};
}

FreeProduct::FreeProduct(std::map<std::size_t, FactorPtr> factors) : factors_(std::move(factors)) {
  for (const auto& [i, f] : factors_) {
    if (!f) throw Error(ErrorCode::ConfigInvalid, "factor " + std::to_string(i) + " is missing");
  }
}

const Factor& FreeProduct::factor(std::size_t index) const {
  const auto it = factors_.find(index);
  if (it == factors_.end()) throw Error(ErrorCode::OutOfRange, "no factor " + std::to_string(index));
  return *it->second;
}

ReducedWord FreeProduct::reduce(const std::vector<Letter>& raw) const {
  ReducedWord w;
  for (const auto& l : raw) {
    const auto& f = factor(l.factor);
    if (f.is_identity(l.element)) continue;
    if (!w.letters.empty() && w.letters.back().factor == l.factor) {
      const Elem merged = f.multiply(w.letters.back().element, l.element);
      if (f.is_identity(merged)) {
        w.letters.pop_back();
      } else {
        w.letters.back().element = merged;
      }
    } else {
      w.letters.push_back(l);
    }
  }
  return w;
}

ReducedWord FreeProduct::multiply(const ReducedWord& a, const ReducedWord& b) const {
  std::vector<Letter> raw = a.letters;
  raw.insert(raw.end(), b.letters.begin(), b.letters.end());
  return reduce(raw);
}

ReducedWord FreeProduct::inverse(const ReducedWord& w) const {
  ReducedWord out;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    out.letters.push_back({it->factor, factor(it->factor).inverse(it->element)});
  }
  return out;
}

ReducedWord FreeProduct::include(std::size_t index, Elem e) const { return reduce({{index, e}}); }

std::uint64_t FreeProduct::l1_norm(const ReducedWord& w) const {
  std::uint64_t total = 0;
  for (const auto& l : w.letters) total += factor(l.factor).norm(l.element);
  return total;
}

std::uint64_t FreeProduct::distance(const ReducedWord& a, const ReducedWord& b) const {
  return l1_norm(multiply(a, inverse(b)));
}

std::string FreeProduct::format(const ReducedWord& w) const {
  if (w.empty()) return "()";
  std::string out;
  for (const auto& l : w.letters) {
    out += "(" + std::to_string(l.factor) + ":" + factor(l.factor).format(l.element) + ")";
  }
  return out;
}

ReducedWord FreeProduct::parse(std::string_view text) const {
  std::vector<Letter> raw;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip_space();
  if (text.substr(pos) == "()") return {};
  while (skip_space(), pos < text.size()) {
    if (text[pos] != '(') throw Error(ErrorCode::ParseError, "expected '(' at " + std::to_string(pos));
    const auto colon = text.find(':', pos);
    if (colon == std::string_view::npos) throw Error(ErrorCode::ParseError, "missing ':'");
    const std::string idx(text.substr(pos + 1, colon - pos - 1));
    std::size_t used = 0;
    std::size_t index = 0;
    try {
      index = std::stoul(idx, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != idx.size()) throw Error(ErrorCode::ParseError, "bad factor index '" + idx + "'");
    int depth = 1;
    std::size_t end = colon + 1;
    for (; end < text.size(); ++end) {
      if (text[end] == '(') ++depth;
      if (text[end] == ')' && --depth == 0) break;
    }
    if (end >= text.size()) throw Error(ErrorCode::ParseError, "unbalanced parentheses");
    raw.push_back({index, factor(index).parse(text.substr(colon + 1, end - colon - 1))});
    pos = end + 1;
  }
  return reduce(raw);
}

std::vector<ReducedWord> FreeProduct::ball(std::uint64_t budget) const {
  // Non-identity letters of each factor with their norms, cheapest first.
  std::vector<std::pair<Letter, std::uint64_t>> letters;
  for (const auto& [i, f] : factors_) {
    for (Elem e : f->ball(budget)) {
      if (!f->is_identity(e)) letters.push_back({{i, e}, f->norm(e)});
    }
  }
  std::vector<ReducedWord> out{ReducedWord{}};
  std::vector<std::uint64_t> norms{0};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& [l, n] : letters) {
      if (norms[head] + n > budget) continue;
      if (!out[head].empty() && out[head].letters.back().factor == l.factor) continue;
      ReducedWord w = out[head];
      w.letters.push_back(l);
      out.push_back(std::move(w));
      norms.push_back(norms[head] + n);
    }
  }
  return out;
}

ReducedWord prefix_project(const ReducedWord& w, const FreeProduct& group,
                           const ProjectionFamily& family) {
  if (w.empty()) return w;
  std::vector<Letter> raw = w.letters;
  raw.front().element = family.apply(group.factor(raw.front().factor), raw.front().element);
  return group.reduce(raw);
}

DirectSum::DirectSum(std::string name, std::size_t first_index, std::size_t last_index,
                     FactorAt factor_at)
    : name_(std::move(name)), first_(first_index), last_(last_index) {
  if (first_index > last_index) throw Error(ErrorCode::OutOfRange, "empty index range");
  for (std::size_t i = first_index; i <= last_index; ++i) {
    factors_.push_back(factor_at(i));
    if (!factors_.back()) throw Error(ErrorCode::ConfigInvalid, "factor " + std::to_string(i) + " is missing");
  }
}

DirectSum DirectSum::cyclic_family(std::size_t first_index, std::size_t last_index) {
  if (first_index == 0) throw Error(ErrorCode::OutOfRange, "Z/0 is not a finite factor");
  return DirectSum("sum of Z/i for " + std::to_string(first_index) + " <= i <= " +
                       std::to_string(last_index),
                   first_index, last_index, [](std::size_t i) { return cyclic(i); });
}

const Factor& DirectSum::factor(std::size_t index) const {
  if (index < first_ || index > last_) {
    throw Error(ErrorCode::OutOfRange, "index " + std::to_string(index) + " outside the family");
  }
  return *factors_[index - first_];
}

SparseSumElement DirectSum::make(const std::map<std::size_t, Elem>& terms) const {
  SparseSumElement g;
  for (const auto& [i, e] : terms) {
    if (!factor(i).is_identity(e)) g.terms.emplace(i, e);
  }
  return g;
}

SparseSumElement DirectSum::multiply(const SparseSumElement& a, const SparseSumElement& b) const {
  SparseSumElement out = a;
  for (const auto& [i, e] : b.terms) {
    const auto& f = factor(i);
    auto it = out.terms.find(i);
    if (it == out.terms.end()) {
      out.terms.emplace(i, e);
      continue;
    }
    it->second = f.multiply(it->second, e);
    if (f.is_identity(it->second)) out.terms.erase(it);
  }
  return out;
}

SparseSumElement DirectSum::inverse(const SparseSumElement& g) const {
  SparseSumElement out;
  for (const auto& [i, e] : g.terms) out.terms.emplace(i, factor(i).inverse(e));
  return out;
}

std::uint64_t DirectSum::norm(const SparseSumElement& g) const {
  std::uint64_t total = 0;
  for (const auto& [i, e] : g.terms) total += factor(i).norm(e);
  return total;
}

std::uint64_t DirectSum::distance(const SparseSumElement& a, const SparseSumElement& b) const {
  return norm(multiply(a, inverse(b)));
}

std::string DirectSum::format(const SparseSumElement& g) const {
  if (g.is_zero()) return "0";
  std::string out;
  for (const auto& [i, e] : g.terms) {
    if (!out.empty()) out += " + ";
    out += std::to_string(i) + ":" + factor(i).format(e);
  }
  return out;
}

SparseSumElement sum_project(const SparseSumElement& g, const DirectSum& group,
                             const ProjectionFamily& family) {
  if (g.is_zero()) return g;
  SparseSumElement out = g;
  auto first = out.terms.begin();
  const auto& f = group.factor(first->first);
  first->second = family.apply(f, first->second);
  if (f.is_identity(first->second)) out.terms.erase(first);
  return out;
}

bool ContractionAudit::ok() const {
  return std::all_of(std::begin(conditions), std::end(conditions),
                     [](const BoundStats& b) { return b.ok(); });
}

std::vector<std::string> ContractionAudit::failed() const {
  static const char* kNames[] = {"i", "ii", "iii", "iv"};
  std::vector<std::string> out;
  for (int c = 0; c < 4; ++c) {
    if (!conditions[c].ok()) out.emplace_back(kNames[c]);
  }
  return out;
}

nlohmann::ordered_json ContractionAudit::to_json() const {
  nlohmann::ordered_json j;
  j["carrier"] = carrier;
  j["projection"] = projection;
  j["displacement_bound"] = displacement_bound;
  j["elements"] = elements;
  j["pairs"] = pairs;
  j["conditions"] = nlohmann::ordered_json::array();
  for (const auto& c : conditions) j["conditions"].push_back(c.to_json());
  j["failed"] = failed();
  j["ok"] = ok();
  return j;
}

namespace {

std::string free_product_name(const FreeProduct& group) {
  std::string out;
  for (const auto& [i, f] : group.factors()) {
    if (!out.empty()) out += " * ";
    out += f->name();
  }
  return out;
}

CarrierOps<SparseSumElement> sum_ops(const DirectSum& group, const ProjectionFamily& family) {
  return {
      [&group](const SparseSumElement& g) { return group.norm(g); },
      [&group](const SparseSumElement& a, const SparseSumElement& b) { return group.distance(a, b); },
      [&group, family](const SparseSumElement& g) { return sum_project(g, group, family); },
      [](const SparseSumElement& g) { return g.is_zero(); },
      [&group](const SparseSumElement& g) { return group.format(g); },
  };
}

}  // namespace

ContractionAudit audit_free_product(const FreeProduct& group, const ProjectionFamily& family,
                                    std::uint64_t budget) {
  const auto words = group.ball(budget);
  CarrierOps<ReducedWord> ops{
      [&group](const ReducedWord& w) { return group.l1_norm(w); },
      [&group](const ReducedWord& a, const ReducedWord& b) { return group.distance(a, b); },
      [&group, &family](const ReducedWord& w) { return prefix_project(w, group, family); },
      [](const ReducedWord& w) { return w.empty(); },
      [&group](const ReducedWord& w) { return group.format(w); },
  };
  return verify_contraction_conditions<ReducedWord>(
      free_product_name(group) + ", l1 <= " + std::to_string(budget), family.name, words, ops);
}

ContractionAudit audit_direct_sum_exhaustive(const DirectSum& group,
                                             const ProjectionFamily& family,
                                             std::size_t max_terms) {
  std::vector<SparseSumElement> elements{SparseSumElement{}};
  // Extend by one term at a larger index than every existing one.
  for (std::size_t head = 0; head < elements.size(); ++head) {
    const auto base = elements[head];
    if (base.terms.size() >= max_terms) continue;
    const std::size_t from = base.is_zero() ? group.first_index() : base.terms.rbegin()->first + 1;
    for (std::size_t i = from; i <= group.last_index(); ++i) {
      const auto& f = group.factor(i);
      const auto d = f.diameter();
      if (!d) throw Error(ErrorCode::ConfigInvalid, "factor " + std::to_string(i) + " is infinite");
      for (Elem e : f.ball(*d)) {
        if (f.is_identity(e)) continue;
        auto g = base;
        g.terms.emplace(i, e);
        elements.push_back(std::move(g));
      }
    }
  }
  return verify_contraction_conditions<SparseSumElement>(
      group.name() + ", at most " + std::to_string(max_terms) + " terms", family.name, elements,
      sum_ops(group, family));
}

ContractionAudit audit_direct_sum_patterns(const DirectSum& group,
                                           const ProjectionFamily& family,
                                           std::size_t max_terms) {
  // Coordinate kinds: g only, h only, equal, different.
  enum Kind { GOnly, HOnly, Equal, Differ };
  std::map<SparseSumElement, std::size_t> index;
  std::vector<SparseSumElement> sample;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  auto intern = [&](const SparseSumElement& g) {
    auto [it, inserted] = index.emplace(g, sample.size());
    if (inserted) sample.push_back(g);
    return it->second;
  };

  std::vector<Kind> pattern;
  std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t g_terms, std::size_t h_terms) {
    // Place the pattern on the least admissible indices.
    SparseSumElement g, h;
    std::size_t next = group.first_index();
    bool placed = true;
    for (Kind k : pattern) {
      const std::size_t need = k == Differ ? 3 : 2;
      while (next <= group.last_index() && element_count(group.factor(next)) < need) ++next;
      if (next > group.last_index()) {
        placed = false;
        break;
      }
      const auto& f = group.factor(next);
      const auto elems = f.ball(*f.diameter());
      std::vector<Elem> nontrivial;
      for (Elem e : elems) {
        if (!f.is_identity(e)) nontrivial.push_back(e);
      }
      if (k != HOnly) g.terms.emplace(next, nontrivial[0]);
      if (k == HOnly || k == Equal) h.terms.emplace(next, nontrivial[0]);
      if (k == Differ) h.terms.emplace(next, nontrivial[1]);
      ++next;
    }
    if (!placed) return;
    pairs.emplace_back(intern(g), intern(h));
    for (Kind k : {GOnly, HOnly, Equal, Differ}) {
      const std::size_t gt = g_terms + (k != HOnly ? 1 : 0);
      const std::size_t ht = h_terms + (k != GOnly ? 1 : 0);
      if (gt > max_terms || ht > max_terms) continue;
      pattern.push_back(k);
      extend(gt, ht);
      pattern.pop_back();
    }
  };
  extend(0, 0);
  return verify_contraction_conditions<SparseSumElement>(
      group.name() + ", coordinate patterns with at most " + std::to_string(max_terms) + " terms",
      family.name, sample, sum_ops(group, family), 1, pairs);
}

ContractionAudit audit_factor(const FactorPtr& factor, const ProjectionFamily& family,
                              std::uint64_t radius) {
  const auto& f = *factor;
  CarrierOps<Elem> ops{
      [&f](const Elem& a) { return f.norm(a); },
      [&f](const Elem& a, const Elem& b) { return f.distance(a, b); },
      [&f, &family](const Elem& a) { return family.apply(f, a); },
      [&f](const Elem& a) { return f.is_identity(a); },
      [&f](const Elem& a) { return f.format(a); },
  };
  return verify_contraction_conditions<Elem>(f.name() + ", norm <= " + std::to_string(radius),
                                             family.name, f.ball(radius), ops);
}

BoundStats check_inclusion_isometry(const FreeProduct& group, std::size_t index,
                                    std::uint64_t radius) {
  BoundStats stats("free_product_inclusion_isometry", "d(i(a), i(b)) = d_i(a, b)");
  const auto& f = group.factor(index);
  const auto elems = f.ball(radius);
  for (Elem a : elems) {
    for (Elem b : elems) {
      const bool equal = group.distance(group.include(index, a), group.include(index, b)) ==
                         f.distance(a, b);
      if (stats.record_holds(equal) && stats.witness.empty()) {
        stats.witness = "a=" + f.format(a) + " b=" + f.format(b);
      }
    }
  }
  return stats;
}

bool NormEquivalence::matches() const {
  return words > 0 && min_ratio == static_cast<double>(factor_min) &&
         max_ratio == static_cast<double>(factor_max);
}

nlohmann::ordered_json NormEquivalence::to_json() const {
  nlohmann::ordered_json j;
  j["words"] = words;
  j["min_ratio"] = min_ratio;
  j["max_ratio"] = max_ratio;
  j["factor_fineness"] = factor_min;
  j["factor_max_norm"] = factor_max;
  j["matches"] = matches();
  return j;
}

NormEquivalence l1_support_equivalence(const FreeProduct& group, std::uint64_t budget) {
  NormEquivalence out;
  out.factor_min = budget + 1;
  for (const auto& [i, f] : group.factors()) {
    for (Elem e : f->ball(budget)) {
      if (f->is_identity(e)) continue;
      out.factor_min = std::min(out.factor_min, f->norm(e));
      out.factor_max = std::max(out.factor_max, f->norm(e));
    }
  }
  bool first = true;
  for (const auto& w : group.ball(budget)) {
    if (w.empty()) continue;
    ++out.words;
    const double r = static_cast<double>(group.l1_norm(w)) / static_cast<double>(w.letters.size());
    out.min_ratio = first ? r : std::min(out.min_ratio, r);
    out.max_ratio = first ? r : std::max(out.max_ratio, r);
    first = false;
  }
  return out;
}

}  // namespace cinorm::prod

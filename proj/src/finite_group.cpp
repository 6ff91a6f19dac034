#include "cinorm/finite_group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include <nlohmann/json.hpp>

#include "cinorm/error.hpp"

namespace cinorm {

namespace {

std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

std::size_t lehmer_rank(const std::uint8_t* images, std::size_t n) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) smaller += images[j] < images[i];
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

bool even_images(const std::uint8_t* images, std::size_t n) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) inversions += images[j] < images[i];
  return inversions % 2 == 0;
}

constexpr std::size_t kTableOrderLimit = 2520;

}  // namespace

SymmetricGroup::SymmetricGroup(std::size_t degree, bool alternating)
    : degree_(degree), alternating_(alternating) {
  if (degree == 0 || degree > 10) {
    throw Error(ErrorCode::OutOfRange, "symmetric groups are enumerated for degree 1..10");
  }
  by_rank_.assign(factorial(degree), -1);
  std::vector<std::uint8_t> perm(degree);
  std::iota(perm.begin(), perm.end(), std::uint8_t{0});
  do {
    if (alternating && !even_images(perm.data(), degree)) continue;
    by_rank_[lehmer_rank(perm.data(), degree)] = static_cast<std::int32_t>(order_);
    images_.insert(images_.end(), perm.begin(), perm.end());
    ++order_;
  } while (std::next_permutation(perm.begin(), perm.end()));
  identity_ = 0;  // lexicographically first

  inverse_.resize(order_);
  std::vector<std::uint8_t> inv(degree);
  for (ElementId a = 0; a < order_; ++a) {
    const auto* img = images(a);
    for (std::size_t i = 0; i < degree; ++i) inv[img[i]] = static_cast<std::uint8_t>(i);
    inverse_[a] = id_of_images(inv.data());
  }

  if (order_ <= kTableOrderLimit) {
    std::vector<std::uint16_t> table(order_ * order_);
    std::vector<std::uint8_t> prod(degree);
    for (ElementId a = 0; a < order_; ++a) {
      const auto* ia = images(a);
      for (ElementId b = 0; b < order_; ++b) {
        const auto* ib = images(b);
        for (std::size_t i = 0; i < degree; ++i) prod[i] = ib[ia[i]];
        table[std::size_t{a} * order_ + b] = static_cast<std::uint16_t>(id_of_images(prod.data()));
      }
    }
    table_ = std::move(table);
  }
}

ElementId SymmetricGroup::id_of_images(const std::uint8_t* img) const {
  const auto id = by_rank_[lehmer_rank(img, degree_)];
  if (id < 0) throw Error(ErrorCode::OddPermutation, "element is not in the alternating group");
  return static_cast<ElementId>(id);
}

ElementId SymmetricGroup::multiply(ElementId a, ElementId b) const {
  if (!table_.empty()) return table_[std::size_t{a} * order_ + b];
  std::uint8_t prod[16];
  const auto* ia = images(a);
  const auto* ib = images(b);
  for (std::size_t i = 0; i < degree_; ++i) prod[i] = ib[ia[i]];
  return id_of_images(prod);
}

Permutation SymmetricGroup::element(ElementId a) const {
  std::vector<Point> img(degree_);
  const auto* p = images(a);
  for (std::size_t i = 0; i < degree_; ++i) img[i] = static_cast<Point>(p[i] + 1);
  return Permutation::from_images(img);
}

ElementId SymmetricGroup::id_of(const Permutation& p) const {
  if (p.largest_moved_point() > degree_) {
    throw Error(ErrorCode::SupportExceedsDegree,
                p.to_string() + " does not act on 1.." + std::to_string(degree_));
  }
  std::uint8_t img[16];
  for (std::size_t i = 0; i < degree_; ++i) {
    img[i] = static_cast<std::uint8_t>(p(static_cast<Point>(i + 1)) - 1);
  }
  return id_of_images(img);
}

std::string SymmetricGroup::label(ElementId a) const { return element(a).to_string(); }

ElementId SymmetricGroup::parse(std::string_view text) const {
  return id_of(Permutation::parse(text));
}

std::string SymmetricGroup::description() const {
  return std::string(alternating_ ? "A" : "S") + "_" + std::to_string(degree_);
}

CyclicGroup::CyclicGroup(std::size_t modulus) : modulus_(modulus) {
  if (modulus == 0 || modulus > (1u << 30)) {
    throw Error(ErrorCode::OutOfRange, "cyclic modulus must be positive");
  }
}

ElementId CyclicGroup::parse(std::string_view text) const {
  try {
    const long long v = std::stoll(std::string(text));
    const long long m = static_cast<long long>(modulus_);
    return static_cast<ElementId>(((v % m) + m) % m);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "not an integer: " + std::string(text));
  }
}

std::string CyclicGroup::description() const { return "Z/" + std::to_string(modulus_); }

DirectProduct::DirectProduct(GroupPtr left, GroupPtr right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (left_->order() * right_->order() > (std::size_t{1} << 31)) {
    throw Error(ErrorCode::OutOfRange, "direct product too large to enumerate");
  }
}

ElementId DirectProduct::identity() const {
  return static_cast<ElementId>(left_->identity() * right_->order() + right_->identity());
}

ElementId DirectProduct::multiply(ElementId a, ElementId b) const {
  const std::size_t m = right_->order();
  return static_cast<ElementId>(left_->multiply(static_cast<ElementId>(a / m), static_cast<ElementId>(b / m)) * m +
                                right_->multiply(static_cast<ElementId>(a % m), static_cast<ElementId>(b % m)));
}

ElementId DirectProduct::inverse(ElementId a) const {
  const std::size_t m = right_->order();
  return static_cast<ElementId>(left_->inverse(static_cast<ElementId>(a / m)) * m +
                                right_->inverse(static_cast<ElementId>(a % m)));
}

std::string DirectProduct::label(ElementId a) const {
  const std::size_t m = right_->order();
  return "[" + left_->label(static_cast<ElementId>(a / m)) + ";" +
         right_->label(static_cast<ElementId>(a % m)) + "]";
}

ElementId DirectProduct::parse(std::string_view text) const {
  if (text.size() < 3 || text.front() != '[' || text.back() != ']') {
    throw Error(ErrorCode::ParseError, "product elements are written [g;h]");
  }
  int depth = 0;
  for (std::size_t i = 1; i + 1 < text.size(); ++i) {
    if (text[i] == '[') ++depth;
    if (text[i] == ']') --depth;
    if (text[i] == ';' && depth == 0) {
      const auto a = left_->parse(text.substr(1, i - 1));
      const auto b = right_->parse(text.substr(i + 1, text.size() - i - 2));
      return static_cast<ElementId>(a * right_->order() + b);
    }
  }
  throw Error(ErrorCode::ParseError, "missing ';' in product element");
}

std::string DirectProduct::description() const {
  return left_->description() + " x " + right_->description();
}

std::shared_ptr<const SymmetricGroup> symmetric_group(std::size_t degree, bool alternating) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, bool>, std::shared_ptr<const SymmetricGroup>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{degree, alternating}];
  if (!slot) slot = std::make_shared<SymmetricGroup>(degree, alternating);
  return slot;
}

namespace {

GroupPtr group_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family")) {
    throw Error(ErrorCode::ParseError, "carrier description needs a \"family\" field");
  }
  const auto family = j.at("family").get<std::string>();
  if (family == "S" || family == "A") {
    return symmetric_group(j.at("degree").get<std::size_t>(), family == "A");
  }
  if (family == "Z") return std::make_shared<CyclicGroup>(j.at("modulus").get<std::size_t>());
  if (family == "product") {
    const auto& factors = j.at("factors");
    if (!factors.is_array() || factors.empty()) {
      throw Error(ErrorCode::ParseError, "product needs a non-empty factor list");
    }
    GroupPtr acc = group_from_json(factors[0]);
    for (std::size_t i = 1; i < factors.size(); ++i) {
      acc = std::make_shared<DirectProduct>(acc, group_from_json(factors[i]));
    }
    return acc;
  }
  throw Error(ErrorCode::ParseError, "unknown family \"" + family + "\"");
}

}  // namespace

GroupPtr group_from_json_text(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  try {
    return group_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

AxiomReport check_group_axioms(const FiniteGroup& group, std::mt19937_64& rng,
                               std::size_t triples) {
  AxiomReport report;
  const std::size_t n = group.order();
  const ElementId e = group.identity();
  for (ElementId a = 0; a < n; ++a) {
    if (group.multiply(a, e) != a || group.multiply(e, a) != a) {
      report.ok = false;
      report.failure = "identity law fails at " + group.label(a);
      return report;
    }
    const ElementId inv = group.inverse(a);
    if (group.multiply(a, inv) != e || group.multiply(inv, a) != e) {
      report.ok = false;
      report.failure = "inverse law fails at " + group.label(a);
      return report;
    }
  }
  std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(n - 1));
  for (std::size_t t = 0; t < triples; ++t) {
    const ElementId a = pick(rng), b = pick(rng), c = pick(rng);
    if (group.multiply(group.multiply(a, b), c) != group.multiply(a, group.multiply(b, c))) {
      report.ok = false;
      report.failure = "associativity fails at (" + group.label(a) + ", " + group.label(b) +
                       ", " + group.label(c) + ")";
      return report;
    }
    ++report.associativity_triples;
  }
  return report;
}

}  // namespace cinorm

#include "cinorm/quasimorphism.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "cinorm/error.hpp"

namespace cinorm {

SampledQuasimorphism SampledQuasimorphism::integer_window(
    std::int64_t lo, std::int64_t hi, const std::function<double(std::int64_t)>& psi) {
  if (lo > hi) throw Error(ErrorCode::OutOfRange, "empty integer window");
  SampledQuasimorphism q;
  q.description = "Z on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
  q.multiply = [](std::int64_t a, std::int64_t b) { return a + b; };
  q.identity = 0;
  for (std::int64_t x = lo; x <= hi; ++x) q.values[x] = psi(x);
  return q;
}

SampledQuasimorphism SampledQuasimorphism::on_group(const GroupPtr& group,
                                                    const std::function<double(ElementId)>& psi) {
  SampledQuasimorphism q;
  q.description = group->description();
  q.multiply = [group](std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(
        group->multiply(static_cast<ElementId>(a), static_cast<ElementId>(b)));
  };
  q.identity = group->identity();
  for (ElementId g = 0; g < group->order(); ++g) q.values[g] = psi(g);
  return q;
}

SampledQuasimorphism SampledQuasimorphism::integers_from_csv(std::string_view csv) {
  SampledQuasimorphism q;
  q.description = "Z sample from CSV";
  q.multiply = [](std::int64_t a, std::int64_t b) { return a + b; };
  std::istringstream in{std::string(csv)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected key,value");
    }
    try {
      std::size_t used = 0;
      const std::string key = line.substr(0, comma);
      const std::int64_t k = std::stoll(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
      q.values[k] = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      if (line_no == 1) continue;  // header
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + line);
    }
  }
  return q;
}

std::vector<ElementPair> pairs_within(const SampledQuasimorphism& psi) {
  std::vector<ElementPair> out;
  for (const auto& [g, gv] : psi.values) {
    for (const auto& [h, hv] : psi.values) {
      if (psi.contains(psi.multiply(g, h))) out.emplace_back(g, h);
    }
  }
  return out;
}

double estimate_defect(const SampledQuasimorphism& psi, const std::vector<ElementPair>& pairs) {
  double worst = 0.0;
  for (const auto& [g, h] : pairs) {
    const auto gh = psi.multiply(g, h);
    if (!psi.contains(g) || !psi.contains(h) || !psi.contains(gh)) {
      throw Error(ErrorCode::ProductOutsideSample, "product of " + std::to_string(g) + " and " +
                                                       std::to_string(h) + " is not sampled");
    }
    worst = std::max(worst, std::abs(psi.values.at(gh) - psi.values.at(g) - psi.values.at(h)));
  }
  return worst;
}

Homogenisation homogenise(const SampledQuasimorphism& psi, std::int64_t g, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "need at least one power");
  Homogenisation out;
  std::int64_t power = g;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i > 1) power = psi.multiply(power, g);
    if (!psi.contains(power)) {
      throw Error(ErrorCode::PowerOutsideSample,
                  "power " + std::to_string(i) + " of " + std::to_string(g) + " is not sampled");
    }
    out.sequence.push_back(psi.values.at(power) / static_cast<double>(i));
  }
  out.estimate = out.sequence.back();
  return out;
}

bool norm_lower_bound(double value, double k, double d, std::uint64_t g_norm) {
  const double denom = k + d;
  if (denom == 0.0) {
    if (value != 0.0) {
      throw Error(ErrorCode::DegenerateDenominator, "K + D = 0 with a non-zero value");
    }
    return true;
  }
  return static_cast<double>(g_norm) >= std::abs(value) / denom;
}

std::map<std::int64_t, std::uint64_t> interval_word_norms(const std::vector<std::int64_t>& gens,
                                                          std::int64_t lo, std::int64_t hi) {
  std::int64_t g_max = 0;
  for (auto s : gens) g_max = std::max(g_max, std::abs(s));
  if (g_max == 0) throw Error(ErrorCode::NotGenerating, "no non-zero generator");
  // Steps of a shortest word can be reordered so that partial sums stay
  // within one generator of the segment between 0 and the target.
  const std::int64_t a = std::min<std::int64_t>(lo, 0) - g_max;
  const std::int64_t b = std::max<std::int64_t>(hi, 0) + g_max;
  const auto width = static_cast<std::size_t>(b - a + 1);
  constexpr std::uint64_t kUnseen = ~std::uint64_t{0};
  std::vector<std::uint64_t> dist(width, kUnseen);
  std::deque<std::int64_t> queue{0};
  dist[static_cast<std::size_t>(-a)] = 0;
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    for (auto s : gens) {
      for (auto y : {x + s, x - s}) {
        if (y < a || y > b) continue;
        auto& slot = dist[static_cast<std::size_t>(y - a)];
        if (slot != kUnseen) continue;
        slot = dist[static_cast<std::size_t>(x - a)] + 1;
        queue.push_back(y);
      }
    }
  }
  std::map<std::int64_t, std::uint64_t> out;
  for (std::int64_t x = lo; x <= hi; ++x) {
    const auto v = dist[static_cast<std::size_t>(x - a)];
    if (v == kUnseen) {
      throw Error(ErrorCode::NotGenerating, std::to_string(x) + " is not reachable");
    }
    out[x] = v;
  }
  return out;
}

}  // namespace cinorm

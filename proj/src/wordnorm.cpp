#include "cinorm/wordnorm.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cinorm/error.hpp"

namespace cinorm::word {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::uint32_t NormTable::diameter() const {
  return values_.empty() ? 0 : *std::max_element(values_.begin(), values_.end());
}

std::string NormTable::to_csv() const {
  std::ostringstream os;
  os << "element,norm\n";
  for (ElementId g = 0; g < values_.size(); ++g) {
    os << csv_field(group_->label(g)) << ',' << values_[g] << '\n';
  }
  return os.str();
}

std::string NormTable::to_json() const {
  nlohmann::ordered_json j;
  j["carrier"] = group_->description();
  j["order"] = group_->order();
  auto& gens = j["generating_set"] = nlohmann::ordered_json::array();
  for (auto g : generators_) gens.push_back(group_->label(g));
  auto& values = j["values"] = nlohmann::ordered_json::array();
  for (ElementId g = 0; g < values_.size(); ++g) {
    values.push_back({{"element", group_->label(g)}, {"norm", values_[g]}});
  }
  return j.dump(2);
}

std::vector<ElementId> conjugacy_closure(const FiniteGroup& group,
                                         const std::vector<ElementId>& seeds) {
  std::vector<bool> member(group.order(), false);
  std::vector<ElementId> out;
  std::deque<ElementId> queue;
  auto add = [&](ElementId x) {
    if (!member[x]) {
      member[x] = true;
      out.push_back(x);
      queue.push_back(x);
    }
  };
  for (auto s : seeds) {
    add(s);
    add(group.inverse(s));
  }
  while (!queue.empty()) {
    const ElementId s = queue.front();
    queue.pop_front();
    for (ElementId t = 0; t < group.order(); ++t) {
      add(group.multiply(group.multiply(t, s), group.inverse(t)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

NormTable bfs_norm(GroupPtr group, std::vector<ElementId> generators) {
  const std::size_t n = group->order();
  {
    std::vector<ElementId> closed = generators;
    for (auto s : generators) closed.push_back(group->inverse(s));
    std::sort(closed.begin(), closed.end());
    closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
    generators = std::move(closed);
  }
  std::vector<std::uint32_t> dist(n, kUnreached);
  std::vector<ElementId> frontier{group->identity()};
  dist[group->identity()] = 0;
  std::size_t reached = 1;
  for (std::uint32_t level = 0; !frontier.empty(); ++level) {
    std::vector<ElementId> next;
    for (auto x : frontier) {
      for (auto s : generators) {
        const ElementId y = group->multiply(x, s);
        if (dist[y] == kUnreached) {
          dist[y] = level + 1;
          next.push_back(y);
        }
      }
    }
    reached += next.size();
    frontier = std::move(next);
  }
  if (reached != n) {
    throw Error(ErrorCode::NotGenerating, std::to_string(n - reached) + " of " +
                                              std::to_string(n) + " elements unreached");
  }
  return NormTable(std::move(group), std::move(generators), std::move(dist));
}

NormTable table_from(GroupPtr group, const std::vector<std::uint32_t>& values) {
  if (values.size() != group->order()) {
    throw Error(ErrorCode::DimensionMismatch, "value table does not cover the carrier");
  }
  return NormTable(std::move(group), {}, values);
}

std::string Ratio::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Domination audit_domination(const NormTable& nu, const NormTable& mu) {
  if (nu.values().size() != mu.values().size()) {
    throw Error(ErrorCode::DimensionMismatch, "norm tables live on different carriers");
  }
  Domination best{{0, 1}, nu.group().identity()};
  for (ElementId g = 0; g < nu.values().size(); ++g) {
    if (g == nu.group().identity()) continue;
    const std::int64_t a = mu[g];
    const std::int64_t b = nu[g];
    if (b == 0) continue;  // not a norm; audit_norm_axioms reports it
    const std::int64_t d = std::gcd(a, b);
    const Ratio r{a / d, b / d};
    if (best.constant < r) best = {r, g};
  }
  return best;
}

AxiomAudit audit_norm_axioms(const NormTable& table) {
  AxiomAudit audit;
  const FiniteGroup& g = table.group();
  const std::size_t n = g.order();
  for (ElementId a = 0; a < n; ++a) {
    if ((table[a] == 0) != (a == g.identity())) {
      audit.positive = false;
      audit.witness = g.label(a);
      return audit;
    }
    if (table[a] != table[g.inverse(a)]) {
      audit.symmetric = false;
      audit.witness = g.label(a);
      return audit;
    }
  }
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = 0; b < n; ++b) {
      if (table[g.multiply(a, b)] > table[a] + table[b]) {
        audit.triangle = false;
        audit.witness = g.label(a) + " , " + g.label(b);
        return audit;
      }
      const ElementId conj = g.multiply(g.multiply(b, a), g.inverse(b));
      if (table[conj] != table[a]) {
        audit.conjugation_invariant = false;
        audit.witness = g.label(a) + " by " + g.label(b);
        return audit;
      }
    }
  }
  return audit;
}

}  // namespace cinorm::word

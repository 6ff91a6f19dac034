#include "cinorm/intnorm.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "cinorm/error.hpp"

namespace cinorm::intnorm {

mpz_class generator(unsigned long m, unsigned long base) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), m);
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), base, m);
  return p * f;
}

mpz_class x_n(unsigned long n, unsigned long base) {
  if (n == 0) return 0;
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), base, n - 1);
  return p * f;
}

FactorialGenerators::FactorialGenerators(unsigned long max_index, unsigned long base)
    : base_(base) {
  if (base < 2) throw Error(ErrorCode::OutOfRange, "base must be at least 2");
  for (unsigned long m = 0; m <= max_index; ++m) members_.push_back(generator(m, base));
}

std::optional<std::size_t> FactorialGenerators::index_of(const mpz_class& value) const {
  const mpz_class a = abs(value);
  auto it = std::lower_bound(members_.begin(), members_.end(), a);
  if (it != members_.end() && *it == a) return static_cast<std::size_t>(it - members_.begin());
  return std::nullopt;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::ExactSearch: return "exact-search";
    case Method::UpperConstruction: return "upper-construction";
    case Method::LowerArgument: return "lower-argument";
  }
  return "unknown";
}

nlohmann::ordered_json IntNormResult::to_json(unsigned long base) const {
  nlohmann::ordered_json j;
  j["kind"] = "intnorm";
  j["target"] = target.get_str();
  j["base"] = base;
  j["method"] = to_string(method);
  if (value) {
    j["value"] = *value;
  } else {
    j["value"] = "Unknown";
  }
  if (upper_bound) j["upper_bound"] = *upper_bound;
  auto& terms = j["terms"] = nlohmann::ordered_json::array();
  for (const auto& t : certificate) terms.push_back(t.get_str());
  j["window_max_index"] = window_max_index;
  return j;
}

IntNormResult norm_upper(const mpz_class& x, const FactorialGenerators& gens) {
  const auto& g = gens.members();
  const mpz_class ax = abs(x);
  if (gens.max_index() + 1 < std::numeric_limits<unsigned long>::max() &&
      generator(gens.max_index() + 1, gens.base()) <= ax) {
    throw Error(ErrorCode::IndexBudgetExceeded,
                x.get_str() + " needs generators beyond index " + std::to_string(gens.max_index()));
  }
  IntNormResult out;
  out.target = x;
  out.method = Method::UpperConstruction;
  mpz_class rest = x;
  while (rest != 0) {
    const mpz_class a = abs(rest);
    const int sign = sgn(rest);
    // largest generator not above |rest|
    std::size_t i = static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), a) - g.begin()) - 1;
    mpz_class step = g[i];
    if (i + 1 < g.size() && g[i + 1] - a < a - g[i]) step = g[i + 1];
    out.window_max_index = std::max(out.window_max_index, i + (step == g[i] ? 0 : 1));
    const mpz_class term = sign * step;
    out.certificate.push_back(term);
    rest -= term;
  }
  out.value = out.certificate.size();
  out.upper_bound = out.value;
  return out;
}

namespace {

template <typename Int>
Int magnitude(const Int& v) {
  return v < 0 ? Int(-v) : v;
}

template <typename Int>
struct Search {
  const std::vector<Int>& gens;
  std::vector<Int> path;

  bool run(std::size_t rem, const Int& r, std::size_t top) {
    if (r == 0) return true;
    if (rem == 0) return false;
    const Int a = magnitude(r);
    for (std::size_t i = top + 1; i-- > 0;) {
      if (gens[i] * static_cast<long>(rem) < a) break;  // smaller generators fall short too
      for (int sign : {r > 0 ? 1 : -1, r > 0 ? -1 : 1}) {
        const Int term = sign > 0 ? gens[i] : Int(-gens[i]);
        path.push_back(term);
        if (run(rem - 1, Int(r - term), i)) return true;
        path.pop_back();
      }
    }
    return false;
  }
};

template <typename Int>
std::optional<std::vector<Int>> deepen(const Int& x, const std::vector<Int>& gens,
                                       std::size_t depth_cap) {
  for (std::size_t depth = 0; depth <= depth_cap; ++depth) {
    Search<Int> s{gens, {}};
    if (s.run(depth, x, gens.size() - 1)) return s.path;
  }
  return std::nullopt;
}

}  // namespace

IntNormResult norm_exact(const mpz_class& x, const FactorialGenerators& gens,
                         std::size_t depth_cap) {
  IntNormResult out;
  out.target = x;
  out.method = Method::ExactSearch;
  if (x == 0) {
    out.value = 0;
    out.upper_bound = 0;
    return out;
  }
  const unsigned long t = gens.base();
  const mpz_class ax = abs(x);
  // j: largest index with t^j j! <= |x|
  unsigned long j = 0;
  while (generator(j + 1, t) <= ax) ++j;
  const mpz_class reach = ax + mpz_class(static_cast<unsigned long>(depth_cap)) * generator(j, t);
  unsigned long top = j + 2;
  while (generator(top + 1, t) <= reach) ++top;
  out.window_max_index = top;

  std::vector<mpz_class> window;
  for (unsigned long m = 0; m <= top; ++m) window.push_back(generator(m, t));

  std::optional<std::vector<mpz_class>> found;
  const mpz_class limit = mpz_class(std::numeric_limits<long>::max() / 64);
  if (window.back() * static_cast<long>(depth_cap + 1) < limit) {
    std::vector<long> small;
    for (const auto& g : window) small.push_back(g.get_si());
    if (auto p = deepen<long>(x.get_si(), small, depth_cap)) {
      found.emplace();
      for (long v : *p) found->push_back(mpz_class(v));
    }
  } else {
    found = deepen<mpz_class>(x, window, depth_cap);
  }
  if (found) {
    out.certificate = std::move(*found);
    out.value = out.certificate.size();
    out.upper_bound = out.value;
    return out;
  }
  // Unknown within the cap: fall back on the greedy bound when it exists.
  try {
    const auto up = norm_upper(x, FactorialGenerators(top, t));
    out.upper_bound = up.value;
    out.certificate = up.certificate;
  } catch (const Error&) {
  }
  return out;
}

std::size_t lower_bound_xn(unsigned long n, unsigned long base) {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "n must be positive");
  if (base < 2) throw Error(ErrorCode::OutOfRange, "base must be at least 2");
  auto check = [&](bool ok, const std::string& step) {
    if (!ok) {
      throw Error(ErrorCode::ArgumentCheckFailed,
                  "step '" + step + "' failed for n = " + std::to_string(n));
    }
  };
  const mpz_class x = x_n(n, base);
  const mpz_class small = generator(n - 1, base);  // threshold t^(n-1) (n-1)!
  const mpz_class large = generator(n, base);      // t^n n!

  // Generators split at the threshold: indices below n are at most `small`,
  // indices from n on are at least `large`.
  check(small < large, "threshold separates the generators");
  for (unsigned long m = 0; m + 1 < n; ++m) check(generator(m, base) <= small, "small side");

  // Every large generator is a multiple of t^n n!, since consecutive
  // generators differ by the integer factor t (m + 1).
  for (unsigned long m = n; m < n + 4; ++m) {
    const mpz_class ratio = generator(m + 1, base) / generator(m, base);
    check(ratio * generator(m, base) == generator(m + 1, base), "large side divisibility");
    check(ratio == mpz_class(base) * (m + 1), "consecutive ratio");
  }

  // x_n = n * threshold, so n small generators suffice.
  check(x == mpz_class(n) * small, "x_n = n t^(n-1) (n-1)!");

  // |x_n - M t^n n!| >= x_n for every integer M: the residue of x_n modulo
  // t^n n! is x_n itself and the distance to the next multiple is
  // t^(n-1) n! (t - 1) >= x_n.
  check(x < large, "x_n below t^n n!");
  check(large - x >= x, "distance to the next multiple");

  // The small part has magnitude >= x_n and each term at most the threshold.
  mpz_class k = x / small;
  if (k * small < x) ++k;
  check(k == n, "ceil(x_n / threshold) = n");
  return static_cast<std::size_t>(k.get_ui());
}

bool TorsionReport::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const TorsionRow& r) {
    return r.norm_xn == r.n && r.norm_t_xn == 1 && (!r.exact_xn || *r.exact_xn == r.n);
  });
}

nlohmann::ordered_json TorsionReport::to_json() const {
  nlohmann::ordered_json j;
  j["base"] = base;
  j["generating_set"] = "{+-t^m m! : m >= 0}, t = " + std::to_string(base);
  if (!note.empty()) j["note"] = note;
  auto& arr = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["n"] = r.n;
    row["x_n"] = r.xn.get_str();
    row["norm_x_n"] = r.norm_xn;
    if (r.exact_xn) row["exact_search_x_n"] = *r.exact_xn;
    row["t_x_n"] = r.t_xn.get_str();
    row["norm_t_x_n"] = r.norm_t_xn;
    arr.push_back(std::move(row));
  }
  j["ok"] = ok();
  return j;
}

TorsionReport torsion_probe(unsigned long lo, unsigned long hi, unsigned long base,
                            unsigned long exact_up_to) {
  TorsionReport report;
  report.base = base;
  if (base != 2) {
    report.note = "modeling choice: generating set read as {+-t^m m!}; the base-2 argument "
                  "is re-run with t in place of 2";
  }
  const FactorialGenerators gens(hi + 1, base);
  for (unsigned long n = std::max(lo, 1ul); n <= hi; ++n) {
    TorsionRow row;
    row.n = n;
    row.xn = x_n(n, base);
    const auto up = norm_upper(row.xn, gens);
    const auto low = lower_bound_xn(n, base);
    row.norm_xn = (up.value && *up.value == low) ? low : *up.value;
    if (n <= exact_up_to) row.exact_xn = norm_exact(row.xn, gens, n + 1).value;
    row.t_xn = mpz_class(base) * row.xn;
    row.norm_t_xn = gens.index_of(row.t_xn) ? 1 : norm_upper(row.t_xn, gens).value.value_or(0);
    report.rows.push_back(std::move(row));
  }
  return report;
}

Target parse_target(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  auto number = [&](const std::string& digits) {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw Error(ErrorCode::ParseError, "bad number in \"" + std::string(text) + "\"");
    }
    return std::stoul(digits);
  };
  Target out;
  if (s.size() > 3 && s.rfind("x(", 0) == 0 && s.back() == ')') {
    const std::string inner = s.substr(2, s.size() - 3);
    const auto comma = inner.find(',');
    out.n = number(inner.substr(0, comma));
    if (comma != std::string::npos) out.base = number(inner.substr(comma + 1));
    if (out.base < 2) throw Error(ErrorCode::ParseError, "base must be at least 2");
    out.value = x_n(*out.n, out.base);
    return out;
  }
  if (out.value.set_str(s, 10) != 0 || s.empty()) {
    throw Error(ErrorCode::ParseError, "not an integer or x(n[,t]): \"" + std::string(text) + "\"");
  }
  return out;
}

void verify_certificate(const nlohmann::json& j) {
  mpz_class target;
  unsigned long base = 2;
  std::vector<mpz_class> terms;
  std::size_t claimed = 0;
  try {
    if (target.set_str(j.at("target").get<std::string>(), 10) != 0) {
      throw Error(ErrorCode::MalformedCertificate, "target is not an integer");
    }
    base = j.value("base", 2ul);
    for (const auto& t : j.at("terms")) {
      mpz_class v;
      if (v.set_str(t.get<std::string>(), 10) != 0) {
        throw Error(ErrorCode::MalformedCertificate, "term is not an integer");
      }
      terms.push_back(v);
    }
    claimed = j.at("value").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedCertificate, e.what());
  }
  if (base < 2) throw Error(ErrorCode::MalformedCertificate, "base must be at least 2");
  mpz_class sum = 0;
  for (const auto& t : terms) {
    const mpz_class a = abs(t);
    unsigned long m = 0;
    while (generator(m, base) < a) ++m;
    if (generator(m, base) != a) {
      throw Error(ErrorCode::RecompositionMismatch, t.get_str() + " is not a generator");
    }
    sum += t;
  }
  if (sum != target) {
    throw Error(ErrorCode::RecompositionMismatch,
                "terms sum to " + sum.get_str() + ", not " + target.get_str());
  }
  if (claimed != terms.size()) {
    throw Error(ErrorCode::RecompositionMismatch, "claimed length " + std::to_string(claimed) +
                                                      " but " + std::to_string(terms.size()) +
                                                      " terms");
  }
}

}  // namespace cinorm::intnorm

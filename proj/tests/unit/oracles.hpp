#pragma once

// Slow, independent reference implementations. None of them calls into the
// library except for converting results to compare against.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Images = std::vector<int>;  // zero-based images of 0..n-1

inline Images identity(int n) {
  Images p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// a first, then b.
inline Images then(const Images& a, const Images& b) {
  Images r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

inline int moved(const Images& p) {
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) c += p[i] != static_cast<int>(i);
  return c;
}

inline std::vector<Images> all(int n) {
  std::vector<Images> out;
  Images p = identity(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Word norm over the given generators by breadth-first search on S_n.
inline std::map<Images, int> bfs(int n, const std::vector<Images>& gens) {
  std::map<Images, int> dist;
  std::queue<Images> q;
  dist[identity(n)] = 0;
  q.push(identity(n));
  while (!q.empty()) {
    const auto cur = q.front();
    q.pop();
    for (const auto& g : gens) {
      auto nxt = then(cur, g);
      if (dist.emplace(nxt, dist[cur] + 1).second) q.push(nxt);
    }
  }
  return dist;
}

inline std::vector<Images> transpositions(int n) {
  std::vector<Images> out;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      auto t = identity(n);
      std::swap(t[a], t[b]);
      out.push_back(t);
    }
  }
  return out;
}

inline std::vector<Images> three_cycles(int n) {
  std::vector<Images> out;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (a == b || b == c || a == c) continue;
        auto t = identity(n);
        t[a] = b;
        t[b] = c;
        t[c] = a;
        out.push_back(t);
      }
    }
  }
  return out;
}

// Gaussian elimination over the rationals with partial pivoting on the
// first non-zero entry.
inline std::size_t rank(std::vector<std::vector<mpq_class>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const mpq_class f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

// Leibniz expansion, for n <= 6.
inline mpq_class det(const std::vector<std::vector<mpq_class>>& m) {
  const int n = static_cast<int>(m.size());
  mpq_class total = 0;
  for (const auto& p : all(n)) {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    }
    mpq_class term = inversions % 2 ? -1 : 1;
    for (int i = 0; i < n; ++i) term *= m[i][p[i]];
    total += term;
  }
  return total;
}

// Word norm on the integers in [-bound, bound] for generators +-g by
// breadth-first search over a window wide enough to allow overshooting.
inline std::map<std::int64_t, int> integer_bfs(const std::vector<std::int64_t>& gens, std::int64_t bound,
                                               std::int64_t slack) {
  std::map<std::int64_t, int> dist{{0, 0}};
  std::queue<std::int64_t> q;
  q.push(0);
  while (!q.empty()) {
    const auto x = q.front();
    q.pop();
    for (auto g : gens) {
      for (auto y : {x + g, x - g}) {
        if (y < -bound - slack || y > bound + slack) continue;
        if (dist.emplace(y, dist[x] + 1).second) q.push(y);
      }
    }
  }
  return dist;
}

}  // namespace oracle

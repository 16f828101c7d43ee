#pragma once

// Test-side reference implementations. They share types with the library but none of its algorithms.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "tileforge/sweep.hpp"

namespace oracle {

using tileforge::Int;
using tileforge::IntMatrix;
using tileforge::IntVector;
using tileforge::TileSystem;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  Int range(Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }
  IntVector vec(std::size_t dim, Int lo, Int hi) {
    IntVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = range(lo, hi);
    return v;
  }
  std::vector<Int> entries(std::size_t n, Int lo, Int hi) {
    std::vector<Int> a(n);
    for (auto& x : a) x = range(lo, hi);
    return a;
  }
  tileforge::AbcParams abc(Int c_max) {
    Int c = range(2, c_max);
    Int b = range(1, c - 1);
    Int a = range(1, b);
    return {a, b, c};
  }
};

inline IntVector mul(const IntMatrix& m, const IntVector& v) {
  IntVector r(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) r[i] += m.at(i, j) * v[j];
  return r;
}

// Leibniz expansion over all permutations.
inline Int leibniz_det(std::size_t n, const std::vector<Int>& a) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Int total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Int term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= a[i * n + perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Edges src ->(d|d') dst among pts, by trying every pair and every label.
inline std::vector<std::tuple<IntVector, std::size_t, std::size_t, IntVector>> brute_edges(const std::vector<IntVector>& pts,
                                                                                          const TileSystem& sys) {
  std::set<IntVector> in(pts.begin(), pts.end());
  std::vector<std::tuple<IntVector, std::size_t, std::size_t, IntVector>> out;
  for (const auto& a : pts) {
    IntVector ma = mul(sys.matrix, a);
    for (std::size_t d = 0; d < sys.digits.size(); ++d)
      for (std::size_t dp = 0; dp < sys.digits.size(); ++dp) {
        IntVector b = ma;
        for (std::size_t i = 0; i < b.dim(); ++i) b[i] += sys.digits[dp][i] - sys.digits[d][i];
        if (in.count(b)) out.emplace_back(a, d, dp, b);
      }
  }
  return out;
}

// Largest subset with no sinks, by repeatedly deleting vertices without surviving successors.
template <class V, class E>
std::set<V> sinkless(std::set<V> alive, const std::vector<E>& edges) {
  std::map<V, std::vector<V>> out;
  for (const auto& e : edges) out[std::get<0>(e)].push_back(std::get<3>(e));
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = alive.begin(); it != alive.end();) {
      bool has = false;
      if (auto o = out.find(*it); o != out.end())
        for (const auto& t : o->second)
          if (alive.count(t)) {
            has = true;
            break;
          }
      if (!has) {
        it = alive.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return alive;
}

// Red of the box [-k,k]^n, minus 0; equals the neighbor set once the box contains it.
inline std::vector<IntVector> box_neighbors(const TileSystem& sys, Int k) {
  const std::size_t n = sys.dim();
  std::vector<IntVector> box;
  IntVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = -k;
  while (true) {
    box.push_back(v);
    std::size_t i = 0;
    while (i < n && v[i] == k) v[i++] = -k;
    if (i == n) break;
    ++v[i];
  }
  auto edges = brute_edges(box, sys);
  std::set<IntVector> red = sinkless(std::set<IntVector>(box.begin(), box.end()), edges);
  std::vector<IntVector> out;
  for (const auto& x : red)
    if (!x.is_zero()) out.push_back(x);
  return out;
}

using SetV = std::vector<IntVector>;  // sorted
using SetEdgeT = std::tuple<SetV, std::size_t, std::size_t, SetV>;

// G_l over all l-subsets of s, straight from the definition.
struct BrutePower {
  std::set<SetV> vertices;
  std::set<std::tuple<SetV, std::size_t, SetV>> edges;
};

inline BrutePower brute_power(const std::vector<IntVector>& s, const TileSystem& sys, std::size_t l) {
  auto base = brute_edges(s, sys);
  std::map<std::pair<IntVector, std::size_t>, std::vector<IntVector>> succ;
  for (const auto& [a, d, dp, b] : base) succ[{a, d}].push_back(b);

  std::vector<SetV> subsets;
  std::vector<std::size_t> idx(l);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t from) -> void {
    if (pos == l) {
      SetV x;
      for (auto i : idx) x.push_back(s[i]);
      subsets.push_back(x);
      return;
    }
    for (std::size_t i = from; i < s.size(); ++i) {
      idx[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  rec(rec, 0, 0);

  std::vector<SetEdgeT> edges;
  for (const auto& x : subsets)
    for (std::size_t d = 0; d < sys.digits.size(); ++d) {
      std::set<SetV> targets;
      std::vector<IntVector> pick(l);
      auto choose = [&](auto&& self, std::size_t i) -> void {
        if (i == l) {
          SetV y = pick;
          std::sort(y.begin(), y.end());
          if (std::adjacent_find(y.begin(), y.end()) == y.end()) targets.insert(y);
          return;
        }
        auto it = succ.find({x[i], d});
        if (it == succ.end()) return;
        for (const auto& b : it->second) {
          pick[i] = b;
          self(self, i + 1);
        }
      };
      choose(choose, 0);
      for (const auto& y : targets) edges.emplace_back(x, d, 0, y);
    }
  BrutePower out;
  out.vertices = sinkless(std::set<SetV>(subsets.begin(), subsets.end()), edges);
  for (const auto& [x, d, unused, y] : edges)
    if (out.vertices.count(x) && out.vertices.count(y)) out.edges.emplace(x, d, y);
  return out;
}

// Whether M k = w for some k in the box [-radius,radius]^n.
inline bool brute_divisible(const IntMatrix& m, const IntVector& w, Int radius) {
  const std::size_t n = m.dim();
  IntVector k(n);
  for (std::size_t i = 0; i < n; ++i) k[i] = -radius;
  while (true) {
    if (mul(m, k) == w) return true;
    std::size_t i = 0;
    while (i < n && k[i] == radius) k[i++] = -radius;
    if (i == n) return false;
    ++k[i];
  }
}

// sum_i M^i D[digits[i]] by Horner from the most significant digit.
inline IntVector resubstitute(const TileSystem& sys, const std::vector<std::size_t>& digits) {
  IntVector z(sys.dim());
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) z = mul(sys.matrix, z) + sys.digits[*it];
  return z;
}

inline std::vector<std::size_t> brute_least_rotation(const std::vector<std::size_t>& w) {
  std::vector<std::size_t> best = w;
  for (std::size_t r = 1; r < w.size(); ++r) {
    std::vector<std::size_t> rot(w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r));
    best = std::min(best, rot);
  }
  return best;
}

// Floating x = sum_{j=1}^{terms} M^-j D[w_j].
inline std::vector<double> float_series(const TileSystem& sys, const tileforge::DigitWord& w, std::size_t terms) {
  const std::size_t n = sys.dim();
  std::vector<double> inv(n * n);
  for (std::size_t i = 0; i < n * n; ++i)
    inv[i] = static_cast<double>(sys.matrix.adjugate()[i]) / static_cast<double>(sys.matrix.det());
  // Horner from the tail: x_j = M^-1 (D[w_j] + x_{j+1}).
  std::vector<double> x(n, 0.0);
  for (std::size_t j = terms; j-- > 0;) {
    std::vector<double> y(n, 0.0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) y[r] += inv[r * n + c] * (x[c] + static_cast<double>(sys.digits[w.at(j)][c]));
    x = y;
  }
  return x;
}

// Whether some walk from alpha in G(S) reads the left labels of w forever.
inline bool admits_walk(const tileforge::BoundaryGraph& gs, const IntVector& alpha, const tileforge::DigitWord& w) {
  std::set<std::size_t> states{*gs.index_of(alpha)};
  std::set<std::set<std::size_t>> seen;
  const std::size_t pre = w.preperiod.size(), per = w.period.size();
  for (std::size_t j = 0;; ++j) {
    if (states.empty()) return false;
    // State sets repeating at a period boundary means they stay nonempty forever.
    if (j >= pre && (j - pre) % per == 0 && !seen.insert(states).second) return true;
    std::set<std::size_t> next;
    for (auto s : states)
      for (auto e = gs.out_begin(s); e != gs.out_end(s); ++e)
        if (e->d == w.at(j)) next.insert(e->dst);
    states = std::move(next);
  }
}

}  // namespace oracle

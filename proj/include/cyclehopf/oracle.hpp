#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "census.hpp"
#include "digraph.hpp"
#include "errors.hpp"
#include "hike.hpp"
#include "numeric.hpp"

// Brute-force ground truth. Nothing here touches determinants or permanents.

namespace cyclehopf {

inline constexpr std::size_t kDefaultCycleBudget = 1'000'000;

namespace detail {

class CycleSink {
 public:
  CycleSink(std::vector<SimpleCycle>& out, std::size_t budget) : out_(out), budget_(budget) {}

  void emit(std::vector<Vertex> path) {
    if (out_.size() >= budget_) {
      throw CapExceeded("simple-cycle enumeration exceeded budget of " + std::to_string(budget_));
    }
    out_.emplace_back(std::move(path));
  }

 private:
  std::vector<SimpleCycle>& out_;
  std::size_t budget_;
};

// Johnson's circuit search rooted at `start`, restricted to vertices >= start.
class JohnsonSearch {
 public:
  JohnsonSearch(const Digraph& g, Vertex start, CycleSink& sink)
      : g_(g), start_(start), allowed_(full_mask(g.order()) & ~((Mask{1} << start) - 1)), sink_(sink),
        blocked_(0), block_map_(g.order(), 0) {}

  void run() { circuit(start_); }

 private:
  bool circuit(Vertex v) {
    bool found = false;
    path_.push_back(v);
    blocked_ |= Mask{1} << v;
    for (Mask m = g_.out_neighbors(v) & allowed_; m != 0; m &= m - 1) {
      const auto w = static_cast<Vertex>(std::countr_zero(m));
      if (w == v) continue;  // loops are emitted separately
      if (w == start_) {
        sink_.emit(path_);
        found = true;
      } else if (!((blocked_ >> w) & 1U)) {
        if (circuit(w)) found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (Mask m = g_.out_neighbors(v) & allowed_; m != 0; m &= m - 1) {
        const auto w = static_cast<std::size_t>(std::countr_zero(m));
        block_map_[w] |= Mask{1} << v;
      }
    }
    path_.pop_back();
    return found;
  }

  void unblock(Vertex u) {
    blocked_ &= ~(Mask{1} << u);
    Mask waiting = block_map_[u];
    block_map_[u] = 0;
    for (; waiting != 0; waiting &= waiting - 1) {
      const auto w = static_cast<Vertex>(std::countr_zero(waiting));
      if ((blocked_ >> w) & 1U) unblock(w);
    }
  }

  const Digraph& g_;
  Vertex start_;
  Mask allowed_;
  CycleSink& sink_;
  Mask blocked_;
  std::vector<Mask> block_map_;
  std::vector<Vertex> path_;
};

inline void naive_extend(const Digraph& g, Vertex start, std::vector<Vertex>& path, Mask on_path, CycleSink& sink) {
  const Vertex v = path.back();
  for (Mask m = g.out_neighbors(v); m != 0; m &= m - 1) {
    const auto w = static_cast<Vertex>(std::countr_zero(m));
    if (w == start && path.size() >= 2) {
      sink.emit(path);
    } else if (w > start && !((on_path >> w) & 1U)) {
      path.push_back(w);
      naive_extend(g, start, path, on_path | (Mask{1} << w), sink);
      path.pop_back();
    }
  }
}

}  // namespace detail

/// Every elementary circuit once, in canonical rotation: loops first, then
/// Johnson's search from each start vertex over the vertices above it.
inline std::vector<SimpleCycle> enumerate_simple_cycles(const Digraph& g, std::size_t budget = kDefaultCycleBudget) {
  std::vector<SimpleCycle> out;
  detail::CycleSink sink(out, budget);
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.has_edge(v, v)) sink.emit({v});
  for (Vertex s = 0; s < g.order(); ++s) detail::JohnsonSearch(g, s, sink).run();
  return out;
}

/// Second, independent enumerator: plain DFS from each start vertex through
/// larger vertices only, no blocking.
inline std::vector<SimpleCycle> enumerate_simple_cycles_dfs(const Digraph& g,
                                                            std::size_t budget = kDefaultCycleBudget) {
  std::vector<SimpleCycle> out;
  detail::CycleSink sink(out, budget);
  for (Vertex s = 0; s < g.order(); ++s) {
    if (g.has_edge(s, s)) sink.emit({s});
    std::vector<Vertex> path{s};
    detail::naive_extend(g, s, path, Mask{1} << s, sink);
  }
  return out;
}

inline CycleCensus census_of(const std::vector<SimpleCycle>& cycles, std::size_t n) {
  CycleCensus c(n);
  for (const auto& cyc : cycles) c[cyc.length()] += 1;
  return c;
}

inline CycleCensus brute_force_census(const Digraph& g, std::size_t budget = kDefaultCycleBudget) {
  return census_of(enumerate_simple_cycles(g, budget), g.order());
}

/// Hamiltonian cycles by path-counting dynamic programming over subsets
/// (paths start at vertex 0). Limited to n <= 24.
inline BigInt brute_force_hamiltonian(const Digraph& g) {
  const std::size_t n = g.order();
  if (n == 0) return 0;
  if (n > 24) throw CapExceeded("brute_force_hamiltonian supports n <= 24");
  if (n == 1) return g.has_edge(0, 0) ? 1 : 0;

  const std::size_t count = std::size_t{1} << n;
  // paths[mask * n + v]: simple paths from 0 covering exactly `mask`, ending at v.
  std::vector<std::uint64_t> paths(count * n, 0);
  paths[1 * n + 0] = 1;
  for (Mask mask = 1; mask < count; mask += 2) {
    for (Vertex v = 0; v < n; ++v) {
      const std::uint64_t here = paths[mask * n + v];
      if (here == 0) continue;
      for (Mask m = g.out_neighbors(v) & ~mask; m != 0; m &= m - 1) {
        const auto w = static_cast<std::size_t>(std::countr_zero(m));
        auto& slot = paths[(mask | (Mask{1} << w)) * n + w];
        if (__builtin_add_overflow(slot, here, &slot)) throw CapExceeded("Hamiltonian path count overflow");
      }
    }
  }
  BigInt total = 0;
  const Mask full = full_mask(n);
  for (Vertex v = 1; v < n; ++v)
    if (g.has_edge(v, 0)) total += paths[full * n + v];
  return total;
}

}  // namespace cyclehopf

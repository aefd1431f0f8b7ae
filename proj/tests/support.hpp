#pragma once

// Shared test fixtures and independent oracles (naive formulas only).

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "cyclehopf/digraph.hpp"
#include "cyclehopf/numeric.hpp"
#include "cyclehopf/polyring.hpp"

namespace testing_support {

using namespace cyclehopf;

inline Digraph bidirected_complete(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v) e.emplace_back(u, v);
  return Digraph(n, e);
}

inline Digraph triangle() { return bidirected_complete(3); }

inline Digraph loop_graph() { return Digraph(1, {{0, 0}}); }

inline Digraph two_loops() { return Digraph(2, {{0, 0}, {1, 1}}); }

// Loop a at u=0, backtrack b between u and v=1, loop c at w=2.
inline Digraph worked_example() { return Digraph(3, {{0, 0}, {0, 1}, {1, 0}, {2, 2}}); }

inline Digraph directed_cycle(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u) e.emplace_back(u, static_cast<Vertex>((u + 1) % n));
  return Digraph(n, e);
}

inline Digraph edgeless(std::size_t n) { return Digraph(n, {}); }

// Graph number `code` among all n^2-bit loop/edge patterns on n vertices.
inline Digraph from_pattern(std::size_t n, std::uint64_t code) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if ((code >> (u * n + v)) & 1U) e.emplace_back(u, v);
  return Digraph(n, e);
}

inline Digraph random_digraph(std::size_t n, double p, std::uint64_t seed, bool loops = true) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if ((loops || u != v) && coin(rng)) e.emplace_back(u, v);
  return Digraph(n, e);
}

// Leibniz expansion over all permutations.
template <class Entry, class Combine>
Entry permutation_sum(std::size_t k, Entry one, bool signed_sum, Combine entry) {
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Entry total = one * 0;
  do {
    Entry prod = one;
    for (std::size_t i = 0; i < k; ++i) prod = prod * entry(i, perm[i]);
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (perm[i] > perm[j]) ++inversions;
    if (signed_sum && (inversions & 1)) total = total - prod;
    else total = total + prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline BigInt naive_det(const IntMatrix& m) {
  return permutation_sum<BigInt>(m.dim, BigInt(1), true, [&](auto i, auto j) { return BigInt(m(i, j)); });
}

inline BigInt naive_perm(const IntMatrix& m) {
  return permutation_sum<BigInt>(m.dim, BigInt(1), false, [&](auto i, auto j) { return BigInt(m(i, j)); });
}

// det(I - zA) and perm(I + zA) by Leibniz over polynomial entries.
inline IntPoly naive_det_I_minus_zA(const Digraph& g) {
  const auto a = g.adjacency();
  const std::size_t n = g.order();
  return permutation_sum<IntPoly>(n, IntPoly::constant(1, n), true, [&](auto i, auto j) {
    IntPoly e(n);
    if (i == j) e[0] = 1;
    e[1] = -a(i, j);
    return e;
  });
}

inline IntPoly naive_perm_I_plus_zA(const Digraph& g) {
  const auto a = g.adjacency();
  const std::size_t n = g.order();
  return permutation_sum<IntPoly>(n, IntPoly::constant(1, n), false, [&](auto i, auto j) {
    IntPoly e(n);
    if (i == j) e[0] = 1;
    e[1] = a(i, j);
    return e;
  });
}

}  // namespace testing_support

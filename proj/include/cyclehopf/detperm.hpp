#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "digraph.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "parallel.hpp"
#include "polyring.hpp"

namespace cyclehopf {

inline constexpr std::size_t kDefaultSizeCap = 20;

/// Size cap for exponential tables: CYCLEHOPF_SIZE_CAP if set and valid, else 20.
inline std::size_t size_cap_from_env() {
  if (const char* env = std::getenv("CYCLEHOPF_SIZE_CAP")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= kMaxVertices) return static_cast<std::size_t>(v);
  }
  return kDefaultSizeCap;
}

namespace detail {

/// Fraction-free (Bareiss) elimination. Every intermediate is a minor of the
/// input, so the divisions are exact.
template <class Int>
Int bareiss_det(const IntMatrix& m) {
  const std::size_t k = m.dim;
  if (k == 0) return Int(1);
  std::vector<Int> a(m.data.begin(), m.data.end());
  auto at = [&](std::size_t i, std::size_t j) -> Int& { return a[i * k + j]; };

  bool negate = false;
  Int prev(1);
  for (std::size_t p = 0; p + 1 < k; ++p) {
    if (at(p, p) == 0) {
      std::size_t r = p + 1;
      while (r < k && at(r, p) == 0) ++r;
      if (r == k) return Int(0);
      for (std::size_t j = p; j < k; ++j) std::swap(at(p, j), at(r, j));
      negate = !negate;
    }
    const Int pivot = at(p, p);
    for (std::size_t i = p + 1; i < k; ++i) {
      const Int lead = at(i, p);
      for (std::size_t j = p + 1; j < k; ++j) {
        at(i, j) = sub(mul(at(i, j), pivot), mul(lead, at(p, j))) / prev;
      }
      at(i, p) = 0;
    }
    prev = pivot;
  }
  Int d = at(k - 1, k - 1);
  return negate ? Int(-d) : d;
}

/// Ryser's formula, columns visited in Gray-code order so each step flips one column.
template <class Int>
Int ryser_perm(const IntMatrix& m) {
  const std::size_t k = m.dim;
  if (k == 0) return Int(1);
  std::vector<Int> row_sum(k, Int(0));
  Int total(0);
  const std::uint64_t steps = std::uint64_t{1} << k;
  for (std::uint64_t i = 1; i < steps; ++i) {
    const auto j = static_cast<std::size_t>(std::countr_zero(i));
    const std::uint64_t gray = i ^ (i >> 1);
    const bool added = (gray >> j) & 1U;
    for (std::size_t r = 0; r < k; ++r) {
      const Int e(m(r, j));
      if (added) add_to(row_sum[r], e);
      else row_sum[r] = sub(row_sum[r], e);
    }
    Int prod(1);
    for (std::size_t r = 0; r < k && prod != 0; ++r) prod = mul(prod, row_sum[r]);
    if (std::popcount(gray) & 1) total = sub(total, prod);
    else add_to(total, prod);
  }
  return (k & 1) ? Int(-total) : total;
}

// Ryser on a 0/1 matrix given as row bitmasks. Unchecked: for k <= 20 the
// partial sums are bounded by 2^k * k^k < 2^127.
inline Int128 ryser_perm01(const std::array<Mask, 20>& rows, std::size_t k) {
  if (k == 0) return 1;
  std::array<std::int64_t, 20> row_sum{};
  Int128 total = 0;
  const std::uint64_t steps = std::uint64_t{1} << k;
  for (std::uint64_t i = 1; i < steps; ++i) {
    const auto j = static_cast<unsigned>(std::countr_zero(i));
    const std::uint64_t gray = i ^ (i >> 1);
    const std::int64_t delta = ((gray >> j) & 1U) ? 1 : -1;
    for (std::size_t r = 0; r < k; ++r) row_sum[r] += delta * static_cast<std::int64_t>((rows[r] >> j) & 1U);
    Int128 prod = 1;
    for (std::size_t r = 0; r < k && prod != 0; ++r) prod *= row_sum[r];
    if (std::popcount(gray) & 1) total -= prod;
    else total += prod;
  }
  return (k & 1) ? -total : total;
}

}  // namespace detail

/// Exact determinant by fraction-free elimination.
inline BigInt exact_det(const IntMatrix& m) {
  try {
    return detail::to_big(detail::bareiss_det<Int128>(m));
  } catch (const ArithmeticOverflow&) {
    return detail::bareiss_det<BigInt>(m);
  }
}

/// Exact permanent by Ryser inclusion-exclusion. Cost 2^k * k.
inline BigInt exact_perm(const IntMatrix& m, std::size_t dim_cap = size_cap_from_env()) {
  if (m.dim > dim_cap) {
    throw CapExceeded("permanent of dimension " + std::to_string(m.dim) + " exceeds cap " + std::to_string(dim_cap));
  }
  try {
    return detail::to_big(detail::ryser_perm<Int128>(m));
  } catch (const ArithmeticOverflow&) {
    return detail::ryser_perm<BigInt>(m);
  }
}

/// det(A_S) and perm(A_S) for every vertex subset S, indexed by S's bit encoding.
/// The empty subset maps to 1 in both tables.
struct MinorTables {
  std::size_t n = 0;
  std::vector<BigInt> det;
  std::vector<BigInt> perm;

  const BigInt& det_of(VertexSet s) const { return det[s.bits()]; }
  const BigInt& perm_of(VertexSet s) const { return perm[s.bits()]; }
  std::size_t subset_count() const { return det.size(); }
};

struct TableOptions {
  std::size_t size_cap = size_cap_from_env();
  std::size_t threads = 1;
  // Skip subsets with a vertex lacking an in- or out-edge inside the subset.
  bool prune_dead_vertices = true;
};

inline MinorTables build_minor_tables(const Digraph& g, const TableOptions& opts = {}) {
  const std::size_t n = g.order();
  if (n > opts.size_cap) {
    throw CapExceeded("graph order " + std::to_string(n) + " exceeds size cap " + std::to_string(opts.size_cap));
  }
  const std::size_t count = std::size_t{1} << n;
  MinorTables t;
  t.n = n;
  t.det.assign(count, BigInt(0));
  t.perm.assign(count, BigInt(0));

  constexpr std::size_t kChunk = 1024;
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  parallel_chunks(chunks, opts.threads, [&](std::size_t c, std::size_t) {
    const Mask lo = c * kChunk;
    const Mask hi = std::min<Mask>(lo + kChunk, count);
    for (Mask s = lo; s < hi; ++s) {
      if (s == 0) {
        t.det[s] = 1;
        t.perm[s] = 1;
        continue;
      }
      if (opts.prune_dead_vertices && g.has_dead_vertex(s)) continue;
      const VertexSet set(s);
      const IntMatrix sub = g.induced_adjacency(set);
      t.det[s] = exact_det(sub);
      if (sub.dim <= 20) {
        std::array<Mask, 20> rows{};
        for (std::size_t r = 0; r < sub.dim; ++r)
          for (std::size_t col = 0; col < sub.dim; ++col)
            if (sub(r, col) != 0) rows[r] |= Mask{1} << col;
        t.perm[s] = detail::to_big(detail::ryser_perm01(rows, sub.dim));
      } else {
        t.perm[s] = exact_perm(sub, opts.size_cap);
      }
    }
  });
  return t;
}

/// det(I - zA) = sum_S (-1)^{|S|} det(A_S) z^{|S|}, truncated at `cap`.
inline IntPoly det_I_minus_zA(const MinorTables& t, std::size_t cap) {
  IntPoly p(cap);
  for (Mask s = 0; s < t.subset_count(); ++s) {
    const auto k = static_cast<std::size_t>(std::popcount(s));
    if (k > cap || t.det[s] == 0) continue;
    if (k & 1) p[k] -= t.det[s];
    else p[k] += t.det[s];
  }
  return p;
}

inline IntPoly det_I_minus_zA(const MinorTables& t) { return det_I_minus_zA(t, t.n); }

/// perm(I + zA) = sum_S perm(A_S) z^{|S|}, truncated at `cap`.
inline IntPoly perm_I_plus_zA(const MinorTables& t, std::size_t cap) {
  IntPoly p(cap);
  for (Mask s = 0; s < t.subset_count(); ++s) {
    const auto k = static_cast<std::size_t>(std::popcount(s));
    if (k > cap) continue;
    p[k] += t.perm[s];
  }
  return p;
}

inline IntPoly perm_I_plus_zA(const MinorTables& t) { return perm_I_plus_zA(t, t.n); }

}  // namespace cyclehopf

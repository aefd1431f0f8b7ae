#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "detperm.hpp"
#include "digraph.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "parallel.hpp"
#include "polyring.hpp"

namespace cyclehopf {

/// Number of simple cycles of each length l = 1..cap.
class CycleCensus {
 public:
  explicit CycleCensus(std::size_t cap = 0) : counts_(cap + 1, BigInt(0)) {}

  std::size_t cap() const { return counts_.size() - 1; }

  const BigInt& operator[](std::size_t len) const { return counts_.at(len); }
  BigInt& operator[](std::size_t len) { return counts_.at(len); }

  BigInt at(std::size_t len) const { return len < counts_.size() ? counts_[len] : BigInt(0); }

  /// Lengths with a non-zero count, ascending.
  std::map<std::size_t, BigInt> nonzero() const {
    std::map<std::size_t, BigInt> out;
    for (std::size_t l = 1; l < counts_.size(); ++l)
      if (counts_[l] != 0) out.emplace(l, counts_[l]);
    return out;
  }

  BigInt total() const {
    BigInt s = 0;
    for (const auto& c : counts_) s += c;
    return s;
  }

  CycleCensus truncated(std::size_t cap) const {
    CycleCensus r(cap);
    for (std::size_t l = 1; l <= std::min(cap, this->cap()); ++l) r.counts_[l] = counts_[l];
    return r;
  }

  /// Equal when the non-zero counts agree; the caps may differ.
  friend bool operator==(const CycleCensus& a, const CycleCensus& b) { return a.nonzero() == b.nonzero(); }

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [l, c] : nonzero()) {
      if (!first) s += ", ";
      first = false;
      s += std::to_string(l) + ": " + c.str();
    }
    return s + "}";
  }

 private:
  std::vector<BigInt> counts_;
};

/// Function on the vertex subsets of an n-vertex graph, indexed by bit encoding.
template <class Coeff>
using SubsetFunction = std::vector<TruncPoly<Coeff>>;

/// Induced-subgraph convolution evaluated at the whole graph:
/// (f * g)[V] = sum over S of f[S] g[V \ S].
template <class Coeff>
TruncPoly<Coeff> subgraph_convolve(const SubsetFunction<Coeff>& f, const SubsetFunction<Coeff>& g, std::size_t n) {
  const std::size_t count = std::size_t{1} << n;
  if (f.size() != count || g.size() != count) {
    throw std::invalid_argument("subgraph_convolve: functions must be defined on all 2^n subsets");
  }
  const Mask full = full_mask(n);
  TruncPoly<Coeff> acc(f[0].cap());
  for (Mask s = 0; s < count; ++s) acc += f[s] * g[full & ~s];
  return acc;
}

/// Identity of the convolution: 1 on the empty subset, 0 elsewhere.
inline SubsetFunction<BigInt> delta_function(std::size_t n, std::size_t cap) {
  SubsetFunction<BigInt> f(std::size_t{1} << n, IntPoly(cap));
  f[0] = IntPoly::constant(1, cap);
  return f;
}

/// S -> det(-z A_S) = (-1)^{|S|} det(A_S) z^{|S|}.
inline SubsetFunction<BigInt> det_minus_zA_function(const MinorTables& t, std::size_t cap) {
  SubsetFunction<BigInt> f(t.subset_count(), IntPoly(cap));
  for (Mask s = 0; s < t.subset_count(); ++s) {
    const auto k = static_cast<std::size_t>(std::popcount(s));
    f[s] = IntPoly::monomial((k & 1) ? BigInt(-t.det[s]) : t.det[s], k, cap);
  }
  return f;
}

/// S -> perm(z A_S) = perm(A_S) z^{|S|}.
inline SubsetFunction<BigInt> perm_zA_function(const MinorTables& t, std::size_t cap) {
  SubsetFunction<BigInt> f(t.subset_count(), IntPoly(cap));
  for (Mask s = 0; s < t.subset_count(); ++s)
    f[s] = IntPoly::monomial(t.perm[s], static_cast<std::size_t>(std::popcount(s)), cap);
  return f;
}

/// Subset-sum (zeta) transform: result[W] = sum over S subset of W of f[S].
/// Turns det(-zA_S) into det(I - zA_W) and perm(zA_S) into perm(I + zA_W).
template <class Coeff>
SubsetFunction<Coeff> cumulative(SubsetFunction<Coeff> f, std::size_t n) {
  const std::size_t count = std::size_t{1} << n;
  for (std::size_t bit = 0; bit < n; ++bit)
    for (Mask s = 0; s < count; ++s)
      if ((s >> bit) & 1U) f[s] += f[s ^ (Mask{1} << bit)];
  return f;
}

namespace detail {

// out[l] = sum over disjoint (S, T) with |S| + |T| = l <= cap of f[S] g[T].
// Equivalently sum_S f[S] z^{|S|} * (sum_{T subset of V\S} g[T] z^{|T|}),
// computed one level |T| = k at a time with a size-restricted zeta transform.
template <class Int>
std::vector<Int> exact_times_cumulative(const std::vector<Int>& f, const std::vector<Int>& g, std::size_t n,
                                        std::size_t cap, std::size_t threads) {
  const std::size_t count = std::size_t{1} << n;
  const Mask full = full_mask(n);
  const std::size_t levels = std::min(cap, n) + 1;
  threads = std::clamp<std::size_t>(threads, 1, levels);

  std::vector<std::vector<Int>> partial(threads, std::vector<Int>(cap + 1, Int(0)));
  std::vector<std::vector<Int>> buffers(threads);

  parallel_chunks(levels, threads, [&](std::size_t k, std::size_t worker) {
    auto& buf = buffers[worker];
    buf.assign(count, Int(0));
    bool any = false;
    for (Mask t = 0; t < count; ++t) {
      if (static_cast<std::size_t>(std::popcount(t)) == k && g[t] != 0) {
        buf[t] = g[t];
        any = true;
      }
    }
    if (!any) return;
    for (std::size_t bit = 0; bit < n; ++bit) {
      const Mask b = Mask{1} << bit;
      for (Mask s = 0; s < count; ++s)
        if ((s & b) && static_cast<std::size_t>(std::popcount(s)) > k) add_to(buf[s], buf[s ^ b]);
    }
    auto& out = partial[worker];
    for (Mask s = 0; s < count; ++s) {
      const auto size = static_cast<std::size_t>(std::popcount(s));
      if (size + k > cap || f[s] == 0) continue;
      const Int& cum = buf[full & ~s];
      if (cum == 0) continue;
      add_to(out[size + k], mul(f[s], cum));
    }
  });

  std::vector<Int> out(cap + 1, Int(0));
  for (const auto& p : partial)
    for (std::size_t l = 0; l <= cap; ++l) add_to(out[l], p[l]);
  return out;
}

// Runs the kernel in checked 128-bit arithmetic, redoing it in BigInt on overflow.
template <class MakeF, class MakeG>
IntPoly exact_times_cumulative_poly(const MinorTables& t, MakeF make_f, MakeG make_g, std::size_t cap,
                                    std::size_t threads) {
  const std::size_t count = t.subset_count();
  IntPoly result(cap);
  try {
    std::vector<Int128> f(count), g(count);
    for (Mask s = 0; s < count; ++s) {
      f[s] = from_big<Int128>(make_f(s));
      g[s] = from_big<Int128>(make_g(s));
    }
    const auto out = exact_times_cumulative<Int128>(f, g, t.n, cap, threads);
    for (std::size_t l = 0; l <= cap; ++l) result[l] = to_big(out[l]);
  } catch (const ArithmeticOverflow&) {
    std::vector<BigInt> f(count), g(count);
    for (Mask s = 0; s < count; ++s) {
      f[s] = make_f(s);
      g[s] = make_g(s);
    }
    const auto out = exact_times_cumulative<BigInt>(f, g, t.n, cap, threads);
    for (std::size_t l = 0; l <= cap; ++l) result[l] = out[l];
  }
  return result;
}

inline BigInt signed_det(const MinorTables& t, Mask s) {
  return (std::popcount(s) & 1) ? BigInt(-t.det[s]) : t.det[s];
}

}  // namespace detail

/// The two integer forms of z dPi/dz evaluated by the engine.
enum class CensusVariant {
  // sum_S det(-zA_S) * D perm(I + zA_{V\S})
  DetTimesDPerm,
  // -sum_S perm(zA_S) * D det(I - zA_{V\S})
  PermTimesDDet,
};

inline const char* variant_name(CensusVariant v) {
  return v == CensusVariant::DetTimesDPerm ? "det*Dperm" : "perm*Ddet";
}

/// D Pi(z), the length-weighted generating function of simple cycles, up to degree `cap`.
inline IntPoly census_derivative(const MinorTables& t, CensusVariant variant, std::size_t cap,
                                 std::size_t threads = 1) {
  using detail::signed_det;
  if (variant == CensusVariant::DetTimesDPerm) {
    return detail::exact_times_cumulative_poly(
        t, [&](Mask s) { return signed_det(t, s); },
        [&](Mask s) { return BigInt(t.perm[s] * std::popcount(s)); }, cap, threads);
  }
  return detail::exact_times_cumulative_poly(
      t, [&](Mask s) { return t.perm[s]; }, [&](Mask s) { return BigInt(-signed_det(t, s) * std::popcount(s)); },
      cap, threads);
}

/// Divides [z^l] D Pi by l. A non-zero remainder means the derivative is wrong.
inline CycleCensus census_from_derivative(const IntPoly& d_pi) {
  CycleCensus census(d_pi.cap());
  if (d_pi[0] != 0) throw IdentityViolation("D Pi has a non-zero constant term");
  for (std::size_t l = 1; l <= d_pi.cap(); ++l) {
    BigInt q, r;
    boost::multiprecision::divide_qr(d_pi[l], BigInt(l), q, r);
    if (r != 0) {
      throw IdentityViolation("[z^" + std::to_string(l) + "] D Pi = " + d_pi[l].str() + " is not divisible by " +
                              std::to_string(l));
    }
    if (q < 0) throw IdentityViolation("negative cycle count at length " + std::to_string(l));
    census[l] = q;
  }
  return census;
}

struct CensusOptions {
  // Counts are produced for lengths 1..min(max_length, n).
  std::optional<std::size_t> max_length;
  std::size_t threads = 1;
};

/// Simple-cycle census from the minor tables. Both engine variants are run and
/// must agree exactly.
inline CycleCensus cycle_census_conv(const Digraph& g, const MinorTables& t, const CensusOptions& opts = {}) {
  if (t.n != g.order()) throw std::invalid_argument("cycle_census_conv: tables built for a different graph");
  const std::size_t cap = std::min(opts.max_length.value_or(g.order()), g.order());
  const IntPoly a = census_derivative(t, CensusVariant::DetTimesDPerm, cap, opts.threads);
  const IntPoly b = census_derivative(t, CensusVariant::PermTimesDDet, cap, opts.threads);
  if (a != b) {
    throw IdentityViolation("census variants disagree: " + a.str() + " vs " + b.str());
  }
  return census_from_derivative(a);
}

/// Number of Hamiltonian cycles, from
/// n h_n = sum_S (-1)^{|S|} det(A_S) (n - |S|) perm(A_{V\S}).
inline BigInt hamiltonian_count(const Digraph& g, const MinorTables& t) {
  const std::size_t n = g.order();
  if (t.n != n) throw std::invalid_argument("hamiltonian_count: tables built for a different graph");
  if (n == 0) return 0;
  const Mask full = full_mask(n);
  BigInt acc = 0;
  for (Mask s = 0; s < t.subset_count(); ++s) {
    const auto k = static_cast<std::size_t>(std::popcount(s));
    if (k == n || t.det[s] == 0) continue;
    const BigInt& p = t.perm[full & ~s];
    if (p == 0) continue;
    BigInt term = t.det[s] * p * static_cast<long long>(n - k);
    if (k & 1) acc -= term;
    else acc += term;
  }
  BigInt q, r;
  boost::multiprecision::divide_qr(acc, BigInt(n), q, r);
  if (r != 0) throw IdentityViolation("Hamiltonian sum " + acc.str() + " is not divisible by n = " + std::to_string(n));
  return q;
}

/// Generating function of self-avoiding hikes signed by component count: det(I - zA).
inline IntPoly mobius_poly(const MinorTables& t) { return det_I_minus_zA(t); }

/// Generating function of self-avoiding hikes: perm(I + zA).
inline IntPoly zeta_poly(const MinorTables& t) { return perm_I_plus_zA(t); }

/// sum_S (-1)^{|S|} det(A_S) perm(A_{V\S}); equals 1 for the empty graph and 0 otherwise.
inline BigInt det_perm_inverse_sum(const MinorTables& t) {
  const Mask full = full_mask(t.n);
  BigInt acc = 0;
  for (Mask s = 0; s < t.subset_count(); ++s) {
    if (t.det[s] == 0) continue;
    acc += detail::signed_det(t, s) * t.perm[full & ~s];
  }
  return acc;
}

/// sum_S perm(zA_S) det(I - zA_{V\S}); identically 1.
inline IntPoly perm_times_det_I_minus(const MinorTables& t, std::size_t threads = 1) {
  return detail::exact_times_cumulative_poly(
      t, [&](Mask s) { return t.perm[s]; }, [&](Mask s) { return detail::signed_det(t, s); }, t.n, threads);
}

/// sum_S perm(I + zA_S) det(-zA_{V\S}); identically 1.
inline IntPoly perm_I_plus_times_det(const MinorTables& t, std::size_t threads = 1) {
  return detail::exact_times_cumulative_poly(
      t, [&](Mask s) { return detail::signed_det(t, s); }, [&](Mask s) { return t.perm[s]; }, t.n, threads);
}

}  // namespace cyclehopf

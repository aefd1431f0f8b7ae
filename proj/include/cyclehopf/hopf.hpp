#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "census.hpp"
#include "digraph.hpp"
#include "errors.hpp"
#include "hike.hpp"
#include "numeric.hpp"
#include "oracle.hpp"
#include "polyring.hpp"

// Hopf algebra of self-avoiding hikes: product = disjoint union, coproduct
// splits a hike into complementary sets of components, antipode = (-1)^{c(h)}.
// Meant for verification on small graphs; the census module is the scalable path.

namespace cyclehopf {

inline constexpr std::size_t kDefaultHikeBudget = 1'000'000;

/// Finitely supported map from self-avoiding hikes to exact rationals.
/// Zero coefficients are never stored.
class HikeSeries {
 public:
  using Terms = std::map<SelfAvoidingHike, Rational>;

  HikeSeries() = default;

  /// The unit of the convolution: coefficient 1 on the empty hike.
  static HikeSeries delta() {
    HikeSeries s;
    s.add(SelfAvoidingHike::unit(), 1);
    return s;
  }

  static HikeSeries single(const SelfAvoidingHike& h, const Rational& c = 1) {
    HikeSeries s;
    s.add(h, c);
    return s;
  }

  void add(const SelfAvoidingHike& h, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(h, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const SelfAvoidingHike& h) const {
    auto it = terms_.find(h);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  bool is_integral() const {
    for (const auto& [h, c] : terms_)
      if (!is_integer(c)) return false;
    return true;
  }

  HikeSeries& operator+=(const HikeSeries& o) {
    for (const auto& [h, c] : o.terms_) add(h, c);
    return *this;
  }
  HikeSeries& operator-=(const HikeSeries& o) {
    for (const auto& [h, c] : o.terms_) add(h, -c);
    return *this;
  }
  HikeSeries& operator*=(const Rational& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [h, c] : terms_) c *= k;
    return *this;
  }

  friend HikeSeries operator+(HikeSeries a, const HikeSeries& b) { return a += b; }
  friend HikeSeries operator-(HikeSeries a, const HikeSeries& b) { return a -= b; }
  friend HikeSeries operator-(HikeSeries a) { return a *= Rational(-1); }
  friend HikeSeries operator*(HikeSeries a, const Rational& k) { return a *= k; }

  friend bool operator==(const HikeSeries&, const HikeSeries&) = default;

 private:
  Terms terms_;
};

/// Debug dump, one term per line: "coeff  [cycle1 | cycle2 | ...]".
inline void write_series(std::ostream& os, const HikeSeries& s) {
  for (const auto& [h, c] : s) os << c << "  " << h.str() << '\n';
}

inline std::string series_to_string(const HikeSeries& s) {
  std::ostringstream os;
  write_series(os, s);
  return os.str();
}

/// All sets of pairwise vertex-disjoint cycles from `primes`, including the unit.
inline std::vector<SelfAvoidingHike> enumerate_sa_hikes(const std::vector<SimpleCycle>& primes,
                                                        std::size_t budget = kDefaultHikeBudget) {
  std::vector<SimpleCycle> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<SelfAvoidingHike> out;
  std::vector<SimpleCycle> chosen;
  std::function<void(std::size_t, Mask)> extend = [&](std::size_t from, Mask used) {
    if (out.size() >= budget) {
      throw CapExceeded("self-avoiding hike enumeration exceeded budget of " + std::to_string(budget));
    }
    out.emplace_back(chosen);
    for (std::size_t i = from; i < sorted.size(); ++i) {
      if (sorted[i].support() & used) continue;
      chosen.push_back(sorted[i]);
      extend(i + 1, used | sorted[i].support());
      chosen.pop_back();
    }
  };
  extend(0, 0);
  return out;
}

inline std::vector<SelfAvoidingHike> enumerate_sa_hikes(const Digraph& g, const std::vector<SimpleCycle>& primes,
                                                        std::size_t budget = kDefaultHikeBudget) {
  for (const auto& p : primes)
    if (!p.is_cycle_of(g)) throw std::invalid_argument("enumerate_sa_hikes: " + p.str() + " is not a cycle of G");
  return enumerate_sa_hikes(primes, budget);
}

/// Delta(h) = sum over subsets U of components of h|_U (x) h|_{not U}; 2^{c(h)} pairs.
inline std::vector<std::pair<SelfAvoidingHike, SelfAvoidingHike>> coproduct(const SelfAvoidingHike& h) {
  const std::size_t c = h.omega();
  if (c >= 63) throw std::invalid_argument("coproduct: too many components");
  const std::uint64_t all = (std::uint64_t{1} << c) - 1;
  std::vector<std::pair<SelfAvoidingHike, SelfAvoidingHike>> out;
  out.reserve(std::size_t{1} << c);
  for (std::uint64_t pick = 0; pick <= all; ++pick) out.emplace_back(h.select(pick), h.select(all & ~pick));
  return out;
}

inline int counit(const SelfAvoidingHike& h) { return h.is_unit() ? 1 : 0; }

inline HikeSeries antipode(const HikeSeries& s) {
  HikeSeries r;
  for (const auto& [h, c] : s) r.add(h, (h.omega() & 1) ? Rational(-c) : c);
  return r;
}

/// Convolution product: [h](a * b) = sum over coproduct splits (d, h/d) of a(d) b(h/d).
/// Terms are grouped by support so only disjoint support pairs are visited.
inline HikeSeries star_convolve(const HikeSeries& a, const HikeSeries& b) {
  using Bucket = std::vector<const std::pair<const SelfAvoidingHike, Rational>*>;
  std::unordered_map<Mask, Bucket> by_support_b;
  Mask universe_b = 0;
  for (const auto& term : b) {
    by_support_b[term.first.support()].push_back(&term);
    universe_b |= term.first.support();
  }
  std::map<Mask, Bucket> by_support_a;
  for (const auto& term : a) by_support_a[term.first.support()].push_back(&term);

  HikeSeries r;
  for (const auto& [sa, bucket_a] : by_support_a) {
    const Mask room = universe_b & ~sa;
    // Submasks of `room`, including the empty set.
    for (Mask sb = room;; sb = (sb - 1) & room) {
      if (auto it = by_support_b.find(sb); it != by_support_b.end()) {
        for (const auto* x : bucket_a)
          for (const auto* y : it->second) {
            auto prod = disjoint_product(x->first, y->first);
            r.add(*prod, x->second * y->second);
          }
      }
      if (sb == 0) break;
    }
  }
  return r;
}

/// Power series sum_{k>=0} coeff(k) beta^{*k}, stopping when beta^{*k} vanishes.
/// beta must have no unit term, which makes it nilpotent.
template <class CoeffFn>
HikeSeries nilpotent_series(const HikeSeries& beta, CoeffFn coeff) {
  if (beta.coefficient(SelfAvoidingHike::unit()) != 0) {
    throw std::invalid_argument("nilpotent_series: argument has a unit term");
  }
  HikeSeries result = HikeSeries::delta() * coeff(0);
  HikeSeries power = HikeSeries::delta();
  for (std::size_t k = 1;; ++k) {
    power = star_convolve(power, beta);
    if (power.empty()) break;
    result += power * coeff(k);
  }
  return result;
}

/// exp_*(alpha) for alpha with zero unit coefficient.
inline HikeSeries star_exp(const HikeSeries& alpha) {
  if (alpha.coefficient(SelfAvoidingHike::unit()) != 0) {
    throw std::invalid_argument("star_exp: coefficient on the empty hike must be 0");
  }
  Rational inv_factorial = 1;
  std::size_t last = 0;
  return nilpotent_series(alpha, [&](std::size_t k) {
    for (; last < k; ++last) inv_factorial /= Rational(static_cast<long long>(last + 1));
    return inv_factorial;
  });
}

/// log_*(alpha) for alpha with unit coefficient 1.
inline HikeSeries star_log(const HikeSeries& alpha) {
  if (alpha.coefficient(SelfAvoidingHike::unit()) != 1) {
    throw std::invalid_argument("star_log: coefficient on the empty hike must be 1");
  }
  const HikeSeries beta = alpha - HikeSeries::delta();
  return nilpotent_series(beta, [](std::size_t k) {
    if (k == 0) return Rational(0);
    const Rational r(1, static_cast<long long>(k));
    return (k & 1) ? r : Rational(-r);
  });
}

/// alpha^{*k}; negative k requires a non-zero unit coefficient.
inline HikeSeries star_power(const HikeSeries& alpha, long long k) {
  if (k >= 0) {
    HikeSeries r = HikeSeries::delta();
    for (long long i = 0; i < k; ++i) r = star_convolve(r, alpha);
    return r;
  }
  const Rational c = alpha.coefficient(SelfAvoidingHike::unit());
  if (c == 0) throw std::invalid_argument("star_power: series is not *-invertible");
  // alpha = c (delta + beta)  =>  alpha^{-1} = c^{-1} sum_j (-beta)^{*j}
  HikeSeries beta = alpha * (Rational(1) / c) - HikeSeries::delta();
  HikeSeries inverse = nilpotent_series(beta, [](std::size_t j) { return Rational((j & 1) ? -1 : 1); });
  inverse *= Rational(1) / c;
  return star_power(inverse, -k);
}

/// Sum of h with weight(h) as coefficient, over the given hikes.
template <class Weight>
HikeSeries weighted_series(const std::vector<SelfAvoidingHike>& hikes, Weight weight) {
  HikeSeries s;
  for (const auto& h : hikes) s.add(h, Rational(weight(h)));
  return s;
}

inline HikeSeries zeta_series(const std::vector<SelfAvoidingHike>& hikes) {
  return weighted_series(hikes, [](const SelfAvoidingHike&) { return 1; });
}

inline HikeSeries mobius_series(const std::vector<SelfAvoidingHike>& hikes) {
  return weighted_series(hikes, [](const SelfAvoidingHike& h) { return (h.omega() & 1) ? -1 : 1; });
}

/// Grading map: sum_h omega(h) h.
inline HikeSeries omega_series(const std::vector<SelfAvoidingHike>& hikes) {
  return weighted_series(hikes, [](const SelfAvoidingHike& h) { return static_cast<long long>(h.omega()); });
}

/// Pi = sum over primes p of p.
inline HikeSeries prime_series(const std::vector<SimpleCycle>& primes) {
  HikeSeries s;
  for (const auto& p : primes) s.add(SelfAvoidingHike({p}), 1);
  return s;
}

/// Restricted von Mangoldt function: l(h) on primes, 0 otherwise.
inline long long von_mangoldt_sa(const SelfAvoidingHike& h) {
  return h.is_prime() ? static_cast<long long>(h.length()) : 0;
}

/// Liouville function (-1)^{Omega(h)}; equals the Moebius function on self-avoiding hikes.
inline int liouville_sa(const SelfAvoidingHike& h) { return (h.omega() & 1) ? -1 : 1; }

inline HikeSeries require_integral(HikeSeries s, const char* what) {
  if (!s.is_integral()) throw IdentityViolation(std::string(what) + " has a non-integral coefficient");
  return s;
}

/// The self-avoiding hikes of G, built from its simple cycles.
struct HikeUniverse {
  std::vector<SimpleCycle> primes;
  std::vector<SelfAvoidingHike> hikes;

  static HikeUniverse of(const Digraph& g, std::size_t budget = kDefaultHikeBudget) {
    HikeUniverse u;
    u.primes = enumerate_simple_cycles(g, budget);
    u.hikes = enumerate_sa_hikes(g, u.primes, budget);
    return u;
  }
};

/// log_* of the identity (the zeta series): the Eulerian idempotent applied to S_G.
inline HikeSeries eulerian_idempotent(const HikeUniverse& u) {
  return require_integral(star_log(zeta_series(u.hikes)), "Eulerian idempotent");
}

/// S * E: antipode (the Moebius series) convolved with the grading map.
inline HikeSeries dynkin_idempotent(const HikeUniverse& u) {
  return require_integral(star_convolve(mobius_series(u.hikes), omega_series(u.hikes)), "Dynkin idempotent");
}

inline HikeSeries eulerian_idempotent(const Digraph& g, std::size_t budget = kDefaultHikeBudget) {
  return eulerian_idempotent(HikeUniverse::of(g, budget));
}

inline HikeSeries dynkin_idempotent(const Digraph& g, std::size_t budget = kDefaultHikeBudget) {
  return dynkin_idempotent(HikeUniverse::of(g, budget));
}

/// h -> z^{l(h)}; coefficients must be integers.
inline IntPoly specialize(const HikeSeries& s, std::size_t cap) {
  IntPoly p(cap);
  for (const auto& [h, c] : s) {
    if (!is_integer(c)) throw std::invalid_argument("specialize: non-integral coefficient");
    if (h.length() <= cap) p[h.length()] += boost::multiprecision::numerator(c);
  }
  return p;
}

/// Exact-support specialization: S -> sum over hikes with V(h) = S of coeff(h) z^{l(h)}.
inline SubsetFunction<BigInt> specialize_by_support(const HikeSeries& s, std::size_t n, std::size_t cap) {
  SubsetFunction<BigInt> f(std::size_t{1} << n, IntPoly(cap));
  for (const auto& [h, c] : s) {
    if (!is_integer(c)) throw std::invalid_argument("specialize_by_support: non-integral coefficient");
    if ((h.support() & ~full_mask(n)) != 0) throw std::invalid_argument("specialize_by_support: hike outside V");
    if (h.length() <= cap) f[h.support()][h.length()] += boost::multiprecision::numerator(c);
  }
  return f;
}

/// Census read off a prime series (each prime must have coefficient 1).
inline CycleCensus census_of_prime_series(const HikeSeries& pi, std::size_t n) {
  CycleCensus c(n);
  for (const auto& [h, coeff] : pi) {
    if (!h.is_prime() || coeff != 1) {
      throw IdentityViolation("series is not a sum of distinct primes: " + h.str() + " has coefficient " +
                              coeff.str());
    }
    c[h.length()] += 1;
  }
  return c;
}

}  // namespace cyclehopf

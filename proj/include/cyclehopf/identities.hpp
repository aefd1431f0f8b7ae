#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "census.hpp"
#include "detperm.hpp"
#include "hopf.hpp"
#include "oracle.hpp"

// The exact identities the counting formulas rest on, packaged as named
// checks. Each returns an empty string on success or a description of the
// first counterexample.

namespace cyclehopf {

struct IdentityResult {
  std::string name;
  std::string failure;  // empty when the identity holds

  bool ok() const { return failure.empty(); }
};

namespace identity {

inline std::string det_perm_inverse(const MinorTables& t) {
  const BigInt got = det_perm_inverse_sum(t);
  const BigInt want = t.n == 0 ? 1 : 0;
  return got == want ? "" : "sum is " + got.str() + ", expected " + want.str();
}

inline std::string convolutions_equal_one(const MinorTables& t, std::size_t threads) {
  const IntPoly one = IntPoly::constant(1, t.n);
  if (auto p = perm_times_det_I_minus(t, threads); p != one) return "perm(zA) * det(I - zA) = " + p.str();
  if (auto p = perm_I_plus_times_det(t, threads); p != one) return "perm(I + zA) * det(-zA) = " + p.str();
  return "";
}

/// Both census variants agree and every [z^l] D Pi is divisible by l.
inline std::string census_consistent(const Digraph& g, const MinorTables& t, std::size_t threads,
                                     CycleCensus* census_out = nullptr) {
  try {
    CensusOptions opts;
    opts.threads = threads;
    const CycleCensus c = cycle_census_conv(g, t, opts);
    if (census_out) *census_out = c;
  } catch (const IdentityViolation& e) {
    return e.what();
  }
  return "";
}

inline std::string hamiltonian_is_top_count(const Digraph& g, const MinorTables& t, const CycleCensus& c) {
  try {
    const BigInt h = hamiltonian_count(g, t);
    return h == c.at(g.order()) ? "" : "hamiltonian " + h.str() + " vs c_n " + c.at(g.order()).str();
  } catch (const IdentityViolation& e) {
    return e.what();
  }
}

inline std::string coassociative(const SelfAvoidingHike& h) {
  using Triple = std::tuple<SelfAvoidingHike, SelfAvoidingHike, SelfAvoidingHike>;
  std::vector<Triple> left, right;
  for (const auto& [d, e] : coproduct(h)) {
    for (const auto& [d1, d2] : coproduct(d)) left.emplace_back(d1, d2, e);
    for (const auto& [e1, e2] : coproduct(e)) right.emplace_back(d, e1, e2);
  }
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  return left == right ? "" : "fails at " + h.str();
}

inline std::string counit_law(const SelfAvoidingHike& h) {
  HikeSeries left, right;
  for (const auto& [d, e] : coproduct(h)) {
    left.add(e, counit(d));
    right.add(d, counit(e));
  }
  const HikeSeries want = HikeSeries::single(h);
  return left == want && right == want ? "" : "fails at " + h.str();
}

inline std::string cocommutative(const SelfAvoidingHike& h) {
  auto split = coproduct(h);
  std::vector<std::pair<SelfAvoidingHike, SelfAvoidingHike>> swapped;
  for (const auto& [d, e] : split) swapped.emplace_back(e, d);
  std::sort(split.begin(), split.end());
  std::sort(swapped.begin(), swapped.end());
  return split == swapped ? "" : "fails at " + h.str();
}

/// sum over splits (d, h/d) of mu(d) [h/d] vanishes for h != 1.
inline std::string antipode_law(const HikeUniverse& u) {
  const HikeSeries zeta = zeta_series(u.hikes);
  const HikeSeries left = star_convolve(antipode(zeta), zeta);
  const HikeSeries right = star_convolve(zeta, antipode(zeta));
  if (left != HikeSeries::delta()) return "S(zeta) * zeta != delta";
  if (right != HikeSeries::delta()) return "zeta * S(zeta) != delta";
  return "";
}

/// Sum of the restricted von Mangoldt function over divisors equals the length.
inline std::string mangoldt_length(const SelfAvoidingHike& h) {
  long long sum = 0;
  for (const auto& [d, rest] : coproduct(h)) sum += von_mangoldt_sa(d);
  return sum == static_cast<long long>(h.length()) ? "" : "fails at " + h.str();
}

inline std::string log_projects_onto_primes(const HikeUniverse& u) {
  const HikeSeries pi = prime_series(u.primes);
  if (star_log(zeta_series(u.hikes)) != pi) return "log(zeta) != Pi";
  if (-star_log(mobius_series(u.hikes)) != pi) return "-log(mu) != Pi";
  return "";
}

inline std::string powers_of_zeta(const HikeUniverse& u, long long k_min = -2, long long k_max = 3) {
  const HikeSeries zeta = zeta_series(u.hikes);
  for (long long k = k_min; k <= k_max; ++k) {
    const HikeSeries got = star_power(zeta, k);
    HikeSeries want;
    for (const auto& h : u.hikes) {
      BigInt w = 1;
      for (std::size_t i = 0; i < h.omega(); ++i) w *= k;
      want.add(h, Rational(w));
    }
    if (got != want) return "zeta^" + std::to_string(k) + " != sum k^Omega(h) h";
  }
  return "";
}

inline std::string pi_times_zeta_is_omega(const HikeUniverse& u) {
  return star_convolve(prime_series(u.primes), zeta_series(u.hikes)) == omega_series(u.hikes)
             ? ""
             : "Pi * zeta != sum omega(h) h";
}

inline std::string idempotents_agree(const HikeUniverse& u) {
  const HikeSeries pi = prime_series(u.primes);
  try {
    if (eulerian_idempotent(u) != pi) return "Eulerian idempotent != Pi";
    if (dynkin_idempotent(u) != pi) return "Dynkin idempotent != Pi";
  } catch (const IdentityViolation& e) {
    return e.what();
  }
  return "";
}

inline std::string specialization_matches(const Digraph& g, const MinorTables& t, const HikeUniverse& u,
                                          const CycleCensus& census) {
  const std::size_t n = g.order();
  if (specialize(zeta_series(u.hikes), n) != perm_I_plus_zA(t)) return "zeta does not specialize to perm(I + zA)";
  if (specialize(mobius_series(u.hikes), n) != det_I_minus_zA(t)) return "mu does not specialize to det(I - zA)";
  IntPoly pi(n);
  for (std::size_t l = 1; l <= n; ++l) pi[l] = census.at(l);
  if (specialize(prime_series(u.primes), n) != pi) return "Pi does not specialize to the census";
  return "";
}

template <class Check>
std::string for_every_hike(const HikeUniverse& u, Check check) {
  for (const auto& h : u.hikes)
    if (auto f = check(h); !f.empty()) return f;
  return "";
}

}  // namespace identity

/// Determinant/permanent and census identities; cost O(3^n n) via the tables.
inline std::vector<IdentityResult> integer_identities(const Digraph& g, const MinorTables& t, std::size_t threads,
                                                      CycleCensus* census_out = nullptr) {
  std::vector<IdentityResult> out;
  out.push_back({"det-perm inverse", identity::det_perm_inverse(t)});
  out.push_back({"convolutions with det(I-zA) and perm(I+zA) equal 1", identity::convolutions_equal_one(t, threads)});
  CycleCensus c(g.order());
  out.push_back({"census variants agree, D Pi divisible", identity::census_consistent(g, t, threads, &c)});
  if (out.back().ok()) out.push_back({"hamiltonian count = c_n", identity::hamiltonian_is_top_count(g, t, c)});
  if (census_out) *census_out = c;
  return out;
}

/// Hopf-algebra identities over an enumerated hike universe.
inline std::vector<IdentityResult> hopf_identities(const Digraph& g, const MinorTables& t, const HikeUniverse& u,
                                                   const CycleCensus& census) {
  std::vector<IdentityResult> out;
  const CycleCensus oracle = census_of(u.primes, g.order());
  out.push_back({"oracle census = convolution census",
                 oracle == census ? "" : "oracle " + oracle.str() + " vs " + census.str()});
  out.push_back({"coassociativity", identity::for_every_hike(u, identity::coassociative)});
  out.push_back({"counit", identity::for_every_hike(u, identity::counit_law)});
  out.push_back({"cocommutativity", identity::for_every_hike(u, identity::cocommutative)});
  out.push_back({"antipode", identity::antipode_law(u)});
  out.push_back({"log projects onto primes", identity::log_projects_onto_primes(u)});
  out.push_back({"powers of zeta", identity::powers_of_zeta(u)});
  out.push_back({"Pi * zeta = omega series", identity::pi_times_zeta_is_omega(u)});
  out.push_back({"von Mangoldt sums to length", identity::for_every_hike(u, identity::mangoldt_length)});
  out.push_back({"Eulerian = Dynkin = Pi", identity::idempotents_agree(u)});
  out.push_back({"z-specialization", identity::specialization_matches(g, t, u, census)});
  return out;
}

}  // namespace cyclehopf

#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "digraph.hpp"

namespace cyclehopf {

/// Elementary directed circuit v0 -> v1 -> ... -> v_{l-1} -> v0, stored in
/// canonical rotation (smallest vertex first). Length 1 is a loop, length 2 a
/// backtrack.
class SimpleCycle {
 public:
  SimpleCycle() = default;

  /// Canonicalizes the rotation. Throws if a vertex repeats or the list is empty.
  explicit SimpleCycle(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw std::invalid_argument("SimpleCycle: empty vertex list");
    for (Vertex v : vertices_) {
      if (v >= kMaxVertices) throw std::invalid_argument("SimpleCycle: vertex out of range");
      const Mask bit = Mask{1} << v;
      if (support_ & bit) throw std::invalid_argument("SimpleCycle: repeated vertex");
      support_ |= bit;
    }
    std::rotate(vertices_.begin(), std::min_element(vertices_.begin(), vertices_.end()), vertices_.end());
  }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::size_t length() const { return vertices_.size(); }
  Mask support() const { return support_; }
  Vertex min_vertex() const { return vertices_.front(); }

  bool is_cycle_of(const Digraph& g) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const Vertex u = vertices_[i];
      const Vertex v = vertices_[(i + 1) % vertices_.size()];
      if (u >= g.order() || v >= g.order() || !g.has_edge(u, v)) return false;
    }
    return true;
  }

  friend bool operator==(const SimpleCycle& a, const SimpleCycle& b) { return a.vertices_ == b.vertices_; }
  friend std::strong_ordering operator<=>(const SimpleCycle& a, const SimpleCycle& b) {
    return a.vertices_ <=> b.vertices_;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(vertices_[i]);
    }
    return s;
  }

 private:
  std::vector<Vertex> vertices_;
  Mask support_ = 0;
};

/// Set of pairwise vertex-disjoint simple cycles, sorted by smallest vertex.
/// The empty hike is the unit. Length equals support size and every grading
/// (prime factors, distinct prime factors, components) equals the component count.
class SelfAvoidingHike {
 public:
  SelfAvoidingHike() = default;

  explicit SelfAvoidingHike(std::vector<SimpleCycle> components) : components_(std::move(components)) {
    std::sort(components_.begin(), components_.end(),
              [](const SimpleCycle& a, const SimpleCycle& b) { return a.min_vertex() < b.min_vertex(); });
    for (const auto& c : components_) {
      if (support_ & c.support()) throw std::invalid_argument("SelfAvoidingHike: components share a vertex");
      support_ |= c.support();
    }
  }

  static SelfAvoidingHike unit() { return {}; }

  const std::vector<SimpleCycle>& components() const { return components_; }
  Mask support() const { return support_; }
  std::size_t length() const { return static_cast<std::size_t>(std::popcount(support_)); }
  std::size_t omega() const { return components_.size(); }
  bool is_unit() const { return components_.empty(); }
  bool is_prime() const { return components_.size() == 1; }

  /// Restriction to the components selected by `pick` (bit i selects component i).
  SelfAvoidingHike select(std::uint64_t pick) const {
    SelfAvoidingHike r;
    for (std::size_t i = 0; i < components_.size(); ++i) {
      if ((pick >> i) & 1U) {
        r.components_.push_back(components_[i]);
        r.support_ |= components_[i].support();
      }
    }
    return r;
  }

  /// Product in the hike monoid restricted to self-avoiding hikes: the union
  /// when the supports are disjoint, nothing otherwise.
  friend std::optional<SelfAvoidingHike> disjoint_product(const SelfAvoidingHike& a, const SelfAvoidingHike& b) {
    if (a.support_ & b.support_) return std::nullopt;
    SelfAvoidingHike r;
    r.components_.reserve(a.components_.size() + b.components_.size());
    std::merge(a.components_.begin(), a.components_.end(), b.components_.begin(), b.components_.end(),
               std::back_inserter(r.components_),
               [](const SimpleCycle& x, const SimpleCycle& y) { return x.min_vertex() < y.min_vertex(); });
    r.support_ = a.support_ | b.support_;
    return r;
  }

  friend bool operator==(const SelfAvoidingHike& a, const SelfAvoidingHike& b) {
    return a.components_ == b.components_;
  }
  friend std::strong_ordering operator<=>(const SelfAvoidingHike& a, const SelfAvoidingHike& b) {
    return a.components_ <=> b.components_;
  }

  /// "[c1 | c2 | ...]" with each cycle as its vertex sequence; the unit prints as "[]".
  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < components_.size(); ++i) {
      if (i) s += " | ";
      s += components_[i].str();
    }
    return s + "]";
  }

 private:
  std::vector<SimpleCycle> components_;
  Mask support_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const SimpleCycle& c) { return os << '(' << c.str() << ')'; }
inline std::ostream& operator<<(std::ostream& os, const SelfAvoidingHike& h) { return os << h.str(); }

}  // namespace cyclehopf

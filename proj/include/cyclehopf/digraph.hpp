#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace cyclehopf {

using Vertex = std::uint32_t;
using Mask = std::uint64_t;

// Vertex subsets are single machine words.
inline constexpr std::size_t kMaxVertices = 64;

inline constexpr Mask full_mask(std::size_t n) {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

/// Subset of {0, ..., n-1}. The natural integer encoding doubles as the
/// iteration order over all subsets.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(Mask bits) : bits_(bits) {}

  static VertexSet full(std::size_t n) { return VertexSet(full_mask(n)); }

  static VertexSet of(std::initializer_list<Vertex> vs) {
    Mask m = 0;
    for (Vertex v : vs) m |= Mask{1} << v;
    return VertexSet(m);
  }

  constexpr Mask bits() const { return bits_; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(Vertex v) const { return (bits_ >> v) & 1U; }

  VertexSet complement(std::size_t n) const { return VertexSet(full_mask(n) & ~bits_); }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    out.reserve(size());
    for (Mask m = bits_; m != 0; m &= m - 1) out.push_back(static_cast<Vertex>(std::countr_zero(m)));
    return out;
  }

  friend constexpr bool operator==(VertexSet, VertexSet) = default;
  friend constexpr auto operator<=>(VertexSet, VertexSet) = default;

 private:
  Mask bits_ = 0;
};

/// Dense row-major square matrix of small integers.
struct IntMatrix {
  std::size_t dim = 0;
  std::vector<long long> data;

  IntMatrix() = default;
  explicit IntMatrix(std::size_t k) : dim(k), data(k * k, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) : dim(rows.size()) {
    data.reserve(dim * dim);
    for (const auto& r : rows) {
      if (r.size() != dim) throw std::invalid_argument("IntMatrix: rows must be square");
      data.insert(data.end(), r.begin(), r.end());
    }
  }

  long long& operator()(std::size_t i, std::size_t j) { return data[i * dim + j]; }
  long long operator()(std::size_t i, std::size_t j) const { return data[i * dim + j]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

/// Finite simple digraph, loops allowed. Immutable after construction.
class Digraph {
 public:
  Digraph() = default;

  Digraph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges) : n_(n), out_(n, 0), in_(n, 0) {
    if (n > kMaxVertices) {
      throw std::invalid_argument("Digraph: at most " + std::to_string(kMaxVertices) + " vertices supported");
    }
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw std::invalid_argument("Digraph: endpoint out of range");
      if ((out_[u] >> v) & 1U) throw std::invalid_argument("Digraph: duplicate edge");
      out_[u] |= Mask{1} << v;
      in_[v] |= Mask{1} << u;
    }
    edges_ = std::move(edges);
    std::sort(edges_.begin(), edges_.end());
  }

  std::size_t order() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }

  bool has_edge(Vertex u, Vertex v) const { return (out_[u] >> v) & 1U; }
  Mask out_neighbors(Vertex u) const { return out_[u]; }
  Mask in_neighbors(Vertex v) const { return in_[v]; }

  VertexSet vertices() const { return VertexSet::full(n_); }

  IntMatrix adjacency() const { return induced_adjacency(vertices()); }

  /// Adjacency of the subgraph induced by `s`, rows and columns in ascending vertex order.
  IntMatrix induced_adjacency(VertexSet s) const {
    const auto vs = s.vertices();
    IntMatrix m(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = 0; j < vs.size(); ++j) m(i, j) = has_edge(vs[i], vs[j]) ? 1 : 0;
    return m;
  }

  /// True when some vertex of `s` has no out-edge or no in-edge inside `s`.
  /// Such a subset supports no cycle cover, so its determinant and permanent vanish.
  bool has_dead_vertex(Mask s) const {
    for (Mask m = s; m != 0; m &= m - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(m));
      if ((out_[v] & s) == 0 || (in_[v] & s) == 0) return true;
    }
    return false;
  }

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Mask> out_;
  std::vector<Mask> in_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
};

inline IntMatrix induced_adjacency(const Digraph& g, VertexSet s) { return g.induced_adjacency(s); }

inline VertexSet subset_complement(const Digraph& g, VertexSet s) { return s.complement(g.order()); }

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\f\v");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\f\v");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_index(std::string_view tok, std::size_t line) {
  if (!tok.empty() && tok.front() == '-') throw ParseError(line, "negative index '" + std::string(tok) + "'");
  std::uint64_t value = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ParseError(line, "malformed integer '" + std::string(tok) + "'");
  return value;
}

}  // namespace detail

/// Reads the edge-list format: one "u v" arc per line, '#' comments, blank
/// lines ignored, optional leading "n N" header fixing the vertex count.
inline Digraph parse_edge_list(std::istream& in) {
  std::optional<std::size_t> declared;
  bool seen_content = false;
  std::uint64_t max_index = 0;
  bool any_edge = false;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<Mask> out;  // duplicate detection

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto tok = detail::split_ws(line);

    if (!seen_content && tok.size() == 2 && tok[0] == "n") {
      seen_content = true;
      const auto n = detail::parse_index(tok[1], line_no);
      if (n > kMaxVertices) {
        throw ParseError(line_no, "declared vertex count " + std::to_string(n) + " exceeds supported maximum " +
                                      std::to_string(kMaxVertices));
      }
      declared = static_cast<std::size_t>(n);
      continue;
    }
    seen_content = true;
    if (tok.size() != 2) throw ParseError(line_no, "expected \"u v\", got '" + std::string(line) + "'");

    const auto u = detail::parse_index(tok[0], line_no);
    const auto v = detail::parse_index(tok[1], line_no);
    for (auto idx : {u, v}) {
      if (declared && idx >= *declared) {
        throw ParseError(line_no, "index " + std::to_string(idx) + " >= declared n " + std::to_string(*declared));
      }
      if (idx >= kMaxVertices) {
        throw ParseError(line_no, "index " + std::to_string(idx) + " exceeds supported maximum " +
                                      std::to_string(kMaxVertices - 1));
      }
    }
    if (out.size() <= u) out.resize(u + 1, 0);
    if ((out[u] >> v) & 1U) {
      throw ParseError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    out[u] |= Mask{1} << v;
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    max_index = std::max({max_index, u, v});
    any_edge = true;
  }

  const std::size_t n = declared ? *declared : (any_edge ? static_cast<std::size_t>(max_index) + 1 : 0);
  return Digraph(n, std::move(edges));
}

inline Digraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

inline std::string to_edge_list(const Digraph& g) {
  std::ostringstream os;
  os << "n " << g.order() << '\n';
  for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

}  // namespace cyclehopf

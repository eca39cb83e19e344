#include "randcomplex/topology.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "internal.hpp"
#include "randcomplex/error.hpp"

namespace randcomplex {

namespace {

constexpr std::int64_t kAbsent = -1;

inline std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }
inline void set_bit(std::uint64_t* row, std::size_t b) { row[b >> 6] |= std::uint64_t{1} << (b & 63); }

inline bool any_bit(const std::uint64_t* row, std::size_t words) {
  for (std::size_t w = 0; w < words; ++w) {
    if (row[w]) return true;
  }
  return false;
}

inline std::size_t count_bits(const std::uint64_t* row, std::size_t words) {
  std::size_t c = 0;
  for (std::size_t w = 0; w < words; ++w) c += static_cast<std::size_t>(std::popcount(row[w]));
  return c;
}

// A fixed number of equal-width bit rows in one buffer.
class BitRows {
 public:
  BitRows(std::size_t rows, std::size_t bits) : words_(word_count(bits)), data_(rows * words_, 0) {}
  std::size_t words() const { return words_; }
  std::uint64_t* operator[](std::size_t r) { return data_.data() + r * words_; }
  const std::uint64_t* operator[](std::size_t r) const { return data_.data() + r * words_; }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> data_;
};

// One bit row per pair (i, a) with a in keys[i], addressed by the rank of a in keys[i].
class PairRows {
 public:
  PairRows(const BitRows& keys, std::size_t m)
      : keys_(keys), words_(keys.words()), rank_(m * words_), base_(m + 1, 0) {
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t running = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        rank_[i * words_ + w] = static_cast<std::uint32_t>(running);
        running += static_cast<std::size_t>(std::popcount(keys[i][w]));
      }
      base_[i + 1] = base_[i] + running;
    }
    data_.assign(base_[m] * words_, 0);
  }

  std::uint64_t* row(std::size_t i, std::size_t a) { return data_.data() + slot(i, a) * words_; }
  const std::uint64_t* row(std::size_t i, std::size_t a) const { return data_.data() + slot(i, a) * words_; }

 private:
  std::size_t slot(std::size_t i, std::size_t a) const {
    const std::size_t w = a >> 6;
    const std::uint64_t below = keys_[i][w] & ((std::uint64_t{1} << (a & 63)) - 1);
    return base_[i] + rank_[i * words_ + w] + static_cast<std::size_t>(std::popcount(below));
  }

  const BitRows& keys_;
  std::size_t words_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::size_t> base_;
  std::vector<std::uint64_t> data_;
};

// Vertices of Y compacted to 0..m-1 with 1-skeleton adjacency.
struct Skeleton {
  std::vector<Vertex> labels;
  std::vector<std::int64_t> index;  // by label; kAbsent if not a vertex of Y
  BitRows adjacency;

  explicit Skeleton(const SimplicialComplex& y)
      : labels(y.vertices()),
        index(static_cast<std::size_t>(y.n()) + 1, kAbsent),
        adjacency(labels.size(), labels.size()) {
    for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = static_cast<std::int64_t>(i);
    for (std::size_t e = 0; e < y.count(1); ++e) {
      const auto edge = y.face(1, e);
      set_bit(adjacency[at(edge[0])], at(edge[1]));
      set_bit(adjacency[at(edge[1])], at(edge[0]));
    }
  }

  std::size_t size() const { return labels.size(); }
  std::size_t words() const { return adjacency.words(); }
  std::size_t at(Vertex v) const { return static_cast<std::size_t>(index[v]); }
};

// Link edges of each vertex: row (i, a) = { b : {i, a, b} is a triangle }.
PairRows link_rows(const SimplicialComplex& y, const Skeleton& g) {
  PairRows rows(g.adjacency, g.size());
  for (std::size_t t = 0; t < y.count(2); ++t) {
    const auto tri = y.face(2, t);
    const std::size_t v[3] = {g.at(tri[0]), g.at(tri[1]), g.at(tri[2])};
    for (int c = 0; c < 3; ++c) {
      const std::size_t i = v[c];
      const std::size_t a = v[(c + 1) % 3];
      const std::size_t b = v[(c + 2) % 3];
      set_bit(rows.row(i, a), b);
      set_bit(rows.row(i, b), a);
    }
  }
  return rows;
}

// Reusable buffers for connectivity searches.
struct Search {
  std::vector<std::uint64_t> visited;
  std::vector<std::size_t> stack;

  explicit Search(std::size_t words) : visited(words) {}

  // Connected iff a search over `within` from its first element, where the
  // neighbours of a are rows(a).first & rows(a).second, reaches all of it.
  template <typename Rows>
  bool connected(const std::uint64_t* within, Rows&& rows) {
    const std::size_t words = visited.size();
    std::fill(visited.begin(), visited.end(), 0);
    stack.clear();
    std::size_t start = 0;
    bool found = false;
    for (std::size_t w = 0; w < words && !found; ++w) {
      if (within[w]) {
        start = w * 64 + static_cast<std::size_t>(std::countr_zero(within[w]));
        found = true;
      }
    }
    if (!found) return false;
    set_bit(visited.data(), start);
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      const auto [left, right] = rows(a);
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t step = left[w] & right[w] & within[w] & ~visited[w];
        visited[w] |= step;
        for (; step; step &= step - 1) stack.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(step)));
      }
    }
    for (std::size_t w = 0; w < words; ++w) {
      if (visited[w] != within[w]) return false;
    }
    return true;
  }
};

void require_tuple(const SimplicialComplex& y, std::span<const Vertex> tuple) {
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] == 0 || tuple[i] > y.n() || !y.contains_vertex(tuple[i])) {
      fail(ErrorCode::InvalidArgument, "tuple vertex " + std::to_string(tuple[i]) +
                                           " is not a vertex of Y");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (tuple[i] == tuple[j]) fail(ErrorCode::InvalidArgument, "tuple has repeated vertices");
    }
  }
}

}  // namespace

// --- DisjointSets -----------------------------------------------------------

DisjointSets::DisjointSets(std::size_t size) : parent_(size), size_(size, 1), sets_(size) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  --sets_;
  return true;
}

// --- connectivity -----------------------------------------------------------

std::vector<std::vector<Vertex>> connected_components(const SimplicialComplex& y) {
  const auto labels = y.vertices();
  std::vector<std::int64_t> index(static_cast<std::size_t>(y.n()) + 1, kAbsent);
  for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = static_cast<std::int64_t>(i);
  DisjointSets sets(labels.size());
  for (std::size_t e = 0; e < y.count(1); ++e) {
    const auto edge = y.face(1, e);
    sets.unite(static_cast<std::size_t>(index[edge[0]]), static_cast<std::size_t>(index[edge[1]]));
  }
  std::vector<std::vector<Vertex>> out;
  std::vector<std::int64_t> slot(labels.size(), kAbsent);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::size_t root = sets.find(i);
    if (slot[root] == kAbsent) {
      slot[root] = static_cast<std::int64_t>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[root])].push_back(labels[i]);
  }
  return out;
}

bool is_connected(const SimplicialComplex& y) { return connected_components(y).size() == 1; }

std::vector<Vertex> isolated_vertices(const SimplicialComplex& y) {
  std::vector<char> touched(static_cast<std::size_t>(y.n()) + 1, 0);
  for (std::size_t e = 0; e < y.count(1); ++e) {
    const auto edge = y.face(1, e);
    touched[edge[0]] = touched[edge[1]] = 1;
  }
  std::vector<Vertex> out;
  for (Vertex v : y.vertices()) {
    if (!touched[v]) out.push_back(v);
  }
  return out;
}

bool is_isolated_subcomplex(const SimplicialComplex& y, const SimplicialComplex& s) {
  if (!is_subcomplex(s, y)) fail(ErrorCode::InvalidArgument, "S is not a subcomplex of Y");
  for (std::size_t e = 0; e < y.count(1); ++e) {
    const auto edge = y.face(1, e);
    if (s.contains_vertex(edge[0]) != s.contains_vertex(edge[1])) return false;
  }
  return true;
}

// --- degrees and neighbours -------------------------------------------------

namespace {

// Triangle count per edge, aligned with y.face(1, .).
std::vector<std::size_t> edge_degrees(const SimplicialComplex& y, const Skeleton& g, const PairRows& links) {
  std::vector<std::size_t> degrees(y.count(1), 0);
  for (std::size_t e = 0; e < y.count(1); ++e) {
    const auto edge = y.face(1, e);
    degrees[e] = count_bits(links.row(g.at(edge[0]), g.at(edge[1])), g.words());
  }
  return degrees;
}

TupleCheck k_tuples(const Skeleton& g, std::size_t k) {
  const std::size_t m = g.size();
  const std::size_t words = g.words();
  TupleCheck out;
  if (m < k) return out;

  // running row d = intersection of the neighbourhoods of the first d chosen vertices.
  BitRows running(k + 1, m);
  std::fill(running[0], running[0] + words, ~std::uint64_t{0});
  std::vector<std::size_t> chosen(k);
  bool failed = false;
  auto descend = [&](auto&& self, std::size_t depth, std::size_t from) -> void {
    for (std::size_t v = from; v + (k - depth) <= m && !failed; ++v) {
      chosen[depth] = v;
      const std::uint64_t* prev = running[depth];
      const std::uint64_t* adj = g.adjacency[v];
      std::uint64_t* next = running[depth + 1];
      for (std::size_t w = 0; w < words; ++w) next[w] = prev[w] & adj[w];
      if (depth + 1 == k) {
        if (!any_bit(next, words)) failed = true;
      } else {
        self(self, depth + 1, v + 1);
      }
    }
  };
  descend(descend, 0, 0);
  if (failed) {
    out.holds = false;
    for (std::size_t v : chosen) out.witness.push_back(g.labels[v]);
  }
  return out;
}

PairCheck link_pairs(const Skeleton& g, const PairRows& links) {
  const std::size_t m = g.size();
  const std::size_t words = g.words();
  PairCheck out;
  std::vector<std::uint64_t> within(words);
  Search search(words);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t w = 0; w < words; ++w) within[w] = g.adjacency[i][w] & g.adjacency[j][w];
      const bool connected = search.connected(within.data(), [&](std::size_t a) {
        return std::pair{links.row(i, a), links.row(j, a)};
      });
      if (!connected) {
        out.holds = false;
        out.witness = {g.labels[i], g.labels[j]};
        return out;
      }
    }
  }
  return out;
}

}  // namespace

std::optional<std::size_t> min_edge_degree(const SimplicialComplex& y) {
  if (y.count(1) == 0) return std::nullopt;
  const Skeleton g(y);
  const auto degrees = edge_degrees(y, g, link_rows(y, g));
  return *std::min_element(degrees.begin(), degrees.end());
}

bool common_neighbour_exists(const SimplicialComplex& y, std::span<const Vertex> tuple) {
  require_tuple(y, tuple);
  if (tuple.empty()) return y.count(0) > 0;
  const Skeleton g(y);
  std::vector<std::uint64_t> common(g.adjacency[g.at(tuple[0])], g.adjacency[g.at(tuple[0])] + g.words());
  for (std::size_t i = 1; i < tuple.size(); ++i) {
    const std::uint64_t* adj = g.adjacency[g.at(tuple[i])];
    for (std::size_t w = 0; w < g.words(); ++w) common[w] &= adj[w];
  }
  return any_bit(common.data(), g.words());
}

TupleCheck all_k_tuples_have_common_neighbour(const SimplicialComplex& y, std::size_t k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  return k_tuples(Skeleton(y), k);
}

PairCheck pairwise_link_intersections_connected(const SimplicialComplex& y) {
  const Skeleton g(y);
  return link_pairs(g, link_rows(y, g));
}

// --- certificate ------------------------------------------------------------

Certificate certify_simply_connected(const SimplicialComplex& y) {
  Certificate cert;
  const auto unknown = [&](FailedCondition c, std::vector<Vertex> witness) {
    cert.verdict = Verdict::Unknown;
    cert.failed_condition = c;
    cert.witness = std::move(witness);
    return cert;
  };

  if (!is_connected(y)) return unknown(FailedCondition::Connectivity, {});

  const Skeleton g(y);
  const PairRows links = link_rows(y, g);
  if (y.count(1) > 0) {
    const auto degrees = edge_degrees(y, g, links);
    const auto it = std::min_element(degrees.begin(), degrees.end());
    if (*it == 0) {
      const auto edge = y.face(1, static_cast<std::size_t>(it - degrees.begin()));
      return unknown(FailedCondition::EdgeDegree, {edge.begin(), edge.end()});
    }
  }

  if (auto triples = k_tuples(g, 3); !triples.holds) {
    return unknown(FailedCondition::CommonNeighbour, std::move(triples.witness));
  }

  if (auto pairs = link_pairs(g, links); !pairs.holds) {
    return unknown(FailedCondition::LinkIntersections, std::move(pairs.witness));
  }

  cert.verdict = Verdict::Certified;
  return cert;
}

std::string_view to_string(Verdict v) {
  return v == Verdict::Certified ? "Certified" : "Unknown";
}

std::string_view to_string(FailedCondition c) {
  switch (c) {
    case FailedCondition::Connectivity: return "Connectivity";
    case FailedCondition::EdgeDegree: return "EdgeDegree";
    case FailedCondition::CommonNeighbour: return "CommonNeighbour";
    case FailedCondition::LinkIntersections: return "LinkIntersections";
  }
  return "Unknown";
}

NerveAudit audit_star_cover(const SimplicialComplex& y) {
  const auto labels = y.vertices();
  const std::size_t m = labels.size();
  std::vector<std::int64_t> index(static_cast<std::size_t>(y.n()) + 1, kAbsent);
  for (std::size_t i = 0; i < m; ++i) index[labels[i]] = static_cast<std::int64_t>(i);
  const auto at = [&](Vertex v) { return static_cast<std::size_t>(index[v]); };

  // closed[i] = vertex set of the closed star of i.
  // star_edges(i, a) = { b : {a, b} u {i} is a face }, for a in closed[i].
  BitRows closed(m, m);
  const std::size_t words = closed.words();
  for (std::size_t i = 0; i < m; ++i) set_bit(closed[i], i);
  for (std::size_t e = 0; e < y.count(1); ++e) {
    const auto edge = y.face(1, e);
    set_bit(closed[at(edge[0])], at(edge[1]));
    set_bit(closed[at(edge[1])], at(edge[0]));
  }
  PairRows star_edges(closed, m);
  for (std::size_t e = 0; e < y.count(1); ++e) {
    const auto edge = y.face(1, e);
    const std::size_t a = at(edge[0]);
    const std::size_t b = at(edge[1]);
    for (std::size_t i : {a, b}) {
      set_bit(star_edges.row(i, a), b);
      set_bit(star_edges.row(i, b), a);
    }
  }
  for (std::size_t t = 0; t < y.count(2); ++t) {
    const auto tri = y.face(2, t);
    const std::size_t v[3] = {at(tri[0]), at(tri[1]), at(tri[2])};
    for (int c = 0; c < 3; ++c) {
      const std::size_t i = v[c];
      const std::size_t a = v[(c + 1) % 3];
      const std::size_t b = v[(c + 2) % 3];
      set_bit(star_edges.row(i, a), b);
      set_bit(star_edges.row(i, b), a);
    }
  }

  NerveAudit audit;
  std::vector<std::uint64_t> pair(words);
  Search search(words);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t w = 0; w < words; ++w) pair[w] = closed[i][w] & closed[j][w];
      if (!any_bit(pair.data(), words)) {
        if (audit.nerve_two_skeleton_complete) audit.witness = {labels[i], labels[j]};
        audit.nerve_two_skeleton_complete = false;
        continue;
      }
      for (std::size_t k = j + 1; k < m && audit.nerve_two_skeleton_complete; ++k) {
        bool meet = false;
        for (std::size_t w = 0; w < words && !meet; ++w) meet = (pair[w] & closed[k][w]) != 0;
        if (!meet) {
          audit.nerve_two_skeleton_complete = false;
          audit.witness = {labels[i], labels[j], labels[k]};
        }
      }
      const bool connected = search.connected(pair.data(), [&](std::size_t a) {
        return std::pair{star_edges.row(i, a), star_edges.row(j, a)};
      });
      if (!connected && audit.star_intersections_connected) {
        audit.star_intersections_connected = false;
        audit.witness = {labels[i], labels[j]};
      }
    }
  }
  return audit;
}

// --- regimes ----------------------------------------------------------------

Regime regime_classify(const RegimePoint& point) {
  constexpr double kTie = 1e-12;
  if (point.alpha.size() < 3) {
    fail(ErrorCode::InvalidArgument, "regime needs exponents alpha_0, alpha_1, alpha_2");
  }
  for (double a : point.alpha) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      fail(ErrorCode::InvalidArgument, "exponents must be finite and >= 0");
    }
  }
  const double a0 = point.alpha[0];
  const double a1 = point.alpha[1];
  const double a2 = point.alpha[2];
  const double simple = a0 + 3.0 * a1 + 2.0 * a2;
  const double connect = a0 + a1;
  if (simple < 1.0 - kTie) {
    if (!(connect < 1.0)) throw std::logic_error("simply connected region outside connected region");
    return Regime::SimplyConnected;
  }
  if (connect < 1.0 - kTie) return Regime::Connected;
  if (connect > 1.0 + kTie) return Regime::Disconnected;
  return Regime::Boundary;
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::SimplyConnected: return "SimplyConnected";
    case Regime::Connected: return "Connected";
    case Regime::Disconnected: return "Disconnected";
    case Regime::Boundary: return "Boundary";
  }
  return "Unknown";
}

}  // namespace randcomplex

#include "vsep/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace vsep {

Graph::Graph(int n, std::span<const Edge> edges) : n_(n) {
  if (n < 0) throw Error("negative vertex count");
  adj_.assign(n, {});
  inc_.assign(n, {});
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw Error("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") out of range");
    if (e.u == e.v) throw Error("self-loop at vertex " + std::to_string(e.u) + " rejected");
    edges_.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i] == edges_[i - 1])
      throw Error("parallel edge (" + std::to_string(edges_[i].u) + "," +
                  std::to_string(edges_[i].v) + ") rejected");
  }
  for (int id = 0; id < m(); ++id) {
    adj_[edges_[id].u].push_back(edges_[id].v);
    adj_[edges_[id].v].push_back(edges_[id].u);
  }
  for (int v = 0; v < n; ++v) {
    std::sort(adj_[v].begin(), adj_[v].end());
    inc_[v].reserve(adj_[v].size());
    for (Vertex w : adj_[v]) inc_[v].push_back(edge_id(v, w));
  }
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
  return d;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

int Graph::edge_id(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
  if (it == edges_.end() || !(*it == Edge{u, v})) return -1;
  return static_cast<int>(it - edges_.begin());
}

std::pair<std::vector<int>, int> Graph::components() const {
  std::vector<int> label(n_, -1);
  int count = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n_; ++s) {
    if (label[s] >= 0) continue;
    label[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : adj_[v]) {
        if (label[w] < 0) {
          label[w] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }
  return {std::move(label), count};
}

bool Graph::connected() const { return n_ <= 1 || components().second == 1; }

Graph Graph::induced(std::span<const Vertex> keep) const {
  std::vector<int> local(n_, -1);
  for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<int>(i);
  std::vector<Edge> es;
  for (const Edge& e : edges_) {
    if (local[e.u] >= 0 && local[e.v] >= 0) es.push_back({local[e.u], local[e.v]});
  }
  return Graph(static_cast<int>(keep.size()), es);
}

std::string Graph::canonical_text() const {
  std::string s = std::to_string(n_) + " " + std::to_string(m()) + "\n";
  for (const Edge& e : edges_) s += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return s;
}

std::string Graph::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

bool parse_int(std::string_view tok, long long& out) {
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

}  // namespace

LoadedGraph parse_edge_list(std::istream& in) {
  std::vector<std::pair<long long, long long>> raw;
  std::vector<std::size_t> raw_line;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
    auto toks = split_ws(sv);
    if (toks.empty()) continue;
    if (toks.size() != 2) throw ParseError(lineno, "expected two vertex ids");
    long long a, b;
    if (!parse_int(toks[0], a) || !parse_int(toks[1], b) || a < 0 || b < 0)
      throw ParseError(lineno, "vertex ids must be non-negative integers");
    if (a == b) throw ParseError(lineno, "self-loop at vertex " + std::to_string(a) + " rejected");
    raw.emplace_back(a, b);
    raw_line.push_back(lineno);
  }
  std::vector<long long> labels;
  for (auto [a, b] : raw) {
    labels.push_back(a);
    labels.push_back(b);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  auto dense = [&](long long x) {
    return static_cast<Vertex>(std::lower_bound(labels.begin(), labels.end(), x) - labels.begin());
  };
  std::vector<Edge> es;
  std::map<std::pair<Vertex, Vertex>, std::size_t> seen;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    Vertex u = dense(raw[i].first), v = dense(raw[i].second);
    auto key = std::minmax(u, v);
    if (auto [it, fresh] = seen.emplace(key, raw_line[i]); !fresh)
      throw ParseError(raw_line[i], "parallel edge " + std::to_string(raw[i].first) + " " +
                                        std::to_string(raw[i].second) + " rejected (first at line " +
                                        std::to_string(it->second) + ")");
    es.push_back({u, v});
  }
  LoadedGraph out{Graph(static_cast<int>(labels.size()), es), LabelMap{std::move(labels)}};
  return out;
}

LoadedGraph parse_edge_list_string(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

LoadedGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("no such input: " + path);
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g, const LabelMap* labels) {
  for (const Edge& e : g.edges()) {
    long long a = labels ? labels->label(e.u) : e.u;
    long long b = labels ? labels->label(e.v) : e.v;
    out << std::min(a, b) << ' ' << std::max(a, b) << '\n';
  }
}

Eigen::MatrixXd laplacian(const Graph& g) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(g.n(), g.n());
  for (const Edge& e : g.edges()) {
    L(e.u, e.v) -= 1.0;
    L(e.v, e.u) -= 1.0;
    L(e.u, e.u) += 1.0;
    L(e.v, e.v) += 1.0;
  }
  return L;
}

VertexSet normalize_set(const Graph& g, std::span<const Vertex> S) {
  VertexSet out(S.begin(), S.end());
  for (Vertex v : out) {
    if (v < 0 || v >= g.n()) throw Error("vertex id " + std::to_string(v) + " out of range");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

VertexSet vertex_boundary(const Graph& g, std::span<const Vertex> S) {
  std::vector<char> in(g.n(), 0), mark(g.n(), 0);
  for (Vertex v : S) {
    if (v < 0 || v >= g.n()) throw Error("vertex id " + std::to_string(v) + " out of range");
    in[v] = 1;
  }
  VertexSet out;
  for (Vertex v : S) {
    for (Vertex w : g.neighbors(v)) {
      if (!in[w] && !mark[w]) {
        mark[w] = 1;
        out.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int edge_boundary_size(const Graph& g, std::span<const Vertex> S) {
  std::vector<char> in(g.n(), 0);
  for (Vertex v : S) in[v] = 1;
  int cut = 0;
  for (const Edge& e : g.edges()) cut += (in[e.u] != in[e.v]);
  return cut;
}

Expansion expansion_of(const Graph& g, std::span<const Vertex> S) {
  VertexSet s = normalize_set(g, S);
  if (s.size() != S.size()) throw Error("duplicate vertex in set");
  if (s.empty()) throw Error("expansion of an empty set is undefined");
  if (static_cast<int>(s.size()) > g.n() / 2) throw Error("set larger than floor(n/2)");
  double k = static_cast<double>(s.size());
  return {static_cast<double>(vertex_boundary(g, s).size()) / k,
          static_cast<double>(edge_boundary_size(g, s)) / k};
}

VertexCut::VertexCut(const Graph& g, VertexSet S) {
  set_ = normalize_set(g, S);
  if (set_.size() != S.size()) throw Error("duplicate vertex in cut");
  if (set_.empty()) throw Error("empty cut");
  if (static_cast<int>(set_.size()) > g.n() / 2) throw Error("cut side larger than floor(n/2)");
  boundary_ = vertex_boundary(g, set_);
}

int balance_cap(int n, double alpha) {
  return static_cast<int>(std::floor(alpha * n + 1e-9));
}

std::string check_separator(const Graph& g, const Separator& sep) {
  std::vector<int> part(g.n(), -1);
  auto assign = [&](const VertexSet& s, int tag) -> std::string {
    for (Vertex v : s) {
      if (v < 0 || v >= g.n()) return "vertex out of range";
      if (part[v] != -1) return "vertex " + std::to_string(v) + " in two parts";
      part[v] = tag;
    }
    return {};
  };
  if (auto e = assign(sep.S, 0); !e.empty()) return e;
  if (auto e = assign(sep.A, 1); !e.empty()) return e;
  if (auto e = assign(sep.B, 2); !e.empty()) return e;
  for (Vertex v = 0; v < g.n(); ++v)
    if (part[v] < 0) return "vertex " + std::to_string(v) + " unassigned";
  for (const Edge& e : g.edges()) {
    if (part[e.u] + part[e.v] == 3) return "A-B edge " + std::to_string(e.u) + "-" + std::to_string(e.v);
  }
  int cap = balance_cap(g.n(), sep.alpha);
  if (static_cast<int>(sep.A.size()) > cap || static_cast<int>(sep.B.size()) > cap)
    return "part exceeds balance cap " + std::to_string(cap);
  return {};
}

Graph path_graph(int n) {
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  return Graph(n, es);
}

Graph cycle_graph(int n) {
  if (n < 3) throw Error("cycle needs at least 3 vertices");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.push_back({i, (i + 1) % n});
  return Graph(n, es);
}

Graph complete_graph(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.push_back({i, j});
  return Graph(n, es);
}

Graph star_graph(int leaves) {
  std::vector<Edge> es;
  for (int i = 1; i <= leaves; ++i) es.push_back({0, i});
  return Graph(leaves + 1, es);
}

Graph grid_graph(int rows, int cols) {
  std::vector<Edge> es;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) es.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) es.push_back({id(r, c), id(r + 1, c)});
    }
  }
  return Graph(rows * cols, es);
}

Graph complete_bipartite(int a, int b) {
  std::vector<Edge> es;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) es.push_back({i, a + j});
  return Graph(a + b, es);
}

}  // namespace vsep

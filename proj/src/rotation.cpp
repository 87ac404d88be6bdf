#include "vsep/rotation.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace vsep {

RotationSystem::RotationSystem(Graph g, std::vector<std::vector<Vertex>> rotations)
    : graph_(std::move(g)), rot_(std::move(rotations)) {
  if (static_cast<int>(rot_.size()) != graph_.n())
    throw Error("rotation system must list every vertex");
  pos_.resize(graph_.n());
  for (Vertex v = 0; v < graph_.n(); ++v) {
    const auto& nb = graph_.neighbors(v);
    if (rot_[v].size() != nb.size())
      throw Error("rotation at vertex " + std::to_string(v) + " does not match its degree");
    pos_[v].assign(nb.size(), -1);
    for (std::size_t i = 0; i < rot_[v].size(); ++i) {
      auto it = std::lower_bound(nb.begin(), nb.end(), rot_[v][i]);
      if (it == nb.end() || *it != rot_[v][i])
        throw Error("rotation at vertex " + std::to_string(v) + " lists non-neighbor " +
                    std::to_string(rot_[v][i]));
      auto k = it - nb.begin();
      if (pos_[v][k] != -1)
        throw Error("rotation at vertex " + std::to_string(v) + " repeats " + std::to_string(rot_[v][i]));
      pos_[v][k] = static_cast<int>(i);
    }
  }
}

Vertex RotationSystem::succ(Vertex v, Vertex u) const {
  const auto& nb = graph_.neighbors(v);
  auto k = std::lower_bound(nb.begin(), nb.end(), u) - nb.begin();
  int i = pos_[v][k];
  return rot_[v][(i + 1) % rot_[v].size()];
}

Vertex RotationSystem::pred(Vertex v, Vertex u) const {
  const auto& nb = graph_.neighbors(v);
  auto k = std::lower_bound(nb.begin(), nb.end(), u) - nb.begin();
  int i = pos_[v][k];
  int d = static_cast<int>(rot_[v].size());
  return rot_[v][(i + d - 1) % d];
}

std::vector<FaceWalk> RotationSystem::faces() const {
  // dart (v, i) = v -> rot_[v][i]
  std::vector<std::vector<char>> used(graph_.n());
  for (Vertex v = 0; v < graph_.n(); ++v) used[v].assign(rot_[v].size(), 0);
  auto index_of = [&](Vertex v, Vertex u) {
    const auto& nb = graph_.neighbors(v);
    return pos_[v][std::lower_bound(nb.begin(), nb.end(), u) - nb.begin()];
  };
  std::vector<FaceWalk> out;
  for (Vertex v = 0; v < graph_.n(); ++v) {
    for (std::size_t i = 0; i < rot_[v].size(); ++i) {
      if (used[v][i]) continue;
      FaceWalk walk;
      Vertex a = v;
      int ai = static_cast<int>(i);
      while (!used[a][ai]) {
        used[a][ai] = 1;
        Vertex b = rot_[a][ai];
        walk.push_back({a, b});
        int back = index_of(b, a);
        int next = (back + 1) % static_cast<int>(rot_[b].size());
        a = b;
        ai = next;
      }
      out.push_back(std::move(walk));
    }
  }
  return out;
}

int RotationSystem::euler_genus() const {
  if (!graph_.connected()) throw Error("euler genus requires a connected graph");
  int chi = graph_.n() - graph_.m() + face_count();
  int twice = 2 - chi;
  if (twice < 0 || twice % 2 != 0) throw Error("inconsistent face count in rotation system");
  return twice / 2;
}

bool RotationSystem::is_triangulation() const {
  if (graph_.m() == 0) return false;
  for (const auto& f : faces())
    if (f.size() != 3) return false;
  return true;
}

RotationSystem rotation_from_orders(std::vector<std::vector<Vertex>> orders) {
  std::vector<Edge> es;
  int n = static_cast<int>(orders.size());
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : orders[v]) {
      if (w < 0 || w >= n) throw Error("rotation neighbor out of range");
      if (v < w) es.push_back({v, w});
    }
  }
  Graph g(n, es);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : orders[v]) {
      if (!std::count(orders[w].begin(), orders[w].end(), v))
        throw Error("rotation adjacency is not symmetric at " + std::to_string(v) + "-" +
                    std::to_string(w));
    }
  }
  return RotationSystem(std::move(g), std::move(orders));
}

RotationSystem tetrahedron() { return rotation_from_orders({{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}}); }

RotationSystem octahedron() {
  std::vector<std::vector<Vertex>> r(6);
  r[0] = {1, 2, 3, 4};
  r[5] = {4, 3, 2, 1};
  for (int i = 1; i <= 4; ++i) r[i] = {0, (i + 2) % 4 + 1, 5, i % 4 + 1};
  return rotation_from_orders(std::move(r));
}

RotationSystem planar_cycle(int n) {
  if (n < 3) throw Error("cycle needs at least 3 vertices");
  std::vector<std::vector<Vertex>> r(n);
  for (int i = 0; i < n; ++i) r[i] = {(i + n - 1) % n, (i + 1) % n};
  return rotation_from_orders(std::move(r));
}

RotationSystem toroidal_k5() {
  return rotation_from_orders({{1, 4, 2, 3}, {0, 2, 3, 4}, {0, 3, 1, 4}, {0, 1, 2, 4}, {0, 1, 2, 3}});
}

RotationSystem toroidal_k33() {
  return rotation_from_orders({{3, 4, 5}, {3, 4, 5}, {3, 4, 5}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
}

RotationSystem torus_triangulation(int rows, int cols) {
  if (rows < 3 || cols < 3) throw Error("torus triangulation needs rows, cols >= 3");
  std::vector<std::vector<Vertex>> r(rows * cols);
  auto id = [&](int i, int j) { return ((i % rows + rows) % rows) * cols + ((j % cols + cols) % cols); };
  const int step[6][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      for (const auto& s : step) r[id(i, j)].push_back(id(i + s[0], j + s[1]));
  return rotation_from_orders(std::move(r));
}

LoadedRotation parse_rotation(std::istream& in) {
  struct Row {
    long long v;
    std::vector<long long> nbrs;
    std::size_t line;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(lineno, "expected 'v: a b c ...'");
    Row row{0, {}, lineno};
    std::istringstream head(line.substr(0, colon));
    if (!(head >> row.v) || row.v < 0) throw ParseError(lineno, "bad vertex id");
    std::string rest_tok;
    if (head >> rest_tok) throw ParseError(lineno, "junk before ':'");
    std::istringstream rest(line.substr(colon + 1));
    std::string tok;
    while (rest >> tok) {
      long long x;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
      if (ec != std::errc() || p != tok.data() + tok.size() || x < 0)
        throw ParseError(lineno, "bad neighbor id '" + tok + "'");
      if (x == row.v) throw ParseError(lineno, "self-loop rejected");
      row.nbrs.push_back(x);
    }
    rows.push_back(std::move(row));
  }
  std::vector<long long> labels;
  for (const Row& r : rows) {
    labels.push_back(r.v);
    for (long long x : r.nbrs) labels.push_back(x);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  auto dense = [&](long long x) {
    return static_cast<Vertex>(std::lower_bound(labels.begin(), labels.end(), x) - labels.begin());
  };
  int n = static_cast<int>(labels.size());
  std::vector<std::vector<Vertex>> orders(n);
  std::vector<std::size_t> defined(n, 0);
  for (const Row& r : rows) {
    Vertex v = dense(r.v);
    if (defined[v]) throw ParseError(r.line, "vertex " + std::to_string(r.v) + " listed twice");
    defined[v] = r.line;
    for (long long x : r.nbrs) orders[v].push_back(dense(x));
    auto sorted = orders[v];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ParseError(r.line, "parallel edge rejected");
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!defined[v] && !orders[v].empty()) continue;
    for (Vertex w : orders[v]) {
      if (!defined[w])
        throw ParseError(defined[v], "neighbor " + std::to_string(labels[w]) + " has no rotation line");
      if (!std::count(orders[w].begin(), orders[w].end(), v))
        throw ParseError(defined[v], "asymmetric adjacency " + std::to_string(labels[v]) + "-" +
                                         std::to_string(labels[w]));
    }
  }
  return {rotation_from_orders(std::move(orders)), LabelMap{std::move(labels)}};
}

LoadedRotation parse_rotation_string(const std::string& text) {
  std::istringstream in(text);
  return parse_rotation(in);
}

LoadedRotation load_rotation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("no such input: " + path);
  return parse_rotation(in);
}

void write_rotation(std::ostream& out, const RotationSystem& r, const LabelMap* labels) {
  for (Vertex v = 0; v < r.graph().n(); ++v) {
    out << (labels ? labels->label(v) : v) << ':';
    for (Vertex w : r.rotation(v)) out << ' ' << (labels ? labels->label(w) : w);
    out << '\n';
  }
}

}  // namespace vsep

#include "vsep/covering.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace vsep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Maximum weight matching on the double cover of g: left copy u and right
// copy v are joined with weight demand(uv) for both orientations of uv.
class DoubleCoverMatching {
 public:
  DoubleCoverMatching(const Graph& g, std::span<const double> w) : g_(g), w_(w) {
    const int n = g.n();
    a_.assign(n, 0.0);
    b_.assign(n, 0.0);
    mate_left_.assign(n, -1);
    mate_right_.assign(n, -1);
    for (Vertex u = 0; u < n; ++u)
      for (int e : g.incident_edges(u)) a_[u] = std::max(a_[u], w[e]);
    dist_left_.assign(n, kInf);
    dist_right_.assign(n, kInf);
    parent_right_.assign(n, -1);
    done_right_.assign(n, 0);
  }

  void run() {
    for (Vertex r = 0; r < g_.n(); ++r)
      if (mate_left_[r] < 0 && a_[r] > 0.0) phase(r);
  }

  const std::vector<double>& left_dual() const { return a_; }
  const std::vector<double>& right_dual() const { return b_; }
  const std::vector<int>& left_mate() const { return mate_left_; }

 private:
  struct Event {
    double key;
    int kind;  // 0: right vertex reached, 1: left dual hits zero
    int id;
    bool operator>(const Event& o) const {
      if (key != o.key) return key > o.key;
      if (kind != o.kind) return kind > o.kind;
      return id > o.id;
    }
  };

  double slack(Vertex u, Vertex v, int e) const { return a_[u] + b_[v] - w_[e]; }

  void relax_from(Vertex u, std::priority_queue<Event, std::vector<Event>, std::greater<>>& heap) {
    const auto& nb = g_.neighbors(u);
    const auto& inc = g_.incident_edges(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      Vertex v = nb[i];
      if (done_right_[v] || v == mate_left_[u]) continue;
      double d = dist_left_[u] + std::max(0.0, slack(u, v, inc[i]));
      if (d < dist_right_[v]) {
        dist_right_[v] = d;
        parent_right_[v] = u;
        heap.push({d, 0, v});
      }
    }
  }

  void phase(Vertex root) {
    std::vector<Vertex> left_seen{root}, right_seen;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> heap;
    dist_left_[root] = 0.0;
    heap.push({a_[root], 1, root});
    relax_from(root, heap);
    double D = 0.0;
    int end_kind = -1, end_id = -1;
    while (!heap.empty()) {
      Event ev = heap.top();
      heap.pop();
      if (ev.kind == 0) {
        if (done_right_[ev.id] || ev.key > dist_right_[ev.id]) continue;
        Vertex v = ev.id;
        done_right_[v] = 1;
        right_seen.push_back(v);
        if (mate_right_[v] < 0) {
          D = ev.key;
          end_kind = 0;
          end_id = v;
          break;
        }
        Vertex u = mate_right_[v];
        dist_left_[u] = ev.key;
        left_seen.push_back(u);
        heap.push({ev.key + a_[u], 1, u});
        relax_from(u, heap);
      } else {
        D = ev.key;
        end_kind = 1;
        end_id = ev.id;
        break;
      }
    }
    for (Vertex u : left_seen) a_[u] = std::max(0.0, a_[u] - (D - dist_left_[u]));
    for (Vertex v : right_seen) b_[v] += D - dist_right_[v];

    if (end_kind == 0) {
      augment(end_id);
    } else if (end_id != root) {
      // The left vertex whose dual reached zero gives up its partner and the
      // alternating path from the root is flipped.
      Vertex u = end_id;
      Vertex v = mate_left_[u];
      mate_left_[u] = -1;
      mate_right_[v] = -1;
      augment(v);
    }
    for (Vertex u : left_seen) dist_left_[u] = kInf;
    for (Vertex v : right_seen) {
      dist_right_[v] = kInf;
      done_right_[v] = 0;
    }
    // Right vertices touched by relaxation but never finalized.
    std::fill(dist_right_.begin(), dist_right_.end(), kInf);
  }

  void augment(Vertex v) {
    while (v >= 0) {
      Vertex u = parent_right_[v];
      Vertex next = mate_left_[u];
      mate_left_[u] = v;
      mate_right_[v] = u;
      v = next;
    }
  }

  const Graph& g_;
  std::span<const double> w_;
  std::vector<double> a_, b_;
  std::vector<int> mate_left_, mate_right_;
  std::vector<double> dist_left_, dist_right_;
  std::vector<int> parent_right_;
  std::vector<char> done_right_;
};

}  // namespace

CoveringSolution solve_edge_covering(const Graph& g, std::span<const double> demand) {
  if (static_cast<int>(demand.size()) != g.m()) throw Error("covering demand size mismatch");
  for (double c : demand)
    if (!(c >= 0.0)) throw Error("covering demand must be nonnegative");
  DoubleCoverMatching solver(g, demand);
  solver.run();

  CoveringSolution out;
  const int n = g.n();
  out.y.assign(n, 0.0);
  for (Vertex v = 0; v < n; ++v) out.y[v] = 0.5 * (solver.left_dual()[v] + solver.right_dual()[v]);
  // Round-off repair: raise the endpoint with more room until every edge is covered.
  for (int e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    double deficit = demand[e] - out.y[ed.u] - out.y[ed.v];
    if (deficit > 0.0) out.y[ed.u] += deficit;
  }
  out.matching.assign(g.m(), 0.0);
  for (Vertex u = 0; u < n; ++u) {
    Vertex v = solver.left_mate()[u];
    if (v >= 0) out.matching[g.edge_id(u, v)] += 0.5;
  }
  for (double y : out.y) out.value += y;
  for (int e = 0; e < g.m(); ++e) out.dual_value += demand[e] * out.matching[e];
  return out;
}

}  // namespace vsep

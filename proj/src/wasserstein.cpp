#include "privm/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "privm/errors.hpp"

namespace privm {

namespace {

void require_line_space(const WeightedMeasure& mu) {
  check_measure(mu);
  if (!mu.space->has_coords() || mu.space->dim() != 1) {
    throw argument_error("line distance needs one-dimensional coordinates");
  }
}

struct Atom {
  double coord;
  double w_mu;
  double w_nu;
};

// Atoms of both measures merged by coordinate (exact ties combined).
std::vector<Atom> merged_atoms(const WeightedMeasure& mu,
                               const WeightedMeasure& nu) {
  std::vector<Atom> atoms;
  atoms.reserve(mu.support.size() + nu.support.size());
  for (std::size_t i = 0; i < mu.support.size(); ++i) {
    atoms.push_back({mu.space->coord(mu.support[i], 0), mu.weights[i], 0.0});
  }
  for (std::size_t j = 0; j < nu.support.size(); ++j) {
    atoms.push_back({nu.space->coord(nu.support[j], 0), 0.0, nu.weights[j]});
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.coord < b.coord; });
  std::vector<Atom> out;
  for (const Atom& a : atoms) {
    if (!out.empty() && out.back().coord == a.coord) {
      out.back().w_mu += a.w_mu;
      out.back().w_nu += a.w_nu;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

}  // namespace

double wasserstein1_line(const WeightedMeasure& mu, const WeightedMeasure& nu) {
  require_line_space(mu);
  require_line_space(nu);
  const auto atoms = merged_atoms(mu, nu);
  if (atoms.empty()) return 0.0;

  double total = 0.0;
  double cum = 0.0;
  for (std::size_t k = 0; k + 1 < atoms.size(); ++k) {
    cum += atoms[k].w_mu - atoms[k].w_nu;
    total += (atoms[k + 1].coord - atoms[k].coord) * std::fabs(cum);
  }
  // Tail out to the end of the unit interval carries any total-mass gap.
  cum += atoms.back().w_mu - atoms.back().w_nu;
  const double end = std::max(1.0, atoms.back().coord);
  total += (end - atoms.back().coord) * std::fabs(cum);
  return total;
}

namespace {

constexpr double kFlowEps = 1e-14;

struct Arc {
  int to;
  double cap;
  double cost;
  int rev;  // index of the reverse arc in graph[to]
};

class MinCostFlow {
 public:
  explicit MinCostFlow(int n) : graph_(n), potential_(n, 0.0) {}

  void add_arc(int from, int to, double cap, double cost) {
    graph_[from].push_back({to, cap, cost, static_cast<int>(graph_[to].size())});
    graph_[to].push_back({from, 0.0, -cost, static_cast<int>(graph_[from].size()) - 1});
  }

  // Pushes min-cost flow from s to t until no augmenting path remains.
  // Returns the total cost. Costs must be nonnegative.
  double run(int s, int t) {
    const int n = static_cast<int>(graph_.size());
    double total_cost = 0.0;
    std::vector<double> dist(n);
    std::vector<int> prev_node(n), prev_arc(n);

    while (true) {
      std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
      dist[s] = 0.0;
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
      heap.push({0.0, s});
      while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u] + 1e-18) continue;
        for (std::size_t a = 0; a < graph_[u].size(); ++a) {
          const Arc& arc = graph_[u][a];
          if (arc.cap <= kFlowEps) continue;
          const double reduced =
              std::max(0.0, arc.cost + potential_[u] - potential_[arc.to]);
          if (dist[u] + reduced < dist[arc.to] - 1e-18) {
            dist[arc.to] = dist[u] + reduced;
            prev_node[arc.to] = u;
            prev_arc[arc.to] = static_cast<int>(a);
            heap.push({dist[arc.to], arc.to});
          }
        }
      }
      if (!std::isfinite(dist[t])) break;

      for (int v = 0; v < n; ++v) {
        if (std::isfinite(dist[v])) {
          potential_[v] += std::min(dist[v], dist[t]);
        }
      }
      double push = std::numeric_limits<double>::infinity();
      for (int v = t; v != s; v = prev_node[v]) {
        push = std::min(push, graph_[prev_node[v]][prev_arc[v]].cap);
      }
      if (push <= kFlowEps) break;
      for (int v = t; v != s; v = prev_node[v]) {
        Arc& arc = graph_[prev_node[v]][prev_arc[v]];
        arc.cap -= push;
        graph_[arc.to][arc.rev].cap += push;
      }
      // potential_[t] now equals the true source-to-sink path cost.
      total_cost += push * potential_[t];
    }
    return total_cost;
  }

 private:
  std::vector<std::vector<Arc>> graph_;
  std::vector<double> potential_;
};

struct CleanAtoms {
  std::vector<int> index;
  std::vector<double> weight;
};

CleanAtoms positive_atoms(const WeightedMeasure& mu) {
  CleanAtoms out;
  for (std::size_t i = 0; i < mu.support.size(); ++i) {
    const double w = mu.weights[i];
    if (w < -1e-12) {
      throw argument_error("transport cost requires nonnegative weights");
    }
    if (w > 0.0) {
      out.index.push_back(mu.support[i]);
      out.weight.push_back(w);
    }
  }
  return out;
}

double cross_dist(const WeightedMeasure& mu, int i, const WeightedMeasure& nu,
                  int j) {
  if (mu.space == nu.space) return mu.space->dist(i, j);
  double best = 0.0;
  for (int k = 0; k < mu.space->dim(); ++k) {
    best = std::max(best, std::fabs(mu.space->coord(i, k) - nu.space->coord(j, k)));
  }
  return best;
}

}  // namespace

double wasserstein1_exact(const WeightedMeasure& mu, const WeightedMeasure& nu) {
  check_measure(mu);
  check_measure(nu);
  if (mu.space != nu.space) {
    if (!mu.space->has_coords() || !nu.space->has_coords() ||
        mu.space->dim() != nu.space->dim()) {
      throw argument_error(
          "measures must share a space or comparable coordinates");
    }
  }
  CleanAtoms a = positive_atoms(mu);
  CleanAtoms b = positive_atoms(nu);
  const int ns = static_cast<int>(a.index.size());
  const int nt = static_cast<int>(b.index.size());
  if (ns + nt > 2000) {
    throw resource_error("transport instances beyond 2000 atoms are refused");
  }
  double ta = 0.0, tb = 0.0;
  for (double w : a.weight) ta += w;
  for (double w : b.weight) tb += w;
  if (std::fabs(ta - tb) > 1e-9) {
    throw argument_error("total masses must agree");
  }
  if (ns == 0 || nt == 0) return 0.0;
  // Equalize totals exactly so the flow saturates.
  const double fix = ta / tb;
  for (double& w : b.weight) w *= fix;

  const int s = ns + nt;
  const int t = s + 1;
  MinCostFlow flow(ns + nt + 2);
  for (int i = 0; i < ns; ++i) {
    flow.add_arc(s, i, a.weight[i], 0.0);
    for (int j = 0; j < nt; ++j) {
      flow.add_arc(i, ns + j, std::numeric_limits<double>::infinity(),
                   cross_dist(mu, a.index[i], nu, b.index[j]));
    }
  }
  for (int j = 0; j < nt; ++j) {
    flow.add_arc(ns + j, t, b.weight[j], 0.0);
  }
  return flow.run(s, t);
}

}  // namespace privm

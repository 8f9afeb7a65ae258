// Copyright 2026 The FROT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "frot/emd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace frot {

namespace {

struct Cell {
  int src;
  int dst;
  double flow;
};

class TransportationSimplex {
 public:
  TransportationSimplex(const Vector& a, const Vector& b, const Matrix& cost)
      : n_(static_cast<int>(a.size())),
        m_(static_cast<int>(b.size())),
        cost_(cost),
        basis_of_(static_cast<std::size_t>(n_) * m_, -1),
        adjacency_(static_cast<std::size_t>(n_ + m_)),
        parent_(n_ + m_),
        parent_cell_(n_ + m_),
        depth_(n_ + m_),
        potential_(n_ + m_) {
    const double scale = std::max(1.0, cost.cwiseAbs().maxCoeff());
    price_tol_ = 1e-12 * scale;
    block_ = std::max(10, static_cast<int>(std::sqrt(double(n_) * m_)));
    north_west_corner(a, b);
  }

  long solve(long max_pivots) {
    int degenerate_run = 0;
    const int stall_limit = 2 * (n_ + m_);
    while (true) {
      build_tree();
      const long entering = bland_ ? price_bland() : price_block();
      if (entering < 0) return pivots_;
      if (pivots_ >= max_pivots)
        throw SolverError("emd: pivot limit reached without optimality");
      const bool degenerate = pivot(static_cast<int>(entering / m_),
                                    static_cast<int>(entering % m_));
      ++pivots_;
      if (degenerate) {
        ++degenerate_pivots_;
        if (++degenerate_run > stall_limit) bland_ = true;
      } else {
        degenerate_run = 0;
      }
    }
  }

  Matrix plan() const {
    Matrix p = Matrix::Zero(n_, m_);
    for (const auto& c : cells_) p(c.src, c.dst) = std::max(0.0, c.flow);
    return p;
  }

  Vector u() const { return potential_.head(n_); }
  Vector v() const { return potential_.tail(m_); }
  long degenerate_pivots() const { return degenerate_pivots_; }

 private:
  int sink_node(int j) const { return n_ + j; }
  bool is_source(int node) const { return node < n_; }

  void add_cell(int i, int j, double flow) {
    const int id = static_cast<int>(cells_.size());
    cells_.push_back({i, j, flow});
    basis_of_[static_cast<std::size_t>(i) * m_ + j] = id;
    adjacency_[i].push_back(id);
    adjacency_[sink_node(j)].push_back(id);
  }

  // Produces exactly n + m - 1 basic cells (some possibly at zero flow),
  // which always form a spanning tree.
  void north_west_corner(const Vector& a, const Vector& b) {
    std::vector<double> supply(a.data(), a.data() + n_);
    std::vector<double> demand(b.data(), b.data() + m_);
    int i = 0;
    int j = 0;
    while (i < n_ && j < m_) {
      double x = std::min(supply[i], demand[j]);
      if (i == n_ - 1 && j == m_ - 1) x = std::max(0.0, supply[i]);
      add_cell(i, j, x);
      supply[i] -= x;
      demand[j] -= x;
      if (i == n_ - 1) {
        ++j;
      } else if (j == m_ - 1) {
        ++i;
      } else if (supply[i] < demand[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  void build_tree() {
    std::fill(parent_.begin(), parent_.end(), -1);
    std::vector<int> stack{0};
    parent_[0] = 0;
    parent_cell_[0] = -1;
    depth_[0] = 0;
    potential_[0] = 0.0;
    while (!stack.empty()) {
      const int node = stack.back();
      stack.pop_back();
      for (int id : adjacency_[node]) {
        const Cell& c = cells_[id];
        const int other = is_source(node) ? sink_node(c.dst) : c.src;
        if (parent_[other] != -1) continue;
        parent_[other] = node;
        parent_cell_[other] = id;
        depth_[other] = depth_[node] + 1;
        // u_i + v_j = C_ij on basic cells.
        potential_[other] = cost_(c.src, c.dst) - potential_[node];
        stack.push_back(other);
      }
    }
  }

  double reduced_cost(int i, int j) const {
    return cost_(i, j) - potential_[i] - potential_[sink_node(j)];
  }

  long price_block() {
    const long total = static_cast<long>(n_) * m_;
    long best = -1;
    double best_rc = -price_tol_;
    long scanned = 0;
    long in_block = 0;
    while (scanned < total) {
      const long k = cursor_;
      cursor_ = (cursor_ + 1) % total;
      ++scanned;
      const int i = static_cast<int>(k / m_);
      const int j = static_cast<int>(k % m_);
      if (basis_of_[k] < 0) {
        const double rc = reduced_cost(i, j);
        if (rc < best_rc) {
          best_rc = rc;
          best = k;
        }
      }
      if (++in_block == block_) {
        if (best >= 0) return best;
        in_block = 0;
      }
    }
    return best;
  }

  long price_bland() const {
    const long total = static_cast<long>(n_) * m_;
    for (long k = 0; k < total; ++k) {
      if (basis_of_[k] >= 0) continue;
      if (reduced_cost(static_cast<int>(k / m_), static_cast<int>(k % m_)) <
          -price_tol_)
        return k;
    }
    return -1;
  }

  // Returns true when the pivot moved zero flow.
  bool pivot(int ei, int ej) {
    // Cycle oriented along the entering cell (source ei -> sink ej), then
    // up from ej to the apex and down from the apex back to ei.
    struct Step {
      int cell;
      bool forward;
    };
    std::vector<Step> up_from_sink;   // ej -> apex
    std::vector<Step> up_from_source; // ei -> apex
    int s = ei;
    int t = sink_node(ej);
    auto climb = [&](int& node, std::vector<Step>& path) {
      const int par = parent_[node];
      // Child-to-parent traversal is forward only from a source to a sink.
      path.push_back({parent_cell_[node], is_source(node)});
      node = par;
    };
    while (depth_[s] > depth_[t]) climb(s, up_from_source);
    while (depth_[t] > depth_[s]) climb(t, up_from_sink);
    while (s != t) {
      climb(s, up_from_source);
      climb(t, up_from_sink);
    }

    // Traversal order from the apex: down to ei, entering cell, up from ej.
    std::vector<Step> cycle;
    cycle.reserve(up_from_source.size() + up_from_sink.size() + 1);
    for (auto it = up_from_source.rbegin(); it != up_from_source.rend(); ++it)
      cycle.push_back({it->cell, !it->forward});
    cycle.push_back({-1, true});
    for (const auto& st : up_from_sink) cycle.push_back(st);

    double theta = std::numeric_limits<double>::infinity();
    for (const auto& st : cycle)
      if (!st.forward) theta = std::min(theta, cells_[st.cell].flow);

    int leaving = -1;
    if (bland_) {
      long best_index = std::numeric_limits<long>::max();
      for (const auto& st : cycle) {
        if (st.forward || cells_[st.cell].flow != theta) continue;
        const long index =
            static_cast<long>(cells_[st.cell].src) * m_ + cells_[st.cell].dst;
        if (index < best_index) {
          best_index = index;
          leaving = st.cell;
        }
      }
    } else {
      for (const auto& st : cycle)
        if (!st.forward && cells_[st.cell].flow == theta) leaving = st.cell;
    }

    for (const auto& st : cycle) {
      if (st.cell < 0) continue;
      double& f = cells_[st.cell].flow;
      f += st.forward ? theta : -theta;
      if (std::abs(f) < 1e-16) f = 0.0;
    }

    // The entering cell takes over the leaving cell's slot.
    Cell& slot = cells_[leaving];
    basis_of_[static_cast<std::size_t>(slot.src) * m_ + slot.dst] = -1;
    erase_adjacency(slot.src, leaving);
    erase_adjacency(sink_node(slot.dst), leaving);
    slot = {ei, ej, theta};
    basis_of_[static_cast<std::size_t>(ei) * m_ + ej] = leaving;
    adjacency_[ei].push_back(leaving);
    adjacency_[sink_node(ej)].push_back(leaving);
    return theta == 0.0;
  }

  void erase_adjacency(int node, int id) {
    auto& adj = adjacency_[node];
    adj.erase(std::find(adj.begin(), adj.end(), id));
  }

  int n_;
  int m_;
  const Matrix& cost_;
  std::vector<Cell> cells_;
  std::vector<int> basis_of_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> parent_;
  std::vector<int> parent_cell_;
  std::vector<int> depth_;
  Vector potential_;
  double price_tol_ = 0.0;
  int block_ = 10;
  long cursor_ = 0;
  long pivots_ = 0;
  long degenerate_pivots_ = 0;
  bool bland_ = false;
};

}  // namespace

EmdResult emd_exact_solve(const Vector& a, const Vector& b,
                          const Matrix& cost, const EmdOptions& opts) {
  if (a.size() == 0 || b.size() == 0)
    throw ValidationError("emd: empty weight vectors");
  if (cost.rows() != a.size() || cost.cols() != b.size())
    throw ValidationError("emd: cost shape does not match weights");
  if (!cost.allFinite())
    throw ValidationError("emd: cost matrix has non-finite entries");
  if (!a.allFinite() || !b.allFinite() || (a.array() < 0.0).any() ||
      (b.array() < 0.0).any())
    throw ValidationError("emd: weights must be finite and nonnegative");
  if (std::abs(a.sum() - b.sum()) > 1e-9)
    throw ValidationError("emd: infeasible, weight sums differ");
  if (std::abs(a.sum() - 1.0) > 1e-9)
    throw ValidationError("emd: weights must sum to one");

  TransportationSimplex simplex(a, b, cost);
  const long cap = opts.max_pivots > 0
                       ? opts.max_pivots
                       : 50L * a.size() * b.size() + 1000L;
  EmdResult r;
  r.pivots = simplex.solve(cap);
  r.degenerate_pivots = simplex.degenerate_pivots();
  Matrix plan = simplex.plan();
  r.objective = frobenius_inner(plan, cost);
  r.u = simplex.u();
  r.v = simplex.v();
  r.plan = TransportPlan::from_matrix(std::move(plan), a, b);
  return r;
}

}  // namespace frot

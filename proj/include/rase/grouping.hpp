// Copyright 2026 The RASE Authors
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

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rase/permutation.hpp"

namespace rase {

// Undirected interaction graph over contributors 1..n. No self-loops, no
// duplicate edges; edges are stored with the smaller endpoint first.
struct ContributorGraph {
  ContributorGraph(int n_in, std::vector<std::pair<int, int>> edges_in)
      : n(n_in), edges(std::move(edges_in)) {
    if (n < 1) throw std::invalid_argument("ContributorGraph: n must be at least 1");
    std::set<std::pair<int, int>> seen;
    for (auto& [a, b] : edges) {
      if (a < 1 || a > n || b < 1 || b > n) {
        throw std::invalid_argument("ContributorGraph: edge endpoint out of range");
      }
      if (a == b) throw std::invalid_argument("ContributorGraph: self-loop");
      if (a > b) std::swap(a, b);
      if (!seen.insert({a, b}).second) {
        throw std::invalid_argument("ContributorGraph: duplicate edge");
      }
    }
    std::sort(edges.begin(), edges.end());
  }

  std::vector<std::vector<int>> AdjacencyList() const {
    std::vector<std::vector<int>> adj(n + 1);
    for (const auto& [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
  }

  int n;
  std::vector<std::pair<int, int>> edges;
};

// A partition of {1..n} into k nonempty disjoint groups. Groups keep their
// members sorted and the groups themselves are ordered by smallest member.
class Partition {
 public:
  static Partition FromGroups(int n, std::vector<std::vector<int>> groups) {
    if (n < 1) throw std::invalid_argument("Partition: n must be at least 1");
    std::vector<bool> seen(n + 1, false);
    int covered = 0;
    for (auto& group : groups) {
      if (group.empty()) throw std::invalid_argument("Partition: empty group");
      std::sort(group.begin(), group.end());
      for (int member : group) {
        if (member < 1 || member > n) {
          throw std::invalid_argument("Partition: member " + std::to_string(member) +
                                      " out of range");
        }
        if (seen[member]) {
          throw std::invalid_argument("Partition: member " + std::to_string(member) +
                                      " appears twice");
        }
        seen[member] = true;
        ++covered;
      }
    }
    if (covered != n) throw std::invalid_argument("Partition: groups do not cover {1..n}");
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return Partition(n, std::move(groups));
  }

  static Partition Singletons(int n) {
    std::vector<std::vector<int>> groups;
    groups.reserve(n);
    for (int i = 1; i <= n; ++i) groups.push_back({i});
    return FromGroups(n, std::move(groups));
  }

  static Partition Whole(int n) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i + 1;
    return FromGroups(n, {std::move(all)});
  }

  int n() const { return n_; }
  int k() const { return static_cast<int>(groups_.size()); }
  const std::vector<std::vector<int>>& groups() const { return groups_; }

 private:
  Partition(int n, std::vector<std::vector<int>> groups) : n_(n), groups_(std::move(groups)) {}

  int n_;
  std::vector<std::vector<int>> groups_;
};

// Group width under sigma: the positional spread max |sigma^-1(i) - sigma^-1(j)|
// over members i, j of the group.
inline int GroupWidth(const Permutation& sigma, const std::vector<int>& group) {
  if (group.empty()) throw std::invalid_argument("GroupWidth: empty group");
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  for (int member : group) {
    if (member < 1 || member > sigma.size()) {
      throw std::invalid_argument("GroupWidth: member out of range");
    }
    const int pos = sigma.Preimage(member);
    lo = std::min(lo, pos);
    hi = std::max(hi, pos);
  }
  return hi - lo;
}

inline int GlobalWidth(const Permutation& sigma, const Partition& partition) {
  if (partition.n() != sigma.size()) {
    throw std::invalid_argument("GlobalWidth: partition size mismatch");
  }
  int width = 0;
  for (const auto& group : partition.groups()) {
    width = std::max(width, GroupWidth(sigma, group));
  }
  return width;
}

// Kendall-tau sensitivity of the Mallows mechanism under the partition:
// omega * (omega + 1) / 2 for global width omega (the bubble-sort bound).
//
// The width is taken over each group's slot assignment, i.e. the spread of
// sigma0(i) over members i, which is GroupWidth evaluated at sigma0^-1. Two
// permutations that differ only by members of one group exchanging their
// slots disagree on a permutation supported inside that slot window, so their
// Kendall tau distance is at most omega * (omega + 1) / 2, with equality for
// a full reversal of a contiguous window.
inline int64_t Sensitivity(const Permutation& sigma0, const Partition& partition) {
  const int64_t omega = GlobalWidth(sigma0.Inverse(), partition);
  return omega * (omega + 1) / 2;
}

namespace internal {

// Connected components, each sorted, ordered by smallest member.
inline std::vector<std::vector<int>> ConnectedComponents(const ContributorGraph& graph) {
  const auto adj = graph.AdjacencyList();
  std::vector<bool> visited(graph.n + 1, false);
  std::vector<std::vector<int>> components;
  for (int start = 1; start <= graph.n; ++start) {
    if (visited[start]) continue;
    std::vector<int> component;
    std::queue<int> frontier;
    frontier.push(start);
    visited[start] = true;
    while (!frontier.empty()) {
      const int at = frontier.front();
      frontier.pop();
      component.push_back(at);
      for (int next : adj[at]) {
        if (!visited[next]) {
          visited[next] = true;
          frontier.push(next);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

// Smallest index gap between members of two sorted groups.
inline int IndexGap(const std::vector<int>& a, const std::vector<int>& b) {
  int best = std::numeric_limits<int>::max();
  for (int x : a) {
    for (int y : b) best = std::min(best, std::abs(x - y));
  }
  return best;
}

}  // namespace internal

// Extracts the initial partition from the interaction graph: connected
// components, then deterministic adjustment to exactly k groups. Components
// are merged by smallest index gap when there are too many, and the largest
// group is split along its BFS order when there are too few.
inline Partition InitialPartition(const ContributorGraph& graph, int k) {
  if (k < 1 || k > graph.n) {
    throw std::invalid_argument("InitialPartition: k must lie in [1, n]");
  }
  auto groups = internal::ConnectedComponents(graph);

  while (static_cast<int>(groups.size()) > k) {
    std::tuple<int, int, int> best{std::numeric_limits<int>::max(), 0, 0};
    size_t best_a = 0, best_b = 0;
    for (size_t a = 0; a < groups.size(); ++a) {
      for (size_t b = a + 1; b < groups.size(); ++b) {
        const int gap = internal::IndexGap(groups[a], groups[b]);
        const int lo = std::min(groups[a].front(), groups[b].front());
        const int hi = std::max(groups[a].front(), groups[b].front());
        const std::tuple<int, int, int> key{gap, lo, hi};
        if (key < best) {
          best = key;
          best_a = a;
          best_b = b;
        }
      }
    }
    auto merged = groups[best_a];
    merged.insert(merged.end(), groups[best_b].begin(), groups[best_b].end());
    std::sort(merged.begin(), merged.end());
    groups.erase(groups.begin() + best_b);
    groups[best_a] = std::move(merged);
  }

  const auto adj = graph.AdjacencyList();
  while (static_cast<int>(groups.size()) < k) {
    size_t target = 0;
    for (size_t g = 1; g < groups.size(); ++g) {
      const bool larger = groups[g].size() > groups[target].size();
      const bool tie_smaller_member = groups[g].size() == groups[target].size() &&
                                      groups[g].front() < groups[target].front();
      if (larger || tie_smaller_member) target = g;
    }
    auto& group = groups[target];
    // BFS order within the group, restarting at the smallest unvisited member
    // so disconnected remainders are still covered.
    std::set<int> pending(group.begin(), group.end());
    std::vector<int> order;
    while (!pending.empty()) {
      std::queue<int> frontier;
      frontier.push(*pending.begin());
      pending.erase(pending.begin());
      while (!frontier.empty()) {
        const int at = frontier.front();
        frontier.pop();
        order.push_back(at);
        for (int next : adj[at]) {
          if (pending.erase(next) > 0) frontier.push(next);
        }
      }
    }
    const size_t half = (order.size() + 1) / 2;
    std::vector<int> first(order.begin(), order.begin() + half);
    std::vector<int> second(order.begin() + half, order.end());
    std::sort(first.begin(), first.end());
    std::sort(second.begin(), second.end());
    group = std::move(first);
    groups.push_back(std::move(second));
  }

  return Partition::FromGroups(graph.n, std::move(groups));
}

namespace internal {

struct GroupState {
  std::vector<int> members;  // sorted
  int min_pos;
  int max_pos;
  int Width() const { return max_pos - min_pos; }
};

// Agglomerative refinement without the public-domain restriction on k.
inline Partition AgglomerateToK(const Permutation& sigma, int k) {
  const int n = sigma.size();
  std::vector<GroupState> groups;
  groups.reserve(n);
  for (int i = 1; i <= n; ++i) {
    groups.push_back({{i}, sigma.Preimage(i), sigma.Preimage(i)});
  }

  while (static_cast<int>(groups.size()) > k) {
    // Widths of the three widest groups, so the width of "everything except
    // the merged pair" is an O(1) lookup inside the pair scan.
    std::array<int, 3> top_width{-1, -1, -1};
    std::array<size_t, 3> top_index{0, 0, 0};
    for (size_t g = 0; g < groups.size(); ++g) {
      int w = groups[g].Width();
      size_t idx = g;
      for (int slot = 0; slot < 3; ++slot) {
        if (w > top_width[slot]) {
          std::swap(w, top_width[slot]);
          std::swap(idx, top_index[slot]);
        }
      }
    }
    const auto rest_width_excluding = [&](size_t a, size_t b) {
      for (int slot = 0; slot < 3; ++slot) {
        if (top_width[slot] < 0) break;
        if (top_index[slot] != a && top_index[slot] != b) return top_width[slot];
      }
      return 0;
    };

    // Cost of a merge is the resulting global width; ties prefer the smaller
    // merged group, then the lexicographically smallest pair of leaders.
    std::tuple<int, size_t, int, int> best{std::numeric_limits<int>::max(), 0, 0, 0};
    size_t best_a = 0, best_b = 0;
    for (size_t a = 0; a < groups.size(); ++a) {
      for (size_t b = a + 1; b < groups.size(); ++b) {
        const int merged_width = std::max(groups[a].max_pos, groups[b].max_pos) -
                                 std::min(groups[a].min_pos, groups[b].min_pos);
        const int global_width = std::max(merged_width, rest_width_excluding(a, b));
        const size_t merged_size = groups[a].members.size() + groups[b].members.size();
        const int lo = std::min(groups[a].members.front(), groups[b].members.front());
        const int hi = std::max(groups[a].members.front(), groups[b].members.front());
        const std::tuple<int, size_t, int, int> key{global_width, merged_size, lo, hi};
        if (key < best) {
          best = key;
          best_a = a;
          best_b = b;
        }
      }
    }
    auto& a = groups[best_a];
    auto& b = groups[best_b];
    a.members.insert(a.members.end(), b.members.begin(), b.members.end());
    std::sort(a.members.begin(), a.members.end());
    a.min_pos = std::min(a.min_pos, b.min_pos);
    a.max_pos = std::max(a.max_pos, b.max_pos);
    groups.erase(groups.begin() + best_b);
  }

  std::vector<std::vector<int>> out;
  out.reserve(groups.size());
  for (auto& g : groups) out.push_back(std::move(g.members));
  return Partition::FromGroups(n, std::move(out));
}

}  // namespace internal

// Greedy heuristic for the grouping refinement problem: start from singletons
// and repeatedly merge the pair whose merge least increases the global width,
// stopping at k groups. The width is the slot-assignment width that drives
// Sensitivity, hence the agglomeration runs on sigma^-1. The exact problem is
// NP-hard, so no optimality claim beyond the greedy construction is made.
inline Partition RefineGroups(const Permutation& sigma, int k) {
  const int n = sigma.size();
  if (k <= 1 || k >= n) {
    throw std::invalid_argument("RefineGroups: k must satisfy 1 < k < n");
  }
  return internal::AgglomerateToK(sigma.Inverse(), k);
}

}  // namespace rase

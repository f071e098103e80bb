#include "stardecomp/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "stardecomp/errors.hpp"

namespace stardecomp {

MaxFlow::MaxFlow(int nodes) : n_(nodes), out_(nodes), level_(nodes), cursor_(nodes) {
  if (nodes < 2) throw PreconditionError("max flow: need at least two nodes");
}

int MaxFlow::add_arc(int from, int to, long long capacity) {
  if (from < 0 || from >= n_ || to < 0 || to >= n_ || capacity < 0) {
    throw PreconditionError("max flow: invalid arc");
  }
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back(Arc{to, capacity, 0});
  arcs_.push_back(Arc{from, 0, 0});
  out_[from].push_back(id);
  out_[to].push_back(id + 1);
  return id;
}

bool MaxFlow::build_levels(int source, int sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> q;
  level_[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int a : out_[v]) {
      const int w = arcs_[a].to;
      if (level_[w] < 0 && residual(a) > 0) {
        level_[w] = level_[v] + 1;
        q.push(w);
      }
    }
  }
  return level_[sink] >= 0;
}

long long MaxFlow::push(int v, int sink, long long limit) {
  if (v == sink) return limit;
  for (std::size_t& i = cursor_[v]; i < out_[v].size(); ++i) {
    const int a = out_[v][i];
    const int w = arcs_[a].to;
    if (level_[w] != level_[v] + 1 || residual(a) <= 0) continue;
    const long long pushed = push(w, sink, std::min(limit, residual(a)));
    if (pushed > 0) {
      arcs_[a].flow += pushed;
      arcs_[a ^ 1].flow -= pushed;
      return pushed;
    }
  }
  return 0;
}

long long MaxFlow::run(int source, int sink) {
  if (source == sink) throw PreconditionError("max flow: source equals sink");
  long long total = 0;
  while (build_levels(source, sink)) {
    std::fill(cursor_.begin(), cursor_.end(), 0);
    while (const long long pushed = push(source, sink, std::numeric_limits<long long>::max())) {
      total += pushed;
    }
  }
  // The last BFS failed to reach the sink; its levels mark the residual
  // reachable set.
  reachable_.assign(n_, 0);
  for (int v = 0; v < n_; ++v) reachable_[v] = level_[v] >= 0 ? 1 : 0;
  return total;
}

}  // namespace stardecomp

#pragma once

#include <vector>

namespace stardecomp {

/// Dinic's algorithm on an explicit residual network with integer
/// capacities. Unit-capacity networks run in O(E sqrt(E)).
class MaxFlow {
 public:
  explicit MaxFlow(int nodes);

  /// Returns the arc id; the reverse arc is id ^ 1.
  int add_arc(int from, int to, long long capacity);

  long long run(int source, int sink);

  long long flow_on(int arc) const { return arcs_[arc].flow; }
  long long capacity(int arc) const { return arcs_[arc].capacity; }
  int head(int arc) const { return arcs_[arc].to; }

  /// Nodes reachable from the source in the final residual network, i.e.
  /// the source side of a minimum cut. Valid after run().
  std::vector<char> source_side() const { return reachable_; }

 private:
  struct Arc {
    int to;
    long long capacity;
    long long flow;
  };

  bool build_levels(int source, int sink);
  long long push(int v, int sink, long long limit);
  long long residual(int arc) const { return arcs_[arc].capacity - arcs_[arc].flow; }

  int n_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  std::vector<char> reachable_;
};

}  // namespace stardecomp

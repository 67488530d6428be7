#include "spandet/graph.hpp"

#include <string>

#include "spandet/errors.hpp"

namespace spandet {

NormalizedAdjacency build_adjacency(const std::vector<int>& heads, bool directed_arcs) {
  const int n = static_cast<int>(heads.size());
  if (n == 0) throw DataError("build_adjacency: empty head list");
  for (int t = 0; t < n; ++t) {
    if (heads[t] < 0 || heads[t] > n)
      throw DataError("build_adjacency: head out of range at token " + std::to_string(t + 1));
    if (heads[t] == t + 1)
      throw DataError("build_adjacency: head equals own index at token " + std::to_string(t + 1));
  }
  for (int t = 0; t < n; ++t) {
    int cur = t + 1;
    int steps = 0;
    while (cur != 0) {
      cur = heads[cur - 1];
      if (++steps > n) throw DataError("build_adjacency: cycle involving token " + std::to_string(t + 1));
    }
  }

  Eigen::MatrixXd adj = Eigen::MatrixXd::Identity(n, n);
  for (int t = 0; t < n; ++t) {
    const int h = heads[t];
    if (h == 0) continue;
    adj(t, h - 1) = 1.0;
    if (!directed_arcs) adj(h - 1, t) = 1.0;
  }
  for (int i = 0; i < n; ++i) adj.row(i) /= adj.row(i).sum();
  return {std::move(adj)};
}

}  // namespace spandet

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace spandet {

// Row-normalized dependency adjacency: arcs (symmetrized unless directed)
// plus self-loops, each row divided by its degree. Every row sums to 1.
struct NormalizedAdjacency {
  Eigen::MatrixXd matrix;  // T x T
  int size() const { return static_cast<int>(matrix.rows()); }
};

// heads are 1-indexed positions with 0 = root, as in AnnotatedSentence.
// Throws DataError on a head cycle. With directed_arcs the dependent->head
// direction is kept instead of symmetrizing.
NormalizedAdjacency build_adjacency(const std::vector<int>& heads, bool directed_arcs = false);

}  // namespace spandet

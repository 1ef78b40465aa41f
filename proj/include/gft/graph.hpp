#pragma once

#include "gft/types.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gft {

struct NodeMeta {
  std::string id;
  double latitude = std::numeric_limits<double>::quiet_NaN();
  double longitude = std::numeric_limits<double>::quiet_NaN();
};

// Directed edge src -> dst carried as A(src, dst) = weight. Weights are
// real for edge-list input; complex values can only enter through
// Matrix Market complex files.
struct Edge {
  Index src = 0;
  Index dst = 0;
  Complex weight{1.0, 0.0};
};

// Immutable directed weighted graph. All mutation happens at
// construction time; instances are safe to share across threads.
class Graph {
 public:
  Graph(Index node_count, std::vector<Edge> edges,
        std::vector<NodeMeta> node_meta = {});

  Index node_count() const { return node_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<NodeMeta>& node_meta() const { return node_meta_; }
  bool has_meta() const { return !node_meta_.empty(); }

  // Dense adjacency with A(i, j) = weight of edge (i -> j).
  Matrix adjacency() const;

  // Index of the node whose meta id equals `id`, if any.
  std::optional<Index> index_of(const std::string& id) const;

 private:
  Index node_count_;
  std::vector<Edge> edges_;
  std::vector<NodeMeta> node_meta_;
};

struct GraphSignal {
  Vector values;
  std::string label;
};

enum class GraphFormat { EdgeListCsv, MatrixMarket };

// Edge-list CSV: `src,dst[,weight]` rows, optional `src,dst,weight` header,
// `#` comments. `# nodes: N` declares the node count (rows must then use
// integer indices in [0, N)); `# node: id[,lat,lon]` lines declare an
// explicit node table. Without either, node order is first appearance.
Graph load_graph(const std::filesystem::path& path, GraphFormat format);

void save_graph(const Graph& graph, const std::filesystem::path& path,
                GraphFormat format);

// Signal CSV of `node_id,value[,imag]` rows; nodes absent from the file
// get value 0. Ids resolve against the node table first, then as indices.
GraphSignal load_signal(const std::filesystem::path& path, const Graph& graph);

// Relabels nodes: node i becomes node perm[i]. The adjacency of the result
// is P A P^T for the permutation matrix P induced by perm.
Graph permute_graph(const Graph& graph, std::span<const Index> perm);

}  // namespace gft

#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace catmouse {

using Vertex = int;
using Dist = int;

// Extended distance: kInfDist sits above every finite distance and compares
// equal-or-less only against itself, which plain int ordering already gives us.
inline constexpr Dist kInfDist = std::numeric_limits<Dist>::max();

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simple undirected graph on vertices 0..n-1, immutable after construction.
class Graph {
public:
    Graph() = default;
    Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);

    int order() const { return static_cast<int>(adj_.size()); }
    int edge_count() const { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
    int degree(Vertex v) const { return static_cast<int>(adj_.at(v).size()); }
    bool adjacent(Vertex u, Vertex v) const;
    std::vector<std::pair<Vertex, Vertex>> edges() const;  // u < v, sorted

    bool operator==(const Graph& other) const { return adj_ == other.adj_; }

private:
    std::vector<std::vector<Vertex>> adj_;  // sorted neighbor lists
    int edges_ = 0;
};

// Text format: first non-comment line "n m", then m lines "u v".
// Blank lines and lines starting with '#' are ignored.
Graph parse_graph(std::istream& in);
Graph parse_graph_text(const std::string& text);
void write_graph(std::ostream& out, const Graph& g);

struct ForestCheck {
    bool forest = true;
    // When not a forest: a closed walk witnessing a cycle, front() == back(),
    // at least 4 entries, consecutive entries adjacent.
    std::vector<Vertex> cycle;
};
ForestCheck is_forest(const Graph& g);

// BFS distances; kInfDist for vertices in other components.
std::vector<Dist> distances_from(const Graph& g, Vertex src);

// Dense all-pairs distance table (small graphs; used by hot loops).
class DistanceTable {
public:
    DistanceTable() = default;
    explicit DistanceTable(const Graph& g);
    Dist operator()(Vertex u, Vertex v) const { return d_[static_cast<size_t>(u) * n_ + v]; }
    int order() const { return n_; }

private:
    int n_ = 0;
    std::vector<Dist> d_;
};

// Connected components as vertex lists, ordered by smallest member.
std::vector<std::vector<Vertex>> components(const Graph& g);

// One tree component of a forest, oriented away from a chosen root.
// Vertex ids are the original graph ids; fields for vertices outside the
// component hold sentinels (-1 / empty).
struct RootedTree {
    Graph g;
    Vertex root = 0;
    std::vector<Vertex> verts;                   // component members, ascending
    std::vector<char> in_comp;                   // indicator over all of g
    std::vector<Vertex> parent;                  // -1 for root and non-members
    std::vector<std::vector<Vertex>> children;   // sorted
    std::vector<int> depth;                      // -1 for non-members
    std::vector<std::vector<Vertex>> subtree;    // vertex u plus its descendants, sorted

    int size() const { return static_cast<int>(verts.size()); }
    bool is_leaf(Vertex v) const { return children[v].empty(); }
};

// component_of picks the component, r the root; both must lie in the same
// component and that component must be acyclic.
RootedTree root_tree(const Graph& g, Vertex component_of, Vertex r);

// Named instances. k is the size parameter: path:k and cycle:k have k
// vertices, star:k has k leaves around center 0, spider:k has k legs of
// three edges around center 0. t_star is spider:3 (k ignored), numbered
// center 0, leg j in {0,1,2} = vertices 3j+1, 3j+2, 3j+3 walking outward.
Graph make_named(const std::string& name, int k = 0);

// Number of labeled trees on n vertices (n^(n-2); 1 for n <= 2).
std::uint64_t labeled_tree_count(int n);

// Decode a Pruefer sequence (length n-2, entries 0..n-1) into its tree.
Graph tree_from_pruefer(const std::vector<int>& seq, int n);

// Streams every labeled tree on n vertices, one per Pruefer sequence in
// lexicographic order. Throws GraphError when n exceeds cap.
class LabeledTreeStream {
public:
    explicit LabeledTreeStream(int n, int cap = 8);
    std::optional<Graph> next();
    std::uint64_t total() const { return labeled_tree_count(n_); }

private:
    int n_;
    bool done_ = false;
    bool first_ = true;
    std::vector<int> seq_;
};

// Uniform labeled tree via a random Pruefer sequence.
Graph random_tree(int n, std::mt19937_64& rng);

// True iff the three-legs-of-length-three spider embeds as a subgraph.
// Requires a forest (throws GraphError otherwise).
bool contains_t_star_subtree(const Graph& g);

// BFS spanning forest (smallest-id roots), used to aim tree strategies at
// graphs that are not forests.
Graph spanning_forest(const Graph& g);

// Some cycle of g as a vertex list (no repeated entries), empty for forests.
std::vector<Vertex> find_cycle(const Graph& g);

}  // namespace catmouse

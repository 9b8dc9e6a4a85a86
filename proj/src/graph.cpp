#include "catmouse/graph.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

namespace catmouse {

Graph::Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    if (n < 0) throw GraphError("vertex count must be non-negative");
    adj_.assign(n, {});
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw GraphError("edge endpoint out of range: " + std::to_string(u) + " " +
                             std::to_string(v));
        if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        ++edges_;
    }
    for (auto& nb : adj_) {
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
            throw GraphError("duplicate edge");
    }
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    const auto& nb = adj_.at(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edges_);
    for (Vertex u = 0; u < order(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph parse_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    long n = -1, m = -1;
    std::vector<std::pair<Vertex, Vertex>> edges;
    auto fail = [&](const std::string& why) {
        throw GraphError("line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long a, b;
        if (!(ls >> a)) continue;  // blank or comment-only
        if (!(ls >> b)) fail("expected two integers");
        long trailing;
        if (ls >> trailing) fail("trailing tokens");
        if (n < 0) {
            n = a;
            m = b;
            if (n < 0 || m < 0) fail("negative count in header");
        } else {
            edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
        }
    }
    if (n < 0) throw GraphError("missing header line \"n m\"");
    if (static_cast<long>(edges.size()) != m)
        throw GraphError("header announced " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));
    return Graph(static_cast<int>(n), edges);
}

Graph parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.order() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

ForestCheck is_forest(const Graph& g) {
    int n = g.order();
    std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<Vertex> par(n, -1);
    for (Vertex s = 0; s < n; ++s) {
        if (state[s]) continue;
        // iterative DFS keeping the tree path so a back-edge yields its cycle
        std::vector<std::pair<Vertex, size_t>> stack{{s, 0}};
        state[s] = 1;
        while (!stack.empty()) {
            auto& [u, idx] = stack.back();
            if (idx >= g.neighbors(u).size()) {
                state[u] = 2;
                stack.pop_back();
                continue;
            }
            Vertex v = g.neighbors(u)[idx++];
            if (v == par[u]) continue;
            if (state[v] == 1) {
                // walk back from u to v along the DFS path, then close the walk
                std::vector<Vertex> cyc;
                for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
                    cyc.push_back(it->first);
                    if (it->first == v) break;
                }
                std::reverse(cyc.begin(), cyc.end());  // v, ..., u
                cyc.push_back(v);
                return {false, cyc};
            }
            if (state[v] == 0) {
                par[v] = u;
                state[v] = 1;
                stack.emplace_back(v, 0);
            }
        }
    }
    return {true, {}};
}

std::vector<Dist> distances_from(const Graph& g, Vertex src) {
    if (src < 0 || src >= g.order()) throw GraphError("source vertex out of range");
    std::vector<Dist> d(g.order(), kInfDist);
    std::deque<Vertex> q{src};
    d[src] = 0;
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop_front();
        for (Vertex v : g.neighbors(u))
            if (d[v] == kInfDist) {
                d[v] = d[u] + 1;
                q.push_back(v);
            }
    }
    return d;
}

DistanceTable::DistanceTable(const Graph& g) : n_(g.order()) {
    d_.reserve(static_cast<size_t>(n_) * n_);
    for (Vertex v = 0; v < n_; ++v) {
        auto row = distances_from(g, v);
        d_.insert(d_.end(), row.begin(), row.end());
    }
}

std::vector<std::vector<Vertex>> components(const Graph& g) {
    int n = g.order();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<Vertex>> out;
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp{s};
        seen[s] = 1;
        for (size_t i = 0; i < comp.size(); ++i)
            for (Vertex v : g.neighbors(comp[i]))
                if (!seen[v]) {
                    seen[v] = 1;
                    comp.push_back(v);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

RootedTree root_tree(const Graph& g, Vertex component_of, Vertex r) {
    int n = g.order();
    if (component_of < 0 || component_of >= n || r < 0 || r >= n)
        throw GraphError("root_tree: vertex out of range");
    RootedTree t;
    t.g = g;
    t.root = r;
    t.in_comp.assign(n, 0);
    t.parent.assign(n, -1);
    t.children.assign(n, {});
    t.depth.assign(n, -1);
    t.subtree.assign(n, {});

    std::vector<Vertex> order{r};
    t.in_comp[r] = 1;
    t.depth[r] = 0;
    int tree_edges = 0;
    for (size_t i = 0; i < order.size(); ++i) {
        Vertex u = order[i];
        for (Vertex v : g.neighbors(u)) {
            if (v == t.parent[u]) continue;
            if (t.in_comp[v])
                throw GraphError("root_tree: component contains a cycle");
            t.in_comp[v] = 1;
            t.parent[v] = u;
            t.depth[v] = t.depth[u] + 1;
            t.children[u].push_back(v);
            ++tree_edges;
            order.push_back(v);
        }
    }
    (void)tree_edges;
    if (!t.in_comp[component_of])
        throw GraphError("root_tree: root lies outside the requested component");
    t.verts = order;
    std::sort(t.verts.begin(), t.verts.end());
    for (Vertex v : t.verts) std::sort(t.children[v].begin(), t.children[v].end());
    // accumulate subtrees bottom-up (reverse BFS order)
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Vertex u = *it;
        t.subtree[u].push_back(u);
        for (Vertex c : t.children[u])
            t.subtree[u].insert(t.subtree[u].end(), t.subtree[c].begin(), t.subtree[c].end());
        std::sort(t.subtree[u].begin(), t.subtree[u].end());
    }
    return t;
}

Graph make_named(const std::string& name, int k) {
    std::vector<std::pair<Vertex, Vertex>> e;
    if (name == "path") {
        if (k < 1) throw GraphError("path needs k >= 1");
        for (int i = 0; i + 1 < k; ++i) e.emplace_back(i, i + 1);
        return Graph(k, e);
    }
    if (name == "cycle") {
        if (k < 3) throw GraphError("cycle needs k >= 3");
        for (int i = 0; i < k; ++i) e.emplace_back(i, (i + 1) % k);
        return Graph(k, e);
    }
    if (name == "star") {
        if (k < 1) throw GraphError("star needs k >= 1");
        for (int i = 1; i <= k; ++i) e.emplace_back(0, i);
        return Graph(k + 1, e);
    }
    if (name == "spider" || name == "t_star") {
        int legs = name == "t_star" ? 3 : k;
        if (legs < 1) throw GraphError("spider needs k >= 1");
        for (int j = 0; j < legs; ++j) {
            int base = 3 * j + 1;
            e.emplace_back(0, base);
            e.emplace_back(base, base + 1);
            e.emplace_back(base + 1, base + 2);
        }
        return Graph(3 * legs + 1, e);
    }
    throw GraphError("unknown named graph: " + name);
}

std::uint64_t labeled_tree_count(int n) {
    if (n < 1) throw GraphError("tree count needs n >= 1");
    if (n <= 2) return 1;
    std::uint64_t c = 1;
    for (int i = 0; i < n - 2; ++i) c *= static_cast<std::uint64_t>(n);
    return c;
}

Graph tree_from_pruefer(const std::vector<int>& seq, int n) {
    if (n < 1) throw GraphError("tree needs n >= 1");
    if (static_cast<int>(seq.size()) != std::max(0, n - 2))
        throw GraphError("pruefer sequence must have length n-2");
    if (n == 1) return Graph(1, {});
    std::vector<std::pair<Vertex, Vertex>> e;
    std::vector<int> deg(n, 1);
    for (int a : seq) {
        if (a < 0 || a >= n) throw GraphError("pruefer entry out of range");
        ++deg[a];
    }
    int ptr = 0;
    while (deg[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int a : seq) {
        e.emplace_back(leaf, a);
        if (--deg[a] == 1 && a < ptr) {
            leaf = a;
        } else {
            ++ptr;
            while (deg[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    e.emplace_back(leaf, n - 1);
    return Graph(n, e);
}

LabeledTreeStream::LabeledTreeStream(int n, int cap) : n_(n) {
    if (n < 1) throw GraphError("tree enumeration needs n >= 1");
    if (n > cap)
        throw GraphError("tree enumeration capped at n = " + std::to_string(cap));
    seq_.assign(std::max(0, n - 2), 0);
}

std::optional<Graph> LabeledTreeStream::next() {
    if (done_) return std::nullopt;
    if (first_) {
        first_ = false;
        return tree_from_pruefer(seq_, n_);
    }
    // odometer increment, most significant digit first = lexicographic order
    int i = static_cast<int>(seq_.size()) - 1;
    while (i >= 0 && seq_[i] == n_ - 1) seq_[i--] = 0;
    if (i < 0) {
        done_ = true;
        return std::nullopt;
    }
    ++seq_[i];
    return tree_from_pruefer(seq_, n_);
}

Graph random_tree(int n, std::mt19937_64& rng) {
    if (n <= 2) return make_named("path", std::max(1, n));
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> seq(n - 2);
    for (int& a : seq) a = pick(rng);
    return tree_from_pruefer(seq, n);
}

namespace {
// longest downward path length (in edges) from u when entered from `from`
int down_depth(const Graph& g, Vertex u, Vertex from, int need) {
    if (need <= 0) return 0;
    int best = 0;
    for (Vertex v : g.neighbors(u)) {
        if (v == from) continue;
        best = std::max(best, 1 + down_depth(g, v, u, need - 1));
        if (best >= need) break;
    }
    return best;
}
}  // namespace

bool contains_t_star_subtree(const Graph& g) {
    auto chk = is_forest(g);
    if (!chk.forest) throw GraphError("t_star containment is defined on forests");
    for (Vertex c = 0; c < g.order(); ++c) {
        if (g.degree(c) < 3) continue;
        int long_branches = 0;
        for (Vertex u : g.neighbors(c))
            if (down_depth(g, u, c, 2) >= 2 && ++long_branches >= 3) return true;
    }
    return false;
}

Graph spanning_forest(const Graph& g) {
    int n = g.order();
    std::vector<char> seen(n, 0);
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        std::deque<Vertex> q{s};
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop_front();
            for (Vertex v : g.neighbors(u))
                if (!seen[v]) {
                    seen[v] = 1;
                    e.emplace_back(u, v);
                    q.push_back(v);
                }
        }
    }
    return Graph(n, e);
}

std::vector<Vertex> find_cycle(const Graph& g) {
    auto chk = is_forest(g);
    if (chk.forest) return {};
    std::vector<Vertex> cyc(chk.cycle.begin(), chk.cycle.end() - 1);  // drop closing repeat
    return cyc;
}

}  // namespace catmouse

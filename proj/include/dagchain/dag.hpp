#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dagchain {

/// Raised for malformed caller input: out-of-range vertices, absent arcs,
/// graphs outside the requested state space.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised for chain configurations that admit no valid state.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Vertex labels are 1-based everywhere in the public interface: V = {1..n}.
using Vertex = int;

struct Arc {
    Vertex from = 0;
    Vertex to = 0;

    friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Directed graph over the fixed vertex set {1..n}, stored as a dense
/// adjacency bitmatrix (plus its transpose) so that membership is O(1) and
/// traversals are O(n + m).
///
/// The mutators below do not re-check acyclicity; the chain rules decide
/// whether a change is admissible before applying it. Use `from_arcs` to
/// build a validated value from untrusted input.
class Dag {
public:
    explicit Dag(int n);

    /// Validated construction: rejects out-of-range labels, self-loops,
    /// duplicate arcs and directed circuits with InputError.
    static Dag from_arcs(int n, std::span<const Arc> arcs);

    int n() const noexcept { return n_; }
    std::size_t arc_count() const noexcept { return arc_count_; }

    bool has_arc(Vertex i, Vertex j) const;
    int out_degree(Vertex v) const;
    int in_degree(Vertex v) const;

    /// Arcs in ascending lexicographic order.
    std::vector<Arc> arcs() const;

    void add_arc(Vertex i, Vertex j);
    void remove_arc(Vertex i, Vertex j);
    /// Replaces (i,j) by (j,i).
    void reverse_arc(Vertex i, Vertex j);

    template <class F>
    void for_each_successor(Vertex v, F&& f) const {
        check_vertex(v);
        for_each_bit(out_, v - 1, f);
    }

    template <class F>
    void for_each_predecessor(Vertex v, F&& f) const {
        check_vertex(v);
        for_each_bit(in_, v - 1, f);
    }

    std::size_t hash() const noexcept;

    friend bool operator==(const Dag& a, const Dag& b) noexcept {
        return a.n_ == b.n_ && a.out_ == b.out_;
    }

    void check_vertex(Vertex v) const;

private:
    template <class F>
    void for_each_bit(const std::vector<std::uint64_t>& m, int row, F& f) const {
        const std::size_t base = static_cast<std::size_t>(row) * words_;
        for (int w = 0; w < words_; ++w) {
            std::uint64_t bits = m[base + w];
            while (bits != 0) {
                const int b = std::countr_zero(bits);
                bits &= bits - 1;
                f(w * 64 + b + 1);
            }
        }
    }

    bool bit(const std::vector<std::uint64_t>& m, int r, int c) const noexcept {
        return (m[static_cast<std::size_t>(r) * words_ + c / 64] >> (c % 64)) & 1u;
    }
    void set_bit(std::vector<std::uint64_t>& m, int r, int c, bool on) noexcept;

    int n_;
    int words_;
    std::size_t arc_count_ = 0;
    std::vector<std::uint64_t> out_;
    std::vector<std::uint64_t> in_;
    std::vector<int> out_degree_;
    std::vector<int> in_degree_;
};

/// The graph obtained by ignoring arc orientations. A non-owning view; the
/// viewed Dag must outlive it.
class UndirectedView {
public:
    explicit UndirectedView(const Dag& g) : g_(&g) {}

    bool has_edge(Vertex i, Vertex j) const { return g_->has_arc(i, j) || g_->has_arc(j, i); }
    int degree(Vertex v) const { return g_->out_degree(v) + g_->in_degree(v); }
    std::size_t edge_count() const { return g_->arc_count(); }
    /// Neighbours in ascending order.
    std::vector<Vertex> neighbors(Vertex v) const;

private:
    const Dag* g_;
};

/// True iff adding (i,j) to g would close a directed circuit, i.e. i == j or
/// j already reaches i. Requires (i,j) not to be an arc of g.
bool would_create_circuit(const Dag& g, Vertex i, Vertex j);

/// True iff removing arc (i,j) disconnects the undirected view, i.e. {i,j}
/// is a bridge. One traversal from i that never uses the edge {i,j}.
bool is_disconnecting(const Dag& g, Vertex i, Vertex j);

/// Undirected connectivity. A graph with no arcs (n >= 2) is disconnected.
bool is_connected(const Dag& g);

/// Kahn's algorithm; independent of the reachability test used by the chain.
bool is_acyclic(const Dag& g);

/// Full invariant check. Returns a description of the first violated
/// invariant, or nullopt when g is a well-formed DAG.
std::optional<std::string> invariant_violation(const Dag& g);

/// Ordering-independent text form, e.g. "{(1,2),(2,3)}".
std::string to_string(const Dag& g);

}  // namespace dagchain

template <>
struct std::hash<dagchain::Dag> {
    std::size_t operator()(const dagchain::Dag& g) const noexcept { return g.hash(); }
};

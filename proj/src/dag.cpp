#include "dagchain/dag.hpp"

#include <algorithm>
#include <sstream>

namespace dagchain {

Dag::Dag(int n)
    : n_(n), words_((n + 63) / 64) {
    if (n < 2) {
        throw InputError("vertex count must be at least 2, got " + std::to_string(n));
    }
    const std::size_t cells = static_cast<std::size_t>(n) * words_;
    out_.assign(cells, 0);
    in_.assign(cells, 0);
    out_degree_.assign(n, 0);
    in_degree_.assign(n, 0);
}

Dag Dag::from_arcs(int n, std::span<const Arc> arcs) {
    Dag g(n);
    for (const Arc& a : arcs) {
        g.check_vertex(a.from);
        g.check_vertex(a.to);
        if (a.from == a.to) {
            throw InputError("self-loop at vertex " + std::to_string(a.from));
        }
        if (g.has_arc(a.from, a.to)) {
            throw InputError("duplicate arc (" + std::to_string(a.from) + "," +
                             std::to_string(a.to) + ")");
        }
        if (would_create_circuit(g, a.from, a.to)) {
            throw InputError("arc (" + std::to_string(a.from) + "," + std::to_string(a.to) +
                             ") closes a directed circuit");
        }
        g.add_arc(a.from, a.to);
    }
    return g;
}

void Dag::check_vertex(Vertex v) const {
    if (v < 1 || v > n_) {
        throw InputError("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n_));
    }
}

void Dag::set_bit(std::vector<std::uint64_t>& m, int r, int c, bool on) noexcept {
    std::uint64_t& word = m[static_cast<std::size_t>(r) * words_ + c / 64];
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    word = on ? (word | mask) : (word & ~mask);
}

bool Dag::has_arc(Vertex i, Vertex j) const {
    check_vertex(i);
    check_vertex(j);
    return bit(out_, i - 1, j - 1);
}

int Dag::out_degree(Vertex v) const {
    check_vertex(v);
    return out_degree_[v - 1];
}

int Dag::in_degree(Vertex v) const {
    check_vertex(v);
    return in_degree_[v - 1];
}

std::vector<Arc> Dag::arcs() const {
    std::vector<Arc> result;
    result.reserve(arc_count_);
    for (Vertex i = 1; i <= n_; ++i) {
        for_each_successor(i, [&](Vertex j) { result.push_back({i, j}); });
    }
    return result;
}

void Dag::add_arc(Vertex i, Vertex j) {
    if (has_arc(i, j) || i == j) {
        throw InputError("cannot add arc (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    set_bit(out_, i - 1, j - 1, true);
    set_bit(in_, j - 1, i - 1, true);
    ++out_degree_[i - 1];
    ++in_degree_[j - 1];
    ++arc_count_;
}

void Dag::remove_arc(Vertex i, Vertex j) {
    if (!has_arc(i, j)) {
        throw InputError("arc (" + std::to_string(i) + "," + std::to_string(j) + ") is absent");
    }
    set_bit(out_, i - 1, j - 1, false);
    set_bit(in_, j - 1, i - 1, false);
    --out_degree_[i - 1];
    --in_degree_[j - 1];
    --arc_count_;
}

void Dag::reverse_arc(Vertex i, Vertex j) {
    remove_arc(i, j);
    add_arc(j, i);
}

std::size_t Dag::hash() const noexcept {
    // FNV-1a over the out-adjacency words.
    std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(n_);
    for (std::uint64_t w : out_) {
        h ^= w;
        h *= 1099511628211ull;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

std::vector<Vertex> UndirectedView::neighbors(Vertex v) const {
    std::vector<Vertex> result;
    g_->for_each_successor(v, [&](Vertex u) { result.push_back(u); });
    g_->for_each_predecessor(v, [&](Vertex u) { result.push_back(u); });
    std::sort(result.begin(), result.end());
    return result;
}

bool would_create_circuit(const Dag& g, Vertex i, Vertex j) {
    g.check_vertex(i);
    g.check_vertex(j);
    if (i == j) {
        return true;
    }
    // Does j reach i?
    std::vector<char> seen(g.n() + 1, 0);
    std::vector<Vertex> stack{j};
    seen[j] = 1;
    bool found = false;
    while (!stack.empty() && !found) {
        const Vertex v = stack.back();
        stack.pop_back();
        g.for_each_successor(v, [&](Vertex u) {
            if (u == i) {
                found = true;
            }
            if (!seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
        });
    }
    return found;
}

bool is_disconnecting(const Dag& g, Vertex i, Vertex j) {
    if (!g.has_arc(i, j)) {
        throw InputError("arc (" + std::to_string(i) + "," + std::to_string(j) + ") is absent");
    }
    std::vector<char> seen(g.n() + 1, 0);
    std::vector<Vertex> stack{i};
    seen[i] = 1;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        auto visit = [&](Vertex u) {
            if ((v == i && u == j) || (v == j && u == i)) {
                return;
            }
            if (!seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
        };
        g.for_each_successor(v, visit);
        g.for_each_predecessor(v, visit);
        if (seen[j]) {
            return false;
        }
    }
    return true;
}

bool is_connected(const Dag& g) {
    std::vector<char> seen(g.n() + 1, 0);
    std::vector<Vertex> stack{1};
    seen[1] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        auto visit = [&](Vertex u) {
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                stack.push_back(u);
            }
        };
        g.for_each_successor(v, visit);
        g.for_each_predecessor(v, visit);
    }
    return reached == g.n();
}

bool is_acyclic(const Dag& g) {
    std::vector<int> pending(g.n() + 1, 0);
    std::vector<Vertex> sources;
    for (Vertex v = 1; v <= g.n(); ++v) {
        pending[v] = g.in_degree(v);
        if (pending[v] == 0) {
            sources.push_back(v);
        }
    }
    int removed = 0;
    while (!sources.empty()) {
        const Vertex v = sources.back();
        sources.pop_back();
        ++removed;
        g.for_each_successor(v, [&](Vertex u) {
            if (--pending[u] == 0) {
                sources.push_back(u);
            }
        });
    }
    return removed == g.n();
}

std::optional<std::string> invariant_violation(const Dag& g) {
    const int n = g.n();
    std::size_t counted = 0;
    for (Vertex i = 1; i <= n; ++i) {
        if (g.has_arc(i, i)) {
            return "self-loop at " + std::to_string(i);
        }
        for (Vertex j = i + 1; j <= n; ++j) {
            if (g.has_arc(i, j) && g.has_arc(j, i)) {
                return "antiparallel arcs between " + std::to_string(i) + " and " +
                       std::to_string(j);
            }
            counted += g.has_arc(i, j) + g.has_arc(j, i);
        }
    }
    if (counted != g.arc_count()) {
        return "arc count mismatch";
    }
    if (counted > static_cast<std::size_t>(n) * (n - 1) / 2) {
        return "more than n(n-1)/2 arcs";
    }
    if (!is_acyclic(g)) {
        return "directed circuit present";
    }
    return std::nullopt;
}

std::string to_string(const Dag& g) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const Arc& a : g.arcs()) {
        os << (first ? "" : ",") << '(' << a.from << ',' << a.to << ')';
        first = false;
    }
    os << '}';
    return os.str();
}

}  // namespace dagchain

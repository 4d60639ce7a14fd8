#include "dagchain/proof_path.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "dagchain/chain.hpp"

namespace dagchain {

Move inverse(Move m) noexcept {
    switch (m.kind) {
        case MoveKind::add: return {MoveKind::remove, m.arc};
        case MoveKind::remove: return {MoveKind::add, m.arc};
        case MoveKind::reverse: return {MoveKind::reverse, {m.arc.to, m.arc.from}};
    }
    return m;
}

std::vector<Move> inverse(const std::vector<Move>& moves) {
    std::vector<Move> result;
    result.reserve(moves.size());
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
        result.push_back(inverse(*it));
    }
    return result;
}

std::string to_string(const Move& m) {
    const char* word = m.kind == MoveKind::add ? "ADD" : m.kind == MoveKind::remove ? "DEL" : "REV";
    return std::string(word) + ' ' + std::to_string(m.arc.from) + ' ' + std::to_string(m.arc.to);
}

Move parse_move(std::string_view line) {
    std::istringstream is{std::string(line)};
    std::string word;
    Move m{MoveKind::add, {}};
    std::string rest;
    if (!(is >> word >> m.arc.from >> m.arc.to) || (is >> rest)) {
        throw InputError("malformed move line: '" + std::string(line) + "'");
    }
    if (word == "ADD") {
        m.kind = MoveKind::add;
    } else if (word == "DEL") {
        m.kind = MoveKind::remove;
    } else if (word == "REV") {
        m.kind = MoveKind::reverse;
    } else {
        throw InputError("unknown move '" + word + "'");
    }
    return m;
}

namespace {

ChainConfig connected_config(int n) {
    ChainConfig c;
    c.n = n;
    c.variant = Variant::connected;
    c.reversal_rule_enabled = true;
    return c;
}

Action expected_action(MoveKind k) {
    switch (k) {
        case MoveKind::add: return Action::added;
        case MoveKind::remove: return Action::deleted;
        case MoveKind::reverse: return Action::reversed;
    }
    return Action::noop;
}

std::string describe_failure(const Dag& g, const Move& m, Action got) {
    return to_string(m) + " from " + to_string(g) + " gives '" + std::string(to_string(got)) +
           "', not '" + std::string(to_string(expected_action(m.kind))) + "'";
}

// Appends the move to a phase after executing it through the chain rule.
void perform(Phase& p, Move m) {
    apply(p.graph, m);
    p.moves.push_back(m);
}

// Adds an edge between a and b in whichever orientation is acyclic,
// trying (first, second) before (second, first).
void add_edge(Phase& p, Vertex first, Vertex second) {
    if (!would_create_circuit(p.graph, first, second)) {
        perform(p, {MoveKind::add, {first, second}});
    } else {
        perform(p, {MoveKind::add, {second, first}});
    }
}

void delete_edge(Phase& p, Vertex a, Vertex b) {
    if (p.graph.has_arc(a, b)) {
        perform(p, {MoveKind::remove, {a, b}});
    } else {
        perform(p, {MoveKind::remove, {b, a}});
    }
}

void require_connected_dag(const Dag& g, const char* what) {
    if (auto bad = invariant_violation(g)) {
        throw InputError(std::string(what) + " is not a DAG: " + *bad);
    }
    if (!is_connected(g)) {
        throw InputError(std::string(what) + " is not connected");
    }
}

std::size_t leaf_count(const Dag& t) {
    const UndirectedView u(t);
    std::size_t leaves = 0;
    for (Vertex v = 1; v <= t.n(); ++v) {
        leaves += u.degree(v) == 1;
    }
    return leaves;
}

}  // namespace

void apply(Dag& g, const Move& m) {
    if (m.arc.from == m.arc.to) {
        throw InputError("move " + to_string(m) + " uses a diagonal pair");
    }
    const Dag before = g;
    const TransitionOutcome out = step_connected(g, m.arc, connected_config(g.n()));
    if (out.tag != expected_action(m.kind)) {
        g = before;
        throw InputError(describe_failure(before, m, out.tag));
    }
}

bool is_directed_tree(const Dag& g) {
    return g.arc_count() == static_cast<std::size_t>(g.n()) - 1 && is_connected(g);
}

bool is_dichain(const Dag& g) {
    if (!is_directed_tree(g)) {
        return false;
    }
    const UndirectedView u(g);
    for (Vertex v = 1; v <= g.n(); ++v) {
        if (u.degree(v) > 2) {
            return false;
        }
    }
    return true;
}

std::vector<Vertex> path_order(const Dag& c) {
    if (!is_dichain(c)) {
        throw InputError(to_string(c) + " is not a dichain");
    }
    const UndirectedView u(c);
    Vertex start = 1;
    while (u.degree(start) != 1) {
        ++start;
    }
    std::vector<Vertex> order{start};
    Vertex prev = 0;
    Vertex cur = start;
    while (order.size() < static_cast<std::size_t>(c.n())) {
        for (Vertex next : u.neighbors(cur)) {
            if (next != prev) {
                prev = cur;
                cur = next;
                break;
            }
        }
        order.push_back(cur);
    }
    return order;
}

Dag hamiltonian_dichain(int n) {
    Dag g(n);
    for (Vertex i = 1; i < n; ++i) {
        g.add_arc(i, i + 1);
    }
    return g;
}

Phase to_spanning_tree(const Dag& g) {
    require_connected_dag(g, "graph");
    const int n = g.n();
    const UndirectedView u(g);

    std::vector<Vertex> parent(n + 1, 0);
    std::vector<Vertex> queue{1};
    parent[1] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex v = queue[head];
        for (Vertex w : u.neighbors(v)) {
            if (parent[w] == 0) {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    auto in_tree = [&](Arc a) { return parent[a.to] == a.from || parent[a.from] == a.to; };

    Phase p{g, {}};
    for (const Arc& a : g.arcs()) {
        if (!in_tree(a)) {
            perform(p, {MoveKind::remove, a});
        }
    }
    return p;
}

Phase tree_to_dichain(const Dag& t) {
    if (invariant_violation(t) || !is_directed_tree(t)) {
        throw InputError(to_string(t) + " is not a directed tree");
    }
    Phase p{t, {}};
    for (std::size_t leaves = leaf_count(t); leaves > 2; --leaves) {
        const UndirectedView u(p.graph);
        Vertex leaf = 1;
        while (u.degree(leaf) != 1) {
            ++leaf;
        }
        // Walk from the leaf through degree-2 vertices to the first branch.
        Vertex prev = leaf;
        Vertex branch = u.neighbors(leaf).front();
        while (u.degree(branch) == 2) {
            const auto nb = u.neighbors(branch);
            const Vertex next = nb[0] == prev ? nb[1] : nb[0];
            prev = branch;
            branch = next;
        }
        Vertex other = 0;
        for (Vertex w : u.neighbors(branch)) {
            if (w != prev) {
                other = w;
                break;
            }
        }
        add_edge(p, other, leaf);
        delete_edge(p, branch, other);
        if (leaf_count(p.graph) != leaves - 1) {
            throw std::logic_error("leaf elimination did not remove exactly one leaf");
        }
    }
    return p;
}

namespace {

// Rearranges the dichain in p into the undirected path `order`, then fixes
// orientations to match `target`.
void rearrange(Phase& p, const std::vector<Vertex>& order, const Dag& target) {
    const int n = p.graph.n();
    auto add_toward_target = [&](Vertex a, Vertex b) {
        if (target.has_arc(b, a)) {
            add_edge(p, b, a);
        } else {
            add_edge(p, a, b);
        }
    };

    std::vector<Vertex> cur = path_order(p.graph);
    if (cur.front() != order.front()) {
        if (cur.back() == order.front()) {
            std::reverse(cur.begin(), cur.end());
        } else {
            // Close the path into a cycle and open it just before order[0].
            const auto j = static_cast<std::size_t>(
                std::find(cur.begin(), cur.end(), order.front()) - cur.begin());
            add_toward_target(cur.back(), cur.front());
            delete_edge(p, cur[j - 1], cur[j]);
            std::rotate(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(j), cur.end());
        }
    }

    for (std::size_t k = 1; k + 1 < static_cast<std::size_t>(n); ++k) {
        if (cur[k] == order[k]) {
            continue;
        }
        const auto m = static_cast<std::size_t>(
            std::find(cur.begin(), cur.end(), order[k]) - cur.begin());
        // cur = prefix, A = cur[k..m-1], order[k], B = cur[m+1..].
        add_toward_target(cur[k - 1], cur[m]);
        delete_edge(p, cur[k - 1], cur[k]);
        std::vector<Vertex> next(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(k));
        next.push_back(cur[m]);
        if (m + 1 == cur.size()) {
            next.insert(next.end(), cur.rbegin() + 1,
                        cur.rbegin() + static_cast<std::ptrdiff_t>(cur.size() - k));
        } else {
            add_toward_target(cur[k], cur.back());
            delete_edge(p, cur[m - 1], cur[m]);
            next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(m + 1), cur.end());
            next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(k),
                        cur.begin() + static_cast<std::ptrdiff_t>(m));
        }
        cur = std::move(next);
    }

    for (const Arc& a : target.arcs()) {
        if (!p.graph.has_arc(a.from, a.to)) {
            perform(p, {MoveKind::reverse, {a.to, a.from}});
        }
    }
}

std::vector<Move> concat(std::initializer_list<const std::vector<Move>*> parts) {
    std::vector<Move> all;
    for (const auto* part : parts) {
        all.insert(all.end(), part->begin(), part->end());
    }
    return all;
}

}  // namespace

Phase dichain_to_dichain(const Dag& c, const Dag& target) {
    if (c.n() != target.n()) {
        throw InputError("dichains have different vertex counts");
    }
    if (invariant_violation(c) || !is_dichain(c)) {
        throw InputError(to_string(c) + " is not a dichain");
    }
    if (invariant_violation(target) || !is_dichain(target)) {
        throw InputError(to_string(target) + " is not a dichain");
    }
    // The target path may be read from either end; keep the cheaper reading.
    std::vector<Vertex> order = path_order(target);
    Phase forward{c, {}};
    rearrange(forward, order, target);
    std::reverse(order.begin(), order.end());
    Phase backward{c, {}};
    rearrange(backward, order, target);
    return backward.moves.size() < forward.moves.size() ? backward : forward;
}

Phase dichain_to_hamiltonian(const Dag& c) {
    return dichain_to_dichain(c, hamiltonian_dichain(c.n()));
}

std::vector<Move> erase_loops(const Dag& start, const std::vector<Move>& moves) {
    std::vector<Move> kept;
    std::vector<Dag> states{start};
    std::unordered_map<Dag, std::size_t> position{{start, 0}};
    Dag cur = start;
    for (const Move& m : moves) {
        apply(cur, m);
        if (const auto it = position.find(cur); it != position.end()) {
            const std::size_t q = it->second;
            for (std::size_t r = q + 1; r < states.size(); ++r) {
                position.erase(states[r]);
            }
            states.erase(states.begin() + static_cast<std::ptrdiff_t>(q + 1), states.end());
            kept.resize(q);
        } else {
            kept.push_back(m);
            states.push_back(cur);
            position.emplace(cur, states.size() - 1);
        }
    }
    return kept;
}

PathCertificate build_path(const Dag& g, const Dag& h) {
    if (g.n() != h.n()) {
        throw InputError("graphs have different vertex counts (" + std::to_string(g.n()) +
                         " and " + std::to_string(h.n()) + ")");
    }
    require_connected_dag(g, "start graph");
    require_connected_dag(h, "end graph");

    const Phase g_tree = to_spanning_tree(g);
    const Phase g_chain = tree_to_dichain(g_tree.graph);
    const Phase h_tree = to_spanning_tree(h);
    const Phase h_chain = tree_to_dichain(h_tree.graph);

    // Candidate meeting points: h's dichain, g's dichain, or the Hamiltonian
    // dichain. The shortest resulting certificate wins.
    const Phase g_to_h = dichain_to_dichain(g_chain.graph, h_chain.graph);
    const Phase h_to_g = dichain_to_dichain(h_chain.graph, g_chain.graph);
    const Phase g_ham = dichain_to_hamiltonian(g_chain.graph);
    const Phase h_ham = dichain_to_hamiltonian(h_chain.graph);

    const std::vector<Move> empty;
    const std::vector<Move> h_back = inverse(concat({&h_tree.moves, &h_chain.moves}));
    const std::vector<Move> h_to_g_back = inverse(h_to_g.moves);
    const std::vector<Move> h_ham_back = inverse(h_ham.moves);

    struct Candidate {
        std::vector<Move> moves;
        std::size_t rearrangement;
    };
    const Candidate candidates[] = {
        {concat({&g_tree.moves, &g_chain.moves, &g_to_h.moves, &h_back}), g_to_h.moves.size()},
        {concat({&g_tree.moves, &g_chain.moves, &h_to_g_back, &h_back}), h_to_g.moves.size()},
        {concat({&g_tree.moves, &g_chain.moves, &g_ham.moves, &h_ham_back, &h_back}),
         g_ham.moves.size() + h_ham.moves.size()},
    };

    PathCertificate best{g, h, {}, {}};
    bool first = true;
    for (const Candidate& c : candidates) {
        std::vector<Move> moves = erase_loops(g, c.moves);
        if (first || moves.size() < best.moves.size()) {
            best.moves = std::move(moves);
            best.phases = {g_tree.moves.size() + h_tree.moves.size(),
                           g_chain.moves.size() + h_chain.moves.size(), c.rearrangement};
            first = false;
        }
    }
    return best;
}

PathCertificate reversed(const PathCertificate& c) {
    return {c.end, c.start, inverse(c.moves), c.phases};
}

ReplayResult replay(const PathCertificate& c) {
    if (c.start.n() != c.end.n()) {
        return {false, 0, "start and end have different vertex counts"};
    }
    Dag cur = c.start;
    for (std::size_t k = 0; k < c.moves.size(); ++k) {
        try {
            apply(cur, c.moves[k]);
        } catch (const InputError& e) {
            return {false, k, e.what()};
        }
        if (auto bad = invariant_violation(cur)) {
            return {false, k, "intermediate state is not a DAG: " + *bad};
        }
        if (!is_connected(cur)) {
            return {false, k, "intermediate state is disconnected"};
        }
    }
    if (!(cur == c.end)) {
        return {false, c.moves.size(),
                "replay ends at " + to_string(cur) + ", expected " + to_string(c.end)};
    }
    return {};
}

namespace {

std::string arc_list(const Dag& g) {
    std::string out;
    for (const Arc& a : g.arcs()) {
        if (!out.empty()) {
            out += ',';
        }
        out += std::to_string(a.from) + '>' + std::to_string(a.to);
    }
    return out.empty() ? "-" : out;
}

Dag parse_arc_list(int n, const std::string& text) {
    std::vector<Arc> arcs;
    if (text != "-") {
        std::istringstream is(text);
        std::string token;
        while (std::getline(is, token, ',')) {
            const auto sep = token.find('>');
            if (sep == std::string::npos) {
                throw InputError("malformed arc token '" + token + "'");
            }
            try {
                arcs.push_back({std::stoi(token.substr(0, sep)), std::stoi(token.substr(sep + 1))});
            } catch (const std::logic_error&) {
                throw InputError("malformed arc token '" + token + "'");
            }
        }
    }
    return Dag::from_arcs(n, arcs);
}

}  // namespace

void write_certificate(std::ostream& os, const PathCertificate& c) {
    os << c.start.n() << ' ' << arc_list(c.start) << ' ' << arc_list(c.end) << '\n';
    for (const Move& m : c.moves) {
        os << to_string(m) << '\n';
    }
}

PathCertificate read_certificate(std::istream& is) {
    std::string line;
    while (std::getline(is, line) && (line.empty() || line[0] == '#')) {
    }
    std::istringstream header(line);
    int n = 0;
    std::string start_text;
    std::string end_text;
    if (!(header >> n >> start_text >> end_text)) {
        throw InputError("certificate header must read 'n start-arcs end-arcs'");
    }
    PathCertificate c{parse_arc_list(n, start_text), parse_arc_list(n, end_text), {}, {}};
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        c.moves.push_back(parse_move(line));
    }
    return c;
}

}  // namespace dagchain

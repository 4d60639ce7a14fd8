#include "dagchain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "parallel.hpp"

namespace dagchain {

int pair_bit(int n, Arc a) {
    // Row a.from holds n-1 pairs; skip the diagonal within the row.
    return (a.from - 1) * (n - 1) + (a.to < a.from ? a.to - 1 : a.to - 2);
}

std::uint64_t to_mask(const Dag& g) {
    if (g.n() > 8) {
        throw InputError("bitmask encoding needs n <= 8");
    }
    std::uint64_t mask = 0;
    for (const Arc& a : g.arcs()) {
        mask |= std::uint64_t{1} << pair_bit(g.n(), a);
    }
    return mask;
}

Dag from_mask(int n, std::uint64_t mask) {
    if (n > 8) {
        throw InputError("bitmask encoding needs n <= 8");
    }
    Dag g(n);
    for (Vertex i = 1; i <= n; ++i) {
        for (Vertex j = 1; j <= n; ++j) {
            if (i != j && ((mask >> pair_bit(n, {i, j})) & 1u)) {
                g.add_arc(i, j);
            }
        }
    }
    return g;
}

StateSpace::StateSpace(ChainConfig config, std::vector<std::uint64_t> masks)
    : config_(config), masks_(std::move(masks)) {
    index_.reserve(masks_.size());
    for (std::size_t k = 0; k < masks_.size(); ++k) {
        index_.emplace(masks_[k], k);
    }
}

std::optional<std::size_t> StateSpace::find_mask(std::uint64_t mask) const {
    const auto it = index_.find(mask);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<std::size_t> StateSpace::find(const Dag& g) const {
    if (g.n() != n()) {
        return std::nullopt;
    }
    return find_mask(to_mask(g));
}

namespace {

struct Enumerator {
    const ChainConfig& config;
    std::vector<Arc> pairs;
    std::vector<std::uint64_t> found;

    void visit(std::size_t next, Dag& g, std::uint64_t mask) {
        if (next == pairs.size()) {
            if (config.variant != Variant::connected || is_connected(g)) {
                found.push_back(mask);
            }
            return;
        }
        visit(next + 1, g, mask);
        const Arc a = pairs[next];
        if (would_create_circuit(g, a.from, a.to)) {
            return;
        }
        if (config.max_arcs && g.arc_count() + 1 > *config.max_arcs) {
            return;
        }
        if (config.max_out_degree && g.out_degree(a.from) + 1 > *config.max_out_degree) {
            return;
        }
        if (config.max_in_degree && g.in_degree(a.to) + 1 > *config.max_in_degree) {
            return;
        }
        g.add_arc(a.from, a.to);
        visit(next + 1, g, mask | (std::uint64_t{1} << next));
        g.remove_arc(a.from, a.to);
    }
};

}  // namespace

StateSpace enumerate(const ChainConfig& config, int cap) {
    config.validate();
    if (config.n > cap || config.n > 8) {
        throw InputError("exhaustive enumeration is limited to n <= " +
                         std::to_string(std::min(cap, 8)) + " (got n = " +
                         std::to_string(config.n) + ")");
    }
    Enumerator e{config, {}, {}};
    for (Vertex i = 1; i <= config.n; ++i) {
        for (Vertex j = 1; j <= config.n; ++j) {
            if (i != j) {
                e.pairs.push_back({i, j});
            }
        }
    }
    Dag g(config.n);
    e.visit(0, g, 0);
    std::sort(e.found.begin(), e.found.end());
    return StateSpace(config, std::move(e.found));
}

TransitionMatrix::TransitionMatrix(std::uint32_t denominator, std::vector<std::vector<Entry>> rows,
                                   std::vector<std::uint32_t> diagonal)
    : denominator_(denominator), rows_(std::move(rows)), diagonal_(std::move(diagonal)) {
    if (rows_.size() != diagonal_.size()) {
        throw InputError("row and diagonal sizes differ");
    }
    for (std::size_t x = 0; x < rows_.size(); ++x) {
        const auto& r = rows_[x];
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (r[k].to >= rows_.size() || r[k].to == x || (k > 0 && r[k - 1].to >= r[k].to)) {
                throw InputError("malformed row " + std::to_string(x));
            }
        }
    }
}

std::uint32_t TransitionMatrix::count(std::size_t x, std::size_t y) const {
    if (x == y) {
        return diagonal(x);
    }
    const auto r = row(x);
    const auto it = std::lower_bound(r.begin(), r.end(), y,
                                     [](const Entry& e, std::size_t v) { return e.to < v; });
    return it != r.end() && it->to == y ? it->count : 0;
}

TransitionMatrix build_matrix(const StateSpace& space) {
    const int n = space.n();
    const std::size_t size = space.size();
    std::vector<std::vector<TransitionMatrix::Entry>> rows(size);
    std::vector<std::uint32_t> diagonal(size, 0);

    detail::parallel_for(size, [&](std::size_t x) {
        const Dag from = space.state(x);
        std::vector<std::size_t> targets;
        targets.reserve(static_cast<std::size_t>(n) * n);
        for (Vertex i = 1; i <= n; ++i) {
            for (Vertex j = 1; j <= n; ++j) {
                Dag to = from;
                step(to, {i, j}, space.config());
                const auto y = space.find(to);
                if (!y) {
                    throw std::logic_error("transition leaves the state space: " +
                                           to_string(from) + " -> " + to_string(to));
                }
                targets.push_back(*y);
            }
        }
        std::sort(targets.begin(), targets.end());
        auto& row = rows[x];
        for (std::size_t k = 0; k < targets.size();) {
            std::size_t end = k;
            while (end < targets.size() && targets[end] == targets[k]) {
                ++end;
            }
            const auto c = static_cast<std::uint32_t>(end - k);
            if (targets[k] == x) {
                diagonal[x] = c;
            } else {
                row.push_back({targets[k], c});
            }
            k = end;
        }
    });
    return TransitionMatrix(static_cast<std::uint32_t>(n * n), std::move(rows),
                            std::move(diagonal));
}

SymmetryResult check_symmetric(const TransitionMatrix& m) {
    for (std::size_t x = 0; x < m.size(); ++x) {
        for (const auto& e : m.row(x)) {
            if (m.count(e.to, x) != e.count) {
                return {false, std::pair{x, e.to}};
            }
        }
    }
    return {};
}

bool rows_sum_to_one(const TransitionMatrix& m) {
    for (std::size_t x = 0; x < m.size(); ++x) {
        std::uint64_t sum = m.diagonal(x);
        for (const auto& e : m.row(x)) {
            sum += e.count;
        }
        if (sum != m.denominator()) {
            return false;
        }
    }
    return true;
}

bool columns_sum_to_one(const TransitionMatrix& m) {
    std::vector<std::uint64_t> sums(m.size(), 0);
    for (std::size_t x = 0; x < m.size(); ++x) {
        sums[x] += m.diagonal(x);
        for (const auto& e : m.row(x)) {
            sums[e.to] += e.count;
        }
    }
    return std::all_of(sums.begin(), sums.end(),
                       [&](std::uint64_t s) { return s == m.denominator(); });
}

std::uint32_t min_diagonal(const TransitionMatrix& m) {
    std::uint32_t lo = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t x = 0; x < m.size(); ++x) {
        lo = std::min(lo, m.diagonal(x));
    }
    return lo;
}

std::uint32_t max_off_diagonal(const TransitionMatrix& m) {
    std::uint32_t hi = 0;
    for (std::size_t x = 0; x < m.size(); ++x) {
        for (const auto& e : m.row(x)) {
            hi = std::max(hi, e.count);
        }
    }
    return hi;
}

std::vector<std::size_t> distances_from(const TransitionMatrix& m, std::size_t source) {
    constexpr auto unreached = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(m.size(), unreached);
    std::vector<std::size_t> frontier{source};
    dist.at(source) = 0;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
        const std::size_t x = frontier[head];
        for (const auto& e : m.row(x)) {
            if (dist[e.to] == unreached) {
                dist[e.to] = dist[x] + 1;
                frontier.push_back(e.to);
            }
        }
    }
    return dist;
}

bool check_irreducible(const TransitionMatrix& m) {
    if (m.size() == 0) {
        return false;
    }
    // Forward reachability from state 0 on the matrix and on its transpose.
    std::vector<std::vector<std::size_t>> reverse(m.size());
    for (std::size_t x = 0; x < m.size(); ++x) {
        for (const auto& e : m.row(x)) {
            reverse[e.to].push_back(x);
        }
    }
    const auto forward = distances_from(m, 0);
    if (std::any_of(forward.begin(), forward.end(),
                    [](std::size_t d) { return d == std::numeric_limits<std::size_t>::max(); })) {
        return false;
    }
    std::vector<char> seen(m.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        for (std::size_t y : reverse[x]) {
            if (!seen[y]) {
                seen[y] = 1;
                ++reached;
                stack.push_back(y);
            }
        }
    }
    return reached == m.size();
}

std::optional<std::size_t> diameter(const TransitionMatrix& m) {
    if (!check_irreducible(m)) {
        return std::nullopt;
    }
    std::vector<std::size_t> eccentricity(m.size(), 0);
    detail::parallel_for(m.size(), [&](std::size_t x) {
        const auto dist = distances_from(m, x);
        eccentricity[x] = *std::max_element(dist.begin(), dist.end());
    });
    return *std::max_element(eccentricity.begin(), eccentricity.end());
}

std::vector<double> point_mass(std::size_t size, std::size_t at) {
    std::vector<double> d(size, 0.0);
    d.at(at) = 1.0;
    return d;
}

std::vector<double> uniform_distribution(std::size_t size) {
    return std::vector<double>(size, 1.0 / static_cast<double>(size));
}

double total_variation_to_uniform(std::span<const double> d) {
    const double u = 1.0 / static_cast<double>(d.size());
    double sum = 0.0;
    for (double p : d) {
        sum += std::abs(p - u);
    }
    return 0.5 * sum;
}

double check_convergence(const TransitionMatrix& m, std::span<const double> d, std::uint64_t t) {
    if (d.size() != m.size()) {
        throw InputError("distribution has " + std::to_string(d.size()) + " entries, space has " +
                         std::to_string(m.size()));
    }
    const double total = std::accumulate(d.begin(), d.end(), 0.0);
    if (std::any_of(d.begin(), d.end(), [](double p) { return p < 0.0; }) ||
        std::abs(total - 1.0) > 1e-9) {
        throw InputError("initial vector is not a probability distribution");
    }
    const double scale = 1.0 / m.denominator();
    std::vector<double> cur(d.begin(), d.end());
    std::vector<double> next(m.size());
    for (std::uint64_t s = 0; s < t; ++s) {
        for (std::size_t x = 0; x < m.size(); ++x) {
            next[x] = cur[x] * m.diagonal(x) * scale;
        }
        for (std::size_t x = 0; x < m.size(); ++x) {
            const double mass = cur[x] * scale;
            for (const auto& e : m.row(x)) {
                next[e.to] += mass * e.count;
            }
        }
        cur.swap(next);
    }
    return total_variation_to_uniform(cur);
}

}  // namespace dagchain

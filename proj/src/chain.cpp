#include "dagchain/chain.hpp"

#include <string>

namespace dagchain {

std::string_view to_string(Variant v) noexcept {
    return v == Variant::connected ? "connected" : "unrestricted";
}

std::string_view to_string(Action a) noexcept {
    switch (a) {
        case Action::added: return "added";
        case Action::deleted: return "deleted";
        case Action::reversed: return "reversed";
        case Action::noop: return "noop";
    }
    return "noop";
}

void ChainConfig::validate() const {
    if (n < 2) {
        throw ConfigError("n must be at least 2");
    }
    if (max_out_degree && *max_out_degree < 0) {
        throw ConfigError("max_out_degree must be non-negative");
    }
    if (max_in_degree && *max_in_degree < 0) {
        throw ConfigError("max_in_degree must be non-negative");
    }
    if (variant == Variant::connected) {
        const std::size_t tree_arcs = static_cast<std::size_t>(n) - 1;
        if (max_arcs && *max_arcs < tree_arcs) {
            throw ConfigError("max_arcs must be at least n-1 = " + std::to_string(tree_arcs) +
                              " for connected graphs");
        }
        if (max_out_degree && *max_out_degree < 1) {
            throw ConfigError("max_out_degree must be at least 1 for connected graphs");
        }
        if (max_in_degree && *max_in_degree < 1) {
            throw ConfigError("max_in_degree must be at least 1 for connected graphs");
        }
    }
}

namespace {

bool addition_within_caps(const Dag& g, Arc a, const ChainConfig& c) {
    if (c.max_arcs && g.arc_count() + 1 > *c.max_arcs) {
        return false;
    }
    if (c.max_out_degree && g.out_degree(a.from) + 1 > *c.max_out_degree) {
        return false;
    }
    if (c.max_in_degree && g.in_degree(a.to) + 1 > *c.max_in_degree) {
        return false;
    }
    return true;
}

// Reversing (i,j) gives j one more out-arc and i one more in-arc.
bool reversal_within_caps(const Dag& g, Arc a, const ChainConfig& c) {
    if (c.max_out_degree && g.out_degree(a.to) + 1 > *c.max_out_degree) {
        return false;
    }
    if (c.max_in_degree && g.in_degree(a.from) + 1 > *c.max_in_degree) {
        return false;
    }
    return true;
}

TransitionOutcome try_add(Dag& state, Arc pair, const ChainConfig& config) {
    if (pair.from != pair.to && addition_within_caps(state, pair, config) &&
        !would_create_circuit(state, pair.from, pair.to)) {
        state.add_arc(pair.from, pair.to);
        return {Action::added, pair};
    }
    return {Action::noop, pair};
}

}  // namespace

TransitionOutcome step_unrestricted(Dag& state, Arc pair, const ChainConfig& config) {
    if (state.has_arc(pair.from, pair.to)) {
        state.remove_arc(pair.from, pair.to);
        return {Action::deleted, pair};
    }
    return try_add(state, pair, config);
}

TransitionOutcome step_connected(Dag& state, Arc pair, const ChainConfig& config) {
    if (state.has_arc(pair.from, pair.to)) {
        if (!is_disconnecting(state, pair.from, pair.to)) {
            state.remove_arc(pair.from, pair.to);
            return {Action::deleted, pair};
        }
        if (config.reversal_rule_enabled && reversal_within_caps(state, pair, config)) {
            state.reverse_arc(pair.from, pair.to);
            return {Action::reversed, pair};
        }
        return {Action::noop, pair};
    }
    return try_add(state, pair, config);
}

TransitionOutcome step(Dag& state, Arc pair, const ChainConfig& config) {
    return config.variant == Variant::connected ? step_connected(state, pair, config)
                                                : step_unrestricted(state, pair, config);
}

bool is_member(const Dag& g, const ChainConfig& config) {
    if (g.n() != config.n) {
        return false;
    }
    if (config.max_arcs && g.arc_count() > *config.max_arcs) {
        return false;
    }
    for (Vertex v = 1; v <= g.n(); ++v) {
        if (config.max_out_degree && g.out_degree(v) > *config.max_out_degree) {
            return false;
        }
        if (config.max_in_degree && g.in_degree(v) > *config.max_in_degree) {
            return false;
        }
    }
    if (config.variant == Variant::connected && !is_connected(g)) {
        return false;
    }
    return is_acyclic(g);
}

Dag default_start(const ChainConfig& config) {
    config.validate();
    Dag g(config.n);
    if (config.variant == Variant::connected) {
        for (Vertex i = 1; i < config.n; ++i) {
            g.add_arc(i, i + 1);
        }
    }
    return g;
}

namespace {

const ChainConfig& validated(const ChainConfig& c) {
    c.validate();
    return c;
}

}  // namespace

Chain::Chain(ChainConfig config, Dag start)
    : config_(validated(config)), state_(std::move(start)), sampler_(config.n, config.seed) {
    if (!is_member(state_, config_)) {
        throw InputError("start graph " + to_string(state_) + " is not in the " +
                         std::string(to_string(config_.variant)) + " state space");
    }
}

TransitionOutcome Chain::advance() {
    return step(state_, sampler_(), config_);
}

void Chain::advance(std::uint64_t steps) {
    for (std::uint64_t s = 0; s < steps; ++s) {
        step(state_, sampler_(), config_);
    }
}

std::size_t diameter_bound(int n) {
    // (n+7)(n-3/2) = (n+7)(2n-3)/2; the numerator is non-negative for n >= 2.
    return static_cast<std::size_t>((n + 7) * (2 * n - 3)) / 2;
}

Dag run_chain(const ChainConfig& config, Dag start) {
    Chain chain(config, std::move(start));
    chain.advance(config.steps);
    return chain.state();
}

}  // namespace dagchain

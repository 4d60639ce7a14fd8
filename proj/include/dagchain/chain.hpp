#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "dagchain/dag.hpp"
#include "dagchain/rng.hpp"

namespace dagchain {

enum class Variant { unrestricted, connected };

std::string_view to_string(Variant v) noexcept;

/// Selects the chain (all DAGs, or connected DAGs only) and its optional caps.
struct ChainConfig {
    int n = 2;
    Variant variant = Variant::unrestricted;
    /// Reversal of disconnecting arcs; only consulted for Variant::connected.
    bool reversal_rule_enabled = true;
    std::optional<std::size_t> max_arcs;
    std::optional<int> max_out_degree;
    std::optional<int> max_in_degree;
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;

    bool has_caps() const noexcept { return max_arcs || max_out_degree || max_in_degree; }

    /// Throws ConfigError when the configuration's state space is empty or
    /// the parameters are out of range.
    void validate() const;
};

enum class Action { added, deleted, reversed, noop };

std::string_view to_string(Action a) noexcept;

struct TransitionOutcome {
    Action tag = Action::noop;
    Arc pair;
};

/// One transition of the unrestricted chain: delete (i,j) if present,
/// otherwise add it when acyclic and within caps.
TransitionOutcome step_unrestricted(Dag& state, Arc pair, const ChainConfig& config);

/// One transition of the connected chain: a present arc is deleted unless it
/// is disconnecting, in which case it is reversed (or left alone when the
/// reversal rule is off or a degree cap forbids it). Absent arcs are added
/// as in step_unrestricted.
TransitionOutcome step_connected(Dag& state, Arc pair, const ChainConfig& config);

/// Dispatches on config.variant.
TransitionOutcome step(Dag& state, Arc pair, const ChainConfig& config);

/// Whether g belongs to the state space of config (acyclic, connected when
/// required, within all caps).
bool is_member(const Dag& g, const ChainConfig& config);

/// Empty graph for the unrestricted chain; the Hamiltonian dichain
/// {(i,i+1)} for the connected one.
Dag default_start(const ChainConfig& config);

/// Owns a state and a seeded pair sampler.
class Chain {
public:
    /// Throws InputError if start is not a member of config's state space.
    Chain(ChainConfig config, Dag start);

    TransitionOutcome advance();
    void advance(std::uint64_t steps);

    const Dag& state() const noexcept { return state_; }
    const ChainConfig& config() const noexcept { return config_; }

private:
    ChainConfig config_;
    Dag state_;
    PairSampler sampler_;
};

/// floor((n+7)(n-3/2)): any two connected DAGs on n vertices are joined by
/// a sequence of at most this many connected-chain transitions.
std::size_t diameter_bound(int n);

/// Applies config.steps transitions from start and returns the final state.
Dag run_chain(const ChainConfig& config, Dag start);

}  // namespace dagchain

#pragma once

// Constructive paths between connected DAGs in the connected chain.
//
// A path from G to H is built by reducing both graphs to a common dichain
// (a directed tree whose undirected shadow is a simple path):
//   1. delete non-tree arcs until a spanning tree remains;
//   2. remove leaves one at a time (add one arc, delete one arc) until the
//      tree is a dichain;
//   3. rearrange the dichain, vertex by vertex, into the target dichain and
//      reverse whatever arcs still point the wrong way.
// H's reduction is then run backwards, which is legal because every move of
// the connected chain is undone by a single move.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dagchain/dag.hpp"

namespace dagchain {

enum class MoveKind { add, remove, reverse };

/// One connected-chain transition, identified by the drawn pair. For
/// `reverse`, `arc` is the arc before reversal.
struct Move {
    MoveKind kind;
    Arc arc;

    friend bool operator==(const Move&, const Move&) = default;
};

/// The move that undoes m.
Move inverse(Move m) noexcept;
std::vector<Move> inverse(const std::vector<Move>& moves);

/// "ADD i j", "DEL i j" or "REV i j".
std::string to_string(const Move& m);
Move parse_move(std::string_view line);

/// Applies m through the connected chain's step rule. Throws InputError if
/// the chain would not perform exactly this move from g.
void apply(Dag& g, const Move& m);

struct Phase {
    Dag graph;
    std::vector<Move> moves;
};

bool is_directed_tree(const Dag& g);
bool is_dichain(const Dag& g);

/// Vertex sequence of a dichain's undirected path, starting at its smaller
/// endpoint. Throws InputError for non-dichains.
std::vector<Vertex> path_order(const Dag& c);

/// {(i,i+1) : 1 <= i < n}.
Dag hamiltonian_dichain(int n);

/// Deletes, in ascending arc order, every arc outside the BFS spanning tree
/// rooted at vertex 1. Requires a connected DAG.
Phase to_spanning_tree(const Dag& g);

/// Eliminates leaves of a directed tree until it is a dichain. Each round
/// joins the smallest leaf to a neighbour of the nearest branching vertex
/// and deletes that neighbour's arc to the branching vertex.
Phase tree_to_dichain(const Dag& t);

/// Rearranges dichain c into dichain target (same n).
Phase dichain_to_dichain(const Dag& c, const Dag& target);

/// Rearranges dichain c into the Hamiltonian dichain.
Phase dichain_to_hamiltonian(const Dag& c);

struct PhaseCounts {
    std::size_t spanning_tree = 0;
    std::size_t dichain = 0;
    std::size_t rearrangement = 0;
};

struct PathCertificate {
    Dag start;
    Dag end;
    std::vector<Move> moves;
    /// Moves contributed by each phase (both endpoints combined), before
    /// revisited states were cut out of the path.
    PhaseCounts phases;
};

/// Builds a certificate from g to h. Throws InputError unless both are
/// connected DAGs on the same vertex set.
PathCertificate build_path(const Dag& g, const Dag& h);

/// Path from h back to g.
PathCertificate reversed(const PathCertificate& c);

/// Removes every cycle of revisited states from a move sequence.
std::vector<Move> erase_loops(const Dag& start, const std::vector<Move>& moves);

struct ReplayResult {
    bool ok = true;
    /// Index of the offending move, or moves.size() for an end mismatch.
    std::size_t position = 0;
    std::string message;
};

/// Replays the moves from start through the connected chain, checking every
/// intermediate state and the final one.
ReplayResult replay(const PathCertificate& c);

/// Line format:
///   n <start-arcs> <end-arcs>
///   ADD i j | DEL i j | REV i j     (one per line)
/// Arc sets are comma-separated "i>j" tokens, "-" when empty.
void write_certificate(std::ostream& os, const PathCertificate& c);
PathCertificate read_certificate(std::istream& is);

}  // namespace dagchain

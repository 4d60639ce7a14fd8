#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dagchain/dag.hpp"

namespace dagchain {

/// edge-list: one "i j" line per arc in ascending order; graphs in a stream
///            are separated by a blank line.
/// dot:       "digraph G { ... }" listing every vertex id, then "i -> j;".
/// jsonl:     one {"n":N,"arcs":[[i,j],...]} object per line.
enum class OutputFormat { edge_list, dot, jsonl };

std::optional<OutputFormat> parse_format(std::string_view name);
std::string_view to_string(OutputFormat f) noexcept;

void write_graph(std::ostream& os, const Dag& g, OutputFormat f);

/// Reads every graph in the stream. Edge lists carry no vertex count, so
/// `n` must be supplied unless every vertex has an arc (e.g. connected
/// graphs), in which case the largest label is used. Throws InputError.
std::vector<Dag> read_graphs(std::istream& is, OutputFormat f, std::optional<int> n = {});

/// Single edge-list graph; blank lines and '#' comments are ignored.
Dag read_edge_list(std::istream& is, std::optional<int> n = {});

}  // namespace dagchain

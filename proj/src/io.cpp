#include "dagchain/io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>

#include <json.hpp>

namespace dagchain {

std::optional<OutputFormat> parse_format(std::string_view name) {
    if (name == "edge-list") return OutputFormat::edge_list;
    if (name == "dot") return OutputFormat::dot;
    if (name == "jsonl") return OutputFormat::jsonl;
    return std::nullopt;
}

std::string_view to_string(OutputFormat f) noexcept {
    switch (f) {
        case OutputFormat::edge_list: return "edge-list";
        case OutputFormat::dot: return "dot";
        case OutputFormat::jsonl: return "jsonl";
    }
    return "edge-list";
}

void write_graph(std::ostream& os, const Dag& g, OutputFormat f) {
    switch (f) {
        case OutputFormat::edge_list:
            for (const Arc& a : g.arcs()) {
                os << a.from << ' ' << a.to << '\n';
            }
            break;
        case OutputFormat::dot:
            os << "digraph G {\n";
            for (Vertex v = 1; v <= g.n(); ++v) {
                os << "  " << v << ";\n";
            }
            for (const Arc& a : g.arcs()) {
                os << "  " << a.from << " -> " << a.to << ";\n";
            }
            os << "}\n";
            break;
        case OutputFormat::jsonl: {
            nlohmann::ordered_json j;
            j["n"] = g.n();
            j["arcs"] = nlohmann::json::array();
            for (const Arc& a : g.arcs()) {
                j["arcs"].push_back({a.from, a.to});
            }
            os << j.dump() << '\n';
            break;
        }
    }
}

namespace {

Dag build(std::optional<int> n, const std::vector<Arc>& arcs) {
    int size = n.value_or(0);
    if (!n) {
        for (const Arc& a : arcs) {
            size = std::max({size, a.from, a.to});
        }
        if (size < 2) {
            throw InputError("cannot infer the vertex count of an empty edge list");
        }
    }
    return Dag::from_arcs(size, arcs);
}

Arc parse_pair(const std::string& line) {
    std::istringstream ls(line);
    Arc a;
    std::string extra;
    if (!(ls >> a.from >> a.to) || (ls >> extra)) {
        throw InputError("malformed edge-list line: '" + line + "'");
    }
    return a;
}

bool blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::vector<Dag> read_edge_lists(std::istream& is, std::optional<int> n) {
    std::vector<Dag> graphs;
    std::vector<Arc> arcs;
    bool open = false;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] == '#') {
            continue;
        }
        if (blank(line)) {
            if (open) {
                graphs.push_back(build(n, arcs));
                arcs.clear();
                open = false;
            }
            continue;
        }
        arcs.push_back(parse_pair(line));
        open = true;
    }
    if (open) {
        graphs.push_back(build(n, arcs));
    }
    return graphs;
}

std::vector<Dag> read_dot(std::istream& is) {
    static const std::regex node_re(R"(^\s*(\d+)\s*;\s*$)");
    static const std::regex arc_re(R"(^\s*(\d+)\s*->\s*(\d+)\s*;\s*$)");
    std::vector<Dag> graphs;
    std::vector<Arc> arcs;
    int n = 0;
    bool inside = false;
    std::string line;
    std::smatch m;
    while (std::getline(is, line)) {
        if (blank(line)) {
            continue;
        }
        if (!inside) {
            if (line.find("digraph") == std::string::npos || line.find('{') == std::string::npos) {
                throw InputError("expected 'digraph ... {', got '" + line + "'");
            }
            inside = true;
            arcs.clear();
            n = 0;
        } else if (line.find('}') != std::string::npos) {
            if (n < 2) {
                throw InputError("dot graph must declare at least two vertices");
            }
            graphs.push_back(Dag::from_arcs(n, arcs));
            inside = false;
        } else if (std::regex_match(line, m, arc_re)) {
            arcs.push_back({std::stoi(m[1]), std::stoi(m[2])});
        } else if (std::regex_match(line, m, node_re)) {
            n = std::max(n, std::stoi(m[1]));
        } else {
            throw InputError("unrecognised dot line: '" + line + "'");
        }
    }
    if (inside) {
        throw InputError("unterminated digraph block");
    }
    return graphs;
}

std::vector<Dag> read_jsonl(std::istream& is) {
    std::vector<Dag> graphs;
    std::string line;
    while (std::getline(is, line)) {
        if (blank(line)) {
            continue;
        }
        try {
            const auto j = nlohmann::json::parse(line);
            std::vector<Arc> arcs;
            for (const auto& pair : j.at("arcs")) {
                if (pair.size() != 2) {
                    throw InputError("arc entries must be [i, j] pairs");
                }
                arcs.push_back({pair.at(0).get<int>(), pair.at(1).get<int>()});
            }
            graphs.push_back(Dag::from_arcs(j.at("n").get<int>(), arcs));
        } catch (const nlohmann::json::exception& e) {
            throw InputError(std::string("malformed jsonl line: ") + e.what());
        }
    }
    return graphs;
}

}  // namespace

std::vector<Dag> read_graphs(std::istream& is, OutputFormat f, std::optional<int> n) {
    switch (f) {
        case OutputFormat::edge_list: return read_edge_lists(is, n);
        case OutputFormat::dot: return read_dot(is);
        case OutputFormat::jsonl: return read_jsonl(is);
    }
    return {};
}

Dag read_edge_list(std::istream& is, std::optional<int> n) {
    std::vector<Arc> arcs;
    std::string line;
    while (std::getline(is, line)) {
        if (blank(line) || line[0] == '#') {
            continue;
        }
        arcs.push_back(parse_pair(line));
    }
    return build(n, arcs);
}

}  // namespace dagchain

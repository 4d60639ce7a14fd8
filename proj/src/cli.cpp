#include "dagchain/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dagchain/chain.hpp"
#include "dagchain/io.hpp"
#include "dagchain/oracle.hpp"
#include "dagchain/proof_path.hpp"
#include "dagchain/report.hpp"
#include "dagchain/stats.hpp"
#include "parallel.hpp"

namespace dagchain::cli {

namespace {

struct ChainOptions {
    int n = 0;
    bool connected = false;
    bool no_reversal = false;
    std::optional<std::size_t> max_arcs;
    std::optional<int> max_out_degree;
    std::optional<int> max_in_degree;

    ChainConfig config() const {
        ChainConfig c;
        c.n = n;
        c.variant = connected ? Variant::connected : Variant::unrestricted;
        c.reversal_rule_enabled = !no_reversal;
        c.max_arcs = max_arcs;
        c.max_out_degree = max_out_degree;
        c.max_in_degree = max_in_degree;
        c.validate();
        return c;
    }
};

void add_chain_options(CLI::App* app, ChainOptions& o) {
    app->add_option("--n", o.n, "Number of vertices (>= 2)")->required()->check(CLI::Range(2, 1 << 20));
    app->add_flag("--connected", o.connected, "Restrict to connected DAGs");
    app->add_flag("--no-reversal", o.no_reversal, "Disable reversal of disconnecting arcs");
    app->add_option("--max-arcs", o.max_arcs, "Upper bound on the number of arcs");
    app->add_option("--max-out-degree", o.max_out_degree, "Upper bound on every out-degree");
    app->add_option("--max-in-degree", o.max_in_degree, "Upper bound on every in-degree");
}

// Splices key=value lines from a --config file into the argument list.
// Options already present on the command line win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    std::optional<std::string> path;
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--config") {
            if (k + 1 == args.size()) {
                throw InputError("--config needs a file name");
            }
            path = args[++k];
        } else if (args[k].rfind("--config=", 0) == 0) {
            path = args[k].substr(9);
        } else {
            out.push_back(args[k]);
        }
    }
    if (!path) {
        return out;
    }
    std::ifstream file(*path);
    if (!file) {
        throw InputError("cannot open config file '" + *path + "'");
    }
    auto given = [&](const std::string& flag) {
        return std::any_of(out.begin(), out.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    };
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::vector<std::string> extra;
    std::string line;
    while (std::getline(file, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InputError("config line is not key=value: '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string flag = "--" + key;
        if (given(flag)) {
            continue;
        }
        if (value == "true") {
            extra.push_back(flag);
        } else if (value != "false") {
            extra.push_back(flag);
            extra.push_back(value);
        }
    }
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

int emit(const Report& r, bool json, std::ostream& out) {
    if (json) {
        out << r.to_json() << '\n';
    } else {
        r.write_text(out);
    }
    return r.passed ? kPass : kFail;
}

std::string fraction(std::uint64_t num, std::uint32_t den) {
    return std::to_string(num) + "/" + std::to_string(den);
}

void describe_space(Report& r, const ChainConfig& c, std::size_t states) {
    r.add("n", static_cast<std::int64_t>(c.n));
    r.add("variant", std::string(to_string(c.variant)));
    if (c.variant == Variant::connected) {
        r.add("reversal_rule", c.reversal_rule_enabled);
    }
    if (c.max_arcs) r.add("max_arcs", static_cast<std::int64_t>(*c.max_arcs));
    if (c.max_out_degree) r.add("max_out_degree", static_cast<std::int64_t>(*c.max_out_degree));
    if (c.max_in_degree) r.add("max_in_degree", static_cast<std::int64_t>(*c.max_in_degree));
    r.add("states", static_cast<std::int64_t>(states));
}

Report verify_symmetry(const ChainConfig& c) {
    const StateSpace space = enumerate(c);
    const TransitionMatrix m = build_matrix(space);
    const SymmetryResult sym = check_symmetric(m);
    const bool rows = rows_sum_to_one(m);
    const bool cols = columns_sum_to_one(m);
    Report r;
    r.check = "symmetry";
    describe_space(r, c, space.size());
    r.add("symmetric", sym.symmetric);
    if (sym.counterexample) {
        const auto [x, y] = *sym.counterexample;
        r.add("counterexample", to_string(space.state(x)) + " / " + to_string(space.state(y)));
    }
    r.add("rows_sum_to_one", rows);
    r.add("columns_sum_to_one", cols);
    r.add("max_off_diagonal", fraction(max_off_diagonal(m), m.denominator()));
    r.add("min_self_loop", fraction(min_diagonal(m), m.denominator()));
    r.passed = sym.symmetric && rows && cols;
    return r;
}

Report verify_irreducibility(const ChainConfig& c) {
    const StateSpace space = enumerate(c);
    const TransitionMatrix m = build_matrix(space);
    Report r;
    r.check = "irreducibility";
    describe_space(r, c, space.size());
    r.passed = check_irreducible(m);
    r.add("irreducible", r.passed);
    r.add("min_self_loop", fraction(min_diagonal(m), m.denominator()));
    return r;
}

std::size_t bound_for(const ChainConfig& c) {
    // Unrestricted: delete every arc of one graph, then add every arc of the other.
    return c.variant == Variant::connected ? diameter_bound(c.n)
                                           : static_cast<std::size_t>(c.n) * (c.n - 1);
}

Report verify_diameter(const ChainConfig& c) {
    const StateSpace space = enumerate(c);
    const TransitionMatrix m = build_matrix(space);
    const auto d = diameter(m);
    Report r;
    r.check = "diameter";
    describe_space(r, c, space.size());
    r.add("irreducible", d.has_value());
    if (d) {
        r.add("diameter", static_cast<std::int64_t>(*d));
    }
    r.add("bound", static_cast<std::int64_t>(bound_for(c)));
    r.passed = d && *d <= bound_for(c);
    return r;
}

std::size_t start_ordinal(const StateSpace& space) {
    const auto at = space.find(default_start(space.config()));
    if (!at) {
        throw ConfigError("default start graph is outside the state space");
    }
    return *at;
}

Report verify_convergence(const ChainConfig& c, std::uint64_t t, double tol) {
    const StateSpace space = enumerate(c);
    const TransitionMatrix m = build_matrix(space);
    const double tv = check_convergence(m, point_mass(space.size(), start_ordinal(space)), t);
    Report r;
    r.check = "convergence";
    describe_space(r, c, space.size());
    r.add("start", to_string(default_start(c)));
    r.add("t", static_cast<std::int64_t>(t));
    r.add("tv_distance", tv);
    r.add("tolerance", tol);
    r.passed = tv < tol;
    return r;
}

struct UniformityOptions {
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> burn_in;
    std::optional<std::uint64_t> gap;
    std::uint64_t samples = 100000;
    std::uint64_t chains = 1;
    double tv_threshold = 0.01;
    double lower_quantile = 0.001;
    double upper_quantile = 0.999;
};

Report verify_uniformity(ChainConfig c, const UniformityOptions& o) {
    const StateSpace space = enumerate(c);
    const TransitionMatrix m = build_matrix(space);
    Report r;
    r.check = "uniformity";
    describe_space(r, c, space.size());
    const bool symmetric = check_symmetric(m).symmetric;
    const bool irreducible = check_irreducible(m);
    r.add("symmetric", symmetric);
    r.add("irreducible", irreducible);
    if (!symmetric || !irreducible) {
        r.note("uniform limit not guaranteed for this configuration; sampling skipped");
        r.passed = false;
        return r;
    }
    c.seed = o.seed;
    const SamplingPlan plan{o.burn_in.value_or(default_burn_in(c.n)), o.gap.value_or(default_gap(c.n)),
                            o.samples, o.chains};
    const SampleSummary s = sample_chain(c, plan, TallyMode::per_state);
    r.add("burn_in", static_cast<std::int64_t>(plan.burn_in));
    r.add("gap", static_cast<std::int64_t>(plan.gap));
    r.add("samples", static_cast<std::int64_t>(s.samples));
    r.add("chains", static_cast<std::int64_t>(plan.chains));
    r.add("tv_distance", *s.tv_distance);
    r.add("tv_threshold", o.tv_threshold);
    bool ok = *s.tv_distance < o.tv_threshold;
    if (s.chi_square) {
        const double lo = chi_square_quantile(o.lower_quantile, s.chi_square->dof);
        const double hi = chi_square_quantile(o.upper_quantile, s.chi_square->dof);
        r.add("chi_square", s.chi_square->statistic);
        r.add("dof", static_cast<std::int64_t>(s.chi_square->dof));
        r.add("chi_square_low", lo);
        r.add("chi_square_high", hi);
        ok = ok && s.chi_square->statistic >= lo && s.chi_square->statistic <= hi;
    } else {
        r.note("fewer than 5 expected samples per state; chi-square skipped");
        ok = false;
    }
    r.add("mean_arcs", s.mean_arcs);
    r.passed = ok;
    return r;
}

Report verify_remark(ChainConfig c, std::uint64_t t) {
    c.variant = Variant::connected;
    Report r;
    r.check = "remark";
    bool irreducible[2] = {false, false};
    for (bool reversal : {true, false}) {
        c.reversal_rule_enabled = reversal;
        const StateSpace space = enumerate(c);
        const TransitionMatrix m = build_matrix(space);
        const std::string tag = reversal ? "with_reversal" : "without_reversal";
        const auto d = diameter(m);
        irreducible[reversal] = d.has_value();
        if (reversal) {
            describe_space(r, c, space.size());
        }
        r.add(tag + ".irreducible", d.has_value());
        if (d) {
            r.add(tag + ".diameter", static_cast<std::int64_t>(*d));
        }
        r.add(tag + ".tv_after_t",
              check_convergence(m, point_mass(space.size(), start_ordinal(space)), t));
    }
    r.add("t", static_cast<std::int64_t>(t));
    r.add("bound", static_cast<std::int64_t>(diameter_bound(c.n)));
    // Reversal is needed for irreducibility only when n = 2.
    r.passed = irreducible[true] && (c.n >= 3 ? irreducible[false] : !irreducible[false]);
    return r;
}

Dag read_graph_file(const std::string& path, std::optional<int> n) {
    std::ifstream file(path);
    if (!file) {
        throw InputError("cannot open '" + path + "'");
    }
    return read_edge_list(file, n);
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Uniform random acyclic digraphs by Markov chain, with exhaustive checks"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate random DAGs");
    ChainOptions gen_chain;
    add_chain_options(gen, gen_chain);
    std::optional<std::uint64_t> gen_steps;
    std::uint64_t gen_seed = 0;
    std::uint64_t gen_count = 1;
    std::string gen_format = "edge-list";
    std::optional<std::uint64_t> gen_burn_in;
    std::optional<std::uint64_t> gen_gap;
    gen->add_option("--steps", gen_steps, "Transitions per graph (default 20 n^2)");
    gen->add_option("--seed", gen_seed, "Master RNG seed");
    gen->add_option("--count", gen_count, "Number of graphs")->check(CLI::PositiveNumber);
    gen->add_option("--format", gen_format, "edge-list | dot | jsonl")
        ->check(CLI::IsMember({"edge-list", "dot", "jsonl"}));
    gen->add_option("--burn-in", gen_burn_in, "Single-chain mode: steps before the first graph");
    gen->add_option("--gap", gen_gap, "Single-chain mode: steps between graphs")
        ->check(CLI::PositiveNumber);

    // verify
    auto* verify = app.add_subcommand("verify", "Machine-check chain properties");
    verify->require_subcommand(1);
    bool json = false;
    ChainOptions vchain;
    auto add_verify = [&](const char* name, const char* help) {
        auto* sub = verify->add_subcommand(name, help);
        add_chain_options(sub, vchain);
        sub->add_flag("--json", json, "Emit a one-line JSON summary");
        return sub;
    };
    auto* v_sym = add_verify("symmetry", "Exact symmetry of the transition matrix");
    auto* v_irr = add_verify("irreducibility", "Strong connectivity of the transition graph");
    auto* v_diam = add_verify("diameter", "Transition-graph diameter against its bound");
    auto* v_conv = add_verify("convergence", "Distance to uniform after t matrix steps");
    auto* v_unif = add_verify("uniformity", "Chi-square and TV test of sampled states");
    auto* v_rem = add_verify("remark", "Connected chain with and without arc reversal");
    std::uint64_t conv_t = 10000;
    double conv_tol = 1e-6;
    v_conv->add_option("--t", conv_t, "Matrix-power steps");
    v_conv->add_option("--tol", conv_tol, "Pass threshold on TV distance");
    UniformityOptions uo;
    v_unif->add_option("--seed", uo.seed, "Master RNG seed");
    v_unif->add_option("--burn-in", uo.burn_in, "Discarded steps (default 10 n^2 ln 3^(n(n-1)/2))");
    v_unif->add_option("--gap", uo.gap, "Steps between samples (default n^2)")->check(CLI::PositiveNumber);
    v_unif->add_option("--samples", uo.samples, "Number of samples");
    v_unif->add_option("--chains", uo.chains, "Independent chains sharing the sample count")
        ->check(CLI::PositiveNumber);
    v_unif->add_option("--tv-threshold", uo.tv_threshold, "Pass threshold on TV distance");
    v_unif->add_option("--lower-quantile", uo.lower_quantile, "Lower chi-square quantile");
    v_unif->add_option("--upper-quantile", uo.upper_quantile, "Upper chi-square quantile");
    std::uint64_t remark_t = 100;
    v_rem->add_option("--t", remark_t, "Matrix-power steps for the TV comparison");

    // path
    auto* path = app.add_subcommand("path", "Build or replay a transition certificate");
    std::string from_file;
    std::string to_file;
    std::string replay_file;
    std::optional<int> path_n;
    bool verbose = false;
    auto* from_opt = path->add_option("--from", from_file, "Start graph (edge list)");
    auto* to_opt = path->add_option("--to", to_file, "End graph (edge list)");
    auto* replay_opt = path->add_option("--replay", replay_file, "Certificate to check ('-' = stdin)");
    path->add_option("--n", path_n, "Vertex count (default: largest label)");
    path->add_flag("--verbose", verbose, "Report per-phase move counts on stderr");
    from_opt->needs(to_opt);
    to_opt->needs(from_opt);
    replay_opt->excludes(from_opt)->excludes(to_opt);

    try {
        const std::vector<std::string> args = expand_config(raw_args);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (gen->parsed()) {
            ChainConfig c = gen_chain.config();
            c.steps = gen_steps.value_or(20ull * c.n * c.n);
            const OutputFormat format = *parse_format(gen_format);
            std::vector<Dag> graphs;
            if (gen_gap) {
                ChainConfig single = c;
                single.seed = derive_seed(gen_seed, 0);
                Chain chain(single, default_start(single));
                chain.advance(gen_burn_in.value_or(c.steps));
                for (std::uint64_t k = 0; k < gen_count; ++k) {
                    if (k > 0) {
                        chain.advance(*gen_gap);
                    }
                    graphs.push_back(chain.state());
                }
            } else {
                if (gen_burn_in) {
                    throw InputError("--burn-in requires --gap (single-chain mode)");
                }
                std::vector<std::optional<Dag>> slots(gen_count);
                detail::parallel_for(gen_count, [&](std::size_t k) {
                    ChainConfig ck = c;
                    ck.seed = derive_seed(gen_seed, k);
                    slots[k] = run_chain(ck, default_start(ck));
                });
                for (auto& g : slots) {
                    graphs.push_back(std::move(*g));
                }
            }
            for (std::size_t k = 0; k < graphs.size(); ++k) {
                if (k > 0 && format == OutputFormat::edge_list) {
                    out << '\n';
                }
                write_graph(out, graphs[k], format);
            }
            return kPass;
        }

        if (verify->parsed()) {
            const ChainConfig c = vchain.config();
            if (v_sym->parsed()) return emit(verify_symmetry(c), json, out);
            if (v_irr->parsed()) return emit(verify_irreducibility(c), json, out);
            if (v_diam->parsed()) return emit(verify_diameter(c), json, out);
            if (v_conv->parsed()) return emit(verify_convergence(c, conv_t, conv_tol), json, out);
            if (v_unif->parsed()) return emit(verify_uniformity(c, uo), json, out);
            if (v_rem->parsed()) return emit(verify_remark(c, remark_t), json, out);
        }

        if (path->parsed()) {
            if (!replay_file.empty()) {
                PathCertificate cert = [&] {
                    if (replay_file == "-") {
                        return read_certificate(in);
                    }
                    std::ifstream file(replay_file);
                    if (!file) {
                        throw InputError("cannot open '" + replay_file + "'");
                    }
                    return read_certificate(file);
                }();
                const ReplayResult result = replay(cert);
                if (!result.ok) {
                    err << "certificate rejected at move " << result.position << ": "
                        << result.message << '\n';
                    return kFail;
                }
                out << "certificate OK: " << cert.moves.size() << " moves, bound "
                    << diameter_bound(cert.start.n()) << '\n';
                return cert.moves.size() <= diameter_bound(cert.start.n()) ? kPass : kFail;
            }
            if (from_file.empty()) {
                throw InputError("path needs --from/--to or --replay");
            }
            const Dag g = read_graph_file(from_file, path_n);
            const Dag h = read_graph_file(to_file, path_n);
            const PathCertificate cert = build_path(g, h);
            write_certificate(out, cert);
            if (verbose) {
                err << "moves " << cert.moves.size() << " (bound " << diameter_bound(g.n())
                    << "); spanning_tree " << cert.phases.spanning_tree << ", dichain "
                    << cert.phases.dichain << ", rearrangement " << cert.phases.rearrangement
                    << '\n';
            }
            return kPass;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace dagchain::cli

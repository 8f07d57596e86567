#pragma once

#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "joinwidth/bench.hpp"
#include "joinwidth/classes.hpp"
#include "joinwidth/engines.hpp"
#include "joinwidth/generators.hpp"
#include "joinwidth/io.hpp"
#include "joinwidth/oracle.hpp"

namespace jw {

namespace exit_code {
constexpr int sat = 0;
constexpr int unsat = 1;
constexpr int width_exceeded = 2;
constexpr int limit = 3;
constexpr int usage = 64;
}  // namespace exit_code

/// Default budgets, overridable through the environment.
struct Budgets {
    std::size_t assignments = 10'000'000;
    std::size_t constraint_subsets = 20;
    std::size_t variable_subsets = 16;

    static Budgets from_env() {
        Budgets b;
        auto read = [](const char* name, std::size_t& slot) {
            if (const char* v = std::getenv(name)) {
                char* end = nullptr;
                unsigned long long x = std::strtoull(v, &end, 10);
                if (end && *end == '\0' && end != v) slot = static_cast<std::size_t>(x);
            }
        };
        read("JW_ASSIGNMENT_BUDGET", b.assignments);
        read("JW_CONSTRAINT_LIMIT", b.constraint_subsets);
        read("JW_VARIABLE_LIMIT", b.variable_subsets);
        return b;
    }
};

namespace detail {

struct Usage : Error {
    using Error::Error;
};

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty())
        out << text;
    else
        write_file(path, text);
}

inline std::string names_of(const Instance& inst, const VarSet& vs) {
    std::string s = "{";
    bool first = true;
    for (auto v : vs) {
        s += (first ? "" : ",") + inst.variable_names[v];
        first = false;
    }
    return s + "}";
}

inline Json witness_json(const Instance& inst, const RootSetWitness& w) {
    Json j;
    Json roots = Json::array(), order = Json::array(), cert = Json::object();
    for (auto v : w.roots) roots.push_back(inst.variable_names[v]);
    for (auto v : w.order) order.push_back(inst.variable_names[v]);
    for (auto [v, c] : w.certifier) cert[inst.variable_names[v]] = c;
    j["roots"] = std::move(roots);
    j["order"] = std::move(order);
    j["certifiers"] = std::move(cert);
    return j;
}

}  // namespace detail

/// Command-line entry point. Returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    const Budgets budgets = Budgets::from_env();
    CLI::App app{"Join decompositions and joinwidth for constraint satisfaction"};
    app.name("jwtool");
    app.require_subcommand(1);

    std::string instance_path, decomposition_path, out_path, width_text, mode = "pruned", cap_text, klass,
        k_text, suite;
    bool dp_vars = false, dp_cons = false, linear = false;

    auto* solve = app.add_subcommand("solve", "Decide satisfiability");
    solve->add_option("--instance", instance_path)->required();
    auto* solve_dec = solve->add_option("--decomposition", decomposition_path);
    auto* solve_vars = solve->add_flag("--dp-vars", dp_vars, "variable-subset dynamic programming");
    auto* solve_cons = solve->add_flag("--dp-cons", dp_cons, "constraint-subset dynamic programming");
    solve->add_option("--width", width_text);
    solve_dec->excludes(solve_vars)->excludes(solve_cons);
    solve_vars->excludes(solve_cons);

    auto* width = app.add_subcommand("width", "Evaluate a decomposition");
    width->add_option("--instance", instance_path)->required();
    width->add_option("--decomposition", decomposition_path)->required();
    width->add_option("--mode", mode)->check(CLI::IsMember({"naive", "proj", "pruned"}));
    width->add_option("--cap", cap_text);

    auto* search = app.add_subcommand("search", "Find a decomposition of bounded width");
    search->add_option("--instance", instance_path)->required();
    search->add_option("--max-width", width_text)->required();
    search->add_option("--out", out_path);

    auto* exact = app.add_subcommand("exact", "Compute the exact joinwidth");
    exact->add_option("--instance", instance_path)->required();
    exact->add_option("--out", out_path);

    auto* detect = app.add_subcommand("detect", "Tractable-class detectors");
    detect->add_option("--instance", instance_path)->required();
    detect->add_option("--class", klass)
        ->required()
        ->check(CLI::IsMember({"functional", "root-set", "constraint-root", "hereditary", "fixing"}));
    detect->add_option("--k", k_text);
    detect->add_option("--out", out_path);

    auto* gen = app.add_subcommand("gen", "Generate an instance family");
    gen->require_subcommand(1);
    std::size_t n_param = 0, omega = 1, d = 2;
    std::string graph_path;
    bool allow_large = false, no_complete = false;
    GeneratorSpec rspec;
    auto* g_tri = gen->add_subcommand("triangle");
    g_tri->add_option("--n", n_param)->required();
    auto* g_star = gen->add_subcommand("star");
    g_star->add_option("--omega", omega)->required();
    auto* g_tree = gen->add_subcommand("tree-complete");
    g_tree->add_option("--graph", graph_path)->required();
    g_tree->add_option("--d", d);
    auto* g_complete = gen->add_subcommand("complete");
    g_complete->add_option("--graph", graph_path)->required();
    g_complete->add_option("--d", d);
    auto* g_bw = gen->add_subcommand("bw-reduction");
    g_bw->add_option("--graph", graph_path)->required();
    g_bw->add_option("--omega", omega)->required();
    auto* g_agm = gen->add_subcommand("agm");
    g_agm->add_option("--omega", omega)->required();
    g_agm->add_flag("--allow-large", allow_large);
    auto* g_chain = gen->add_subcommand("chain");
    g_chain->add_option("--omega", omega);
    g_chain->add_option("--n", n_param);
    g_chain->add_flag("--allow-large", allow_large);
    g_chain->add_flag("--no-complete", no_complete);
    auto* g_rand = gen->add_subcommand("random");
    g_rand->add_option("--seed", rspec.seed)->required();
    g_rand->add_option("--vars", rspec.num_vars);
    g_rand->add_option("--domain", rspec.domain_size);
    g_rand->add_option("--constraints", rspec.num_constraints);
    g_rand->add_option("--min-arity", rspec.min_arity);
    g_rand->add_option("--max-arity", rspec.max_arity);
    g_rand->add_option("--density", rspec.density);
    auto* g_ident = gen->add_subcommand("identity");
    g_ident->add_option("--n", n_param)->required();
    for (auto* g : {g_tri, g_star, g_tree, g_complete, g_bw, g_agm, g_chain, g_rand, g_ident}) g->add_option("--out", out_path);

    auto* oracle = app.add_subcommand("oracle", "Brute-force reference answers");
    oracle->require_subcommand(1);
    auto* o_solve = oracle->add_subcommand("solve");
    auto* o_jw = oracle->add_subcommand("joinwidth");
    auto* o_bw = oracle->add_subcommand("branchwidth");
    o_bw->add_flag("--linear", linear);
    for (auto* o : {o_solve, o_jw, o_bw}) o->add_option("--instance", instance_path)->required();

    auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
    bench->add_option("--suite", suite)->required()->check(CLI::IsMember(bench_suites()));
    bench->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : exit_code::usage;
    }

    auto need_width = [&](const std::string& text, const char* flag) {
        if (text.empty()) throw detail::Usage(std::string(flag) + " is required");
        try {
            return Width::parse(text);
        } catch (const std::invalid_argument& e) {
            throw detail::Usage(e.what());
        }
    };
    auto need_k = [&]() -> std::size_t {
        if (k_text.empty()) throw detail::Usage("--k is required");
        try {
            std::size_t pos = 0;
            unsigned long long k = std::stoull(k_text, &pos);
            if (pos != k_text.size()) throw std::invalid_argument("");
            return static_cast<std::size_t>(k);
        } catch (const std::exception&) {
            throw detail::Usage("--k expects a non-negative integer");
        }
    };

    try {
        if (*solve) {
            Instance inst = parse_instance(instance_path);
            if (!decomposition_path.empty()) {
                auto res = solve_with_decomposition(inst, parse_decomposition(decomposition_path));
                out << to_string(res.verdict) << " width=" << format_width(res.report.width) << "\n";
                return res.verdict == Verdict::sat ? exit_code::sat : exit_code::unsat;
            }
            if (dp_vars) {
                auto res = solve_variable_dp(inst, need_width(width_text, "--width"), budgets.variable_subsets);
                out << to_string(res.verdict) << "\n";
                return res.verdict == Verdict::sat     ? exit_code::sat
                       : res.verdict == Verdict::unsat ? exit_code::unsat
                                                       : exit_code::width_exceeded;
            }
            if (dp_cons) {
                auto res = find_decomposition_dp(inst, need_width(width_text, "--width"), budgets.constraint_subsets);
                if (!res.found) {
                    out << "WIDTH-EXCEEDED\n";
                    return exit_code::width_exceeded;
                }
                auto sol = solve_with_decomposition(inst, *res.decomposition);
                out << to_string(sol.verdict) << " width=" << format_width(sol.report.width) << "\n";
                return sol.verdict == Verdict::sat ? exit_code::sat : exit_code::unsat;
            }
            throw detail::Usage("solve needs --decomposition, --dp-vars or --dp-cons");
        }

        if (*width) {
            Instance inst = parse_instance(instance_path);
            auto dec = parse_decomposition(decomposition_path);
            Semantics sem = mode == "naive" ? Semantics::naive : mode == "proj" ? Semantics::proj : Semantics::pruned;
            std::optional<Width> cap;
            if (!cap_text.empty()) cap = need_width(cap_text, "--cap");
            out << "node\tkind\tcovered\ttuples\twidth\n";
            auto sets = node_sets(dec, inst);
            auto print = [&](const NodeEvaluation& e) {
                std::string cov;
                for (auto c : sets[e.node].covered) cov += (cov.empty() ? "" : ",") + std::to_string(c);
                out << e.node << "\t" << (dec.is_leaf(e.node) ? "leaf" : "join") << "\t" << cov << "\t" << e.count()
                    << "\t" << format_width(e.width) << "\n";
            };
            try {
                auto rep = evaluate(dec, inst, sem, cap, print);
                out << "width=" << format_width(rep.width) << "\n";
                if (rep.satisfiable) out << (*rep.satisfiable ? "SAT" : "UNSAT") << "\n";
            } catch (const WidthExceeded& e) {
                out << "WIDTH-EXCEEDED " << e.what() << "\n";
                return exit_code::width_exceeded;
            }
            return 0;
        }

        if (*search) {
            Instance inst = parse_instance(instance_path);
            auto res = find_decomposition_dp(inst, need_width(width_text, "--max-width"), budgets.constraint_subsets);
            err << "subsets_expanded=" << res.stats.subsets_expanded
                << " relations_materialized=" << res.stats.relations_materialized
                << " peak_relation_size=" << res.stats.peak_relation_size << "\n";
            if (!res.found) {
                out << "NOT-FOUND\n";
                return 1;
            }
            out << "FOUND width=" << format_width(res.width) << "\n";
            detail::emit(serialize_decomposition(*res.decomposition), out_path, out);
            return 0;
        }

        if (*exact) {
            Instance inst = parse_instance(instance_path);
            auto res = exact_joinwidth(inst, budgets.constraint_subsets);
            out << "width=" << format_width(res.width) << " tuples=" << res.count << "\n";
            detail::emit(serialize_decomposition(res.decomposition), out_path, out);
            return 0;
        }

        if (*detect) {
            Instance inst = parse_instance(instance_path);
            if (klass == "functional") {
                auto w = find_root_set_witness(inst, {});
                if (!w) {
                    out << "NOT-FUNCTIONAL\n";
                    return 1;
                }
                out << "FUNCTIONAL\n";
                detail::emit(detail::witness_json(inst, *w).dump() + "\n", out_path, out);
                return 0;
            }
            if (klass == "root-set") {
                std::size_t k = need_k();
                const auto& ids = inst.variables.ids();
                for (std::size_t size = 0; size <= std::min(k, ids.size()); ++size) {
                    std::optional<RootSetWitness> found;
                    jw::detail::for_each_subset(ids.size(), size, [&](const std::vector<std::size_t>& pick) {
                        std::vector<VarId> q;
                        for (auto i : pick) q.push_back(ids[i]);
                        found = find_root_set_witness(inst, VarSet::of(q));
                        return found.has_value();
                    });
                    if (found) {
                        out << "ROOT-SET " << detail::names_of(inst, found->roots) << "\n";
                        detail::emit(detail::witness_json(inst, *found).dump() + "\n", out_path, out);
                        return 0;
                    }
                }
                out << "NONE\n";
                return 1;
            }
            if (klass == "constraint-root") {
                auto res = find_constraint_root_set(inst, need_k());
                if (!res) {
                    out << "NONE\n";
                    return 1;
                }
                std::string roots;
                for (auto c : res->roots) roots += (roots.empty() ? "" : ",") + std::to_string(c);
                auto rep = evaluate(res->decomposition, inst, Semantics::pruned);
                out << "CONSTRAINT-ROOT-SET [" << roots << "] width=" << format_width(rep.width) << "\n";
                detail::emit(serialize_decomposition(res->decomposition), out_path, out);
                return 0;
            }
            if (klass == "hereditary") {
                bool ok = is_hereditarily_k_bounded(inst, need_width(k_text, "--k"), budgets.variable_subsets);
                out << (ok ? "BOUNDED" : "NOT-BOUNDED") << "\n";
                return ok ? 0 : 1;
            }
            auto fix = find_fixing_sets(inst, need_k());
            if (!fix) {
                out << "NONE\n";
                return 1;
            }
            auto dec = decomposition_from_fixing_sets(inst, *fix);
            auto rep = evaluate(dec, inst, Semantics::pruned);
            out << "FIXING width=" << format_width(rep.width) << "\n";
            detail::emit(serialize_decomposition(dec), out_path, out);
            return 0;
        }

        if (*gen) {
            std::optional<Instance> inst;
            if (*g_tri) inst = gen_triangle(n_param);
            if (*g_star) inst = gen_star(omega);
            if (*g_tree) inst = gen_tree_complete(parse_graph(graph_path), d);
            if (*g_complete) inst = gen_complete_hypergraph(parse_graph(graph_path).as_hypergraph(), d);
            if (*g_bw) inst = gen_bw_reduction(parse_graph(graph_path), omega);
            if (*g_agm) inst = gen_agm(omega, allow_large);
            if (*g_chain) {
                ChainOptions opt;
                opt.omega = omega;
                if (n_param) opt.n = n_param;
                opt.include_complete = !no_complete;
                opt.allow_large = allow_large;
                inst = gen_chain(opt);
            }
            if (*g_rand) inst = gen_random(rspec);
            if (*g_ident) inst = gen_identity(n_param);
            detail::emit(serialize_instance(*inst), out_path, out);
            return 0;
        }

        if (*oracle) {
            Instance inst = parse_instance(instance_path);
            if (*o_solve) {
                auto sol = enumerate_solutions(inst, budgets.assignments);
                out << (sol.empty() ? "UNSAT" : "SAT") << " solutions=" << sol.size() << "\n";
                return sol.empty() ? exit_code::unsat : exit_code::sat;
            }
            if (*o_jw) {
                auto res = brute_force_joinwidth(inst);
                out << "width=" << format_width(res.width) << " tuples=" << res.count << "\n";
                out << serialize_decomposition(res.decomposition);
                return 0;
            }
            out << (linear ? "lbw=" : "bw=") << brute_force_branchwidth(hypergraph(inst), linear) << "\n";
            return 0;
        }

        if (*bench) {
            auto rows = run_bench(suite);
            detail::emit(bench_csv(rows), out_path, out);
            return 0;
        }
    } catch (const LimitExceeded& e) {
        err << "limit exceeded (" << e.limit() << "): " << e.what() << "\n";
        return exit_code::limit;
    } catch (const detail::Usage& e) {
        err << "usage: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    }
    return exit_code::usage;
}

}  // namespace jw

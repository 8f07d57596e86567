#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "joinwidth/engines.hpp"
#include "joinwidth/generators.hpp"
#include "joinwidth/io.hpp"

namespace jw {

struct BenchCase {
    std::string id;
    std::string family;
    Instance instance;
};

inline std::vector<std::string> bench_suites() { return {"smoke", "envelope", "chain"}; }

inline std::vector<BenchCase> bench_suite(const std::string& name) {
    std::vector<BenchCase> out;
    if (name == "smoke") {
        out.push_back({"triangle-3", "triangle", gen_triangle(3)});
        out.push_back({"star-3", "star", gen_star(3)});
        out.push_back({"path-3", "tree-complete", gen_tree_complete(Graph{4, {{0, 1}, {1, 2}, {2, 3}}}, 2)});
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            GeneratorSpec s{seed, 6, 2, 5, 2, 3, 0.5};
            out.push_back({"random-" + std::to_string(seed), "random", gen_random(s)});
        }
    } else if (name == "envelope") {
        GeneratorSpec s{11, 10, 2, 12, 2, 3, 0.5};
        out.push_back({"random-c12-v10-d2", "random", gen_random(s)});
    } else if (name == "chain") {
        out.push_back({"chain-16", "chain", gen_chain({})});
    } else {
        throw std::invalid_argument("unknown bench suite '" + name + "'");
    }
    return out;
}

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// Runs every engine that applies to each case, sequentially, and returns
/// one row per (case, engine) in suite order.
inline std::vector<BenchRow> run_bench(const std::string& suite, const std::function<void(const BenchRow&)>& on_row = {}) {
    std::vector<BenchRow> rows;
    auto emit = [&](BenchRow r) {
        if (on_row) on_row(r);
        rows.push_back(std::move(r));
    };
    for (const auto& bc : bench_suite(suite)) {
        const Instance& inst = bc.instance;
        if (bc.family == "chain") {
            auto t0 = std::chrono::steady_clock::now();
            auto sol = solve_chain_by_propagation(inst);
            emit({bc.id, bc.family, "propagation", sol.satisfiable ? "SAT" : "UNSAT", std::nullopt,
                  detail::seconds_since(t0), 0});
            continue;
        }
        {
            auto t0 = std::chrono::steady_clock::now();
            auto res = find_decomposition_dp(inst, Width(1));
            BenchRow r{bc.id, bc.family, "dp-cons@1", res.found ? "FOUND" : "NOT-FOUND", std::nullopt,
                       detail::seconds_since(t0), res.stats.peak_relation_size};
            if (res.found) r.width = res.width;
            emit(std::move(r));
        }
        if (inst.num_constraints() <= 12) {
            auto t0 = std::chrono::steady_clock::now();
            auto ex = exact_joinwidth(inst);
            auto sol = solve_with_decomposition(inst, ex.decomposition);
            emit({bc.id, bc.family, "exact", to_string(sol.verdict), ex.width, detail::seconds_since(t0), ex.count});
        }
        if (inst.variables.size() <= 10) {
            auto t0 = std::chrono::steady_clock::now();
            auto res = solve_variable_dp(inst, Width(inst.variables.size()));
            emit({bc.id, bc.family, "dp-vars", to_string(res.verdict), std::nullopt, detail::seconds_since(t0),
                  res.stats.peak_relation_size});
        }
    }
    return rows;
}

}  // namespace jw

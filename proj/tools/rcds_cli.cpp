// Command line front end: solve / verify / attack / decompose / export-milp /
// bench over edge-list files. Errors exit 2 (bad input) or 1 (internal bug)
// with a JSON error object on stdout.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcds/bench.hpp"
#include "rcds/dp.hpp"
#include "rcds/milp.hpp"
#include "rcds/planar.hpp"
#include "rcds/protection.hpp"
#include "rcds/scd.hpp"
#include "rcds/solvers.hpp"

namespace {

using namespace rcds;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write " + path);
    out << text;
}

VertexSet parse_set(const std::string& spec) {
    VertexSet out;
    std::string token;
    std::istringstream in(spec);
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        out.push_back(std::stoi(token));
    }
    return normalize_vertex_set(std::move(out));
}

int fail(int code, const std::string& type, const std::string& message) {
    nlohmann::json j;
    j["error"] = {{"type", type}, {"message", message}};
    std::cout << j.dump() << "\n";
    return code;
}

int run(int argc, char** argv) {
    CLI::App app{"exact solvers for minimum perfect protection sets (relaxed connected dominating sets)"};
    app.require_subcommand(1);

    std::string input, set_spec, json_out, out_path, data_dir, method = "dp", suite = "ieee";
    bool strict = false, exact_large = false;

    auto* solve = app.add_subcommand("solve", "minimum RCDS of an edge-list graph");
    solve->add_option("--input", input, "edge list file")->required();
    solve->add_option("--method", method, "dp | bnb | brute")->check(CLI::IsMember({"dp", "bnb", "brute"}));
    solve->add_option("--json", json_out, "write the result as JSON");

    auto* verify = app.add_subcommand("verify", "check a protection set both ways");
    verify->add_option("--input", input)->required();
    verify->add_option("--set", set_spec, "comma separated vertex ids")->required();

    auto* attack = app.add_subcommand("attack", "emit a stealth attack against an imperfect set");
    attack->add_option("--input", input)->required();
    attack->add_option("--set", set_spec)->required();
    attack->add_option("--out", out_path, "write attack JSON here instead of stdout");

    auto* decompose = app.add_subcommand("decompose", "sphere-cut decomposition of the (planarized) graph");
    decompose->add_option("--input", input)->required();
    decompose->add_option("--out", out_path, "write decomposition JSON here");

    auto* milp = app.add_subcommand("export-milp", "write the network-flow integer model in LP format");
    milp->add_option("--input", input)->required();
    milp->add_option("--out", out_path)->required();

    auto* bench = app.add_subcommand("bench", "run the bundled benchmark instances");
    bench->add_option("--suite", suite, "instance suite (ieee)");
    bench->add_option("--data", data_dir, "directory holding <name>.edges files");
    bench->add_option("--json", json_out, "write records as JSON");
    bench->add_flag("--strict", strict, "exit nonzero when results deviate from the published table");
    bench->add_flag("--exact-large", exact_large, "run exact search on the largest instances too");

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) {
        Graph g = parse_edge_list(slurp(input));
        SolveResult r;
        if (method == "dp") r = solve_planar_rcds(g);
        else if (method == "bnb") r = bnb_min_rcds(g);
        else {
            auto b = brute_force_min_rcds(g);
            if (!b) return fail(2, "infeasible", "cardinality cap exceeded");
            r = *b;
        }
        std::string j = solve_result_to_json(r);
        if (!json_out.empty()) spill(json_out, j + "\n");
        std::cout << "cardinality " << r.cardinality << " method " << r.method << "\nset";
        for (VertexId v : r.optimum) std::cout << " " << v;
        std::cout << "\n";
        return 0;
    }
    if (verify->parsed()) {
        Graph g = parse_edge_list(slurp(input));
        VertexSet d = parse_set(set_spec);
        bool p1 = is_perfect_protection(g, d);
        bool p2 = is_rcds(g, d);
        std::cout << (p1 ? "perfect" : "not perfect") << "\n";
        std::cout << "characterizations " << (p1 == p2 ? "agree" : "DISAGREE") << " (subgraph "
                  << (p1 ? "connected" : "disconnected") << ", relaxed domination " << (p2 ? "holds" : "fails")
                  << ")\n";
        if (p1 != p2) return fail(1, "internal", "the two characterizations disagree");
        return 0;
    }
    if (attack->parsed()) {
        Graph g = parse_edge_list(slurp(input));
        VertexSet d = parse_set(set_spec);
        auto a = construct_stealth_attack(g, d);
        if (!a) {
            std::cout << "none\n";
            return 0;
        }
        if (!verify_attack(g, d, *a)) return fail(1, "internal", "constructed attack failed verification");
        std::string j = attack_to_json(*a);
        if (!out_path.empty()) {
            spill(out_path, j + "\n");
            std::cout << "attack written to " << out_path << "\n";
        } else {
            std::cout << j << "\n";
        }
        return 0;
    }
    if (decompose->parsed()) {
        Graph g = parse_edge_list(slurp(input));
        auto emb = planarity_embed(g);
        EdgeSet removed;
        if (!emb) {
            auto pr = planarize(g);
            removed = pr.removed_edges;
            emb = std::move(pr.embedding);
        }
        if (emb->graph.m() < 3) return fail(2, "invalid", "graph too small to decompose");
        ScDecomposition d = heuristic_sphere_cut(*emb);
        ValidationReport rep = validate(*emb, d);
        if (!rep.ok) return fail(1, "internal", "decomposition failed validation: " + rep.failures.front());
        nlohmann::json j = nlohmann::json::parse(export_decomposition(d, *emb));
        if (!removed.empty()) {
            auto arr = nlohmann::json::array();
            for (const auto& [u, v] : removed) arr.push_back({u, v});
            j["removed_edges"] = std::move(arr);
        }
        j["width"] = d.width;
        if (!out_path.empty()) {
            spill(out_path, j.dump(2) + "\n");
            std::cout << "decomposition of width " << d.width << " written to " << out_path << "\n";
        } else {
            std::cout << j.dump() << "\n";
        }
        return 0;
    }
    if (milp->parsed()) {
        Graph g = parse_edge_list(slurp(input));
        spill(out_path, export_lp(build_milp(g)));
        std::cout << "model written to " << out_path << "\n";
        return 0;
    }
    if (bench->parsed()) {
        if (suite != "ieee") return fail(2, "invalid", "unknown suite " + suite);
        if (data_dir.empty()) {
            const char* env = std::getenv("RCDS_DATA_DIR");
            data_dir = env ? env : "data/ieee";
        }
        std::vector<std::pair<std::string, Graph>> instances;
        for (const auto& exp : table1_expectations())
            instances.emplace_back(exp.name, load_instance(data_dir, exp.name));
        auto records = bench_suite(instances, exact_large ? 300 : 57);
        std::cout << render_bench_table(records);
        if (!json_out.empty()) spill(json_out, bench_to_json(records) + "\n");
        bool mismatch = false;
        for (const auto& r : records) mismatch |= !r.mismatches.empty();
        if (strict && mismatch) return 1;
        return 0;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const parse_error& e) {
        return fail(2, "parse", e.what());
    } catch (const domain_error& e) {
        return fail(2, "domain", e.what());
    } catch (const validation_error& e) {
        return fail(2, "validation", e.what());
    } catch (const internal_error& e) {
        return fail(1, "internal", e.what());
    } catch (const std::exception& e) {
        return fail(1, "internal", e.what());
    }
}

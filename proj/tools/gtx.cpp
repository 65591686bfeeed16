#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gtx/confluence.hpp"
#include "gtx/encoding.hpp"
#include "gtx/engine.hpp"
#include "gtx/io.hpp"
#include "gtx/systems.hpp"

using namespace gtx;

namespace {

// exit codes: 0 success/accept, 1 reject or non-confluence finding, 2 error
constexpr int kOk = 0;
constexpr int kReject = 1;
constexpr int kError = 2;

NamedSystem load_system(const std::string& spec) {
    if (auto sys = builtin_system(spec)) return *sys;
    return parse_system(read_file(spec));
}

Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

RootPlacement parse_root(const std::string& s) {
    if (s.empty()) return {};
    if (s == "first") return {RootPlacement::first, 0};
    return {RootPlacement::node, std::stoll(s)};
}

void place_root(Graph& g, const std::string& spec) {
    if (spec.empty()) return;
    if (g.node_count() == 0) throw Error("cannot place a root in an empty graph");
    for (const Node& n : g.nodes()) g.node(n.id).rooted = false;
    Id id = spec == "first" ? g.nodes().front().id : std::stoll(spec);
    g.node(id).rooted = true;
}

int cmd_validate(const std::string& graph_file, const std::string& system_spec, bool dump) {
    if (!system_spec.empty()) {
        NamedSystem s = load_system(system_spec);
        bool ok = true;
        for (const Rule& r : s.rules)
            for (const std::string& msg : validate_rule(r)) {
                std::cout << "rule " << r.name << ": " << msg << "\n";
                ok = false;
            }
        if (dump) std::cout << print_system(s);
        if (ok) std::cout << "ok: " << s.rules.size() << " rule(s)\n";
        return ok ? kOk : kReject;
    }
    Graph g = load_graph(graph_file);
    auto errs = validate_graph(g, g.alphabet());
    for (auto& msg : errs) std::cout << msg << "\n";
    if (errs.empty()) {
        std::cout << "ok: " << g.node_count() << " node(s), " << g.edge_count()
                  << " edge(s)\n";
        return kOk;
    }
    return kReject;
}

const Rule* find_rule(const NamedSystem& s, const std::string& name) {
    for (const Rule& cand : s.rules)
        if (name.empty() || cand.name == name) return &cand;
    return nullptr;
}

int cmd_match(const std::string& rule_file, const std::string& rule_name,
              const std::string& graph_file, bool rooted) {
    NamedSystem s = load_system(rule_file);
    Graph g = load_graph(graph_file);
    const Rule* r = find_rule(s, rule_name);
    if (!r) throw Error("no such rule: " + rule_name);
    std::vector<Morphism> ms = rooted ? rooted_matches(*r, g) : applicable_matches(*r, g);
    for (std::size_t i = 0; i < ms.size(); ++i) {
        std::cout << "match " << i << ": nodes {";
        bool first = true;
        for (auto& [k, v] : ms[i].node_map) {
            std::cout << (first ? "" : ", ") << k << "->" << v;
            first = false;
        }
        std::cout << "} edges {";
        first = true;
        for (auto& [k, v] : ms[i].edge_map) {
            std::cout << (first ? "" : ", ") << k << "->" << v;
            first = false;
        }
        std::cout << "}\n";
    }
    std::cout << ms.size() << " match(es)\n";
    return kOk;
}

int cmd_apply(const std::string& rule_file, const std::string& rule_name,
              const std::string& graph_file, const std::string& which) {
    NamedSystem s = load_system(rule_file);
    Graph g = load_graph(graph_file);
    const Rule* r = find_rule(s, rule_name);
    if (!r) throw Error("no such rule: " + rule_name);
    auto ms = applicable_matches(*r, g);
    if (ms.empty()) {
        std::cout << "no applicable match\n";
        return kReject;
    }
    if (which == "all") {
        for (std::size_t i = 0; i < ms.size(); ++i)
            std::cout << "# result " << i << "\n" << print_graph(apply(*r, ms[i], g).result);
    } else {
        std::size_t idx = static_cast<std::size_t>(std::stoull(which));
        if (idx >= ms.size()) throw Error("match index out of range");
        std::cout << print_graph(apply(*r, ms[idx], g).result);
    }
    return kOk;
}

int cmd_reduce(const std::string& system_spec, const std::string& graph_file,
               const std::string& strategy, std::uint64_t max_steps, bool trace,
               const std::string& root) {
    NamedSystem s = load_system(system_spec);
    Graph g = load_graph(graph_file);
    place_root(g, root);
    EngineConfig cfg;
    if (max_steps) cfg.max_steps = max_steps;
    cfg.record_trace = trace;
    if (strategy == "all") {
        cfg.strategy = Strategy::all_normal_forms;
        auto results = reduce_all(s.rules, g, cfg);
        for (std::size_t i = 0; i < results.size(); ++i)
            std::cout << "# normal form " << i << " (" << results[i].step_count
                      << " steps)\n"
                      << print_graph(results[i].normal_form);
        return kOk;
    }
    ReduceResult res = reduce(s.rules, g, cfg);
    if (!res.fast_system)
        std::cout << "# note: system is not fast; complexity guarantees void\n";
    if (trace) {
        for (std::size_t i = 0; i < res.steps.size(); ++i) {
            const TraceStep& ts = res.steps[i];
            std::cout << "step " << i << ": rule "
                      << s.rules[static_cast<std::size_t>(ts.rule_index)].name
                      << " nodes_after=" << ts.node_count_after
                      << " roots_after=" << ts.root_count_after << "\n";
        }
    }
    std::cout << "# " << res.step_count << " step(s)\n" << print_graph(res.normal_form);
    return kOk;
}

int cmd_recognize(const std::string& system_spec, const std::string& graph_file,
                  const std::string& root, const std::string& strategy,
                  std::uint64_t max_steps) {
    NamedSystem s = load_system(system_spec);
    if (!s.accept) throw Error("system has no accept graph");
    Graph g = load_graph(graph_file);
    place_root(g, root);
    EngineConfig cfg;
    if (max_steps) cfg.max_steps = max_steps;
    cfg.record_trace = false;
    cfg.strategy = strategy == "all" ? Strategy::all_normal_forms : Strategy::first_match;
    RecognitionResult res = recognize(s.rules, g, *s.accept, cfg);
    std::cout << (res.accepted ? "ACCEPT" : "REJECT") << " steps=" << res.steps
              << " strategy=" << (res.strategy == Strategy::first_match ? "first" : "all")
              << "\n";
    return res.accepted ? kOk : kReject;
}

int cmd_pairs(const std::string& system_spec, const std::string& garbage, int depth,
              const std::string& format) {
    bool full = format == "full";
    NamedSystem s = load_system(system_spec);
    std::optional<GarbagePredicate> pred;
    if (!garbage.empty()) {
        pred = builtin_predicate(garbage);
        if (!pred) throw Error("unknown garbage predicate: " + garbage);
    }
    AnalysisReport rep = analyze(s.rules, pred, depth);
    std::cout << format_report(rep, full);
    return rep.conclusion == Conclusion::non_confluent_witness ? kReject : kOk;
}

int cmd_encode(const std::string& graph_file, const std::string& rule_file,
               const std::string& rule_name) {
    if (!graph_file.empty()) {
        std::cout << print_graph(encode_graph(load_graph(graph_file)));
        return kOk;
    }
    NamedSystem s = load_system(rule_file);
    for (const Rule& r : s.rules)
        if (rule_name.empty() || r.name == rule_name)
            std::cout << print_rule(encode_rule(r));
    return kOk;
}

int cmd_gen(const std::string& family, std::int64_t size, std::int64_t size2,
            const std::string& root, std::uint64_t seed, const std::string& mutate_kind) {
    auto fam = family_from_string(family);
    if (!fam) throw Error("unknown family: " + family);
    Graph g = generate(*fam, size, parse_root(root), seed, size2);
    if (!mutate_kind.empty()) {
        auto kind = mutation_from_string(mutate_kind);
        if (!kind) throw Error("unknown mutation: " + mutate_kind);
        auto mutated = mutate(g, *kind, seed);
        if (!mutated) throw Error("mutation not applicable to this graph");
        g = *mutated;
    }
    std::cout << print_graph(g);
    return kOk;
}

int cmd_bench(const std::string& system_spec, const std::string& family,
              const std::string& sizes, const std::string& csv_path, int repeats) {
    NamedSystem s = load_system(system_spec);
    auto fam = family_from_string(family);
    if (!fam) throw Error("unknown family: " + family);
    std::int64_t from = 0, to = 0, step = 0;
    {
        std::istringstream is(sizes);
        char c1 = 0, c2 = 0;
        is >> from >> c1 >> to >> c2 >> step;
        if (!is || c1 != ':' || c2 != ':' || step <= 0)
            throw Error("sizes must be a:b:step");
    }
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!csv_path.empty() && csv_path != "-") {
        file.open(csv_path);
        if (!file) throw Error("cannot open " + csv_path);
        out = &file;
    }
    *out << "family,size,steps,wall_ns,visited_items\n";
    for (std::int64_t n = from; n <= to; n += step) {
        Graph g = generate(*fam, n, {RootPlacement::first, 0});
        std::vector<long long> walls;
        std::uint64_t steps = 0, visited = 0;
        for (int rep = 0; rep < repeats; ++rep) {
            EngineConfig cfg;
            cfg.record_trace = false;
            auto t0 = std::chrono::steady_clock::now();
            ReduceResult res = reduce(s.rules, g, cfg);
            auto t1 = std::chrono::steady_clock::now();
            walls.push_back(
                std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
            steps = res.step_count;
            visited = res.visited_items;
        }
        std::sort(walls.begin(), walls.end());
        long long median = walls[walls.size() / 2];
        *out << to_string(*fam) << "," << g.node_count() << "," << steps << "," << median
             << "," << visited << "\n";
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rooted DPO graph rewriting toolkit"};
    app.require_subcommand(1);

    std::string graph_file, system_spec, rule_name, root, strategy = "first";
    std::string which = "0", garbage, family = "list", sizes = "1000:10000:1000";
    std::string csv_path, mutate_kind, format = "summary";
    std::uint64_t max_steps = 0, seed = 0;
    std::int64_t size = 10, size2 = -1;
    int depth = 8, repeats = 3;
    bool rooted = false, trace = false, dump = false;

    auto* validate = app.add_subcommand("validate", "check a graph or system file");
    validate->add_option("--graph", graph_file);
    validate->add_option("--system", system_spec);
    validate->add_flag("--dump", dump, "print the parsed system back out");

    auto* match = app.add_subcommand("match", "list matches of a rule in a graph");
    match->add_option("--rule", system_spec)->required();
    match->add_option("--name", rule_name);
    match->add_option("--graph", graph_file)->required();
    match->add_flag("--rooted", rooted, "use root-anchored matching");

    auto* apply_cmd = app.add_subcommand("apply", "apply a rule at a match");
    apply_cmd->add_option("--rule", system_spec)->required();
    apply_cmd->add_option("--name", rule_name);
    apply_cmd->add_option("--graph", graph_file)->required();
    apply_cmd->add_option("--match", which, "match index or 'all'");

    auto* reduce_cmd = app.add_subcommand("reduce", "reduce a graph to normal form");
    reduce_cmd->add_option("--system", system_spec)->required();
    reduce_cmd->add_option("--graph", graph_file)->required();
    reduce_cmd->add_option("--strategy", strategy, "first|all");
    reduce_cmd->add_option("--max-steps", max_steps);
    reduce_cmd->add_flag("--trace", trace);
    reduce_cmd->add_option("--root", root, "node id or 'first'");

    auto* recognize_cmd = app.add_subcommand("recognize", "test language membership");
    recognize_cmd->add_option("--system", system_spec)->required();
    recognize_cmd->add_option("--graph", graph_file)->required();
    recognize_cmd->add_option("--root", root, "node id or 'first'");
    recognize_cmd->add_option("--strategy", strategy, "first|all");
    recognize_cmd->add_option("--max-steps", max_steps);

    auto* pairs_cmd = app.add_subcommand("pairs", "critical pair analysis");
    pairs_cmd->add_option("--system", system_spec)->required();
    pairs_cmd->add_option("--garbage", garbage, "all|forest|cycles-have-t|roots<=k");
    pairs_cmd->add_option("--depth", depth);
    pairs_cmd->add_option("--format", format, "summary|full");

    auto* encode_cmd =
        app.add_subcommand("encode", "encode graphs/rules as totally labelled");
    encode_cmd->add_option("--graph", graph_file);
    encode_cmd->add_option("--rule", system_spec);
    encode_cmd->add_option("--name", rule_name);

    auto* gen_cmd = app.add_subcommand("gen", "generate a graph family member");
    gen_cmd->add_option("--family", family, "list|tree|ptree|grid|star|cycle")->required();
    gen_cmd->add_option("--size", size)->required();
    gen_cmd->add_option("--size2", size2, "second grid dimension");
    gen_cmd->add_option("--root", root, "node id or 'first'");
    gen_cmd->add_option("--seed", seed);
    gen_cmd->add_option("--mutate", mutate_kind, "parallel|reverse|cross|delete");

    auto* bench_cmd = app.add_subcommand("bench", "benchmark reductions, emit CSV");
    bench_cmd->add_option("--system", system_spec)->required();
    bench_cmd->add_option("--family", family)->required();
    bench_cmd->add_option("--sizes", sizes, "a:b:step")->required();
    bench_cmd->add_option("--csv", csv_path, "output path or '-'");
    bench_cmd->add_option("--repeats", repeats);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(graph_file, system_spec, dump);
        if (match->parsed()) return cmd_match(system_spec, rule_name, graph_file, rooted);
        if (apply_cmd->parsed())
            return cmd_apply(system_spec, rule_name, graph_file, which);
        if (reduce_cmd->parsed())
            return cmd_reduce(system_spec, graph_file, strategy, max_steps, trace, root);
        if (recognize_cmd->parsed())
            return cmd_recognize(system_spec, graph_file, root, strategy, max_steps);
        if (pairs_cmd->parsed()) return cmd_pairs(system_spec, garbage, depth, format);
        if (encode_cmd->parsed()) return cmd_encode(graph_file, system_spec, rule_name);
        if (gen_cmd->parsed()) return cmd_gen(family, size, size2, root, seed, mutate_kind);
        if (bench_cmd->parsed())
            return cmd_bench(system_spec, family, sizes, csv_path, repeats);
    } catch (const StepBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << " after " << e.partial.step_count
                  << " step(s)\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}

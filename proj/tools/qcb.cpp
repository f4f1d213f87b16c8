#include "qcb/suites.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace qcb;

WeightVector parse_weight(const std::string& text, int n) {
    WeightVector w;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',' || ch == ' ') {
            if (!cur.empty()) {
                w.push_back(std::stoi(cur));
                cur.clear();
            }
        } else {
            cur += ch;
        }
    }
    if ((int)w.size() != n)
        throw std::invalid_argument("weight has " + std::to_string(w.size()) +
                                    " entries, the quiver has " + std::to_string(n) + " vertices");
    return w;
}

// Reorder the quiver vertices (and framings) to the requested vertex order.
QuiverSpec reorder(const QuiverSpec& spec, const std::vector<std::string>& order) {
    if (order.empty()) return spec;
    if ((int)order.size() != spec.q.n())
        throw std::invalid_argument("--order must list every vertex exactly once");
    std::vector<int> old_index;
    for (const auto& name : order) {
        int i = spec.q.vertex(name);
        if (i < 0) throw std::invalid_argument("--order names unknown vertex " + name);
        old_index.push_back(i);
    }
    std::vector<int> new_of_old(spec.q.n(), -1);
    for (int k = 0; k < (int)old_index.size(); ++k) {
        if (new_of_old[old_index[k]] >= 0)
            throw std::invalid_argument("--order repeats vertex " + order[k]);
        new_of_old[old_index[k]] = k;
    }
    std::vector<std::pair<int, int>> arrows;
    for (const auto& [s, t] : spec.q.arrows()) arrows.emplace_back(new_of_old[s], new_of_old[t]);
    QuiverSpec out;
    out.q = Quiver(order, arrows);
    auto remap = [&](const std::optional<WeightVector>& f) -> std::optional<WeightVector> {
        if (!f) return std::nullopt;
        WeightVector w(spec.q.n());
        for (int i = 0; i < spec.q.n(); ++i) w[new_of_old[i]] = (*f)[i];
        return w;
    };
    out.framing1 = remap(spec.framing1);
    out.framing2 = remap(spec.framing2);
    return out;
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir + "/" + name);
    if (!out) throw std::runtime_error("cannot write " + dir + "/" + name);
    out << content;
}

struct CliArgs {
    std::string quiver_path;
    std::string weight_text, weight2_text;
    std::vector<std::string> order;
    int height = 4;
    unsigned long seed = 1;
    std::string out_dir = "qcb-out";
    std::vector<std::string> suites;
    std::string target;
};

RunConfig make_config(const CliArgs& args, bool need_weight) {
    RunConfig cfg;
    QuiverSpec spec = load_quiver_file(args.quiver_path);
    cfg.spec = reorder(spec, args.order);
    if (!args.weight_text.empty()) {
        cfg.weight = parse_weight(args.weight_text, cfg.spec.q.n());
    } else if (cfg.spec.framing1) {
        cfg.weight = *cfg.spec.framing1;  // framing doubles as the weight
    } else if (need_weight) {
        throw std::invalid_argument("no --weight given and the quiver file has no framing1");
    } else {
        cfg.weight = wv_zero(cfg.spec.q.n());
    }
    if (!args.weight2_text.empty())
        cfg.weight2 = parse_weight(args.weight2_text, cfg.spec.q.n());
    else if (cfg.spec.framing2)
        cfg.weight2 = *cfg.spec.framing2;
    if (!wv_nonneg(cfg.weight) || (cfg.weight2 && !wv_nonneg(*cfg.weight2)))
        throw std::invalid_argument("weights must be dominant (componentwise nonnegative)");
    if (args.height < 0) throw std::invalid_argument("height bound must be >= 0");
    cfg.height = args.height;
    cfg.seed = args.seed;
    cfg.out_dir = args.out_dir;
    cfg.suites = args.suites;
    return cfg;
}

int cmd_check(const CliArgs& args) {
    RunConfig cfg = make_config(args, true);
    std::vector<std::string> names = cfg.suites.empty() ? all_suite_names() : cfg.suites;
    bool all_pass = true;
    for (const auto& name : names) {
        nlohmann::json rep = run_suite_by_name(name, cfg);
        bool pass = rep.at("pass").get<bool>();
        all_pass = all_pass && pass;
        write_file(cfg.out_dir, name + ".json", rep.dump(2) + "\n");
        std::cout << (pass ? "pass" : "FAIL") << "  " << name << "\n";
    }
    return all_pass ? 0 : 1;
}

int cmd_crystal(const CliArgs& args) {
    RunConfig cfg = make_config(args, true);
    std::string dot = export_crystal_dot(cfg);
    write_file(cfg.out_dir, "crystal.dot", dot);
    std::cout << dot;
    return 0;
}

int cmd_tables(const CliArgs& args) {
    RunConfig cfg = make_config(args, true);
    write_file(cfg.out_dir, "dimensions.csv", export_dimension_csv(cfg));
    Module m(cfg.spec.q, cfg.weight);
    Crystal c(m, cfg.height);
    for (const auto& nu : weights_up_to_height(cfg.spec.q.n(), cfg.height)) {
        if (m.dim(nu) == 0) continue;  // no matrix for empty spaces
        std::string name = "transition";
        for (int x : nu) name += "_" + std::to_string(x);
        write_file(cfg.out_dir, name + ".csv", export_transition_csv(m, c, nu));
    }
    std::cout << "wrote tables to " << cfg.out_dir << "\n";
    return 0;
}

int cmd_mutate(const CliArgs& args) {
    RunConfig cfg = make_config(args, false);
    int target = cfg.spec.q.vertex(args.target);
    if (target < 0) throw std::invalid_argument("unknown target vertex " + args.target);
    auto seq = source_mutation_sequence(cfg.spec.q, target);
    WeightVector coch = contracting_cocharacter(cfg.spec.q, seq);
    nlohmann::json j;
    j["target"] = args.target;
    nlohmann::json steps = nlohmann::json::array();
    for (int s : seq) steps.push_back(cfg.spec.q.names()[s]);
    j["sequence"] = steps;
    nlohmann::json cw;
    for (int i = 0; i < cfg.spec.q.n(); ++i) cw[cfg.spec.q.names()[i]] = coch[i];
    j["cocharacter"] = cw;
    Quiver cur = cfg.spec.q;
    for (int s : seq) cur = cur.mutated(s);
    nlohmann::json arrows = nlohmann::json::array();
    for (const auto& [s, t] : cur.arrows())
        arrows.push_back({cur.names()[s], cur.names()[t]});
    j["final_orientation"] = arrows;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_signs(const CliArgs& args) {
    RunConfig cfg;
    cfg.seed = args.seed;
    cfg.out_dir = args.out_dir;
    cfg.spec.q = Quiver({"1"}, {});
    cfg.weight = {0};
    nlohmann::json rep = suite_signs(cfg);
    write_file(cfg.out_dir, "signs.json", rep.dump(2) + "\n");
    bool pass = rep.at("pass").get<bool>();
    std::cout << (pass ? "pass" : "FAIL") << "  signs (" << rep.at("trials") << " trials)\n";
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact canonical-basis and quiver-crystal computations"};
    app.require_subcommand(1);
    CliArgs args;

    auto add_common = [&](CLI::App* sub, bool quiver_required) {
        sub->add_option("--quiver", args.quiver_path, "quiver description file (text or JSON)")
            ->required(quiver_required);
        sub->add_option("--weight", args.weight_text, "dominant weight <i,lambda>, comma separated");
        sub->add_option("--weight2", args.weight2_text, "second dominant weight (tensor suites)");
        sub->add_option("--height", args.height, "height bound for weight spaces");
        sub->add_option("--order", args.order, "vertex order (overrides the file order)");
        sub->add_option("--seed", args.seed, "seed for randomized property corpora");
        sub->add_option("--out", args.out_dir, "output directory for reports");
    };

    CLI::App* check = app.add_subcommand("check", "run verification suites");
    add_common(check, true);
    check->add_option("--suite", args.suites,
                      "suite selection (relations, twisted, signs, mutation, crystal, bases)");

    CLI::App* crystal = app.add_subcommand("crystal", "export the crystal graph (DOT)");
    add_common(crystal, true);

    CLI::App* tables = app.add_subcommand("tables", "export dimension and transition tables");
    add_common(tables, true);

    CLI::App* mutate = app.add_subcommand("mutate", "mutation-to-source sequence and cocharacter");
    add_common(mutate, true);
    mutate->add_option("--target", args.target, "vertex to make a source")->required();

    CLI::App* signs = app.add_subcommand("signs", "run the sign-identity corpus");
    signs->add_option("--seed", args.seed, "seed");
    signs->add_option("--out", args.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) return cmd_check(args);
        if (crystal->parsed()) return cmd_crystal(args);
        if (tables->parsed()) return cmd_tables(args);
        if (mutate->parsed()) return cmd_mutate(args);
        if (signs->parsed()) return cmd_signs(args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

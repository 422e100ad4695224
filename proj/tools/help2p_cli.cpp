#include "help2p/lattice_oracle.hpp"
#include "help2p/mod4.hpp"
#include "help2p/pgq.hpp"
#include "help2p/table_io.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace help2p;

namespace {

enum class Exit { Ok = 0, Findings = 1, Usage = 2 };

struct Globals {
    std::string format = "json";
    std::uint64_t seed = 1;
    int precision = TruncatedTwoAdicInt::default_precision;
    unsigned jobs = 1;
    bool no_mod4 = false;
    std::string out;
};

struct TableChoice {
    std::string family = "PSL";
    std::int64_t q = 0;
    std::string path;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--family", family, "PSL or PGL")->check(CLI::IsMember({"PSL", "PGL"}));
        cmd.add_option("--q", q, "odd prime power");
        cmd.add_option("--table", path, "character table JSON instead of a built-in")->check(CLI::ExistingFile);
    }

    Family parsed_family() const { return family == "PGL" ? Family::PGL : Family::PSL; }

    const CharacterTable& load(std::optional<CharacterTable>& storage) const {
        if (!path.empty()) return storage.emplace(load_table_file(path));
        if (q == 0) throw UnsupportedInput("give --q (with --family) or --table");
        return builtin_table(parsed_family(), q);
    }
};

void emit(const Globals& g, const nlohmann::json& json, const std::string& markdown) {
    const std::string text = g.format == "md" ? markdown : json.dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(g.out);
    if (!file) throw DataError("cannot write " + g.out);
    file << text;
}

std::string json_block(const nlohmann::json& j) { return "```json\n" + j.dump(2) + "\n```\n"; }

// Survivors removed by the mod-4 providers, plus the superset check.
nlohmann::json ablation(const SolutionSet& with, const SolutionSet& without, const CharacterTable& table) {
    std::vector<CandidateChain> removed;
    std::set_difference(without.survivors.begin(), without.survivors.end(), with.survivors.begin(),
                        with.survivors.end(), std::back_inserter(removed));
    nlohmann::json removed_json = nlohmann::json::array();
    for (const auto& c : removed) removed_json.push_back(to_json(c, table));
    return {{"with_mod4", with.survivors.size()},
            {"without_mod4", without.survivors.size()},
            {"superset", std::includes(without.survivors.begin(), without.survivors.end(), with.survivors.begin(),
                                       with.survivors.end())},
            {"removed_by_mod4", removed_json}};
}

std::string ablation_markdown(const nlohmann::json& a) {
    std::ostringstream out;
    out << "\n### Ablation\n\n| mod-4 constraints | survivors |\n|---|---|\n| on | " << a["with_mod4"] << " |\n| off | "
        << a["without_mod4"] << " |\n\nSurvivors without them contain those with them: " << a["superset"] << "\n";
    return out.str();
}

VerdictStatus parse_status(const std::string& s) {
    for (auto v : {VerdictStatus::ElementExists, VerdictStatus::NoUnitsProven, VerdictStatus::Positive, VerdictStatus::Open})
        if (to_string(v) == s) return v;
    throw UnsupportedInput("unknown status " + s);
}

// ---------------------------------------------------------------------------

Exit run_table(const Globals& g, const TableChoice& choice) {
    std::optional<CharacterTable> storage;
    const auto& table = choice.load(storage);
    const auto json = table_to_json(table);
    std::ostringstream md;
    md << "## " << table.descriptor() << "\n\n" << table.size() << " classes, order " << table.group_order().get_str() << "\n\n";
    md << json_block(json);
    emit(g, json, md.str());
    return Exit::Ok;
}

struct SolveArgs {
    std::int64_t order = 0;
    std::string pin_class;
    std::int64_t box_margin = 0;
    std::uint64_t budget = 0;
};

Exit run_solve(const Globals& g, const TableChoice& choice, const SolveArgs& args) {
    std::optional<CharacterTable> storage;
    const auto& table = choice.load(storage);
    SolveOptions options;
    options.jobs = g.jobs;
    options.box_margin = args.box_margin;
    options.node_budget = args.budget;
    if (!args.pin_class.empty()) {
        const auto& classes = table.classes();
        const auto it = std::find_if(classes.begin(), classes.end(), [&](const ClassData& c) { return c.label == args.pin_class; });
        if (it == classes.end()) throw UnsupportedInput("no class labelled " + args.pin_class);
        const auto chain = element_chain(table, static_cast<std::size_t>(it - classes.begin()));
        if (chain.unit_order != args.order) throw UnsupportedInput("pinned class has order " + std::to_string(chain.unit_order));
        options.pinned_lower = chain.lower();
    }
    const auto providers = applicable_providers(table, args.order);
    const auto with = solve(table, args.order, providers, options);
    const auto without = providers.empty() ? with : solve(table, args.order, {}, options);
    const auto& primary = g.no_mod4 ? without : with;

    nlohmann::json json = to_json(primary, table);
    json["mod4"] = !g.no_mod4;
    json["providers"] = nlohmann::json::array();
    for (const auto& p : providers) json["providers"].push_back(p->provenance());
    json["ablation"] = ablation(with, without, table);

    std::ostringstream md;
    md << "## " << table.descriptor() << ", units of order " << args.order << (g.no_mod4 ? " (mod-4 constraints off)" : "")
       << "\n\nSurvivors: " << primary.survivors.size() << (primary.complete ? "" : " (search incomplete)") << "\n\n"
       << "| kind | provenance | count |\n|---|---|---|\n";
    for (const auto& c : primary.constraints) md << "| " << c.kind << " | " << c.provenance << " | " << c.count << " |\n";
    for (const auto& chain : primary.survivors) md << "- `" << to_json(chain, table).dump() << "`\n";
    md << ablation_markdown(json["ablation"]);
    emit(g, json, md.str());
    return primary.complete ? Exit::Ok : Exit::Findings;
}

Exit run_order2p(const Globals& g, const TableChoice& choice, const std::string& expect) {
    if (choice.q == 0) throw UnsupportedInput("order2p needs --q");
    VerdictOptions options;
    options.use_mod4 = !g.no_mod4;
    options.solve.jobs = g.jobs;
    const auto result = order2p_verdict(choice.q, choice.parsed_family(), options);
    auto json = to_json(result.verdict);
    auto md = to_markdown(result.verdict);

    VerdictOptions other = options;
    other.use_mod4 = !options.use_mod4;
    const auto counter = order2p_verdict(choice.q, choice.parsed_family(), other);
    const auto& table = builtin_table(choice.parsed_family(), choice.q);
    const auto& with = options.use_mod4 ? result.direct : counter.direct;
    const auto& without = options.use_mod4 ? counter.direct : result.direct;
    json["ablation"] = ablation(with, without, table);
    md += ablation_markdown(json["ablation"]);

    emit(g, json, md);
    return result.verdict.status == parse_status(expect) ? Exit::Ok : Exit::Findings;
}

Exit run_pgq(const Globals& g, const TableChoice& choice, const std::vector<std::string>& disabled,
             const std::string& expect) {
    if (choice.q == 0) throw UnsupportedInput("pgq needs --q");
    PgqOptions options;
    options.order2p.use_mod4 = !g.no_mod4;
    options.order2p.solve.jobs = g.jobs;
    options.disabled_rules.insert(disabled.begin(), disabled.end());
    const auto v = pgq_verdict(choice.q, choice.parsed_family(), options);
    auto json = to_json(v);
    const auto conditions = pgq_conditions(choice.q);
    json["conditions"] = to_json(conditions);
    std::string md = to_markdown(v) + "\n### Conditions\n\n" + json_block(json["conditions"]);
    if (!conditions.implication_holds) {
        json["flags"] = {"square-free odd part without f coprime to (q-1)(q+1)"};
        md += "\nFlag: the odd part is square-free but f is not coprime to (q-1)(q+1).\n";
    }
    emit(g, json, md);
    if (expect.empty()) return Exit::Ok;
    return v.status == parse_status(expect) ? Exit::Ok : Exit::Findings;
}

struct OracleArgs {
    std::string experiment = "v4";
    std::size_t a = 1, c = 1, samples = 1000;
};

Exit run_oracle(const Globals& g, const OracleArgs& args) {
    nlohmann::json json;
    bool clean = true;
    if (args.experiment == "lambda") {
        const auto r = lambda_closure_check();
        json = to_json(r);
        clean = r.closed;
    } else {
        OracleReport r;
        if (args.experiment == "v4")
            r = run_v4_trace_experiment(args.a, args.c, g.precision, args.samples, g.seed, g.jobs);
        else if (args.experiment == "d8")
            r = run_d8_trace_experiment(args.a, g.precision, args.samples, g.seed, g.jobs);
        else
            r = v4_pattern_closure(args.a, args.c, g.precision, args.samples, g.seed);
        json = to_json(r);
        clean = r.clean();
    }
    std::ostringstream md;
    md << "## Oracle: " << json["experiment"].get<std::string>() << "\n\nResult: " << (clean ? "clean" : "findings")
       << "\n\n" << json_block(json);
    emit(g, json, md.str());
    return clean ? Exit::Ok : Exit::Findings;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HeLP constraints, mod-4 block constraints and prime graph verdicts for PSL(2,q) and PGL(2,q)"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "json or md")->check(CLI::IsMember({"json", "md"}));
    app.add_option("--seed", g.seed, "base seed for randomized experiments");
    app.add_option("--precision", g.precision, "2-adic precision k")->check(CLI::Range(4, 56));
    app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::Range(1u, 256u));
    app.add_flag("--no-mod4", g.no_mod4, "disable the principal-block constraints");
    app.add_option("--out", g.out, "write the report to a file");

    TableChoice table_choice, solve_choice, order_choice, pgq_choice;
    auto* table = app.add_subcommand("table", "export a built-in table or validate a table file");
    table_choice.add_to(*table);

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "HeLP with and without the mod-4 constraints");
    solve_choice.add_to(*solve_cmd);
    solve_cmd->add_option("--order", solve_args.order, "unit order")->required()->check(CLI::PositiveNumber);
    solve_cmd->add_option("--pin-class", solve_args.pin_class, "fix the lower levels to the powers of this class");
    solve_cmd->add_option("--box-margin", solve_args.box_margin, "widen the derived box");
    solve_cmd->add_option("--budget", solve_args.budget, "search node budget per level (0 = none)");

    std::string order_expect = "NoUnitsProven";
    auto* order_cmd = app.add_subcommand("order2p", "units of order 2p, q = +-3 mod 8");
    order_choice.add_to(*order_cmd);
    order_cmd->add_option("--expect", order_expect, "status that counts as success");

    std::vector<std::string> disabled;
    std::string pgq_expect;
    auto* pgq_cmd = app.add_subcommand("pgq", "prime graph question verdicts over prime pairs");
    pgq_choice.add_to(*pgq_cmd);
    pgq_cmd->add_option("--disable", disabled, "rules to switch off (R1..R4)")->delimiter(',');
    pgq_cmd->add_option("--expect", pgq_expect, "status that counts as success");

    OracleArgs oracle_args;
    auto* oracle_cmd = app.add_subcommand("oracle", "truncated 2-adic lattice experiments");
    oracle_cmd->add_option("--experiment", oracle_args.experiment, "v4, d8, closure or lambda")
        ->check(CLI::IsMember({"v4", "d8", "closure", "lambda"}));
    oracle_cmd->add_option("--a", oracle_args.a, "first block dimension");
    oracle_cmd->add_option("--c", oracle_args.c, "second block dimension (v4, closure)");
    oracle_cmd->add_option("--samples", oracle_args.samples, "number of samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(Exit::Usage);
    }

    try {
        Exit code = Exit::Ok;
        if (*table) code = run_table(g, table_choice);
        if (*solve_cmd) code = run_solve(g, solve_choice, solve_args);
        if (*order_cmd) code = run_order2p(g, order_choice, order_expect);
        if (*pgq_cmd) code = run_pgq(g, pgq_choice, disabled, pgq_expect);
        if (*oracle_cmd) code = run_oracle(g, oracle_args);
        return static_cast<int>(code);
    } catch (const UnsupportedInput& e) {
        std::cerr << "unsupported input: " << e.what() << "\n";
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
    } catch (const SamplingFailure& e) {
        std::cerr << "sampling failure: " << e.what() << "\n";
    }
    return static_cast<int>(Exit::Usage);
}

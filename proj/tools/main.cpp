#include <CLI11.hpp>

#include <canthresh/cli.hpp>

int main(int argc, char** argv) {
    using namespace canthresh;
    CLI::App app{"canonical thresholds of classified 3-fold singularities via weighted blow-ups"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string caps_text, family_text;
    std::int64_t k = 0;

    auto common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input) sub->add_option("input", cfg.input, "input document (JSON)")->required();
        sub->add_option("--caps", caps_text, "resource caps, e.g. a_max=200,degree_max=40,cap=15,budget=24,depth=12");
        sub->add_option("--format", cfg.format, "table or machine")->check(CLI::IsMember({"table", "machine"}));
        sub->add_option("--out", cfg.out, "write the report to this path");
        sub->add_option("--seed", cfg.seed, "seed for randomized suites");
    };
    auto* compute = app.add_subcommand("compute", "certified canonical threshold in the window (1/k, 1/(k-1))");
    common(compute, true);
    compute->add_option("--k", k, "window index")->required();
    auto* oracle = app.add_subcommand("oracle", "brute-force minimum over admissible weights up to the cap");
    common(oracle, true);
    auto* window = app.add_subcommand("window", "candidate and realized values in (1/k, 1/(k-1))");
    common(window, false);
    window->add_option("--k", k, "window index")->required();
    window->add_option("--family", family_text, "restrict to one family");
    auto* report = app.add_subcommand("report", "accumulation report along a ladder");
    common(report, false);
    report->add_option("--k", k, "window index")->required();
    report->add_option("--family", family_text, "cA/n, cD/2-1 or quotient")->required();
    report->add_option("--ladder", cfg.ladder_max, "largest ladder parameter a");
    auto* pair = app.add_subcommand("pair", "pair thresholds, component bounds, index dichotomy, chain checks");
    common(pair, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitStatus::parse);
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (k != 0) cfg.k = k;
    try {
        if (!caps_text.empty()) cfg.caps = parse_caps(caps_text);
        if (!family_text.empty()) {
            cfg.family = parse_family(family_text);
            if (!cfg.family) throw parse_error("unknown family \"" + family_text + "\"");
        }
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return static_cast<int>(ExitStatus::parse);
    }
    return run(cfg);
}

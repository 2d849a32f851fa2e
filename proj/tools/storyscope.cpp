#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "storyscope/pipeline.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitStage = 3;

struct Options {
    std::string config_path;
    std::optional<std::int64_t> seed;
    std::string out;
    std::vector<std::string> stages;
};

void add_common(CLI::App* sub, Options& o, bool with_stages) {
    sub->add_option("--config", o.config_path, "experiment configuration (JSON)")->required();
    sub->add_option("--seed", o.seed, "override the configured seed");
    sub->add_option("--out", o.out, "override the output directory");
    if (with_stages)
        sub->add_option("--stages", o.stages, "comma-separated subset of stats,classify,topics,contrast,markers,egrid")
            ->delimiter(',');
}

// Loads and validates; prints every violation and returns nullopt on error.
std::optional<storyscope::ExperimentConfig> load(const Options& o) {
    auto parsed = storyscope::load_config_file(o.config_path);
    auto& cfg = parsed.config;
    if (o.seed) cfg.seed = *o.seed;
    if (!o.out.empty()) cfg.output_dir = o.out;
    auto violations = parsed.violations;
    if (violations.empty()) {
        auto more = storyscope::validate(cfg);
        violations.insert(violations.end(), more.begin(), more.end());
    }
    if (!violations.empty()) {
        std::cerr << "configuration error (" << violations.size() << " violation"
                  << (violations.size() == 1 ? "" : "s") << "):\n";
        for (const auto& v : violations) std::cerr << "  " << v << '\n';
        return std::nullopt;
    }
    return cfg;
}

int run_stages(const Options& o, const std::set<storyscope::Stage>& stages) {
    auto cfg = load(o);
    if (!cfg) return kExitConfig;
    storyscope::Pipeline pipeline(std::move(*cfg));
    auto result = pipeline.run(stages);
    for (const auto& l : result.log) std::cerr << l << '\n';
    for (const auto& f : result.written) std::cout << f << '\n';
    if (result.exit_code != 0) {
        std::cerr << "stage failed: " << result.error << '\n';
        return kExitStage;
    }
    return 0;
}

int run_ingest(const Options& o) {
    auto cfg = load(o);
    if (!cfg) return kExitConfig;
    storyscope::Pipeline pipeline(std::move(*cfg));
    try {
        for (const auto& f : pipeline.write_prepared()) std::cout << f << '\n';
    } catch (const std::exception& e) {
        std::cerr << "stage failed: ingest: " << e.what() << '\n';
        return kExitStage;
    }
    for (const auto& l : pipeline.prepared().log) std::cerr << l << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"storyscope: genre classification, topic contrast and coherence analysis of personal narratives"};
    app.set_version_flag("--version", std::string("storyscope ") + storyscope::kVersion);
    app.require_subcommand(1);

    Options opts;
    auto* ingest = app.add_subcommand("ingest", "read, filter and sample the corpora; write the prepared JSONL");
    add_common(ingest, opts, false);
    std::vector<std::pair<CLI::App*, storyscope::Stage>> single;
    const std::vector<std::pair<storyscope::Stage, std::string>> descriptions{
        {storyscope::Stage::stats, "corpus statistics"},
        {storyscope::Stage::classify, "cross-validated genre classification"},
        {storyscope::Stage::topics, "fit the topic model and annotate documents"},
        {storyscope::Stage::contrast, "g-test topic contrast between two samples"},
        {storyscope::Stage::markers, "discourse connective counts"},
        {storyscope::Stage::egrid, "entity-grid discrimination test"},
    };
    for (const auto& [stage, desc] : descriptions) {
        auto* sub = app.add_subcommand(storyscope::stage_name(stage), desc);
        add_common(sub, opts, false);
        single.emplace_back(sub, stage);
    }
    auto* run_all = app.add_subcommand("run-all", "run every stage (or --stages) in dependency order");
    add_common(run_all, opts, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*ingest) return run_ingest(opts);
        for (const auto& [sub, stage] : single)
            if (*sub) return run_stages(opts, {stage});
        std::set<storyscope::Stage> stages;
        if (opts.stages.empty()) {
            stages.insert(storyscope::all_stages().begin(), storyscope::all_stages().end());
        } else {
            for (const auto& s : opts.stages) {
                try {
                    stages.insert(storyscope::parse_stage(s));
                } catch (const std::invalid_argument& e) {
                    std::cerr << "configuration error: --stages: " << e.what() << '\n';
                    return kExitConfig;
                }
            }
        }
        return run_stages(opts, stages);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitStage;
    }
}

// vfso: link budgets and backhaul cost comparison for vertical FSO links.
//
//   vfso evaluate  --config run.cfg [--set key=value ...] [--output-dir DIR]
//   vfso sweep     ...
//   vfso cost      ...
//   vfso aggregate ...
//
// Exit codes: 0 success, 1 usage or configuration error, 2 link failure
// (evaluate only).

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vfso/config.hpp"
#include "vfso/report.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string output_dir;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("-c,--config", o.config_path, "Run configuration (JSON); defaults apply when omitted")
        ->check(CLI::ExistingFile);
    cmd->add_option("-s,--set", o.overrides, "Override a config entry, e.g. geometry.divergence_rad=1e-5")
        ->take_all();
    cmd->add_option("-o,--output-dir", o.output_dir, "Directory for CSV outputs (overrides config)");
}

// Flag > config file > VFSO_OUTPUT_DIR > ./vfso_out
std::string resolve_output_dir(const CommonOptions& o, const std::string& from_config) {
    if (!o.output_dir.empty()) return o.output_dir;
    if (!from_config.empty()) return from_config;
    if (const char* env = std::getenv("VFSO_OUTPUT_DIR"); env && *env) return env;
    return "vfso_out";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vertical FSO backhaul link budget and TCO simulator"};
    app.require_subcommand(1);

    CommonOptions opts;
    struct Command {
        const char* name;
        const char* help;
        vfso::report::ReportBundle (*build)(const vfso::config::RunConfig&);
    };
    const std::vector<Command> commands = {
        {"evaluate", "Evaluate one link and print its loss breakdown", &vfso::report::build_evaluate},
        {"sweep", "Run altitude/divergence sweeps and write one CSV per sweep", &vfso::report::build_sweep},
        {"cost", "Generate a HetNet layout and compare backhaul TCO", &vfso::report::build_cost},
        {"aggregate", "Size how many small cells one link can backhaul", &vfso::report::build_aggregate},
    };
    std::vector<CLI::App*> subs;
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        add_common(sub, opts);
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : vfso::report::usage_error;
    }

    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        try {
            auto cfg = vfso::config::load_config(opts.config_path, opts.overrides);
            cfg.output_dir = resolve_output_dir(opts, cfg.output_dir);
            const auto bundle = commands[i].build(cfg);
            vfso::report::write_bundle(bundle, cfg.output_dir);
            std::cout << bundle.summary;
            std::cout << "outputs written to " << cfg.output_dir << "\n";
            return bundle.exit_code;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return vfso::report::usage_error;
        }
    }
    return vfso::report::usage_error;
}

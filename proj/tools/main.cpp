#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vorwave/run.hpp"

namespace {

struct Cli {
    std::string config_path;
    vorwave::CliOptions opts;
};

void add_common(CLI::App* sub, Cli& cli, bool config_required) {
    auto* cfg = sub->add_option("--config", cli.config_path, "configuration file");
    if (config_required) cfg->required();
    sub->add_option("--out", cli.opts.out_dir, "output directory (default: out)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral simulator for periodic water waves with constant vorticity"};
    app.require_subcommand(1);

    Cli cli;
    CLI::App* simulate = app.add_subcommand("simulate", "integrate an initial state in time");
    CLI::App* steady = app.add_subcommand("steady", "continue a family of traveling waves");
    CLI::App* validate = app.add_subcommand("validate", "run the built-in property suite");
    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "sample interior velocity and pressure fields");
    add_common(simulate, cli, true);
    add_common(steady, cli, true);
    add_common(validate, cli, false);
    add_common(reconstruct, cli, true);
    validate->add_flag("--quick", cli.opts.quick, "smaller grids and fewer trials");
    validate->add_option("--seed", cli.opts.seed, "random-state seed for the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        vorwave::RunConfig config;
        if (!cli.config_path.empty()) {
            config = vorwave::load_config(cli.config_path);
        }
        if (simulate->parsed()) config.mode = vorwave::RunMode::simulate;
        else if (steady->parsed()) config.mode = vorwave::RunMode::steady;
        else if (validate->parsed()) config.mode = vorwave::RunMode::validate;
        else config.mode = vorwave::RunMode::reconstruct;

        return vorwave::run(config, cli.opts, std::cout, std::cerr);
    } catch (const vorwave::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return vorwave::exit_code_for(e.category());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
}

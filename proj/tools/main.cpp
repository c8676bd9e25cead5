#include "commands.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    using namespace shearwave::app;

    CLI::App app{"shear-wave solutions, solver and verification harness"};
    app.require_subcommand(1);
    std::filesystem::path config;
    Options opt;
    std::string out = ".";
    for (const auto& name : command_names()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out, "artifact directory");
        sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--quiet", opt.quiet, "suppress the summary on stdout");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : ExitConfigError;
    }
    opt.out = out;
    return run_command_file(app.get_subcommands().front()->get_name(), config, opt);
}

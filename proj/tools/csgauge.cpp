#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"csgauge: Chern-Simons gauge system solvers and estimate tools"};
    app.require_subcommand(1, 1);
    std::string config;
    std::string out = ".";
    int threads = 0;
    for (const char* name : {"simulate", "feasibility", "nullforms", "norms"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config, "flat JSON config file")->required();
        sub->add_option("--out", out, "output directory");
        sub->add_option("--threads", threads, "worker threads (falls back to CSGAUGE_THREADS, then 1)")
            ->check(CLI::NonNegativeNumber);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : csgauge::cli::kConfigError;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    return csgauge::cli::run(command, config, out, threads, std::cout, std::cerr);
}

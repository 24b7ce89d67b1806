#include "eigenshape/commands.hpp"
#include "eigenshape/errors.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitNumeric = 3;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Principal eigenvalue optimization for indefinite weights"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;

    for (const char* name : {"solve", "optimize", "table", "oned", "stretch", "simulate", "equiv"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
        sub->add_option("--seed", seed, "RNG seed (replaces the seeds list)");
        sub->add_option("--threads", threads, "worker threads (overrides threads and EIGENSHAPE_THREADS)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInvalid;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        auto cfg = eigenshape::load_config(config_path);
        if (out_dir) cfg.output_dir = *out_dir;
        if (seed) cfg.seeds = {*seed};
        if (threads) {
            if (*threads < 0) throw eigenshape::InvalidArgument("--threads must be nonnegative");
            cfg.threads = *threads;
        }
        eigenshape::run_command(command, cfg).print(std::cout);
    } catch (const eigenshape::InvalidArgument& e) {
        std::cerr << "eigenshape " << command << ": invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const eigenshape::Error& e) {
        std::cerr << "eigenshape " << command << ": numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "eigenshape " << command << ": " << e.what() << '\n';
        return 1;
    }
    return 0;
}

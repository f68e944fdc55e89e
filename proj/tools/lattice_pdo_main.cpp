#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "lattice_pdo/runner.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Pseudo-differential operators on the lattice hZ^n"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run one experiment config");
    std::string config;
    std::string out_dir;
    int threads = 0;
    std::uint64_t seed = 0;
    run->add_option("config", config, "Experiment config (JSON)")->required();
    auto* out_opt = run->add_option("--out", out_dir, "Output directory (overrides output.directory)");
    auto* threads_opt = run->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 4096));
    auto* seed_opt = run->add_option("--seed", seed, "Seed for randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        std::cerr << "error code=usage field=/ message=\"" << e.what() << "\"\n";
        return lpdo::exit_config_error;
    }

    lpdo::RunOptions options;
    if (*out_opt)
        options.out_dir = out_dir;
    if (*threads_opt) {
        omp_set_num_threads(threads);
        options.threads = threads;
    }
    if (*seed_opt)
        options.seed = seed;

    const auto outcome = lpdo::run_config_file(config, options);
    if (outcome.exit_code != lpdo::exit_ok) {
        std::cerr << outcome.error_line << '\n';
    } else {
        for (const auto& f : outcome.files)
            std::cout << (outcome.directory / f).string() << '\n';
    }
    return outcome.exit_code;
}

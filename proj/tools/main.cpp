// adaptnorm: reproduce tail tables, iad figures and convergence diagnostics
// for two-stage adaptive designs.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "adaptnorm/commands.hpp"
#include "adaptnorm/error.hpp"

namespace {
enum ExitCode
{
    kOk = 0,
    kConfigError = 1,
    kNumericalError = 2,
};
}  // namespace

int main(int argc, char** argv)
{
    using namespace adaptnorm;

    CLI::App app{"Normalized MLE statistics under two-stage adaptive designs"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::filesystem::path config_path;
    CommandOptions options;
    std::uint64_t seed = 0;
    std::size_t reps = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "Experiment config file")
            ->required();
        cmd->add_option("--out", options.out_dir, "Output directory");
        cmd->add_option("--seed", seed, "Master seed override");
        cmd->add_option("--reps", reps, "Replication count override")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--threads",
                        options.threads,
                        "Worker threads (default: THREADS or all cores)");
        cmd->add_flag("--dump-raw",
                      options.dump_raw,
                      "Also write per-replication CSVs");
    };

    auto* table = app.add_subcommand("table", "Tail-probability tables");
    auto* figure = app.add_subcommand("figure", "Integrated |F - Phi| by n");
    auto* diagnose
        = app.add_subcommand("diagnose", "Information convergence ladder");
    auto* n1star = app.add_subcommand("n1star", "Optimal n1 search trace");
    for (auto* cmd : {table, figure, diagnose, n1star})
        add_common(cmd);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    auto* sub = app.get_subcommands().front();
    if (sub->count("--seed"))
        options.seed = seed;
    if (sub->count("--reps"))
        options.replications = reps;

    std::vector<std::filesystem::path> written;
    try
    {
        auto const specs = load_config(config_path);
        for (auto const& spec : specs)
        {
            std::vector<std::filesystem::path> files;
            if (sub == table)
                files = run_table(spec, options);
            else if (sub == figure)
                files = run_figure(spec, options);
            else if (sub == diagnose)
                files = run_diagnostics(spec, options);
            else
                files = run_n1star(spec, options, std::cout);
            written.insert(written.end(), files.begin(), files.end());
        }
    }
    catch (std::exception const& e)
    {
        for (auto const& p : written)
        {
            std::error_code ec;
            std::filesystem::remove(p, ec);
        }
        bool const numerical = dynamic_cast<NumericalError const*>(&e);
        std::cerr << "adaptnorm: " << (numerical ? "numerical failure: " : "error: ")
                  << e.what() << '\n';
        return numerical ? kNumericalError : kConfigError;
    }

    for (auto const& p : written)
        std::cout << p.string() << '\n';
    return kOk;
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace adaptnorm {

inline constexpr char const* kVersion = "adaptnorm 1.0.0";

//! Command-line overrides shared by every verb.
struct CommandOptions
{
    std::filesystem::path out_dir{"."};
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replications;
    int threads{0};
    bool dump_raw{false};
};

//! Spec with the seed and replication overrides applied.
ExperimentSpec effective_spec(ExperimentSpec spec, CommandOptions const& options);

//! Stage-1 size for total n: the fixed value, or n1* at theta_true.
int resolve_n1(ExperimentSpec const& spec, int n, int threads);

/*!
 * Tail-probability tables. One CSV per n, named
 * `<scenario>__n1-<policy>__n-<n>.csv`, plus `<scenario>__manifest.txt`
 * and a stage-wise J^D side channel `..._stagewise.csv`.
 */
std::vector<std::filesystem::path>
run_table(ExperimentSpec const& spec, CommandOptions const& options);

//! `<scenario>__figure.csv`: iad per measure against n.
std::vector<std::filesystem::path>
run_figure(ExperimentSpec const& spec, CommandOptions const& options);

//! `<scenario>__diagnostics.txt`: convergence ladder and chi-square checks.
std::vector<std::filesystem::path>
run_diagnostics(ExperimentSpec const& spec, CommandOptions const& options);

//! `<scenario>__n1star__n-<n>.csv`: full search trace; summary to \c log.
std::vector<std::filesystem::path> run_n1star(ExperimentSpec const& spec,
                                              CommandOptions const& options,
                                              std::ostream& log);

//! Six significant digits; "nan" and "inf" spelled out.
std::string format_number(double value);

//! RFC 4180 field: quoted when it holds a comma, quote or line break.
std::string csv_field(std::string const& field);

}  // namespace adaptnorm

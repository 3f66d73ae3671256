#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "design.hpp"
#include "montecarlo.hpp"

namespace adaptnorm {

/*!
 * One scenario from a config file.
 *
 * Config files are UTF-8 text of `key = value` lines grouped under
 * `[section]` headers; each section is a scenario. Keys before the first
 * header are defaults for every section. `#` starts a comment.
 */
struct ExperimentSpec
{
    std::string name;
    Family family{Family::logistic_location};
    double x1{2};
    DoseInterval interval{0.25, 4};
    double theta_true{1};
    double sigma{0.5};
    std::optional<double> theta_lo;  //!< Defaults to 0
    std::optional<double> theta_hi;  //!< Defaults to 1/a
    std::vector<int> n_list;
    std::optional<int> n1;           //!< Empty means n1 = n1*(theta_true)
    std::size_t replications{10000};
    std::uint64_t master_seed{1};
    std::vector<double> levels{0.005, 0.025, 0.05, 0.10};
    FisherNormPoint fisher_at{FisherNormPoint::truth};
    int seed_replicates{1};
    int ladder_n1{5};
    std::vector<int> ladder_n2{100, 1000, 10000, 100000};
    std::size_t ladder_replications{2000};
    int quadrature_nodes{kDefaultQuadratureNodes};

    MeanModel model() const;

    //! Design for total size n and stage-1 size n1 (validated).
    DesignConfig design(int n, int n1) const;

    //! Throws ConfigError naming the first violated invariant.
    void validate() const;

    //! Stable `key = value` rendering of every field, in fixed order.
    std::string canonical() const;

    //! FNV-1a 64-bit hash of canonical(), as 16 hex digits.
    std::string hash() const;
};

std::vector<ExperimentSpec> parse_config(std::string_view text);

std::vector<ExperimentSpec> load_config(std::filesystem::path const& path);

}  // namespace adaptnorm

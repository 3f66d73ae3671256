#include "adaptnorm/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <utility>

#include "adaptnorm/analysis.hpp"
#include "adaptnorm/error.hpp"
#include "adaptnorm/parallel.hpp"

namespace adaptnorm {

namespace fs = std::filesystem;

namespace {
constexpr std::size_t kMinDiagnosticReplications = 100;
constexpr double kKsLevel = 0.01;

using FileList = std::vector<std::pair<fs::path, std::string>>;

// All contents are computed before anything touches the disk; a failure
// part way through removes whatever this call already wrote.
std::vector<fs::path> write_all(fs::path const& dir, FileList const& files)
{
    std::vector<fs::path> written;
    try
    {
        fs::create_directories(dir);
        for (auto const& [name, content] : files)
        {
            fs::path const target = dir / name;
            fs::path const tmp = dir / (name.string() + ".tmp");
            {
                std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
                out << content;
                out.flush();
                if (!out)
                {
                    std::error_code ec;
                    fs::remove(tmp, ec);
                    throw ConfigError("cannot write '" + tmp.string() + "'");
                }
            }
            fs::rename(tmp, target);
            written.push_back(target);
        }
    }
    catch (fs::filesystem_error const& e)
    {
        for (auto const& p : written)
        {
            std::error_code ec;
            fs::remove(p, ec);
        }
        throw ConfigError(e.what());
    }
    catch (...)
    {
        for (auto const& p : written)
        {
            std::error_code ec;
            fs::remove(p, ec);
        }
        throw;
    }
    return written;
}

std::string header(std::string_view kind, ExperimentSpec const& spec)
{
    std::ostringstream os;
    os << "# adaptnorm " << kind << '\n'
       << "# version = " << kVersion << '\n'
       << "# scenario = " << spec.name << '\n'
       << "# spec_hash = " << spec.hash() << '\n'
       << "# seed = " << spec.master_seed << '\n';
    return os.str();
}

std::string policy_label(ExperimentSpec const& spec)
{
    return spec.n1 ? std::to_string(*spec.n1) : std::string("optimal");
}

std::string output_stem(ExperimentSpec const& spec, int n)
{
    return spec.name + "__n1-" + policy_label(spec) + "__n-"
           + std::to_string(n);
}

void append_tail_rows(std::ostringstream& os,
                      ExperimentRun const& run,
                      InfoMeasureKind kind,
                      ExperimentSpec const& spec,
                      int n1_used)
{
    auto const summary = tail_probabilities(run.results, kind, spec.levels);
    for (auto const& row : summary.rows)
    {
        os << csv_field(std::string(to_string(kind))) << ','
           << format_number(row.nominal) << ',' << format_number(row.left)
           << ',' << format_number(row.right) << ',' << summary.excluded
           << ',' << n1_used << ',' << run.results.size() << ','
           << spec.master_seed << '\n';
    }
}

constexpr char const* kTableColumns
    = "measure,nominal,left_tail,right_tail,excluded_count,n1_used,R,seed\n";

std::string raw_dump(ExperimentSpec const& spec, ExperimentRun const& run)
{
    std::ostringstream os;
    os << header("raw replications", spec);
    os << "replication,theta1_hat,x2_hat,theta_hat,boundary_mle,u_inv_sq,"
          "stage_observed_at_truth";
    for (auto kind : kAllInfoMeasures)
        os << ",norm_" << to_string(kind);
    for (auto kind : kAllInfoMeasures)
        os << ",stat_" << to_string(kind);
    os << '\n';
    for (auto const& r : run.results)
    {
        os << r.index << ',' << format_number(r.theta1_hat) << ','
           << format_number(r.x2_hat) << ',' << format_number(r.theta_hat)
           << ',' << (r.boundary_mle ? 1 : 0) << ','
           << format_number(r.u_inv_sq) << ','
           << format_number(r.stage_observed_at_truth);
        for (double v : r.norm_values)
            os << ',' << format_number(v);
        for (double v : r.stats)
            os << ',' << format_number(v);
        os << '\n';
    }
    return os.str();
}

double mean(std::vector<double> const& values)
{
    return pairwise_sum(values) / static_cast<double>(values.size());
}
}  // namespace

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(6) << value;
    return os.str();
}

std::string csv_field(std::string const& field)
{
    if (field.find_first_of(",\"\r\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

ExperimentSpec effective_spec(ExperimentSpec spec, CommandOptions const& options)
{
    if (options.seed)
        spec.master_seed = *options.seed;
    if (options.replications)
    {
        spec.replications = *options.replications;
        spec.ladder_replications = *options.replications;
    }
    spec.validate();
    return spec;
}

int resolve_n1(ExperimentSpec const& spec, int n, int threads)
{
    if (spec.n1)
        return *spec.n1;
    auto const model = spec.model();
    return optimal_n1(model,
                      spec.design(n, 1),
                      spec.theta_true,
                      spec.quadrature_nodes,
                      threads)
        .n1_star;
}

std::vector<fs::path> run_table(ExperimentSpec const& input,
                                CommandOptions const& options)
{
    auto const spec = effective_spec(input, options);
    int const threads = resolve_thread_count(options.threads);
    auto const model = spec.model();

    FileList files;
    std::ostringstream manifest;
    manifest << header("manifest", spec) << spec.canonical() << '\n'
             << "n,n1_policy,n1_used,fisher_norm_at_truth,boundary_mle_count";
    for (auto kind : kAllInfoMeasures)
        manifest << ",degenerate_" << to_string(kind);
    manifest << '\n';

    for (int n : spec.n_list)
    {
        int const n1 = resolve_n1(spec, n, threads);
        Experiment const experiment(model, spec.design(n, n1), spec.fisher_at);
        auto const run
            = experiment.run(spec.replications, spec.master_seed, threads);

        std::ostringstream table;
        table << header("table", spec) << kTableColumns;
        for (auto kind : kTabulatedInfoMeasures)
            append_tail_rows(table, run, kind, spec, n1);

        std::ostringstream stagewise;
        stagewise << header("stage-wise diagnostic", spec) << kTableColumns;
        append_tail_rows(stagewise,
                         run,
                         InfoMeasureKind::incremental_observed_stage,
                         spec,
                         n1);

        auto const stem = output_stem(spec, n);
        files.emplace_back(stem + ".csv", table.str());
        files.emplace_back(stem + "__stagewise.csv", stagewise.str());
        if (options.dump_raw)
            files.emplace_back(stem + "__raw.csv", raw_dump(spec, run));

        manifest << n << ',' << policy_label(spec) << ',' << n1 << ','
                 << format_number(run.fisher_norm_at_truth) << ','
                 << run.boundary_mle_count;
        for (auto count : run.degenerate_counts)
            manifest << ',' << count;
        manifest << '\n';
    }
    files.emplace_back(spec.name + "__manifest.txt", manifest.str());
    return write_all(options.out_dir, files);
}

std::vector<fs::path> run_figure(ExperimentSpec const& input,
                                 CommandOptions const& options)
{
    auto const spec = effective_spec(input, options);
    int const threads = resolve_thread_count(options.threads);
    auto const model = spec.model();
    double const t60 = t60_reference();
    auto const k = static_cast<std::size_t>(spec.seed_replicates);

    std::ostringstream os;
    os << header("figure", spec);
    os << "# seed_replicates = " << spec.seed_replicates << '\n';
    os << "n,n1_star";
    for (auto kind : kTabulatedInfoMeasures)
        os << ",iad_" << to_string(kind);
    os << ",t60_reference";
    for (auto kind : kTabulatedInfoMeasures)
        os << ",se_" << to_string(kind);
    os << '\n';

    FileList files;
    for (int n : spec.n_list)
    {
        int const n1 = resolve_n1(spec, n, threads);
        Experiment const experiment(model, spec.design(n, n1), spec.fisher_at);

        std::array<std::vector<double>, kTabulatedInfoMeasures.size()> iad;
        for (std::size_t j = 0; j < k; ++j)
        {
            auto const run = experiment.run(
                spec.replications, spec.master_seed + j, threads);
            for (std::size_t m = 0; m < kTabulatedInfoMeasures.size(); ++m)
            {
                iad[m].push_back(integrated_abs_cdf_diff(
                    run.results, kTabulatedInfoMeasures[m]));
            }
            if (options.dump_raw)
            {
                files.emplace_back(output_stem(spec, n) + "__seed-"
                                       + std::to_string(j) + "__raw.csv",
                                   raw_dump(spec, run));
            }
        }

        os << n << ',' << n1;
        for (auto const& values : iad)
            os << ',' << format_number(mean(values));
        os << ',' << format_number(t60);
        for (auto const& values : iad)
        {
            double se = std::numeric_limits<double>::quiet_NaN();
            if (k > 1)
            {
                double const mu = mean(values);
                double ss = 0;
                for (double v : values)
                    ss += (v - mu) * (v - mu);
                se = std::sqrt(ss / static_cast<double>(k - 1)
                               / static_cast<double>(k));
            }
            os << ',' << format_number(se);
        }
        os << '\n';
    }
    files.emplace(files.begin(), spec.name + "__figure.csv", os.str());
    return write_all(options.out_dir, files);
}

std::vector<fs::path> run_diagnostics(ExperimentSpec const& input,
                                      CommandOptions const& options)
{
    auto const spec = effective_spec(input, options);
    int const threads = resolve_thread_count(options.threads);
    auto const model = spec.model();
    std::size_t const reps = spec.ladder_replications;

    constexpr std::array<InfoMeasureKind, 3> kLadderKinds{
        InfoMeasureKind::observed,
        InfoMeasureKind::incremental_observed_subject,
        InfoMeasureKind::incremental_expected,
    };

    std::ostringstream os;
    os << header("diagnostics", spec);
    os << "model = " << to_string(spec.family) << '\n'
       << "n1 = " << spec.ladder_n1 << '\n'
       << "replications = " << reps << '\n';
    if (reps < kMinDiagnosticReplications)
    {
        os << "status = insufficient replications (" << reps << " < "
           << kMinDiagnosticReplications << ")\n";
    }
    else
    {
        os << "status = ok\n";
    }
    os << '\n' << "n2,n";
    for (auto kind : kLadderKinds)
        os << ",mean_abs_err_" << to_string(kind);
    os << ",mean_stage_ratio_truth,mean_stage_ratio_estimate\n";

    std::array<std::vector<double>, kLadderKinds.size()> errors;
    std::vector<double> ratio_truth;
    std::vector<double> ratio_estimate;
    FileList files;
    for (int n2 : spec.ladder_n2)
    {
        int const n = spec.ladder_n1 + n2;
        Experiment const experiment(
            model, spec.design(n, spec.ladder_n1), spec.fisher_at);
        auto const run = experiment.run(reps, spec.master_seed, threads);
        if (options.dump_raw)
        {
            files.emplace_back(spec.name + "__ladder__n2-" + std::to_string(n2)
                                   + "__raw.csv",
                               raw_dump(spec, run));
        }

        ratio_truth.clear();
        ratio_estimate.clear();
        std::array<std::vector<double>, kLadderKinds.size()> abs_err;
        for (auto const& r : run.results)
        {
            for (std::size_t m = 0; m < kLadderKinds.size(); ++m)
            {
                abs_err[m].push_back(
                    std::abs(r.norm(kLadderKinds[m]) / n - r.u_inv_sq));
            }
            ratio_truth.push_back(r.stage_observed_at_truth / n / r.u_inv_sq);
            ratio_estimate.push_back(
                r.norm(InfoMeasureKind::incremental_observed_stage) / n
                / r.u_inv_sq);
        }
        os << n2 << ',' << n;
        for (std::size_t m = 0; m < kLadderKinds.size(); ++m)
        {
            errors[m].push_back(mean(abs_err[m]));
            os << ',' << format_number(errors[m].back());
        }
        os << ',' << format_number(mean(ratio_truth)) << ','
           << format_number(mean(ratio_estimate)) << '\n';
    }

    os << '\n';
    for (std::size_t m = 0; m < kLadderKinds.size(); ++m)
    {
        bool decreasing = true;
        for (std::size_t i = 1; i < errors[m].size(); ++i)
            decreasing = decreasing && errors[m][i] < errors[m][i - 1];
        os << "decreasing " << to_string(kLadderKinds[m]) << " = "
           << (decreasing ? "pass" : "fail") << '\n';
    }

    auto report_ks = [&](std::string_view label, std::vector<double> sample) {
        auto const ks = ks_chi2_1(std::move(sample));
        os << "ks chi2_1 " << label << " n2 = " << spec.ladder_n2.back()
           << ": D = " << format_number(ks.statistic)
           << ", p = " << format_number(ks.p_value) << ", "
           << (ks.p_value >= kKsLevel ? "pass" : "fail") << '\n';
    };
    report_ks("stage_ratio_truth", ratio_truth);
    report_ks("stage_ratio_estimate", ratio_estimate);

    files.emplace(files.begin(), spec.name + "__diagnostics.txt", os.str());
    return write_all(options.out_dir, files);
}

std::vector<fs::path> run_n1star(ExperimentSpec const& input,
                                 CommandOptions const& options,
                                 std::ostream& log)
{
    auto const spec = effective_spec(input, options);
    int const threads = resolve_thread_count(options.threads);
    auto const model = spec.model();

    FileList files;
    for (int n : spec.n_list)
    {
        auto const search = optimal_n1(model,
                                       spec.design(n, 1),
                                       spec.theta_true,
                                       spec.quadrature_nodes,
                                       threads);
        std::ostringstream os;
        os << header("n1star", spec);
        os << "# n = " << n << '\n'
           << "# n1_star = " << search.n1_star << '\n';
        os << "n1,fisher_info,boundary_a_mass,boundary_b_mass,"
              "interior_mass,interior_integral\n";
        for (std::size_t i = 0; i < search.trace.size(); ++i)
        {
            auto const& f = search.trace[i];
            os << i + 1 << ',' << format_number(f.total) << ','
               << format_number(f.boundary_a_mass) << ','
               << format_number(f.boundary_b_mass) << ','
               << format_number(f.interior_mass) << ','
               << format_number(f.interior_integral) << '\n';
        }
        auto const& best = search.trace[search.n1_star - 1];
        log << spec.name << ": n = " << n << ", n1* = " << search.n1_star
            << ", i = " << format_number(best.total) << '\n';
        files.emplace_back(spec.name + "__n1star__n-" + std::to_string(n)
                               + ".csv",
                           os.str());
    }
    return write_all(options.out_dir, files);
}

}  // namespace adaptnorm

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include <doctest.h>

#include "adaptnorm/commands.hpp"
#include "adaptnorm/error.hpp"

using namespace adaptnorm;
namespace fs = std::filesystem;

namespace {
struct TempDir
{
    fs::path path;
    explicit TempDir(std::string const& tag)
        : path(fs::temp_directory_path() / ("adaptnorm_" + tag + "_"
                                            + std::to_string(::getpid())))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(fs::path const& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string> data_lines(std::string const& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
    {
        if (!line.empty() && line[0] != '#')
            out.push_back(line);
    }
    return out;
}

ExperimentSpec table1_spec()
{
    return parse_config(R"(
[t1]
model = logistic_location
n = 100
n1 = 30
reps = 2000
seed = 99
)")[0];
}
}  // namespace

TEST_CASE("number formatting")
{
    CHECK(format_number(0.04949996) == "0.0495");
    CHECK(format_number(123456789) == "1.23457e+08");
    CHECK(format_number(NAN) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("table output layout")
{
    TempDir dir("table");
    CommandOptions opts;
    opts.out_dir = dir.path;
    opts.threads = 1;
    auto files = run_table(table1_spec(), opts);
    REQUIRE(files.size() == 3);
    auto text = slurp(dir.path / "t1__n1-30__n-100.csv");
    CHECK(text.find("# seed = 99") != std::string::npos);
    CHECK(text.find("# spec_hash = " + effective_spec(table1_spec(), opts).hash())
          != std::string::npos);
    CHECK(text.find(std::string("# version = ") + kVersion) != std::string::npos);
    auto lines = data_lines(text);
    REQUIRE(lines.size() == 1 + 4 * 4);
    CHECK(lines[0] == "measure,nominal,left_tail,right_tail,excluded_count,n1_used,R,seed");
    CHECK(lines[5].rfind("observed,0.005,", 0) == 0);
    CHECK(lines[7].rfind("observed,0.05,", 0) == 0);
    CHECK(lines[7].find(",30,2000,99") != std::string::npos);
    CHECK(text.find("incremental_observed_stage") == std::string::npos);
    CHECK(slurp(dir.path / "t1__n1-30__n-100__stagewise.csv")
              .find("incremental_observed_stage,0.05") != std::string::npos);
    auto manifest = slurp(dir.path / "t1__manifest.txt");
    CHECK(manifest.find("model = logistic_location") != std::string::npos);
    CHECK(manifest.find("\n100,30,30,") != std::string::npos);
    for (auto const& entry : fs::directory_iterator(dir.path))
        CHECK(entry.path().extension() != ".tmp");
}

TEST_CASE("single replication gives 0/1 tails")
{
    TempDir dir("r1");
    CommandOptions opts;
    opts.out_dir = dir.path;
    opts.replications = 1;
    run_table(table1_spec(), opts);
    auto lines = data_lines(slurp(dir.path / "t1__n1-30__n-100.csv"));
    for (std::size_t i = 1; i < lines.size(); ++i)
    {
        std::istringstream row(lines[i]);
        std::string measure, nominal, left, right;
        std::getline(row, measure, ',');
        std::getline(row, nominal, ',');
        std::getline(row, left, ',');
        std::getline(row, right, ',');
        CHECK((left == "0" || left == "1"));
        CHECK((right == "0" || right == "1"));
    }
}

TEST_CASE("outputs are byte-identical across threads and reruns")
{
    TempDir a("det_a"), b("det_b");
    CommandOptions one, eight;
    one.out_dir = a.path;
    one.threads = 1;
    one.dump_raw = true;
    eight.out_dir = b.path;
    eight.threads = 8;
    eight.dump_raw = true;
    auto spec = table1_spec();
    auto fa = run_table(spec, one);
    auto fb = run_table(spec, eight);
    REQUIRE(fa.size() == fb.size());
    REQUIRE(fa.size() == 4);
    for (std::size_t i = 0; i < fa.size(); ++i)
    {
        CHECK(fa[i].filename() == fb[i].filename());
        CHECK(slurp(fa[i]) == slurp(fb[i]));
    }
}

TEST_CASE("raw dump columns")
{
    TempDir dir("raw");
    CommandOptions opts;
    opts.out_dir = dir.path;
    opts.dump_raw = true;
    opts.replications = 5;
    run_table(table1_spec(), opts);
    auto lines = data_lines(slurp(dir.path / "t1__n1-30__n-100__raw.csv"));
    REQUIRE(lines.size() == 6);
    CHECK(lines[0].rfind("replication,theta1_hat,x2_hat,theta_hat,boundary_mle", 0) == 0);
    CHECK(lines[1].rfind("0,", 0) == 0);
}

TEST_CASE("figure with one n has one data row")
{
    TempDir dir("fig");
    auto spec = table1_spec();
    spec.replications = 500;
    CommandOptions opts;
    opts.out_dir = dir.path;
    run_figure(spec, opts);
    auto lines = data_lines(slurp(dir.path / "t1__figure.csv"));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].rfind("n,n1_star,iad_expected_fisher,iad_observed,"
                         "iad_incremental_observed_subject,iad_incremental_expected,"
                         "t60_reference", 0) == 0);
    CHECK(lines[1].rfind("100,30,", 0) == 0);
    CHECK(lines[1].find(format_number(0.0101497898556)) != std::string::npos);
}

TEST_CASE("diagnostics flag tiny ladders and reproduce exactly")
{
    TempDir dir("diag");
    auto spec = table1_spec();
    spec.ladder_n2 = {100, 1000};
    CommandOptions opts;
    opts.out_dir = dir.path;
    opts.replications = 10;
    run_diagnostics(spec, opts);
    auto first = slurp(dir.path / "t1__diagnostics.txt");
    CHECK(first.find("insufficient replications") != std::string::npos);
    CHECK(first.find("ks chi2_1 stage_ratio_truth") != std::string::npos);
    CHECK(first.find("p = ") != std::string::npos);
    run_diagnostics(spec, opts);
    CHECK(slurp(dir.path / "t1__diagnostics.txt") == first);
}

TEST_CASE("n1star trace")
{
    TempDir dir("n1star");
    auto spec = table1_spec();
    CommandOptions opts;
    opts.out_dir = dir.path;
    std::ostringstream log;
    run_n1star(spec, opts, log);
    CHECK(log.str().find("n1* = ") != std::string::npos);
    auto lines = data_lines(slurp(dir.path / "t1__n1star__n-100.csv"));
    CHECK(lines.size() == 1 + 99);
}

TEST_CASE("optimal policy resolves n1 per n")
{
    auto spec = table1_spec();
    spec.n1.reset();
    int n1 = resolve_n1(spec, 100, 1);
    CHECK(n1 >= 1);
    CHECK(n1 < 100);
}

TEST_CASE("command line exit codes and cleanup")
{
    TempDir dir("cli");
    auto cfg = dir.path / "bad.cfg";
    std::ofstream(cfg) << "[x]\nmodel = logistic_location\nn = 100\nn1 = 100\n";
    auto out = dir.path / "out";
    auto err = dir.path / "err.txt";
    std::string cmd = std::string(ADAPTNORM_CLI) + " table --config " + cfg.string()
                      + " --out " + out.string() + " 2> " + err.string();
    int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 1);
    CHECK(slurp(err).find("n1 must be < n") != std::string::npos);
    CHECK_FALSE(fs::exists(out));

    auto good = dir.path / "good.cfg";
    std::ofstream(good) << "[ok]\nmodel = logistic_location\nn = 100\nn1 = 30\nreps = 50\n";
    cmd = std::string(ADAPTNORM_CLI) + " table --config " + good.string() + " --out "
          + out.string() + " --seed 5 --threads 2 > /dev/null";
    status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(slurp(out / "ok__n1-30__n-100.csv").find("# seed = 5") != std::string::npos);

    cmd = std::string(ADAPTNORM_CLI) + " bogus > /dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 1);
}

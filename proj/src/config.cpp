#include "adaptnorm/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "adaptnorm/error.hpp"

namespace adaptnorm {

namespace {
std::string_view trim(std::string_view s)
{
    auto const ws = " \t\r\n";
    auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos)
        return {};
    auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s)
{
    std::vector<std::string_view> out;
    while (true)
    {
        auto comma = s.find(',');
        auto item = trim(s.substr(0, comma));
        if (!item.empty())
            out.push_back(item);
        if (comma == std::string_view::npos)
            break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value)
{
    throw ConfigError("invalid value '" + std::string(value) + "' for key '"
                      + std::string(key) + "'");
}

double parse_double(std::string_view key, std::string_view value)
{
    std::string s(value);
    std::size_t used = 0;
    double v = 0;
    try
    {
        v = std::stod(s, &used);
    }
    catch (std::exception const&)
    {
        bad_value(key, value);
    }
    if (used != s.size() || !std::isfinite(v))
        bad_value(key, value);
    return v;
}

template<class Int>
Int parse_int(std::string_view key, std::string_view value)
{
    Int v{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        bad_value(key, value);
    return v;
}

void apply(ExperimentSpec& spec, std::string_view key, std::string_view value)
{
    if (key == "model")
        spec.family = family_from_string(value);
    else if (key == "x1")
        spec.x1 = parse_double(key, value);
    else if (key == "a")
        spec.interval.a = parse_double(key, value);
    else if (key == "b")
        spec.interval.b = parse_double(key, value);
    else if (key == "theta_true")
        spec.theta_true = parse_double(key, value);
    else if (key == "sigma")
        spec.sigma = parse_double(key, value);
    else if (key == "theta_lo")
        spec.theta_lo = parse_double(key, value);
    else if (key == "theta_hi")
        spec.theta_hi = parse_double(key, value);
    else if (key == "n")
    {
        spec.n_list.clear();
        for (auto item : split_list(value))
            spec.n_list.push_back(parse_int<int>(key, item));
    }
    else if (key == "n1")
    {
        if (value == "optimal")
            spec.n1.reset();
        else
            spec.n1 = parse_int<int>(key, value);
    }
    else if (key == "reps")
        spec.replications = parse_int<std::size_t>(key, value);
    else if (key == "seed")
        spec.master_seed = parse_int<std::uint64_t>(key, value);
    else if (key == "levels")
    {
        spec.levels.clear();
        for (auto item : split_list(value))
            spec.levels.push_back(parse_double(key, item));
    }
    else if (key == "fisher_at")
        spec.fisher_at = fisher_norm_point_from_string(value);
    else if (key == "seed_replicates")
        spec.seed_replicates = parse_int<int>(key, value);
    else if (key == "ladder_n2")
    {
        spec.ladder_n2.clear();
        for (auto item : split_list(value))
            spec.ladder_n2.push_back(parse_int<int>(key, item));
    }
    else if (key == "ladder_n1")
        spec.ladder_n1 = parse_int<int>(key, value);
    else if (key == "ladder_reps")
        spec.ladder_replications = parse_int<std::size_t>(key, value);
    else if (key == "quadrature_nodes")
        spec.quadrature_nodes = parse_int<int>(key, value);
    else
        throw ConfigError("unknown key '" + std::string(key) + "'");
}

// Shortest text that parses back to the same value
std::string exact(double value)
{
    char buffer[32];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, end);
}

std::string exact(int value) { return std::to_string(value); }

template<class T>
std::string join(std::vector<T> const& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? ", " : "") + exact(values[i]);
    return out;
}
}  // namespace

MeanModel ExperimentSpec::model() const
{
    if (!(interval.a < interval.b))
        throw ConfigError("dose interval requires a < b");
    if (!theta_hi && !(interval.a > 0))
        throw ConfigError("default theta_hi = 1/a requires a > 0");
    return MeanModel(family,
                     theta_lo.value_or(0.0),
                     theta_hi.value_or(1.0 / interval.a));
}

DesignConfig ExperimentSpec::design(int n, int n1_used) const
{
    DesignConfig config{x1, interval, n1_used, n, sigma, theta_true};
    config.validate(model());
    return config;
}

void ExperimentSpec::validate() const
{
    auto const m = model();
    if (n_list.empty())
        throw ConfigError("n list must be nonempty");
    for (int n : n_list)
    {
        // n1 = 1 stands in for the optimal policy, whose search range is
        // {1, ..., n-1}
        design(n, n1.value_or(1));
    }
    if (replications < 1)
        throw ConfigError("reps must be >= 1");
    for (double alpha : levels)
    {
        if (!(alpha > 0 && alpha < 0.5))
            throw ConfigError("nominal levels must lie in (0, 0.5)");
    }
    if (levels.empty())
        throw ConfigError("levels must be nonempty");
    if (seed_replicates < 1)
        throw ConfigError("seed_replicates must be >= 1");
    if (quadrature_nodes < 3)
        throw ConfigError("quadrature_nodes must be >= 3");
    if (ladder_n1 < 1)
        throw ConfigError("ladder_n1 must be >= 1");
    if (ladder_n2.empty())
        throw ConfigError("ladder_n2 must be nonempty");
    for (int n2 : ladder_n2)
    {
        if (n2 < 1)
            throw ConfigError("ladder_n2 entries must be >= 1");
    }
    if (ladder_replications < 1)
        throw ConfigError("ladder_reps must be >= 1");
    (void)m;
}

std::string ExperimentSpec::canonical() const
{
    std::ostringstream os;
    os << "name = " << name << '\n'
       << "model = " << to_string(family) << '\n'
       << "x1 = " << exact(x1) << '\n'
       << "a = " << exact(interval.a) << '\n'
       << "b = " << exact(interval.b) << '\n'
       << "theta_true = " << exact(theta_true) << '\n'
       << "sigma = " << exact(sigma) << '\n';
    if (theta_lo)
        os << "theta_lo = " << exact(*theta_lo) << '\n';
    if (theta_hi)
        os << "theta_hi = " << exact(*theta_hi) << '\n';
    os << "n = " << join(n_list) << '\n'
       << "n1 = " << (n1 ? std::to_string(*n1) : std::string("optimal"))
       << '\n'
       << "reps = " << replications << '\n'
       << "seed = " << master_seed << '\n'
       << "levels = " << join(levels) << '\n'
       << "fisher_at = " << to_string(fisher_at) << '\n'
       << "seed_replicates = " << seed_replicates << '\n'
       << "ladder_n1 = " << ladder_n1 << '\n'
       << "ladder_n2 = " << join(ladder_n2) << '\n'
       << "ladder_reps = " << ladder_replications << '\n'
       << "quadrature_nodes = " << quadrature_nodes << '\n';
    return os.str();
}

std::string ExperimentSpec::hash() const
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical())
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::vector<ExperimentSpec> parse_config(std::string_view text)
{
    std::vector<std::pair<std::string, std::string>> defaults;
    std::vector<ExperimentSpec> specs;
    int line_no = 0;
    bool in_section = false;

    while (!text.empty())
    {
        auto eol = text.find('\n');
        auto line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size()
                                                         : eol + 1);
        ++line_no;

        auto hash = line.find('#');
        line = trim(line.substr(0, hash));
        if (line.empty())
            continue;

        auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
        try
        {
            if (line.front() == '[')
            {
                if (line.back() != ']')
                    throw ConfigError("malformed section header");
                ExperimentSpec spec;
                spec.name = std::string(trim(line.substr(1, line.size() - 2)));
                if (spec.name.empty())
                    throw ConfigError("empty section name");
                for (auto const& s : specs)
                {
                    if (s.name == spec.name)
                        throw ConfigError("duplicate section '" + spec.name
                                          + "'");
                }
                for (auto const& [k, v] : defaults)
                    apply(spec, k, v);
                specs.push_back(std::move(spec));
                in_section = true;
                continue;
            }
            auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError("expected 'key = value'");
            auto key = trim(line.substr(0, eq));
            auto value = trim(line.substr(eq + 1));
            if (in_section)
            {
                apply(specs.back(), key, value);
            }
            else
            {
                ExperimentSpec scratch;
                apply(scratch, key, value);
                defaults.emplace_back(key, value);
            }
        }
        catch (ConfigError const& e)
        {
            throw ConfigError(where() + e.what());
        }
    }
    if (specs.empty())
        throw ConfigError("config declares no [section]");
    for (auto const& spec : specs)
    {
        try
        {
            spec.validate();
        }
        catch (ConfigError const& e)
        {
            throw ConfigError("[" + spec.name + "] " + e.what());
        }
    }
    return specs;
}

std::vector<ExperimentSpec> load_config(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace adaptnorm

#include "adaptnorm/rng.hpp"

#include "adaptnorm/numerics.hpp"

namespace adaptnorm {

namespace {
constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a,
                    std::uint32_t b,
                    std::uint32_t& hi,
                    std::uint32_t& lo)
{
    std::uint64_t product = std::uint64_t{a} * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}
}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key)
{
    for (int round = 0; round < 10; ++round)
    {
        if (round > 0)
        {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

namespace {
inline double to_unit_open(std::uint32_t hi, std::uint32_t lo)
{
    std::uint64_t bits = (std::uint64_t{hi} << 32) | lo;
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}
}  // namespace

Philox4x32::Counter::value_type
ReplicationStream::block_index_high(Stage stage, std::uint64_t subject) const
{
    return static_cast<std::uint32_t>(subject >> 33)
           | (static_cast<std::uint32_t>(stage) << 30);
}

Philox4x32::Counter
ReplicationStream::block(Stage stage, std::uint64_t subject) const
{
    // Two subjects share one 128-bit block; each takes 64 bits.
    Philox4x32::Counter ctr{static_cast<std::uint32_t>(subject >> 1),
                            block_index_high(stage, subject),
                            static_cast<std::uint32_t>(replication_),
                            static_cast<std::uint32_t>(replication_ >> 32)};
    Philox4x32::Key key{static_cast<std::uint32_t>(seed_),
                        static_cast<std::uint32_t>(seed_ >> 32)};
    return Philox4x32::generate(ctr, key);
}

double ReplicationStream::uniform(Stage stage, std::uint64_t subject) const
{
    auto b = block(stage, subject);
    std::size_t const offset = 2 * (subject & 1);
    return to_unit_open(b[offset], b[offset + 1]);
}

double ReplicationStream::normal(Stage stage, std::uint64_t subject) const
{
    return normal_quantile(uniform(stage, subject));
}

void ReplicationStream::fill_normals(Stage stage, std::span<double> out) const
{
    for (std::size_t i = 0; i < out.size(); i += 2)
    {
        auto b = block(stage, i);
        out[i] = normal_quantile(to_unit_open(b[0], b[1]));
        if (i + 1 < out.size())
            out[i + 1] = normal_quantile(to_unit_open(b[2], b[3]));
    }
}

}  // namespace adaptnorm

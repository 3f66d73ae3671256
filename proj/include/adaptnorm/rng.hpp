#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace adaptnorm {

/*!
 * Philox4x32-10 counter-based block cipher (Salmon et al., SC'11).
 *
 * Maps a 128-bit counter and 64-bit key to 128 pseudorandom bits with no
 * internal state, so any draw can be regenerated from its coordinates.
 */
class Philox4x32
{
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key);
};

//! Stage of the two-stage design a response belongs to.
enum class Stage : std::uint32_t
{
    first = 1,
    second = 2,
};

/*!
 * Substream for one replication of a Monte Carlo experiment.
 *
 * A uniform is addressed by (master seed, replication, stage, subject);
 * each subject consumes exactly one 53-bit uniform, so results never
 * depend on draw order or thread assignment.
 */
class ReplicationStream
{
  public:
    ReplicationStream(std::uint64_t master_seed, std::uint64_t replication)
        : seed_(master_seed), replication_(replication)
    {
    }

    //! Uniform on the open interval (0, 1).
    double uniform(Stage stage, std::uint64_t subject) const;

    //! Standard normal variate by inversion of uniform(stage, subject).
    double normal(Stage stage, std::uint64_t subject) const;

    //! out[i] = normal(stage, i) for every i, one cipher call per pair.
    void fill_normals(Stage stage, std::span<double> out) const;

    std::uint64_t master_seed() const { return seed_; }
    std::uint64_t replication() const { return replication_; }

  private:
    Philox4x32::Counter::value_type block_index_high(Stage stage,
                                                     std::uint64_t subject) const;
    Philox4x32::Counter block(Stage stage, std::uint64_t subject) const;

    std::uint64_t seed_;
    std::uint64_t replication_;
};

}  // namespace adaptnorm

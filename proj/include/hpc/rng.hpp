#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hpc {

/// Names one reproducible random stream. Identical specs always yield the
/// identical stream, on every platform and in every release; distinct
/// role_tags or trial_indices yield unrelated streams.
struct SeedSpec {
    uint64_t master_seed = 0;
    std::string role_tag;
    uint64_t trial_index = 0;
};

/// Counter-based 64-bit generator (splitmix64 over a Weyl sequence),
/// keyed by a hash of the SeedSpec. Value type, single owner; copying
/// forks the state. No global state anywhere.
class RandomStream {
public:
    explicit RandomStream(uint64_t key) : state_(key) {}

    uint64_t next_u64();

    /// Uniform double in [0, 1), 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// One fair bit. Bits are consumed LSB-first from buffered words, so
    /// 64 consecutive next_bit() calls read one next_u64() word.
    bool next_bit() {
        if (bits_left_ == 0) {
            bit_buffer_ = next_u64();
            bits_left_ = 64;
        }
        bool b = bit_buffer_ & 1;
        bit_buffer_ >>= 1;
        --bits_left_;
        return b;
    }

    /// Unbiased uniform integer in [0, bound); bound >= 1.
    /// Lemire's multiply-and-reject method: exact uniform, no platform
    /// dependence (std distributions are implementation-defined).
    uint64_t next_below(uint64_t bound);

    /// Distinct sample of k values from [0, n), sorted ascending
    /// (partial Fisher-Yates). Requires k <= n.
    std::vector<uint32_t> sample_without_replacement(uint32_t k, uint32_t n);

private:
    uint64_t state_;
    uint64_t bit_buffer_ = 0;
    uint32_t bits_left_ = 0;
};

/// The fixed SeedSpec -> stream mapping: FNV-1a over the byte encoding
/// [master_seed LE8 | tag_length LE8 | tag bytes | trial_index LE8],
/// finalized with two splitmix64 mixing rounds.
RandomStream derive_stream(const SeedSpec& spec);

/// Key derivation alone (used to scope sub-experiments to fresh seeds).
uint64_t derive_key(const SeedSpec& spec);

} // namespace hpc

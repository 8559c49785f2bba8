#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hpc {

/// Exact binomial coefficient C(n, k) in 64-bit arithmetic.
/// Returns 0 when k > n. Throws std::overflow_error if the value (or an
/// intermediate of the product formula) does not fit in uint64_t.
/// Supported domain: n <= 10^4, k <= 8; larger k works when the value fits.
uint64_t binom(uint32_t n, uint32_t k);

/// Like binom() but saturates to UINT64_MAX instead of throwing.
/// Handy for comparisons against ranks during unranking.
uint64_t binom_saturating(uint32_t n, uint32_t k);

/// Precomputed Pascal triangle for hot loops (rank arithmetic, slice maps).
/// Immutable after construction; any entry that would overflow uint64_t
/// makes the constructor throw.
class BinomTable {
public:
    BinomTable(uint32_t max_n, uint32_t max_k);

    uint64_t operator()(uint32_t n, uint32_t k) const {
        if (k > max_k_ || n > max_n_) return binom(n, k);
        if (k > n) return 0;
        return table_[static_cast<size_t>(n) * (max_k_ + 1) + k];
    }

    uint32_t max_n() const { return max_n_; }
    uint32_t max_k() const { return max_k_; }

private:
    uint32_t max_n_;
    uint32_t max_k_;
    std::vector<uint64_t> table_;
};

/// Colexicographic rank of a strictly increasing vertex tuple:
/// rank = sum_j C(members[j-1], j), j = 1..k. Bijection between k-subsets
/// of [0, N) and [0, C(N, k)) for every N. Throws std::invalid_argument
/// if members are not strictly increasing.
uint64_t comb_rank(std::span<const uint32_t> members);

/// Same, using a caller-supplied table that must cover (max member, k).
uint64_t comb_rank(std::span<const uint32_t> members, const BinomTable& binoms);

/// Inverse of comb_rank: the k-subset with the given colex rank.
/// When vertex_bound is set, throws std::out_of_range unless
/// rank < C(vertex_bound, k) (equivalently: all members < vertex_bound).
std::vector<uint32_t> comb_unrank(uint64_t rank, uint32_t k,
                                  std::optional<uint32_t> vertex_bound = std::nullopt);

/// In-place variant used by decode loops; out is resized to k.
void comb_unrank(uint64_t rank, uint32_t k, std::vector<uint32_t>& out);

/// Advances a strictly increasing k-subset of [0, n) to its colex successor.
/// Returns false (leaving members unspecified) when members was the last
/// subset, i.e. {n-k, ..., n-1}. Visiting subsets this way enumerates
/// ranks 0, 1, 2, ... in order.
bool next_colex(std::span<uint32_t> members, uint32_t n);

} // namespace hpc

#include "hpc/combinatorics.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace hpc {

namespace {

// Multiplicative formula. After step i the accumulator equals
// C(n-k+i, i), which is nondecreasing in i, so checking each step
// catches every overflow. Division is exact at every step.
uint64_t binom_impl(uint32_t n, uint32_t k, bool saturate) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (uint32_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<uint64_t>::max()) {
            if (saturate) return std::numeric_limits<uint64_t>::max();
            throw std::overflow_error("binom(" + std::to_string(n) + ", " +
                                      std::to_string(k) + ") exceeds 64 bits");
        }
    }
    return static_cast<uint64_t>(r);
}

} // namespace

uint64_t binom(uint32_t n, uint32_t k) { return binom_impl(n, k, false); }

uint64_t binom_saturating(uint32_t n, uint32_t k) { return binom_impl(n, k, true); }

BinomTable::BinomTable(uint32_t max_n, uint32_t max_k)
    : max_n_(max_n), max_k_(max_k),
      table_(static_cast<size_t>(max_n + 1) * (max_k + 1), 0) {
    for (uint32_t n = 0; n <= max_n; ++n) {
        uint64_t* row = table_.data() + static_cast<size_t>(n) * (max_k + 1);
        row[0] = 1;
        for (uint32_t k = 1; k <= max_k; ++k) {
            if (k > n) { row[k] = 0; continue; }
            const uint64_t* prev = row - (max_k + 1);
            uint64_t a = prev[k - 1];
            uint64_t b = prev[k];
            if (a > std::numeric_limits<uint64_t>::max() - b)
                throw std::overflow_error("BinomTable(" + std::to_string(max_n) + ", " +
                                          std::to_string(max_k) + ") exceeds 64 bits");
            row[k] = a + b;
        }
    }
}

namespace {

void check_increasing(std::span<const uint32_t> members) {
    for (size_t i = 1; i < members.size(); ++i)
        if (members[i] <= members[i - 1])
            throw std::invalid_argument("comb_rank: members must be strictly increasing");
}

} // namespace

uint64_t comb_rank(std::span<const uint32_t> members) {
    check_increasing(members);
    uint64_t r = 0;
    for (size_t j = 0; j < members.size(); ++j)
        r += binom(members[j], static_cast<uint32_t>(j + 1));
    return r;
}

uint64_t comb_rank(std::span<const uint32_t> members, const BinomTable& binoms) {
    check_increasing(members);
    uint64_t r = 0;
    for (size_t j = 0; j < members.size(); ++j)
        r += binoms(members[j], static_cast<uint32_t>(j + 1));
    return r;
}

void comb_unrank(uint64_t rank, uint32_t k, std::vector<uint32_t>& out) {
    out.resize(k);
    for (uint32_t j = k; j >= 1; --j) {
        // largest c with C(c, j) <= rank; gallop then bisect
        uint64_t lo = j - 1;              // C(j-1, j) = 0 <= rank
        uint64_t hi = j;
        while (hi <= std::numeric_limits<uint32_t>::max() &&
               binom_saturating(static_cast<uint32_t>(hi), j) <= rank) {
            lo = hi;
            hi *= 2;
        }
        if (lo >= std::numeric_limits<uint32_t>::max())
            throw std::out_of_range("comb_unrank: rank too large for 32-bit members");
        hi = std::min<uint64_t>(hi, std::numeric_limits<uint32_t>::max());
        while (lo + 1 < hi) {
            uint64_t mid = lo + (hi - lo) / 2;
            if (binom_saturating(static_cast<uint32_t>(mid), j) <= rank) lo = mid; else hi = mid;
        }
        out[j - 1] = static_cast<uint32_t>(lo);
        rank -= binom(static_cast<uint32_t>(lo), j);
    }
}

std::vector<uint32_t> comb_unrank(uint64_t rank, uint32_t k,
                                  std::optional<uint32_t> vertex_bound) {
    if (vertex_bound && rank >= binom_saturating(*vertex_bound, k))
        throw std::out_of_range("comb_unrank: rank " + std::to_string(rank) +
                                " >= C(" + std::to_string(*vertex_bound) + ", " +
                                std::to_string(k) + ")");
    std::vector<uint32_t> out;
    comb_unrank(rank, k, out);
    return out;
}

bool next_colex(std::span<uint32_t> members, uint32_t n) {
    const size_t k = members.size();
    for (size_t i = 0; i < k; ++i) {
        uint32_t limit = (i + 1 < k) ? members[i + 1] : n;
        if (members[i] + 1 < limit) {
            ++members[i];
            for (size_t j = 0; j < i; ++j) members[j] = static_cast<uint32_t>(j);
            return true;
        }
    }
    return false;
}

} // namespace hpc

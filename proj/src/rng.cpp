#include "hpc/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace hpc {

namespace {

constexpr uint64_t kWeylGamma = 0x9e3779b97f4a7c15ULL;

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void fnv_absorb_u64_le(uint64_t& h, uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
    }
}

} // namespace

uint64_t RandomStream::next_u64() {
    state_ += kWeylGamma;
    return mix64(state_);
}

uint64_t RandomStream::next_below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be >= 1");
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<uint64_t>(m);
    if (low < bound) {
        uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(next_u64()) * bound;
            low = static_cast<uint64_t>(m);
        }
    }
    return static_cast<uint64_t>(m >> 64);
}

std::vector<uint32_t> RandomStream::sample_without_replacement(uint32_t k, uint32_t n) {
    if (k > n) throw std::invalid_argument("sample_without_replacement: k > n");
    std::vector<uint32_t> pool(n);
    for (uint32_t i = 0; i < n; ++i) pool[i] = i;
    for (uint32_t i = 0; i < k; ++i) {
        uint64_t j = i + next_below(n - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

uint64_t derive_key(const SeedSpec& spec) {
    uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a offset basis
    fnv_absorb_u64_le(h, spec.master_seed);
    fnv_absorb_u64_le(h, spec.role_tag.size());
    for (unsigned char c : spec.role_tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    fnv_absorb_u64_le(h, spec.trial_index);
    return mix64(mix64(h));
}

RandomStream derive_stream(const SeedSpec& spec) {
    return RandomStream(derive_key(spec));
}

} // namespace hpc

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hpc/bitvector.hpp"
#include "hpc/combinatorics.hpp"
#include "hpc/rng.hpp"

namespace hpc {

enum class Hypothesis : uint8_t { H0 = 0, H1 = 1 };

/// Model parameters (N, d, optional clique size kappa).
struct ModelParams {
    uint32_t n = 0;
    uint32_t d = 0;
    std::optional<uint32_t> kappa;

    /// Enforces 2 <= d <= 8, N >= 1, kappa <= N (when present) and that
    /// C(N, d) is representable. Throws std::invalid_argument.
    void validate() const;
};

/// d-uniform hypergraph on vertices [0, N), stored as one bit per
/// possible hyperedge: bit comb_rank(e) = 1 iff e is an edge. N < d is
/// legal and gives the unique zero-slot hypergraph.
class DUniformHypergraph {
public:
    DUniformHypergraph(uint32_t vertex_count, uint32_t arity);

    static DUniformHypergraph complete(uint32_t vertex_count, uint32_t arity);

    uint32_t vertex_count() const { return n_; }
    uint32_t arity() const { return d_; }
    uint64_t slot_count() const { return bits_.size(); }
    uint64_t edge_count() const { return bits_.count(); }

    bool edge_at(uint64_t rank) const;
    void set_edge(uint64_t rank, bool present = true);

    /// Edge membership for a strictly increasing d-tuple; validates the
    /// tuple (arity, order, range) and throws std::invalid_argument.
    bool has_edge(std::span<const uint32_t> vertices) const;

    /// Colex rank of a sorted d-tuple; no validation beyond asserts.
    uint64_t rank_of(std::span<const uint32_t> sorted_vertices) const {
        uint64_t r = 0;
        for (size_t j = 0; j < sorted_vertices.size(); ++j)
            r += binoms_->operator()(sorted_vertices[j], static_cast<uint32_t>(j + 1));
        return r;
    }

    bool edge_at_unchecked(uint64_t rank) const { return bits_.get(rank); }

    const BitVector& bits() const { return bits_; }
    BitVector& bits() { return bits_; }
    const BinomTable& binoms() const { return *binoms_; }

    bool operator==(const DUniformHypergraph& o) const {
        return n_ == o.n_ && d_ == o.d_ && bits_ == o.bits_;
    }

private:
    uint32_t n_;
    uint32_t d_;
    BitVector bits_;
    std::shared_ptr<const BinomTable> binoms_; // shared: copies are cheap
};

/// A generated instance together with harness-only ground truth. Detectors
/// take DUniformHypergraph only, so they cannot see the sidecar fields.
struct PlantedInstance {
    DUniformHypergraph graph;
    std::optional<std::vector<uint32_t>> clique; // sorted, present iff H1
    Hypothesis label = Hypothesis::H0;
};

/// Erdos-Renyi d-hypergraph G_d(N, 1/2): every slot set independently
/// with probability 1/2. Consumes one fair bit per slot in colex rank
/// order (slot bits packed LSB-first into consecutive stream words).
DUniformHypergraph sample_null(uint32_t n, uint32_t d, RandomStream& stream);

/// Plants a uniformly random kappa-clique: K ~ uniform kappa-subset of
/// [N]; all d-subsets of K become edges, every other slot is untouched.
/// kappa < d is legal and plants nothing. Throws if kappa > N.
PlantedInstance plant_clique(const DUniformHypergraph& g, uint32_t kappa,
                             RandomStream& stream);

/// True iff every d-subset of `vertices` is an edge; vacuously true when
/// |vertices| < d. Vertices need not be sorted but must be distinct and
/// in range (throws std::invalid_argument otherwise).
bool is_clique(const DUniformHypergraph& g, std::span<const uint32_t> vertices);

/// Incremental clique check: given a sorted clique and v not in it, tests
/// only the d-subsets that contain v. No validation (hot path).
bool extends_clique(const DUniformHypergraph& g,
                    std::span<const uint32_t> sorted_clique, uint32_t v);

} // namespace hpc

#include "hpc/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace hpc {

void ModelParams::validate() const {
    if (d < 2 || d > 8)
        throw std::invalid_argument("ModelParams: d must be in [2, 8], got " + std::to_string(d));
    if (n < 1)
        throw std::invalid_argument("ModelParams: N must be >= 1");
    if (kappa && *kappa > n)
        throw std::invalid_argument("ModelParams: kappa " + std::to_string(*kappa) +
                                    " exceeds N " + std::to_string(n));
    try {
        binom(n, d);
    } catch (const std::overflow_error&) {
        throw std::invalid_argument("ModelParams: C(" + std::to_string(n) + ", " +
                                    std::to_string(d) + ") exceeds 64 bits");
    }
}

DUniformHypergraph::DUniformHypergraph(uint32_t vertex_count, uint32_t arity)
    : n_(vertex_count), d_(arity) {
    ModelParams{n_, d_, std::nullopt}.validate();
    bits_ = BitVector(binom(n_, d_));
    binoms_ = std::make_shared<const BinomTable>(n_ == 0 ? 0 : n_ - 1, d_);
}

DUniformHypergraph DUniformHypergraph::complete(uint32_t vertex_count, uint32_t arity) {
    DUniformHypergraph g(vertex_count, arity);
    for (size_t w = 0; w < g.bits_.word_count(); ++w)
        g.bits_.set_word(w, ~uint64_t{0});
    return g;
}

bool DUniformHypergraph::edge_at(uint64_t rank) const {
    if (rank >= bits_.size())
        throw std::out_of_range("edge_at: rank " + std::to_string(rank) +
                                " >= slot count " + std::to_string(bits_.size()));
    return bits_.get(rank);
}

void DUniformHypergraph::set_edge(uint64_t rank, bool present) {
    if (rank >= bits_.size())
        throw std::out_of_range("set_edge: rank " + std::to_string(rank) +
                                " >= slot count " + std::to_string(bits_.size()));
    bits_.set(rank, present);
}

bool DUniformHypergraph::has_edge(std::span<const uint32_t> vertices) const {
    if (vertices.size() != d_)
        throw std::invalid_argument("has_edge: expected " + std::to_string(d_) +
                                    " vertices, got " + std::to_string(vertices.size()));
    for (size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i] >= n_)
            throw std::invalid_argument("has_edge: vertex " + std::to_string(vertices[i]) +
                                        " out of range [0, " + std::to_string(n_) + ")");
        if (i > 0 && vertices[i] <= vertices[i - 1])
            throw std::invalid_argument("has_edge: vertices must be strictly increasing");
    }
    return bits_.get(rank_of(vertices));
}

DUniformHypergraph sample_null(uint32_t n, uint32_t d, RandomStream& stream) {
    DUniformHypergraph g(n, d);
    for (size_t w = 0; w < g.bits().word_count(); ++w)
        g.bits().set_word(w, stream.next_u64());
    return g;
}

PlantedInstance plant_clique(const DUniformHypergraph& g, uint32_t kappa,
                             RandomStream& stream) {
    if (kappa > g.vertex_count())
        throw std::invalid_argument("plant_clique: kappa " + std::to_string(kappa) +
                                    " exceeds N " + std::to_string(g.vertex_count()));
    PlantedInstance inst{g, std::nullopt, Hypothesis::H1};
    std::vector<uint32_t> k_set = stream.sample_without_replacement(kappa, g.vertex_count());

    const uint32_t d = g.arity();
    if (kappa >= d) {
        // walk all d-subsets of K via index combinations into k_set
        std::vector<uint32_t> idx(d), edge(d);
        for (uint32_t i = 0; i < d; ++i) idx[i] = i;
        do {
            for (uint32_t i = 0; i < d; ++i) edge[i] = k_set[idx[i]];
            inst.graph.set_edge(inst.graph.rank_of(edge), true);
        } while (next_colex(idx, kappa));
    }
    inst.clique = std::move(k_set);
    return inst;
}

bool is_clique(const DUniformHypergraph& g, std::span<const uint32_t> vertices) {
    std::vector<uint32_t> s(vertices.begin(), vertices.end());
    std::sort(s.begin(), s.end());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= g.vertex_count())
            throw std::invalid_argument("is_clique: vertex " + std::to_string(s[i]) +
                                        " out of range");
        if (i > 0 && s[i] == s[i - 1])
            throw std::invalid_argument("is_clique: vertices must be distinct");
    }
    const uint32_t d = g.arity();
    if (s.size() < d) return true;

    std::vector<uint32_t> idx(d), edge(d);
    for (uint32_t i = 0; i < d; ++i) idx[i] = i;
    do {
        for (uint32_t i = 0; i < d; ++i) edge[i] = s[idx[i]];
        if (!g.edge_at_unchecked(g.rank_of(edge))) return false;
    } while (next_colex(idx, static_cast<uint32_t>(s.size())));
    return true;
}

bool extends_clique(const DUniformHypergraph& g,
                    std::span<const uint32_t> sorted_clique, uint32_t v) {
    const uint32_t d = g.arity();
    const size_t k = sorted_clique.size();
    if (k + 1 < d) return true;

    // choose d-1 members of the clique, merge v in sorted position
    std::vector<uint32_t> idx(d - 1), edge(d);
    for (uint32_t i = 0; i + 1 < d; ++i) idx[i] = i;
    do {
        size_t p = 0;
        for (uint32_t i = 0; i + 1 < d; ++i) {
            uint32_t u = sorted_clique[idx[i]];
            if (u < v) edge[p] = u, ++p;
            else break;
        }
        edge[p] = v;
        for (size_t i = p; i + 1 < d; ++i) edge[i + 1] = sorted_clique[idx[i]];
        if (!g.edge_at_unchecked(g.rank_of(edge))) return false;
    } while (next_colex(idx, static_cast<uint32_t>(k)));
    return true;
}

} // namespace hpc

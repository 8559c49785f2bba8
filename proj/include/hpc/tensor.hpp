#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hpc/hypergraph.hpp"
#include "hpc/rng.hpp"

namespace hpc {

enum class Centering : uint8_t { Raw, Centered };

/// Symmetric order-d adjacency tensor of a hypergraph, accessed lazily.
/// Raw entries are 0/1 (0 on any repeated index); centered entries are
/// 2*raw - 1 on distinct indices and exactly 0 on any repeated index.
class AdjacencyTensorView {
public:
    AdjacencyTensorView(const DUniformHypergraph& g, Centering centering)
        : g_(&g), centering_(centering) {}

    const DUniformHypergraph& graph() const { return *g_; }
    Centering centering() const { return centering_; }
    uint32_t order() const { return g_->arity(); }
    uint32_t dim() const { return g_->vertex_count(); }

    /// idx must hold exactly order() indices, each < dim().
    double entry(std::span<const uint32_t> idx) const;

private:
    const DUniformHypergraph* g_;
    Centering centering_;
};

/// Matricization of the tensor: the first row_modes indices form the row
/// id (mixed radix, mode 1 least significant) and the remaining d - row_modes
/// form the column id. The default row_modes = 1 gives the N x N^{d-1}
/// unfolding with column id sum_{j=2..d} i_j * N^{j-2}.
class UnfoldingView {
public:
    explicit UnfoldingView(const AdjacencyTensorView& tensor, uint32_t row_modes = 1);

    const AdjacencyTensorView& tensor() const { return *tensor_; }
    uint32_t row_modes() const { return row_modes_; }
    uint64_t rows() const { return rows_; }
    uint64_t cols() const { return cols_; }

    double entry_at(uint64_t row, uint64_t col) const;

private:
    const AdjacencyTensorView* tensor_;
    uint32_t row_modes_;
    uint64_t rows_;
    uint64_t cols_;
};

enum class MatvecSide : uint8_t { Right, Left };

/// Right: returns M*v (v has cols() entries); left: returns M^T*v (v has
/// rows() entries). Streams over all N^d tuples, never materializing M.
std::vector<double> unfold_matvec(const UnfoldingView& u, std::span<const double> v,
                                  MatvecSide side);

struct SigmaResult {
    double sigma = 0.0;
    uint32_t iterations = 0;
    bool converged = false;
};

/// Top singular value of the unfolding via power iteration on the row-side
/// Gram operator w -> M(M^T w). Start vector is iid uniform +-1 from the
/// stream. Non-convergence returns the last estimate with converged=false.
SigmaResult top_singular_value(const UnfoldingView& u, double tol, uint32_t max_iter,
                               RandomStream& stream);

/// Same computation with a caller-supplied start vector (rows() entries).
SigmaResult top_singular_value(const UnfoldingView& u, double tol, uint32_t max_iter,
                               std::span<const double> start);

struct SliceResult {
    DUniformHypergraph graph;        // 2-uniform, on N-d+2 relabeled vertices
    std::vector<uint32_t> vertex_map; // vertex_map[new_id] = original id
};

/// Fixes d-2 distinct vertices and varies the remaining two, producing the
/// 2-uniform graph on the surviving vertices: {i,j} is an edge iff
/// {i,j} union fixed is a hyperedge. Requires d >= 3.
SliceResult slice(const AdjacencyTensorView& t, std::span<const uint32_t> fixed);

} // namespace hpc

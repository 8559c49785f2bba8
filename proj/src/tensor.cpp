#include "hpc/tensor.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hpc {

namespace {

constexpr uint32_t kMaxArity = 8;

/// Sorts up to kMaxArity indices into scratch and returns false when any
/// index repeats.
bool sort_distinct(std::span<const uint32_t> idx, std::array<uint32_t, kMaxArity>& scratch) {
    size_t d = idx.size();
    for (size_t i = 0; i < d; ++i) {
        uint32_t v = idx[i];
        size_t j = i;
        while (j > 0 && scratch[j - 1] > v) {
            scratch[j] = scratch[j - 1];
            --j;
        }
        scratch[j] = v;
    }
    for (size_t i = 1; i < d; ++i)
        if (scratch[i] == scratch[i - 1]) return false;
    return true;
}

/// Entry value for in-range indices; skips the public validation.
double entry_unchecked(const DUniformHypergraph& g, Centering centering,
                       std::span<const uint32_t> idx) {
    std::array<uint32_t, kMaxArity> sorted;
    bool distinct = sort_distinct(idx, sorted);
    if (!distinct) return 0.0;
    bool present = g.edge_at_unchecked(
        g.rank_of(std::span<const uint32_t>(sorted.data(), idx.size())));
    if (centering == Centering::Raw) return present ? 1.0 : 0.0;
    return present ? 1.0 : -1.0;
}

uint64_t checked_pow(uint64_t base, uint32_t exp) {
    uint64_t r = 1;
    for (uint32_t i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<uint64_t>::max() / base)
            throw std::overflow_error("unfolding dimension overflows 64 bits");
        r *= base;
    }
    return r;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// Row-side Gram matrix G = M M^T of the mode-1 unfolding, as a dense
/// symmetric N x N array. Accumulates sum_T sigma_T sigma_T^T over all
/// (d-1)-subsets T, where sigma_T[v] is the tensor entry at T u {v}
/// (zero for v in T); each unordered subset stands for (d-1)! orderings,
/// so the accumulated sum is scaled by (d-1)! at the end. Every term is
/// an integer, so the result is exact in double precision.
std::vector<double> build_gram(const AdjacencyTensorView& t) {
    const DUniformHypergraph& g = t.graph();
    const uint32_t n = g.vertex_count();
    const uint32_t d = g.arity();
    std::vector<double> gram(static_cast<size_t>(n) * n, 0.0);
    if (n < d) return gram;

    std::vector<uint32_t> subset(d - 1);
    for (uint32_t i = 0; i + 1 < d; ++i) subset[i] = i;
    std::vector<double> sigma(n);
    std::vector<uint32_t> merged(d);
    std::vector<uint8_t> in_subset(n);
    do {
        std::fill(in_subset.begin(), in_subset.end(), uint8_t{0});
        for (uint32_t v : subset) in_subset[v] = 1;
        for (uint32_t v = 0; v < n; ++v) {
            if (in_subset[v]) {
                sigma[v] = 0.0;
                continue;
            }
            std::merge(subset.begin(), subset.end(), &v, &v + 1, merged.begin());
            bool present = g.edge_at_unchecked(g.rank_of(merged));
            if (t.centering() == Centering::Raw) sigma[v] = present ? 1.0 : 0.0;
            else sigma[v] = present ? 1.0 : -1.0;
        }
        for (uint32_t a = 0; a < n; ++a) {
            double sa = sigma[a];
            if (sa == 0.0) continue;
            double* row = gram.data() + static_cast<size_t>(a) * n;
            for (uint32_t b = a; b < n; ++b) row[b] += sa * sigma[b];
        }
    } while (next_colex(subset, n));

    double orderings = 1.0;
    for (uint32_t i = 2; i < d; ++i) orderings *= i;
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = a; b < n; ++b) {
            double v = gram[static_cast<size_t>(a) * n + b] * orderings;
            gram[static_cast<size_t>(a) * n + b] = v;
            gram[static_cast<size_t>(b) * n + a] = v;
        }
    return gram;
}

template <typename Apply>
SigmaResult power_iterate(uint64_t dim, double tol, uint32_t max_iter,
                          std::vector<double> w, Apply&& apply) {
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
    double wn = norm(w);
    if (wn == 0.0) throw std::invalid_argument("start vector must be nonzero");
    for (double& x : w) x /= wn;

    SigmaResult res;
    std::vector<double> z(dim);
    double prev = -1.0;
    for (uint32_t k = 1; k <= max_iter; ++k) {
        apply(w, z);
        double rayleigh = dot(w, z);
        double s = std::sqrt(std::max(0.0, rayleigh));
        res.sigma = s;
        res.iterations = k;
        double denom = std::max(std::abs(s), std::numeric_limits<double>::min());
        if (k >= 2 && std::abs(s - prev) < tol * denom) {
            res.converged = true;
            return res;
        }
        prev = s;
        double zn = norm(z);
        if (zn == 0.0) {
            res.converged = true; // w is annihilated: estimate is exactly 0
            return res;
        }
        for (uint64_t i = 0; i < dim; ++i) w[i] = z[i] / zn;
    }
    res.converged = false;
    return res;
}

SigmaResult sigma_from_start(const UnfoldingView& u, double tol, uint32_t max_iter,
                             std::vector<double> start) {
    if (u.rows() == 0) throw std::invalid_argument("empty unfolding");
    if (start.size() != u.rows())
        throw std::invalid_argument("start vector length must equal rows()");

    if (u.row_modes() == 1) {
        std::vector<double> gram = build_gram(u.tensor());
        const uint64_t n = u.rows();
        return power_iterate(n, tol, max_iter, std::move(start),
                             [&](std::span<const double> w, std::span<double> z) {
                                 for (uint64_t i = 0; i < n; ++i)
                                     z[i] = dot({gram.data() + i * n, n}, w);
                             });
    }
    return power_iterate(u.rows(), tol, max_iter, std::move(start),
                         [&](std::span<const double> w, std::span<double> z) {
                             std::vector<double> tmp = unfold_matvec(u, w, MatvecSide::Left);
                             std::vector<double> mz = unfold_matvec(u, tmp, MatvecSide::Right);
                             std::copy(mz.begin(), mz.end(), z.begin());
                         });
}

} // namespace

double AdjacencyTensorView::entry(std::span<const uint32_t> idx) const {
    if (idx.size() != order())
        throw std::invalid_argument("index tuple must have exactly d entries");
    for (uint32_t v : idx)
        if (v >= dim()) throw std::out_of_range("tensor index out of range");
    return entry_unchecked(*g_, centering_, idx);
}

UnfoldingView::UnfoldingView(const AdjacencyTensorView& tensor, uint32_t row_modes)
    : tensor_(&tensor), row_modes_(row_modes) {
    uint32_t d = tensor.order();
    if (row_modes < 1 || row_modes >= d)
        throw std::invalid_argument("row_modes must be in [1, d-1]");
    rows_ = checked_pow(tensor.dim(), row_modes);
    cols_ = checked_pow(tensor.dim(), d - row_modes);
}

double UnfoldingView::entry_at(uint64_t row, uint64_t col) const {
    if (row >= rows_ || col >= cols_)
        throw std::out_of_range("unfolding index out of range");
    uint32_t d = tensor_->order();
    uint64_t n = tensor_->dim();
    std::array<uint32_t, kMaxArity> idx;
    for (uint32_t j = 0; j < row_modes_; ++j) {
        idx[j] = static_cast<uint32_t>(row % n);
        row /= n;
    }
    for (uint32_t j = row_modes_; j < d; ++j) {
        idx[j] = static_cast<uint32_t>(col % n);
        col /= n;
    }
    return entry_unchecked(tensor_->graph(), tensor_->centering(),
                           std::span<const uint32_t>(idx.data(), d));
}

std::vector<double> unfold_matvec(const UnfoldingView& u, std::span<const double> v,
                                  MatvecSide side) {
    const uint64_t in_len = side == MatvecSide::Right ? u.cols() : u.rows();
    const uint64_t out_len = side == MatvecSide::Right ? u.rows() : u.cols();
    if (v.size() != in_len) throw std::invalid_argument("matvec dimension mismatch");
    std::vector<double> out(out_len, 0.0);

    const DUniformHypergraph& g = u.tensor().graph();
    const Centering centering = u.tensor().centering();
    const uint32_t d = g.arity();
    const uint64_t n = g.vertex_count();
    const uint32_t r = u.row_modes();

    std::vector<uint32_t> idx(d, 0);
    while (true) {
        double e = entry_unchecked(g, centering, idx);
        if (e != 0.0) {
            uint64_t row = 0;
            for (uint32_t j = r; j-- > 0;) row = row * n + idx[j];
            uint64_t col = 0;
            for (uint32_t j = d; j-- > r;) col = col * n + idx[j];
            if (side == MatvecSide::Right) out[row] += e * v[col];
            else out[col] += e * v[row];
        }
        uint32_t p = 0;
        while (p < d && idx[p] + 1 == n) idx[p++] = 0;
        if (p == d) break;
        ++idx[p];
    }
    return out;
}

SigmaResult top_singular_value(const UnfoldingView& u, double tol, uint32_t max_iter,
                               RandomStream& stream) {
    std::vector<double> start(u.rows());
    for (double& x : start) x = stream.next_bit() ? 1.0 : -1.0;
    return sigma_from_start(u, tol, max_iter, std::move(start));
}

SigmaResult top_singular_value(const UnfoldingView& u, double tol, uint32_t max_iter,
                               std::span<const double> start) {
    return sigma_from_start(u, tol, max_iter,
                            std::vector<double>(start.begin(), start.end()));
}

SliceResult slice(const AdjacencyTensorView& t, std::span<const uint32_t> fixed) {
    const DUniformHypergraph& g = t.graph();
    const uint32_t n = g.vertex_count();
    const uint32_t d = g.arity();
    if (d < 3) throw std::invalid_argument("slice needs d >= 3");
    if (fixed.size() != static_cast<size_t>(d) - 2)
        throw std::invalid_argument("slice needs exactly d-2 fixed vertices");

    std::vector<uint32_t> sorted_fixed(fixed.begin(), fixed.end());
    std::sort(sorted_fixed.begin(), sorted_fixed.end());
    for (size_t i = 0; i < sorted_fixed.size(); ++i) {
        if (sorted_fixed[i] >= n)
            throw std::invalid_argument("fixed vertex out of range");
        if (i > 0 && sorted_fixed[i] == sorted_fixed[i - 1])
            throw std::invalid_argument("fixed vertices must be distinct");
    }

    SliceResult res{DUniformHypergraph(1, 2), {}};
    uint32_t n_out = n - (d - 2);
    if (n < d - 1) throw std::invalid_argument("slice would have no vertices");
    res.graph = DUniformHypergraph(n_out, 2);
    res.vertex_map.reserve(n_out);
    {
        size_t f = 0;
        for (uint32_t v = 0; v < n; ++v) {
            if (f < sorted_fixed.size() && sorted_fixed[f] == v) ++f;
            else res.vertex_map.push_back(v);
        }
    }

    std::vector<uint32_t> pair(2);
    std::vector<uint32_t> hyperedge(d);
    for (uint32_t j = 1; j < n_out; ++j) {
        for (uint32_t i = 0; i < j; ++i) {
            pair[0] = res.vertex_map[i];
            pair[1] = res.vertex_map[j];
            std::merge(sorted_fixed.begin(), sorted_fixed.end(), pair.begin(), pair.end(),
                       hyperedge.begin());
            if (g.edge_at_unchecked(g.rank_of(hyperedge))) {
                uint32_t e[2] = {i, j};
                res.graph.set_edge(res.graph.rank_of(e), true);
            }
        }
    }
    return res;
}

} // namespace hpc

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hpc/hypergraph.hpp"

namespace hpc {

/// Decode failure; message names the offending line (text) or byte
/// offset (binary).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

enum class GraphFormat : uint8_t { Text, Binary };

// Text format (.hg): header "d N M", then M edge lines of d strictly
// increasing 1-based vertex ids, single spaces, LF endings, edges in
// colex rank order.
//
// Binary format (.hgb): magic "HPCB", version 0x01, d as u8, N as u64 LE,
// then ceil(C(N,d)/8) edge-bit bytes, bit r at byte r/8 position r%8
// (LSB-first), r = colex rank.

void encode_text(const DUniformHypergraph& g, std::ostream& out);
DUniformHypergraph decode_text(std::istream& in);

void encode_binary(const DUniformHypergraph& g, std::ostream& out);
DUniformHypergraph decode_binary(std::istream& in);

std::string encode_string(const DUniformHypergraph& g, GraphFormat fmt);
DUniformHypergraph decode_string(const std::string& bytes, GraphFormat fmt);

/// Picks the format from the path suffix: ".hg" text, ".hgb" binary.
/// Throws std::invalid_argument for any other suffix.
GraphFormat format_from_path(const std::string& path);

DUniformHypergraph read_graph_file(const std::string& path);
void write_graph_file(const DUniformHypergraph& g, const std::string& path);

// Truth sidecar (.truth): line 1 "H0" or "H1"; under H1, line 2 holds the
// kappa 1-based clique ids, increasing (empty line when kappa = 0).
struct TruthSidecar {
    Hypothesis label = Hypothesis::H0;
    std::vector<uint32_t> clique; // 0-based in memory
};

void write_truth(const TruthSidecar& truth, std::ostream& out);
TruthSidecar read_truth(std::istream& in);
void write_truth_file(const TruthSidecar& truth, const std::string& path);
TruthSidecar read_truth_file(const std::string& path);

/// Sidecar path for a graph output path: extension replaced by ".truth".
std::string truth_path_for(const std::string& graph_path);

} // namespace hpc

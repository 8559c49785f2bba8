#include "hpc/io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hpc {

namespace {

constexpr char kMagic[4] = {'H', 'P', 'C', 'B'};
constexpr uint8_t kVersion = 0x01;

[[noreturn]] void fail_line(uint64_t line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void fail_offset(uint64_t offset, const std::string& msg) {
    throw ParseError("offset " + std::to_string(offset) + ": " + msg);
}

// strict unsigned decimal parse of a whole token
uint64_t parse_u64(const std::string& tok, uint64_t line, const char* what) {
    uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        fail_line(line, std::string("bad ") + what + " '" + tok + "'");
    return v;
}

std::vector<std::string> split_spaces(const std::string& s) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < s.size()) {
        size_t j = s.find(' ', i);
        if (j == std::string::npos) j = s.size();
        out.push_back(s.substr(i, j - i));
        i = j + 1;
    }
    return out;
}

} // namespace

void encode_text(const DUniformHypergraph& g, std::ostream& out) {
    out << g.arity() << ' ' << g.vertex_count() << ' ' << g.edge_count() << '\n';
    if (g.slot_count() == 0) return;
    std::vector<uint32_t> edge(g.arity());
    for (uint32_t i = 0; i < g.arity(); ++i) edge[i] = i;
    uint64_t rank = 0;
    do {
        if (g.edge_at_unchecked(rank)) {
            for (uint32_t i = 0; i < g.arity(); ++i) {
                if (i) out << ' ';
                out << edge[i] + 1; // 1-based on disk
            }
            out << '\n';
        }
        ++rank;
    } while (next_colex(edge, g.vertex_count()));
}

DUniformHypergraph decode_text(std::istream& in) {
    std::string line;
    uint64_t line_no = 1;
    if (!std::getline(in, line)) fail_line(1, "missing header");
    auto head = split_spaces(line);
    if (head.size() != 3) fail_line(1, "header must be 'd N M'");
    uint64_t d = parse_u64(head[0], 1, "arity");
    uint64_t n = parse_u64(head[1], 1, "vertex count");
    uint64_t m = parse_u64(head[2], 1, "edge count");
    if (d < 2 || d > 8) fail_line(1, "arity must be in [2, 8]");
    if (n < 1 || n > std::numeric_limits<uint32_t>::max())
        fail_line(1, "vertex count out of range");

    DUniformHypergraph g(static_cast<uint32_t>(n), static_cast<uint32_t>(d));
    std::vector<uint32_t> edge(d);
    bool have_prev = false;
    uint64_t prev_rank = 0;
    for (uint64_t e = 0; e < m; ++e) {
        ++line_no;
        if (!std::getline(in, line)) fail_line(line_no, "unexpected end of file");
        auto toks = split_spaces(line);
        if (toks.size() != d)
            fail_line(line_no, "expected " + std::to_string(d) + " vertex ids, got " +
                                   std::to_string(toks.size()));
        for (uint64_t i = 0; i < d; ++i) {
            uint64_t v = parse_u64(toks[i], line_no, "vertex id");
            if (v < 1 || v > n)
                fail_line(line_no, "vertex " + toks[i] + " out of range [1, " +
                                       std::to_string(n) + "]");
            edge[i] = static_cast<uint32_t>(v - 1);
            if (i > 0 && edge[i] == edge[i - 1])
                fail_line(line_no, "duplicate vertex " + toks[i]);
            if (i > 0 && edge[i] < edge[i - 1])
                fail_line(line_no, "vertex ids must be strictly increasing");
        }
        uint64_t rank = g.rank_of(edge);
        if (g.edge_at_unchecked(rank)) fail_line(line_no, "duplicate edge");
        if (have_prev && rank < prev_rank)
            fail_line(line_no, "edges must be in colex rank order");
        prev_rank = rank;
        have_prev = true;
        g.set_edge(rank, true);
    }
    if (std::getline(in, line) && !line.empty())
        fail_line(line_no + 1, "trailing content after last edge");
    return g;
}

void encode_binary(const DUniformHypergraph& g, std::ostream& out) {
    out.write(kMagic, 4);
    out.put(static_cast<char>(kVersion));
    out.put(static_cast<char>(g.arity()));
    uint64_t n = g.vertex_count();
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>((n >> (8 * i)) & 0xff));
    for (uint64_t b = 0; b < g.bits().byte_count(); ++b)
        out.put(static_cast<char>(g.bits().byte(b)));
}

DUniformHypergraph decode_binary(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::string_view(magic, 4) != std::string_view(kMagic, 4))
        fail_offset(0, "bad magic (expected 'HPCB')");
    int ver = in.get();
    if (ver == EOF) fail_offset(4, "truncated header");
    if (ver != kVersion) fail_offset(4, "unsupported version " + std::to_string(ver));
    int d = in.get();
    if (d == EOF) fail_offset(5, "truncated header");
    if (d < 2 || d > 8) fail_offset(5, "arity must be in [2, 8]");
    uint64_t n = 0;
    for (int i = 0; i < 8; ++i) {
        int c = in.get();
        if (c == EOF) fail_offset(6 + i, "truncated vertex count");
        n |= static_cast<uint64_t>(c & 0xff) << (8 * i);
    }
    if (n < 1 || n > std::numeric_limits<uint32_t>::max())
        fail_offset(6, "vertex count out of range");

    DUniformHypergraph g(static_cast<uint32_t>(n), static_cast<uint32_t>(d));
    const uint64_t payload = g.bits().byte_count();
    for (uint64_t b = 0; b < payload; ++b) {
        int c = in.get();
        if (c == EOF) fail_offset(14 + b, "truncated edge bits");
        uint8_t byte = static_cast<uint8_t>(c & 0xff);
        if (b + 1 == payload && (g.slot_count() & 7) != 0) {
            uint8_t mask = static_cast<uint8_t>((1u << (g.slot_count() & 7)) - 1);
            if (byte & ~mask) fail_offset(14 + b, "nonzero padding bits");
        }
        g.bits().set_byte(b, byte);
    }
    if (in.get() != EOF) fail_offset(14 + payload, "trailing bytes");
    return g;
}

std::string encode_string(const DUniformHypergraph& g, GraphFormat fmt) {
    std::ostringstream os(std::ios::binary);
    if (fmt == GraphFormat::Text) encode_text(g, os);
    else encode_binary(g, os);
    return os.str();
}

DUniformHypergraph decode_string(const std::string& bytes, GraphFormat fmt) {
    std::istringstream is(bytes, std::ios::binary);
    return fmt == GraphFormat::Text ? decode_text(is) : decode_binary(is);
}

GraphFormat format_from_path(const std::string& path) {
    if (path.ends_with(".hgb")) return GraphFormat::Binary;
    if (path.ends_with(".hg")) return GraphFormat::Text;
    throw std::invalid_argument("unrecognized graph extension (want .hg or .hgb): " + path);
}

DUniformHypergraph read_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return format_from_path(path) == GraphFormat::Text ? decode_text(in)
                                                       : decode_binary(in);
}

void write_graph_file(const DUniformHypergraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    if (format_from_path(path) == GraphFormat::Text) encode_text(g, out);
    else encode_binary(g, out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_truth(const TruthSidecar& truth, std::ostream& out) {
    if (truth.label == Hypothesis::H0) {
        out << "H0\n";
        return;
    }
    out << "H1\n";
    for (size_t i = 0; i < truth.clique.size(); ++i) {
        if (i) out << ' ';
        out << truth.clique[i] + 1;
    }
    out << '\n';
}

TruthSidecar read_truth(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) fail_line(1, "missing hypothesis label");
    TruthSidecar t;
    if (line == "H0") {
        t.label = Hypothesis::H0;
        return t;
    }
    if (line != "H1") fail_line(1, "hypothesis label must be H0 or H1");
    t.label = Hypothesis::H1;
    if (!std::getline(in, line)) fail_line(2, "missing clique line");
    if (!line.empty()) {
        for (const auto& tok : split_spaces(line)) {
            uint64_t v = parse_u64(tok, 2, "vertex id");
            if (v < 1) fail_line(2, "vertex ids are 1-based");
            if (!t.clique.empty() && v - 1 <= t.clique.back())
                fail_line(2, "clique ids must be strictly increasing");
            t.clique.push_back(static_cast<uint32_t>(v - 1));
        }
    }
    return t;
}

void write_truth_file(const TruthSidecar& truth, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_truth(truth, out);
}

TruthSidecar read_truth_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_truth(in);
}

std::string truth_path_for(const std::string& graph_path) {
    auto dot = graph_path.find_last_of('.');
    auto slash = graph_path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return graph_path + ".truth";
    return graph_path.substr(0, dot) + ".truth";
}

} // namespace hpc

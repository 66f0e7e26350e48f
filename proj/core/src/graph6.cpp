#include "folab/graph6.hpp"

#include "folab/error.hpp"

namespace folab::graph6 {

std::string encode(const Graph& g) {
    const std::size_t n = g.order();
    if (n > kMaxEncodableOrder)
        throw InvalidArgument("graph6: order " + std::to_string(n) + " exceeds the supported width");
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    int acc = 0;
    int nbits = 0;
    for (Vertex j = 1; j < n; ++j) {
        for (Vertex i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
    return out;
}

Graph decode(std::string_view text) {
    std::size_t base = 0;
    constexpr std::string_view header = ">>graph6<<";
    if (text.starts_with(header)) base = header.size();
    std::string_view body = text.substr(base);
    if (body.ends_with('\n')) body.remove_suffix(1);
    if (body.ends_with('\r')) body.remove_suffix(1);

    auto byte_at = [&](std::size_t i) -> int {
        if (i >= body.size()) throw ParseError("graph6: unexpected end of input", base + i);
        const int c = static_cast<unsigned char>(body[i]);
        if (c < 63 || c > 126) throw ParseError("graph6: byte outside the range 63..126", base + i);
        return c - 63;
    };

    std::size_t pos = 0;
    std::size_t n = 0;
    const int first = byte_at(0);
    if (first < 63) {
        n = static_cast<std::size_t>(first);
        pos = 1;
    } else {
        if (body.size() > 1 && static_cast<unsigned char>(body[1]) == 126)
            throw ParseError("graph6: 8-byte size prefix exceeds the supported width", base + 1);
        n = (static_cast<std::size_t>(byte_at(1)) << 12) | (static_cast<std::size_t>(byte_at(2)) << 6) |
            static_cast<std::size_t>(byte_at(3));
        pos = 4;
        if (n > kMaxOrder)
            throw ParseError("graph6: order " + std::to_string(n) + " exceeds the supported maximum", base);
    }

    const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
    const std::size_t data_bytes = (bits + 5) / 6;
    if (body.size() < pos + data_bytes)
        throw ParseError("graph6: truncated adjacency data (expected " + std::to_string(data_bytes) + " bytes)",
                         base + body.size());
    if (body.size() > pos + data_bytes)
        throw ParseError("graph6: trailing bytes after adjacency data", base + pos + data_bytes);

    GraphBuilder b(n);
    std::size_t k = 0;
    for (Vertex j = 1; j < n; ++j) {
        for (Vertex i = 0; i < j; ++i, ++k) {
            const int chunk = byte_at(pos + k / 6);
            if ((chunk >> (5 - static_cast<int>(k % 6))) & 1) b.add_edge(i, j);
        }
    }
    if (bits % 6 != 0) {
        const int last = byte_at(pos + data_bytes - 1);
        const int pad_mask = (1 << (6 - static_cast<int>(bits % 6))) - 1;
        if (last & pad_mask) throw ParseError("graph6: nonzero padding bits", base + pos + data_bytes - 1);
    }
    return std::move(b).build();
}

} // namespace folab::graph6

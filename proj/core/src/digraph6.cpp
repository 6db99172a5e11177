#include "msd/digraph6.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

namespace msd {

namespace {

constexpr char kHeader = '&';
constexpr int kBias = 63;

std::string_view strip_header(std::string_view line) {
    if (!line.empty() && line.front() == kHeader) line.remove_prefix(1);
    return line;
}

}  // namespace

std::size_t digraph6_code_length(int order) {
    const std::size_t bits = static_cast<std::size_t>(order) * static_cast<std::size_t>(order);
    return 1 + (bits + 5) / 6;
}

std::string digraph6_encode(const Digraph& d, bool with_header) {
    const int n = d.order();
    std::string out;
    out.reserve(digraph6_code_length(n) + 1);
    if (with_header) out.push_back(kHeader);
    out.push_back(static_cast<char>(kBias + n));

    int group = 0;
    int used = 0;
    for (int i = 0; i < n; ++i) {
        const std::uint64_t row = d.out_bits(i);
        for (int j = 0; j < n; ++j) {
            group = (group << 1) | static_cast<int>((row >> j) & 1);
            if (++used == 6) {
                out.push_back(static_cast<char>(kBias + group));
                group = 0;
                used = 0;
            }
        }
    }
    if (used > 0) out.push_back(static_cast<char>(kBias + (group << (6 - used))));
    return out;
}

int digraph6_order(std::string_view code) {
    code = strip_header(code);
    if (code.empty()) throw std::invalid_argument("empty digraph6 record");
    const int n = static_cast<unsigned char>(code.front()) - kBias;
    if (n < 1 || n > Digraph::kMaxOrder)
        throw std::invalid_argument("digraph6 order byte out of supported range 1..62");
    return n;
}

Digraph digraph6_decode(std::string_view line) {
    line = strip_header(line);
    const int n = digraph6_order(line);
    if (line.size() != digraph6_code_length(n))
        throw std::invalid_argument("digraph6 record has wrong length for order " +
                                    std::to_string(n));

    std::vector<Arc> arcs;
    const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::size_t pos = 0;
    for (std::size_t byte = 1; byte < line.size(); ++byte) {
        const int value = static_cast<unsigned char>(line[byte]) - kBias;
        if (value < 0 || value > 63)
            throw std::invalid_argument("digraph6 byte outside 63..126");
        for (int b = 5; b >= 0; --b, ++pos) {
            const bool set = (value >> b) & 1;
            if (pos >= bits) {
                if (set) throw std::invalid_argument("digraph6 padding bits must be zero");
                continue;
            }
            if (!set) continue;
            const int i = static_cast<int>(pos / static_cast<std::size_t>(n));
            const int j = static_cast<int>(pos % static_cast<std::size_t>(n));
            if (i == j) throw std::invalid_argument("digraph6 diagonal bit set");
            arcs.push_back({i, j});
        }
    }
    return Digraph(n, arcs);
}

int digraph6_arc_count(std::string_view code) {
    code = strip_header(code);
    digraph6_order(code);  // validates the order byte
    int count = 0;
    for (std::size_t byte = 1; byte < code.size(); ++byte) {
        const int value = static_cast<unsigned char>(code[byte]) - kBias;
        if (value < 0 || value > 63)
            throw std::invalid_argument("digraph6 byte outside 63..126");
        count += std::popcount(static_cast<unsigned>(value));
    }
    return count;
}

}  // namespace msd

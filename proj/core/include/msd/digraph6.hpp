#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "msd/digraph.hpp"

namespace msd {

/// digraph6 line format (orders 1..62): optional leading '&', the order byte
/// n+63, then ceil(n^2/6) bytes of 6 adjacency bits each (value+63), taken
/// row-major from the full n x n matrix, zero-padded at the end.

/// Length of a code without the '&' header.
std::size_t digraph6_code_length(int order);

std::string digraph6_encode(const Digraph& d, bool with_header = true);

/// Decodes a record with or without the '&' header. Throws
/// std::invalid_argument on anything malformed: bad length, bytes outside
/// 63..126, a nonzero diagonal bit, or nonzero padding.
Digraph digraph6_decode(std::string_view line);

/// Order encoded in a record, header optional.
int digraph6_order(std::string_view code);

/// Arc count of an encoded record without decoding it fully.
int digraph6_arc_count(std::string_view code);

}  // namespace msd

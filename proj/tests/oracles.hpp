#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace testutil {

// SHA-256 written straight from the FIPS 180-4 definition (message schedule
// plus 64-round compression), sharing no code with the library's
// OpenSSL-backed digests. Cross-checks every hashing surface.
std::vector<std::uint8_t> ref_sha256(std::string_view data);
std::string ref_sha256_hex(std::string_view data);

// Dense Warshall reachability over a directed graph: reach[i][j] is true
// iff j can be reached from i across one or more edges.
std::vector<std::vector<bool>> ref_reachability(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

}  // namespace testutil

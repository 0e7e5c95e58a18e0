#pragma once

#include <string>

namespace lma3 {

// Normal form used everywhere goal strings are compared or stored: outer
// whitespace trimmed, inner runs collapsed to single spaces, at most one
// trailing period removed, and the first character lowercased. The rest of
// the string keeps its case so names like "Grandma's recipe" survive.
std::string canonical_goal(const std::string& raw);

// Case-insensitive equality after canonicalization, for deduplication.
bool same_goal(const std::string& a, const std::string& b);

std::string lowercase_copy(const std::string& s);

}  // namespace lma3

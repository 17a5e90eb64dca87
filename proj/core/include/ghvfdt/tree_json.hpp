#pragma once

#include "ghvfdt/hoeffding_tree.hpp"

#include <string>
#include <string_view>

namespace ghvfdt {

inline constexpr std::string_view kTreeFormat = "ghvfdt-tree";
inline constexpr int kTreeFormatVersion = 1;

/// Serializes structure and every leaf statistic. Field names are listed in
/// README.md ("Tree checkpoint format").
std::string serialize_tree(const HoeffdingTree& tree, int indent = -1);

/// Inverse of serialize_tree. Throws InputError on a malformed document,
/// an unknown format tag or an unsupported version.
HoeffdingTree deserialize_tree(std::string_view text);

} // namespace ghvfdt

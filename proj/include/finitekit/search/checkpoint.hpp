#pragma once

#include <string>

#include "finitekit/search/approach.hpp"

namespace finitekit::search {

inline constexpr int kCheckpointVersion = 1;

/// JSON with sorted keys; programs as text, hints base64, doubles as their
/// IEEE-754 bit patterns so a reload is bit-exact. Throws Error(budget) when
/// the encoding exceeds `size_cap` bytes.
std::string checkpoint_to_json(const SearchState& state, std::size_t size_cap = std::size_t{64} << 20);
SearchState checkpoint_from_json(const std::string& text);

void save_checkpoint(const SearchState& state, const std::string& path,
                     std::size_t size_cap = std::size_t{64} << 20);
SearchState load_checkpoint(const std::string& path);

}  // namespace finitekit::search

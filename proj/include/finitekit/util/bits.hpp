#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace finitekit {

/// A string over {0,1}; one element per bit, each element 0 or 1.
using BitString = std::vector<std::uint8_t>;

BitString bits_from_string(std::string_view text);  // "0110" -> {0,1,1,0}
std::string bits_to_string(const BitString& bits);

/// `width` low bits of `value`, most significant first.
BitString bits_from_uint(std::uint64_t value, std::size_t width);
std::uint64_t bits_to_uint(const BitString& bits);

/// Every bit string of length <= max_len, shortest first, then lexicographic.
/// There are 2^(max_len+1) - 1 of them; the empty string comes first.
std::vector<BitString> all_bit_strings_up_to(std::size_t max_len);

/// Position of `bits` in the order produced by all_bit_strings_up_to.
std::uint64_t canonical_index(const BitString& bits);

/// Packs bits MSB-first into bytes; the tail byte is zero padded.
std::vector<std::uint8_t> pack_bits(const BitString& bits);
BitString unpack_bits(const std::vector<std::uint8_t>& bytes, std::size_t bit_count);

std::uint64_t fnv1a(const std::uint8_t* data, std::size_t size,
                    std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace finitekit

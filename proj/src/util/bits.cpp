#include "finitekit/util/bits.hpp"

#include "finitekit/util/error.hpp"

namespace finitekit {

BitString bits_from_string(std::string_view text) {
  BitString out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw Error(ErrorCode::input, "bit string may only contain 0 and 1");
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

std::string bits_to_string(const BitString& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

BitString bits_from_uint(std::uint64_t value, std::size_t width) {
  BitString out(width);
  for (std::size_t i = 0; i < width; ++i) out[width - 1 - i] = (value >> i) & 1U;
  return out;
}

std::uint64_t bits_to_uint(const BitString& bits) {
  std::uint64_t v = 0;
  for (auto b : bits) v = (v << 1) | (b & 1U);
  return v;
}

std::vector<BitString> all_bit_strings_up_to(std::size_t max_len) {
  if (max_len >= 40) throw Error(ErrorCode::budget, "input universe too large to materialize");
  std::vector<BitString> out;
  out.reserve((std::size_t{2} << max_len) - 1);
  for (std::size_t len = 0; len <= max_len; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) out.push_back(bits_from_uint(v, len));
  }
  return out;
}

std::uint64_t canonical_index(const BitString& bits) {
  return ((std::uint64_t{1} << bits.size()) - 1) + bits_to_uint(bits);
}

std::vector<std::uint8_t> pack_bits(const BitString& bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  return out;
}

BitString unpack_bits(const std::vector<std::uint8_t>& bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) throw Error(ErrorCode::input, "bit count exceeds packed data");
  BitString out(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) out[i] = (bytes[i / 8] >> (7 - i % 8)) & 1U;
  return out;
}

std::uint64_t fnv1a(const std::uint8_t* data, std::size_t size, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace finitekit

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "finitekit/util/bits.hpp"
#include "finitekit/vm/bytecode.hpp"

namespace finitekit::problems {

/// A program "produces" s when its output stream reaches s as a prefix
/// within the fuel; what it does afterwards does not matter. Programs take
/// no input and no hint.
struct KcResult {
  vm::Bytecode program;
  std::size_t length = 0;
};

/// PUSHb OUTPUT per bit: 2|s| instructions.
vm::Bytecode literal_emitter(const BitString& s);

/// Shortest producing program of length <= max_len, first in canonical order.
std::optional<KcResult> kc_shortest(const BitString& s, std::uint64_t fuel, std::size_t max_len);

/// Shortest-program lengths for every bit string up to `max_bits`, from one
/// enumeration pass over output-only programs of length <= max_len.
class KcTable {
 public:
  KcTable(std::size_t max_len, std::uint64_t fuel, std::size_t max_bits, unsigned workers = 1);

  /// Length of the shortest producing program, if it is within max_len.
  std::optional<std::size_t> shortest(const BitString& s) const;
  std::size_t max_len() const { return max_len_; }
  std::size_t max_bits() const { return max_bits_; }
  std::uint64_t fuel() const { return fuel_; }

 private:
  std::size_t max_len_;
  std::uint64_t fuel_;
  std::size_t max_bits_;
  std::vector<std::uint8_t> best_;  // by canonical_index; 0 = none found
};

struct Census {
  std::uint64_t compressible = 0;
  std::uint64_t incompressible = 0;
};

/// Splits all strings of `bit_length` by whether a program shorter than the
/// literal emitter exists within the table's length cap.
Census kc_census(const KcTable& table, std::size_t bit_length);
Census kc_census(std::size_t bit_length, std::uint64_t fuel, std::size_t max_len = 5);

/// Reduction below the literal emitter, 0 when the table knows no shorter program.
std::size_t kc_reduction(const KcTable& table, const BitString& s);

struct AtomSet {
  std::vector<BitString> split;  // in order; concatenation is the input
  std::vector<BitString> atoms;  // distinct, first appearance order
  std::size_t slack = 3;
};

/// Greedy left to right: at each position the longest piece (at most the
/// table's max_bits) whose reduction stays below `slack`.
AtomSet atoms(const BitString& s, const KcTable& table, std::size_t slack = 3);

/// Atom dictionary for compression; indices are positions in `atoms`.
struct AtomTable {
  std::vector<BitString> atoms;
  unsigned index_width() const;
};

/// Distinct atoms over a corpus plus the single bits "0" and "1", so every
/// string has a split.
AtomTable build_atom_table(const std::vector<BitString>& corpus, const KcTable& table,
                           std::size_t slack = 3);

struct Digest {
  std::vector<std::uint32_t> indices;
  unsigned depth = 0;   // times the index stream was compressed again
  BitString residual;   // unmatched tail of the last recompressed stream
  unsigned width = 1;   // bits per index

  std::size_t size_bits() const { return indices.size() * width + residual.size(); }
  bool operator==(const Digest&) const = default;
};

/// Splits by longest table match; throws Error(input) on a gap at the top
/// level. Recompresses the index stream while it shrinks, up to max_recursion.
Digest kc_compress(const BitString& s, const AtomTable& table, unsigned max_recursion);
BitString kc_decompress(const Digest& digest, const AtomTable& table);

/// Length-prefixed little-endian storage.
std::vector<std::uint8_t> serialize(const Digest& d);
Digest deserialize_digest(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> serialize(const AtomTable& t);
AtomTable deserialize_atoms(const std::vector<std::uint8_t>& bytes);

}  // namespace finitekit::problems

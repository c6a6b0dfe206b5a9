#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finitekit/vm/bytecode.hpp"

namespace finitekit::vm {

/// Shape of the program space: READ_INPUT operands range over [0, num_inputs),
/// READ_HINT over [0, num_hint_bits), jumps over every in-bounds target.
struct EnumConfig {
  std::size_t max_len = 1;
  std::size_t num_inputs = 0;
  std::size_t num_hint_bits = 0;
  bool operator==(const EnumConfig&) const = default;
};

/// Position in the canonical order: programs of `length`, index in mixed radix
/// with the first instruction most significant.
struct Cursor {
  std::size_t length = 1;
  std::uint64_t index = 0;

  bool operator==(const Cursor&) const = default;
  std::string to_string() const;  // "length:index"
  static Cursor parse(const std::string& text);
};

/// Instructions allowed at position `pos` of a program of length `len`, in
/// canonical order. Every position has 13 + inputs + hint bits + 2*len choices.
std::vector<Instr> alphabet(const EnumConfig& cfg, std::size_t len, std::size_t pos);

/// Number of programs of exactly `len` instructions; throws Error(budget) past 2^64.
std::uint64_t programs_of_length(const EnumConfig& cfg, std::size_t len);

Bytecode program_at(const EnumConfig& cfg, const Cursor& cursor);

/// Returns the program at `cursor` (the start when absent) and the cursor of
/// its successor. Throws Error(exhausted) once past max_len.
std::pair<Bytecode, Cursor> enumerate_programs(const EnumConfig& cfg,
                                               std::optional<Cursor> cursor = std::nullopt);

/// Stateful walk over the same order, reusing the alphabets.
class ProgramEnumerator {
 public:
  explicit ProgramEnumerator(EnumConfig cfg, Cursor start = {});

  /// The next program, or nullopt when the space is exhausted.
  std::optional<Bytecode> next();
  const Cursor& cursor() const { return cursor_; }
  /// Cursor of the program most recently returned by next().
  const Cursor& last() const { return last_; }
  const EnumConfig& config() const { return cfg_; }

 private:
  void load_length();
  EnumConfig cfg_;
  Cursor cursor_;
  Cursor last_;
  std::size_t loaded_len_ = 0;
  std::uint64_t count_ = 0;
  std::vector<std::vector<Instr>> alpha_;
  std::vector<std::size_t> digits_;
};

}  // namespace finitekit::vm

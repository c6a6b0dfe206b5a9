#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "finitekit/util/bits.hpp"
#include "finitekit/vm/bytecode.hpp"

namespace finitekit::vm {

/// Hint bytes; READ_HINT i reads bit i, most significant bit of byte 0 first.
using Hint = std::vector<std::uint8_t>;

enum class Status { halted, fuel_exhausted, trapped };

const char* status_name(Status s);

enum class Trap { none, bad_input_read, bad_hint_read, stack_underflow, stack_overflow, fell_off };

struct StateDigest {
  std::uint64_t step = 0;
  std::uint64_t hash = 0;
  std::array<std::uint8_t, 4> top{};  // top of stack first
  std::uint8_t depth_seen = 0;          // how many of `top` are valid

  bool operator==(const StateDigest&) const = default;
};

struct RunOutcome {
  Status status = Status::trapped;
  Trap trap = Trap::none;
  std::optional<BitString> output;  // present only when halted
  std::uint64_t fuel_used = 0;
  std::uint64_t fuel_granted = 0;
  std::vector<StateDigest> digests;
};

struct RunSummary {
  Status status = Status::trapped;
  std::uint64_t fuel_used = 0;
  std::uint64_t fuel_granted = 0;
  std::uint64_t output_hash = 0;
  StateDigest first;
  StateDigest last;

  bool operator==(const RunSummary&) const = default;
};

RunSummary digest(const RunOutcome& outcome);

/// Reusable interpreter; keeps its stack buffer between runs. Not thread safe,
/// use one per thread.
class Interpreter {
 public:
  explicit Interpreter(std::size_t max_stack = 256) : max_stack_(max_stack) {}

  RunOutcome run(const Bytecode& code, const Hint& hint, const BitString& input,
                 std::uint64_t fuel, std::uint64_t snapshot_every = 0);

  /// Runs until the output stream equals `target` (success), diverges from
  /// it, the program stops, or fuel runs out. Returns fuel used on success.
  std::optional<std::uint64_t> produces(const Bytecode& code, const BitString& target,
                                        std::uint64_t fuel);

  /// Output emitted before the program stops, runs out of fuel, or has
  /// emitted `max_bits` bits. Runs without input or hint.
  BitString output_stream(const Bytecode& code, std::uint64_t fuel, std::size_t max_bits);

 private:
  template <class OnOutput>
  Status execute(const Bytecode& code, const Hint& hint, const BitString& input,
                 std::uint64_t fuel, std::uint64_t snapshot_every, RunOutcome* record,
                 std::uint64_t& used, Trap& trap, OnOutput&& on_output);

  std::size_t max_stack_;
  std::vector<std::uint8_t> stack_;
  BitString out_;
};

/// Convenience wrapper around a temporary Interpreter.
RunOutcome run(const Bytecode& code, const Hint& hint, const BitString& input, std::uint64_t fuel,
               std::uint64_t snapshot_every = 0);

}  // namespace finitekit::vm

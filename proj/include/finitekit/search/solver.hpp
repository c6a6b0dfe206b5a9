#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "finitekit/vm/interpreter.hpp"

namespace finitekit::search {

struct QueryResult {
  vm::Status status = vm::Status::trapped;
  std::optional<BitString> output;
  std::uint64_t fuel_used = 0;
  std::uint64_t probes = 0;  // table lookups, lookup solver only
};

/// A fixed program S that is handed its hint once and then answers queries.
class HintedSolver {
 public:
  virtual ~HintedSolver() = default;
  virtual void initialize(const vm::Hint& hint) = 0;
  virtual QueryResult query(const BitString& input, std::uint64_t fuel) = 0;
};

class BytecodeSolver final : public HintedSolver {
 public:
  explicit BytecodeSolver(vm::Bytecode code) : code_(std::move(code)) {}
  void initialize(const vm::Hint& hint) override { hint_ = hint; }
  QueryResult query(const BitString& input, std::uint64_t fuel) override;

 private:
  vm::Bytecode code_;
  vm::Hint hint_;
  vm::Interpreter interp_;
};

/// Binary search over a sorted answer table held in the hint. Table layout,
/// bits MSB first: 8 bits key width, 8 bits output width, 32 bits entry count,
/// then entries of (key, output) sorted by key. The key of an input is its canonical index.
/// One fuel per probe plus one to emit the answer.
///
/// This solver is native rather than bytecode: the bit VM has no indirect
/// addressing, so table probes cannot be expressed in it.
class LookupSolver final : public HintedSolver {
 public:
  void initialize(const vm::Hint& hint) override;
  QueryResult query(const BitString& input, std::uint64_t fuel) override;
  std::uint64_t entries() const { return entries_; }

 private:
  std::uint64_t read(std::size_t bit, unsigned width) const;
  vm::Hint hint_;
  unsigned key_bits_ = 0;
  unsigned out_bits_ = 0;
  std::uint64_t entries_ = 0;
};

vm::Hint encode_lookup_table(unsigned key_bits, unsigned out_bits,
                             const std::vector<std::pair<std::uint64_t, BitString>>& entries);

/// Fixed part plus hint: either bytecode or the native lookup program.
struct HintedProgram {
  enum class Kind { bytecode, lookup };
  Kind kind = Kind::bytecode;
  vm::Bytecode code;
  vm::Hint hint;

  std::unique_ptr<HintedSolver> instantiate() const;
  std::string describe() const;
  bool operator==(const HintedProgram&) const = default;
};

}  // namespace finitekit::search

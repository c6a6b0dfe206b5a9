#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace finitekit::vm {

/// Opcode numbering is also the enumeration order.
enum class Op : std::uint8_t {
  PUSH0,
  PUSH1,
  READ_INPUT,
  READ_HINT,
  DUP,
  SWAP,
  POP,
  NOT,
  AND,
  OR,
  XOR,
  ADD,
  LT,
  JZ,
  JMP,
  OUTPUT,
  HALT,
};

inline constexpr int kOpCount = 17;

struct Instr {
  Op op = Op::HALT;
  std::int32_t arg = 0;  // index for READ_*, relative offset for jumps

  bool operator==(const Instr&) const = default;
};

using Bytecode = std::vector<Instr>;

const char* mnemonic(Op op);
bool has_operand(Op op);
inline bool is_jump(Op op) { return op == Op::JZ || op == Op::JMP; }

/// One mnemonic per line, uppercase, decimal operand after a single space.
std::string to_text(const Bytecode& code);
/// Inverse of to_text. Blank lines and '#' comments are skipped; jump targets
/// must land inside the program.
Bytecode parse_text(const std::string& text);

/// Throws Error(input) if a jump leaves [0, size).
void check_jumps(const Bytecode& code);

std::uint64_t code_hash(const Bytecode& code);

}  // namespace finitekit::vm

#include "finitekit/vm/bytecode.hpp"

#include <charconv>
#include <sstream>

#include "finitekit/util/bits.hpp"
#include "finitekit/util/error.hpp"

namespace finitekit::vm {

namespace {
constexpr const char* kNames[kOpCount] = {
    "PUSH0", "PUSH1", "READ_INPUT", "READ_HINT", "DUP", "SWAP", "POP", "NOT", "AND",
    "OR",    "XOR",   "ADD",        "LT",        "JZ",  "JMP",  "OUTPUT", "HALT",
};
}

const char* mnemonic(Op op) { return kNames[static_cast<int>(op)]; }

bool has_operand(Op op) {
  return op == Op::READ_INPUT || op == Op::READ_HINT || op == Op::JZ || op == Op::JMP;
}

std::string to_text(const Bytecode& code) {
  std::string out;
  for (const auto& ins : code) {
    out += mnemonic(ins.op);
    if (has_operand(ins.op)) {
      out += ' ';
      out += std::to_string(ins.arg);
    }
    out += '\n';
  }
  return out;
}

Bytecode parse_text(const std::string& text) {
  Bytecode code;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string where = "program line " + std::to_string(lineno);
    const auto space = line.find(' ');
    const std::string name = line.substr(0, space);
    int found = -1;
    for (int i = 0; i < kOpCount; ++i)
      if (name == kNames[i]) found = i;
    if (found < 0) throw Error(ErrorCode::input, where + ": unknown mnemonic '" + name + "'");
    Instr ins{static_cast<Op>(found), 0};
    if (has_operand(ins.op)) {
      if (space == std::string::npos)
        throw Error(ErrorCode::input, where + ": " + name + " needs an operand");
      const std::string arg = line.substr(space + 1);
      const char* end = arg.data() + arg.size();
      auto [ptr, ec] = std::from_chars(arg.data(), end, ins.arg);
      if (ec != std::errc() || ptr != end || arg.empty())
        throw Error(ErrorCode::input, where + ": bad operand '" + arg + "'");
      if (!is_jump(ins.op) && ins.arg < 0)
        throw Error(ErrorCode::input, where + ": negative index");
    } else if (space != std::string::npos) {
      throw Error(ErrorCode::input, where + ": " + name + " takes no operand");
    }
    code.push_back(ins);
  }
  check_jumps(code);
  return code;
}

void check_jumps(const Bytecode& code) {
  const auto size = static_cast<std::int64_t>(code.size());
  for (std::int64_t pc = 0; pc < size; ++pc) {
    const auto& ins = code[static_cast<std::size_t>(pc)];
    if (!is_jump(ins.op)) continue;
    const std::int64_t target = pc + ins.arg;
    if (target < 0 || target >= size)
      throw Error(ErrorCode::input, "jump at " + std::to_string(pc) + " leaves the program");
  }
}

std::uint64_t code_hash(const Bytecode& code) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(code.size() * 5);
  for (const auto& ins : code) {
    bytes.push_back(static_cast<std::uint8_t>(ins.op));
    const auto a = static_cast<std::uint32_t>(ins.arg);
    for (int s = 0; s < 32; s += 8) bytes.push_back(static_cast<std::uint8_t>(a >> s));
  }
  return fnv1a(bytes.data(), bytes.size());
}

}  // namespace finitekit::vm

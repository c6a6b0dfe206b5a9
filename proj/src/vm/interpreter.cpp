#include "finitekit/vm/interpreter.hpp"

#include "finitekit/util/error.hpp"

namespace finitekit::vm {

const char* status_name(Status s) {
  switch (s) {
    case Status::halted: return "halted";
    case Status::fuel_exhausted: return "fuel-exhausted";
    case Status::trapped: return "trapped";
  }
  return "?";
}

namespace {

StateDigest snapshot(std::uint64_t step, std::size_t pc, const std::vector<std::uint8_t>& stack,
                     std::size_t out_len) {
  StateDigest d;
  d.step = step;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(pc);
  mix(stack.size());
  mix(out_len);
  if (!stack.empty()) h = fnv1a(stack.data(), stack.size(), h);
  d.hash = h;
  const std::size_t n = std::min<std::size_t>(4, stack.size());
  for (std::size_t i = 0; i < n; ++i) d.top[i] = stack[stack.size() - 1 - i];
  d.depth_seen = static_cast<std::uint8_t>(n);
  return d;
}

}  // namespace

template <class OnOutput>
Status Interpreter::execute(const Bytecode& code, const Hint& hint, const BitString& input,
                            std::uint64_t fuel, std::uint64_t snapshot_every, RunOutcome* record,
                            std::uint64_t& used, Trap& trap, OnOutput&& on_output) {
  if (fuel < 1) throw Error(ErrorCode::input, "fuel must be >= 1");
  stack_.clear();
  const std::size_t size = code.size();
  const std::size_t hint_bits = hint.size() * 8;
  std::size_t pc = 0;
  used = 0;
  trap = Trap::none;
  auto& st = stack_;

#define FK_NEED(k)                    \
  if (st.size() < (k)) {              \
    trap = Trap::stack_underflow;     \
    return Status::trapped;           \
  }
#define FK_PUSH(v)                    \
  if (st.size() >= max_stack_) {      \
    trap = Trap::stack_overflow;      \
    return Status::trapped;           \
  }                                   \
  st.push_back(v)

  while (true) {
    if (pc >= size) {
      trap = Trap::fell_off;
      return Status::trapped;
    }
    if (used == fuel) return Status::fuel_exhausted;
    ++used;
    const Instr ins = code[pc];
    std::size_t next = pc + 1;
    switch (ins.op) {
      case Op::PUSH0: FK_PUSH(0); break;
      case Op::PUSH1: FK_PUSH(1); break;
      case Op::READ_INPUT:
        if (ins.arg < 0 || static_cast<std::size_t>(ins.arg) >= input.size()) {
          trap = Trap::bad_input_read;
          return Status::trapped;
        }
        FK_PUSH(input[static_cast<std::size_t>(ins.arg)] & 1);
        break;
      case Op::READ_HINT: {
        if (ins.arg < 0 || static_cast<std::size_t>(ins.arg) >= hint_bits) {
          trap = Trap::bad_hint_read;
          return Status::trapped;
        }
        const auto i = static_cast<std::size_t>(ins.arg);
        FK_PUSH((hint[i / 8] >> (7 - i % 8)) & 1);
        break;
      }
      case Op::DUP: FK_NEED(1); FK_PUSH(st.back()); break;
      case Op::SWAP: FK_NEED(2); std::swap(st[st.size() - 1], st[st.size() - 2]); break;
      case Op::POP: FK_NEED(1); st.pop_back(); break;
      case Op::NOT: FK_NEED(1); st.back() ^= 1; break;
      case Op::AND:
      case Op::OR:
      case Op::XOR:
      case Op::ADD:
      case Op::LT: {
        FK_NEED(2);
        const std::uint8_t b = st.back();
        st.pop_back();
        const std::uint8_t a = st.back();
        std::uint8_t r = 0;
        switch (ins.op) {
          case Op::AND: r = a & b; break;
          case Op::OR: r = a | b; break;
          case Op::LT: r = a < b; break;
          default: r = a ^ b; break;  // XOR, and ADD with the carry dropped
        }
        st.back() = r;
        break;
      }
      case Op::JZ: {
        FK_NEED(1);
        const std::uint8_t v = st.back();
        st.pop_back();
        if (v == 0) next = static_cast<std::size_t>(static_cast<std::int64_t>(pc) + ins.arg);
        break;
      }
      case Op::JMP:
        next = static_cast<std::size_t>(static_cast<std::int64_t>(pc) + ins.arg);
        break;
      case Op::OUTPUT: {
        FK_NEED(1);
        const std::uint8_t v = st.back();
        st.pop_back();
        if (!on_output(v)) return Status::trapped;
        break;
      }
      case Op::HALT:
        pc = next;
        if (record && snapshot_every && used % snapshot_every == 0)
          record->digests.push_back(snapshot(used, pc, st, out_.size()));
        return Status::halted;
    }
    pc = next;
    if (record && snapshot_every && used % snapshot_every == 0)
      record->digests.push_back(snapshot(used, pc, st, out_.size()));
  }
#undef FK_NEED
#undef FK_PUSH
}

RunOutcome Interpreter::run(const Bytecode& code, const Hint& hint, const BitString& input,
                            std::uint64_t fuel, std::uint64_t snapshot_every) {
  RunOutcome r;
  r.fuel_granted = fuel;
  out_.clear();
  r.status = execute(code, hint, input, fuel, snapshot_every, &r, r.fuel_used, r.trap,
                     [this](std::uint8_t v) {
                       out_.push_back(v);
                       return true;
                     });
  if (r.status == Status::halted) r.output = out_;
  return r;
}

std::optional<std::uint64_t> Interpreter::produces(const Bytecode& code, const BitString& target,
                                                   std::uint64_t fuel) {
  static const Hint kNoHint;
  static const BitString kNoInput;
  out_.clear();
  std::size_t matched = 0;
  bool diverged = false;
  std::uint64_t used = 0;
  Trap trap = Trap::none;
  const std::size_t goal = target.size();
  // Returning false stops the run; a complete match is reported through `matched`.
  auto monitor = [&](std::uint8_t v) {
    if (matched == goal || target[matched] != v) {
      diverged = true;
      return false;
    }
    ++matched;
    return matched != goal;
  };
  if (goal == 0) return std::nullopt;
  execute(code, kNoHint, kNoInput, fuel, 0, nullptr, used, trap, monitor);
  if (!diverged && matched == goal) return used;
  return std::nullopt;
}

BitString Interpreter::output_stream(const Bytecode& code, std::uint64_t fuel,
                                     std::size_t max_bits) {
  static const Hint kNoHint;
  static const BitString kNoInput;
  out_.clear();
  std::uint64_t used = 0;
  Trap trap = Trap::none;
  if (max_bits == 0) return {};
  execute(code, kNoHint, kNoInput, fuel, 0, nullptr, used, trap, [&](std::uint8_t v) {
    out_.push_back(v);
    return out_.size() < max_bits;
  });
  return out_;
}

RunOutcome run(const Bytecode& code, const Hint& hint, const BitString& input, std::uint64_t fuel,
               std::uint64_t snapshot_every) {
  Interpreter interp;
  return interp.run(code, hint, input, fuel, snapshot_every);
}

RunSummary digest(const RunOutcome& outcome) {
  RunSummary s;
  s.status = outcome.status;
  s.fuel_used = outcome.fuel_used;
  s.fuel_granted = outcome.fuel_granted;
  if (outcome.output) {
    const auto& o = *outcome.output;
    s.output_hash = fnv1a(o.data(), o.size()) ^ o.size();
  }
  if (!outcome.digests.empty()) {
    s.first = outcome.digests.front();
    s.last = outcome.digests.back();
  }
  return s;
}

}  // namespace finitekit::vm

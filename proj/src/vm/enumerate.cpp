#include "finitekit/vm/enumerate.hpp"

#include "finitekit/util/error.hpp"

namespace finitekit::vm {

std::string Cursor::to_string() const {
  return std::to_string(length) + ":" + std::to_string(index);
}

Cursor Cursor::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::input, "cursor must be length:index");
  try {
    return {std::stoull(text.substr(0, colon)), std::stoull(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::input, "bad cursor '" + text + "'");
  }
}

std::vector<Instr> alphabet(const EnumConfig& cfg, std::size_t len, std::size_t pos) {
  std::vector<Instr> a;
  a.reserve(13 + cfg.num_inputs + cfg.num_hint_bits + 2 * len);
  a.push_back({Op::PUSH0, 0});
  a.push_back({Op::PUSH1, 0});
  for (std::size_t i = 0; i < cfg.num_inputs; ++i) a.push_back({Op::READ_INPUT, static_cast<int>(i)});
  for (std::size_t i = 0; i < cfg.num_hint_bits; ++i) a.push_back({Op::READ_HINT, static_cast<int>(i)});
  for (Op op : {Op::DUP, Op::SWAP, Op::POP, Op::NOT, Op::AND, Op::OR, Op::XOR, Op::ADD, Op::LT})
    a.push_back({op, 0});
  for (Op op : {Op::JZ, Op::JMP}) {
    const auto lo = -static_cast<std::int64_t>(pos);
    const auto hi = static_cast<std::int64_t>(len) - 1 - static_cast<std::int64_t>(pos);
    for (auto rel = lo; rel <= hi; ++rel) a.push_back({op, static_cast<std::int32_t>(rel)});
  }
  a.push_back({Op::OUTPUT, 0});
  a.push_back({Op::HALT, 0});
  return a;
}

std::uint64_t programs_of_length(const EnumConfig& cfg, std::size_t len) {
  const std::uint64_t radix = 13 + cfg.num_inputs + cfg.num_hint_bits + 2 * len;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < len; ++i) {
    if (total > ~std::uint64_t{0} / radix)
      throw Error(ErrorCode::budget, "program space of length " + std::to_string(len) +
                                         " exceeds 2^64");
    total *= radix;
  }
  return total;
}

Bytecode program_at(const EnumConfig& cfg, const Cursor& cursor) {
  const auto count = programs_of_length(cfg, cursor.length);
  if (cursor.index >= count) throw Error(ErrorCode::exhausted, "cursor past end of length");
  const std::uint64_t radix = 13 + cfg.num_inputs + cfg.num_hint_bits + 2 * cursor.length;
  Bytecode code(cursor.length);
  std::uint64_t rest = cursor.index;
  for (std::size_t p = cursor.length; p-- > 0;) {
    const auto digit = rest % radix;
    rest /= radix;
    code[p] = alphabet(cfg, cursor.length, p)[digit];
  }
  return code;
}

std::pair<Bytecode, Cursor> enumerate_programs(const EnumConfig& cfg, std::optional<Cursor> cursor) {
  if (cfg.max_len < 1) throw Error(ErrorCode::input, "max_len must be >= 1");
  Cursor c = cursor.value_or(Cursor{1, 0});
  if (c.length < 1 || c.length > cfg.max_len)
    throw Error(ErrorCode::exhausted, "enumeration exhausted");
  if (c.index >= programs_of_length(cfg, c.length))
    throw Error(ErrorCode::exhausted, "enumeration exhausted");
  Bytecode code = program_at(cfg, c);
  Cursor next{c.length, c.index + 1};
  if (next.index == programs_of_length(cfg, c.length)) next = {c.length + 1, 0};
  return {std::move(code), next};
}

ProgramEnumerator::ProgramEnumerator(EnumConfig cfg, Cursor start)
    : cfg_(cfg), cursor_(start), last_(start) {
  if (cfg_.max_len < 1) throw Error(ErrorCode::input, "max_len must be >= 1");
}

void ProgramEnumerator::load_length() {
  const auto len = cursor_.length;
  count_ = programs_of_length(cfg_, len);
  alpha_.clear();
  for (std::size_t p = 0; p < len; ++p) alpha_.push_back(alphabet(cfg_, len, p));
  loaded_len_ = len;
  digits_.assign(len, 0);
  const std::uint64_t radix = alpha_[0].size();
  std::uint64_t rest = cursor_.index;
  for (std::size_t p = len; p-- > 0;) {
    digits_[p] = rest % radix;
    rest /= radix;
  }
}

std::optional<Bytecode> ProgramEnumerator::next() {
  while (true) {
    if (cursor_.length > cfg_.max_len) return std::nullopt;
    if (loaded_len_ != cursor_.length) load_length();
    if (cursor_.index < count_) break;
    cursor_ = {cursor_.length + 1, 0};
  }
  Bytecode code(cursor_.length);
  for (std::size_t p = 0; p < cursor_.length; ++p) code[p] = alpha_[p][digits_[p]];
  last_ = cursor_;
  ++cursor_.index;
  for (std::size_t p = cursor_.length; p-- > 0;) {
    if (++digits_[p] < alpha_[p].size()) break;
    digits_[p] = 0;
  }
  return code;
}

}  // namespace finitekit::vm

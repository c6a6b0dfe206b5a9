#include "finitekit/search/solver.hpp"

#include "finitekit/util/base64.hpp"
#include "finitekit/util/error.hpp"

namespace finitekit::search {

namespace {
constexpr std::size_t kHeaderBits = 48;
}

QueryResult BytecodeSolver::query(const BitString& input, std::uint64_t fuel) {
  auto r = interp_.run(code_, hint_, input, fuel);
  return {r.status, std::move(r.output), r.fuel_used, 0};
}

void LookupSolver::initialize(const vm::Hint& hint) {
  hint_ = hint;
  if (hint_.size() < kHeaderBits / 8) throw Error(ErrorCode::input, "lookup hint lacks its header");
  key_bits_ = hint_[0];
  out_bits_ = hint_[1];
  if (key_bits_ == 0 || key_bits_ > 63 || out_bits_ == 0 || out_bits_ > 63)
    throw Error(ErrorCode::input, "lookup hint header out of range");
  entries_ = read(16, 32);
  if (kHeaderBits + entries_ * (key_bits_ + out_bits_) > hint_.size() * 8)
    throw Error(ErrorCode::input, "lookup hint shorter than its entry count");
}

std::uint64_t LookupSolver::read(std::size_t bit, unsigned width) const {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i, ++bit) v = (v << 1) | ((hint_[bit / 8] >> (7 - bit % 8)) & 1);
  return v;
}

QueryResult LookupSolver::query(const BitString& input, std::uint64_t fuel) {
  QueryResult r;
  const std::uint64_t key = canonical_index(input);
  const std::size_t stride = key_bits_ + out_bits_;
  std::uint64_t lo = 0, hi = entries_;
  while (lo < hi) {
    if (r.fuel_used == fuel) {
      r.status = vm::Status::fuel_exhausted;
      return r;
    }
    ++r.fuel_used;
    ++r.probes;
    const std::uint64_t mid = lo + (hi - lo) / 2;
    const std::uint64_t k = read(kHeaderBits + mid * stride, key_bits_);
    if (k == key) {
      if (r.fuel_used == fuel) {
        r.status = vm::Status::fuel_exhausted;
        return r;
      }
      ++r.fuel_used;
      r.output = bits_from_uint(read(kHeaderBits + mid * stride + key_bits_, out_bits_), out_bits_);
      r.status = vm::Status::halted;
      return r;
    }
    if (k < key)
      lo = mid + 1;
    else
      hi = mid;
  }
  r.status = vm::Status::trapped;  // key absent from the table
  return r;
}

vm::Hint encode_lookup_table(unsigned key_bits, unsigned out_bits,
                             const std::vector<std::pair<std::uint64_t, BitString>>& entries) {
  BitString bits = bits_from_uint(key_bits, 8);
  const auto ob = bits_from_uint(out_bits, 8);
  bits.insert(bits.end(), ob.begin(), ob.end());
  const auto cb = bits_from_uint(entries.size(), 32);
  bits.insert(bits.end(), cb.begin(), cb.end());
  for (const auto& [key, out] : entries) {
    const auto kb = bits_from_uint(key, key_bits);
    bits.insert(bits.end(), kb.begin(), kb.end());
    if (out.size() != out_bits) throw Error(ErrorCode::input, "lookup entry has the wrong output width");
    bits.insert(bits.end(), out.begin(), out.end());
  }
  return pack_bits(bits);
}

std::unique_ptr<HintedSolver> HintedProgram::instantiate() const {
  std::unique_ptr<HintedSolver> s;
  if (kind == Kind::lookup)
    s = std::make_unique<LookupSolver>();
  else
    s = std::make_unique<BytecodeSolver>(code);
  s->initialize(hint);
  return s;
}

std::string HintedProgram::describe() const {
  if (kind == Kind::lookup) return "LOOKUP hint=" + std::to_string(hint.size()) + "B";
  std::string s;
  for (const auto& ins : code) {
    if (!s.empty()) s += "; ";
    s += vm::mnemonic(ins.op);
    if (vm::has_operand(ins.op)) s += " " + std::to_string(ins.arg);
  }
  return s + " | hint=" + base64_encode(hint);
}

}  // namespace finitekit::search

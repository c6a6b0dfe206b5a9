#include "finitekit/problems/kc.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

#include "finitekit/util/error.hpp"
#include "finitekit/vm/enumerate.hpp"
#include "finitekit/vm/interpreter.hpp"

namespace finitekit::problems {

using vm::Bytecode;
using vm::Op;

Bytecode literal_emitter(const BitString& s) {
  Bytecode code;
  for (auto b : s) {
    code.push_back({b ? Op::PUSH1 : Op::PUSH0, 0});
    code.push_back({Op::OUTPUT, 0});
  }
  return code;
}

std::optional<KcResult> kc_shortest(const BitString& s, std::uint64_t fuel, std::size_t max_len) {
  if (s.empty() || max_len == 0) return std::nullopt;
  vm::Interpreter interp;
  vm::ProgramEnumerator e(vm::EnumConfig{max_len, 0, 0});
  while (auto code = e.next()) {
    if (interp.produces(*code, s, fuel)) return KcResult{*code, code->size()};
  }
  return std::nullopt;
}

KcTable::KcTable(std::size_t max_len, std::uint64_t fuel, std::size_t max_bits, unsigned workers)
    : max_len_(max_len), fuel_(fuel), max_bits_(max_bits) {
  if (max_bits > 24) throw Error(ErrorCode::budget, "KcTable is limited to 24-bit strings");
  if (max_len > 255) throw Error(ErrorCode::input, "KcTable max_len must fit a byte");
  best_.assign((std::size_t{1} << (max_bits + 1)) - 1, 0);
  const vm::EnumConfig cfg{max_len, 0, 0};
  workers = std::max(1u, workers);
  std::mutex merge;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const auto count = vm::programs_of_length(cfg, len);
    // Every prefix of a program's stream is produced by it. Within one length
    // any producer is equally short, so the merge order does not matter.
    auto work = [&](std::uint64_t begin, std::uint64_t end) {
      vm::Interpreter interp;
      std::vector<std::uint8_t> local(best_.size(), 0);
      vm::ProgramEnumerator e(cfg, vm::Cursor{len, begin});
      for (std::uint64_t i = begin; i < end; ++i) {
        const auto code = e.next();
        const auto out = interp.output_stream(*code, fuel, max_bits);
        std::uint64_t idx = 0;  // canonical index of the growing prefix
        for (std::size_t k = 0; k < out.size(); ++k) {
          idx = 2 * idx + 1 + out[k];
          if (!local[idx]) local[idx] = static_cast<std::uint8_t>(len);
        }
      }
      std::lock_guard<std::mutex> lock(merge);
      for (std::size_t i = 0; i < best_.size(); ++i)
        if (local[i] && !best_[i]) best_[i] = local[i];
    };
    const unsigned w = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
    if (w <= 1) {
      work(0, count);
      continue;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < w; ++t) pool.emplace_back(work, count * t / w, count * (t + 1) / w);
    for (auto& t : pool) t.join();
  }
}

std::optional<std::size_t> KcTable::shortest(const BitString& s) const {
  if (s.empty() || s.size() > max_bits_) return std::nullopt;
  const auto v = best_[canonical_index(s)];
  if (!v) return std::nullopt;
  return v;
}

std::size_t kc_reduction(const KcTable& table, const BitString& s) {
  const auto best = table.shortest(s);
  const std::size_t literal = 2 * s.size();
  return best && *best < literal ? literal - *best : 0;
}

Census kc_census(const KcTable& table, std::size_t bit_length) {
  if (bit_length > table.max_bits()) throw Error(ErrorCode::input, "bit length beyond table");
  Census c;
  const std::uint64_t total = std::uint64_t{1} << bit_length;
  for (std::uint64_t v = 0; v < total; ++v) {
    if (kc_reduction(table, bits_from_uint(v, bit_length)) > 0)
      ++c.compressible;
    else
      ++c.incompressible;
  }
  return c;
}

Census kc_census(std::size_t bit_length, std::uint64_t fuel, std::size_t max_len) {
  if (bit_length > 12) throw Error(ErrorCode::budget, "census is limited to 12 bits");
  KcTable table(max_len, fuel, bit_length, std::max(1u, std::thread::hardware_concurrency()));
  return kc_census(table, bit_length);
}

AtomSet atoms(const BitString& s, const KcTable& table, std::size_t slack) {
  AtomSet out;
  out.slack = slack;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t best = 1;
    const std::size_t most = std::min(table.max_bits(), s.size() - i);
    for (std::size_t len = most; len > 0; --len) {
      const BitString piece(s.begin() + i, s.begin() + i + len);
      if (kc_reduction(table, piece) < slack) {
        best = len;
        break;
      }
    }
    BitString piece(s.begin() + i, s.begin() + i + best);
    if (std::find(out.atoms.begin(), out.atoms.end(), piece) == out.atoms.end())
      out.atoms.push_back(piece);
    out.split.push_back(std::move(piece));
    i += best;
  }
  return out;
}

unsigned AtomTable::index_width() const {
  unsigned w = 1;
  while ((std::size_t{1} << w) < atoms.size()) ++w;
  return w;
}

AtomTable build_atom_table(const std::vector<BitString>& corpus, const KcTable& table,
                           std::size_t slack) {
  AtomTable t;
  auto add = [&t](const BitString& a) {
    if (std::find(t.atoms.begin(), t.atoms.end(), a) == t.atoms.end()) t.atoms.push_back(a);
  };
  add({0});
  add({1});
  for (const auto& s : corpus)
    for (const auto& a : atoms(s, table, slack).atoms) add(a);
  return t;
}

namespace {

// Longest-match split; returns the number of bits covered.
std::size_t split_longest(const BitString& s, const AtomTable& table,
                          std::vector<std::uint32_t>& indices) {
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t best_len = 0;
    std::uint32_t best = 0;
    for (std::uint32_t k = 0; k < table.atoms.size(); ++k) {
      const auto& a = table.atoms[k];
      if (a.size() <= best_len || a.empty() || a.size() > s.size() - i) continue;
      if (std::equal(a.begin(), a.end(), s.begin() + static_cast<std::ptrdiff_t>(i))) {
        best_len = a.size();
        best = k;
      }
    }
    if (best_len == 0) break;
    indices.push_back(best);
    i += best_len;
  }
  return i;
}

BitString index_stream(const std::vector<std::uint32_t>& indices, unsigned width) {
  BitString out;
  out.reserve(indices.size() * width);
  for (auto idx : indices) {
    const auto b = bits_from_uint(idx, width);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

BitString expand(const std::vector<std::uint32_t>& indices, const AtomTable& table) {
  BitString out;
  for (auto idx : indices) {
    if (idx >= table.atoms.size()) throw Error(ErrorCode::input, "digest index outside atom table");
    const auto& a = table.atoms[idx];
    out.insert(out.end(), a.begin(), a.end());
  }
  return out;
}

}  // namespace

Digest kc_compress(const BitString& s, const AtomTable& table, unsigned max_recursion) {
  if (table.atoms.empty()) throw Error(ErrorCode::input, "empty atom table");
  Digest d;
  d.width = table.index_width();
  const auto covered = split_longest(s, table, d.indices);
  if (covered != s.size())
    throw Error(ErrorCode::input, "no atom covers the span starting at bit " + std::to_string(covered));
  while (d.depth < max_recursion && d.residual.empty()) {
    const BitString stream = index_stream(d.indices, d.width);
    Digest next;
    next.width = d.width;
    next.depth = d.depth + 1;
    const auto got = split_longest(stream, table, next.indices);
    next.residual.assign(stream.begin() + static_cast<std::ptrdiff_t>(got), stream.end());
    if (next.size_bits() >= stream.size()) break;
    d = std::move(next);
  }
  return d;
}

BitString kc_decompress(const Digest& digest, const AtomTable& table) {
  BitString bits = expand(digest.indices, table);
  bits.insert(bits.end(), digest.residual.begin(), digest.residual.end());
  for (unsigned level = 0; level < digest.depth; ++level) {
    if (bits.size() % digest.width != 0) throw Error(ErrorCode::input, "digest stream misaligned");
    std::vector<std::uint32_t> indices;
    for (std::size_t i = 0; i < bits.size(); i += digest.width)
      indices.push_back(static_cast<std::uint32_t>(
          bits_to_uint(BitString(bits.begin() + i, bits.begin() + i + digest.width))));
    bits = expand(indices, table);
  }
  return bits;
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

void put_bits(std::vector<std::uint8_t>& out, const BitString& bits) {
  put_u32(out, static_cast<std::uint32_t>(bits.size()));
  const auto packed = pack_bits(bits);
  out.insert(out.end(), packed.begin(), packed.end());
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& b) : b_(b) {}
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int s = 0; s < 32; s += 8) v |= static_cast<std::uint32_t>(b_[pos_++]) << s;
    return v;
  }
  BitString bits() {
    const auto n = u32();
    const std::size_t bytes = (n + 7) / 8;
    need(bytes);
    std::vector<std::uint8_t> chunk(b_.begin() + pos_, b_.begin() + pos_ + bytes);
    pos_ += bytes;
    return unpack_bits(chunk, n);
  }
  void done() const {
    if (pos_ != b_.size()) throw Error(ErrorCode::input, "trailing bytes");
  }

 private:
  void need(std::size_t n) const {
    if (b_.size() - pos_ < n) throw Error(ErrorCode::input, "truncated record");
  }
  const std::vector<std::uint8_t>& b_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize(const Digest& d) {
  std::vector<std::uint8_t> out;
  put_u32(out, d.depth);
  put_u32(out, d.width);
  put_u32(out, static_cast<std::uint32_t>(d.indices.size()));
  for (auto i : d.indices) put_u32(out, i);
  put_bits(out, d.residual);
  return out;
}

Digest deserialize_digest(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes);
  Digest d;
  d.depth = r.u32();
  d.width = r.u32();
  const auto n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) d.indices.push_back(r.u32());
  d.residual = r.bits();
  r.done();
  return d;
}

std::vector<std::uint8_t> serialize(const AtomTable& t) {
  std::vector<std::uint8_t> out;
  put_u32(out, static_cast<std::uint32_t>(t.atoms.size()));
  for (const auto& a : t.atoms) put_bits(out, a);
  return out;
}

AtomTable deserialize_atoms(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes);
  AtomTable t;
  const auto n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) t.atoms.push_back(r.bits());
  r.done();
  return t;
}

}  // namespace finitekit::problems

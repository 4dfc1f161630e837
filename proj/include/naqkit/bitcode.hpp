#pragma once
// Self-delimiting integer codes (Elias gamma), prefix-free sets with exact
// Kraft verification, length-lex ranking, and header/payload pairing.

#include "naqkit/bitstring.hpp"
#include "naqkit/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace naqkit {

// Elias gamma code of n >= 1: floor(log2 n) zeros, then n in binary MSB-first.
inline BitString encode_nat(uint64_t n) {
  if (n == 0) throw std::invalid_argument("encode_nat: gamma code undefined for 0");
  int msb = 63;
  while (((n >> msb) & 1u) == 0) --msb;
  BitString out;
  for (int i = 0; i < msb; ++i) out.push_back(0);
  for (int i = msb; i >= 0; --i) out.push_back(static_cast<int>((n >> i) & 1u));
  return out;
}

inline size_t encode_nat_length(uint64_t n) {
  if (n == 0) throw std::invalid_argument("encode_nat_length: n = 0");
  size_t msb = 0;
  while (n >> (msb + 1)) ++msb;
  return 2 * msb + 1;
}

// Read cursor over a BitString; decoders consume bits on success only.
struct BitCursor {
  const BitString* bits;
  size_t pos = 0;

  explicit BitCursor(const BitString& s) : bits(&s) {}
  size_t remaining() const { return bits->size() - pos; }
  bool at_end() const { return pos == bits->size(); }
};

inline std::optional<uint64_t> decode_nat(BitCursor& cur) {
  size_t p = cur.pos;
  size_t zeros = 0;
  while (p < cur.bits->size() && (*cur.bits)[p] == 0) {
    ++zeros;
    ++p;
  }
  if (p >= cur.bits->size() || zeros >= 64) return std::nullopt;
  // p points at the leading 1; need `zeros` more bits after it.
  if (p + zeros >= cur.bits->size()) return std::nullopt;
  uint64_t n = 1;
  for (size_t i = 0; i < zeros; ++i) n = (n << 1) | static_cast<uint64_t>((*cur.bits)[p + 1 + i]);
  cur.pos = p + 1 + zeros;
  return n;
}

struct PrefixCheckResult {
  bool is_prefix_free = true;
  Rat kraft_sum = 0;
};

// No member a proper prefix of another; Kraft sum exact. Duplicates count
// once for prefix-freeness but are rejected as set members upstream.
inline PrefixCheckResult check_prefix_free(std::vector<BitString> members) {
  PrefixCheckResult res;
  std::sort(members.begin(), members.end(), BitString::lex_less);
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (const BitString& m : members) res.kraft_sum += pow2_inv(m.size());
  // In lexicographic order any prefix pair appears adjacently.
  for (size_t i = 0; i + 1 < members.size(); ++i)
    if (members[i].is_proper_prefix_of(members[i + 1])) {
      res.is_prefix_free = false;
      break;
    }
  return res;
}

// A validated prefix-free set of bit strings.
class PrefixCodeSet {
 public:
  PrefixCodeSet() = default;

  explicit PrefixCodeSet(std::vector<BitString> members) {
    std::sort(members.begin(), members.end(), BitString::lex_less);
    members.erase(std::unique(members.begin(), members.end()), members.end());
    auto check = check_prefix_free(members);
    if (!check.is_prefix_free)
      throw std::invalid_argument("PrefixCodeSet: members are not prefix-free");
    members_ = std::move(members);
    kraft_ = check.kraft_sum;
  }

  const std::vector<BitString>& members() const { return members_; }
  const Rat& kraft_sum() const { return kraft_; }
  size_t size() const { return members_.size(); }

  bool contains(const BitString& s) const {
    return std::binary_search(members_.begin(), members_.end(), s, BitString::lex_less);
  }

  // The unique member that is a prefix of w, if any.
  std::optional<BitString> match_prefix(const BitString& w) const {
    for (const BitString& m : members_)
      if (m.is_prefix_of(w)) return m;
    return std::nullopt;
  }

 private:
  std::vector<BitString> members_;
  Rat kraft_ = 0;
};

// --- length-lex ranking -----------------------------------------------------
// 0-based rank over all binary strings ordered by (length, lex):
// rank(eps)=0, rank("0")=1, rank("1")=2, rank("00")=3, ...

inline BigInt lenlex_rank(const BitString& s) {
  BigInt block_start = pow2(s.size()) - 1;  // # strings shorter than |s|
  BigInt v = 0;
  for (size_t i = 0; i < s.size(); ++i) v = (v << 1) | s[i];
  return block_start + v;
}

inline BitString lenlex_unrank(BigInt rank) {
  if (rank < 0) throw std::invalid_argument("lenlex_unrank: negative rank");
  size_t len = 0;
  while (pow2(len + 1) - 1 <= rank) ++len;
  BigInt v = rank - (pow2(len) - 1);
  BitString out;
  for (size_t i = 0; i < len; ++i) {
    BigInt bit = (v >> (len - 1 - i)) & 1;
    out.push_back(bit != 0 ? 1 : 0);
  }
  return out;
}

// --- header/payload pairing ---------------------------------------------------
// Pairing is plain concatenation against a prefix-free header table, so the
// pairing overhead constant is zero. Exported for constant-accounting reports.
inline constexpr int kPairingOverheadBits = 0;

inline BitString pair_header_payload(const PrefixCodeSet& headers, const BitString& header,
                                     const BitString& payload) {
  if (!headers.contains(header))
    throw std::invalid_argument("pair_header_payload: header not registered");
  return header + payload;
}

struct HeaderPayload {
  BitString header;
  BitString payload;
};

inline std::optional<HeaderPayload> unpair_header_payload(const PrefixCodeSet& headers,
                                                          const BitString& w) {
  auto h = headers.match_prefix(w);
  if (!h) return std::nullopt;
  return HeaderPayload{*h, w.substr(h->size(), w.size() - h->size())};
}

}  // namespace naqkit

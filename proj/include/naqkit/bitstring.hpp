#pragma once
// Bit strings over {0,1} with the canonical orders and serializations used
// throughout the toolkit. Bit order is most-significant-first everywhere.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace naqkit {

class BitString {
 public:
  BitString() = default;

  // Low `len` bits of `value`, most significant first. len <= 64.
  static BitString from_value(uint64_t value, size_t len) {
    if (len > 64) throw std::invalid_argument("BitString::from_value: len > 64");
    BitString s;
    s.bits_.reserve(len);
    for (size_t i = 0; i < len; ++i)
      s.bits_.push_back(static_cast<uint8_t>((value >> (len - 1 - i)) & 1u));
    return s;
  }

  static BitString from_text(std::string_view text) {
    BitString s;
    s.bits_.reserve(text.size());
    for (char c : text) {
      if (c == '0')
        s.bits_.push_back(0);
      else if (c == '1')
        s.bits_.push_back(1);
      else
        throw std::invalid_argument("BitString::from_text: non-binary character");
    }
    return s;
  }

  size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int bit(size_t i) const { return bits_[i]; }
  int operator[](size_t i) const { return bits_[i]; }

  void push_back(int b) { bits_.push_back(static_cast<uint8_t>(b & 1)); }
  void append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
  }
  void clear() { bits_.clear(); }

  BitString operator+(const BitString& other) const {
    BitString out = *this;
    out.append(other);
    return out;
  }

  BitString substr(size_t pos, size_t len) const {
    if (pos + len > bits_.size()) throw std::out_of_range("BitString::substr");
    BitString out;
    out.bits_.assign(bits_.begin() + pos, bits_.begin() + pos + len);
    return out;
  }

  bool is_prefix_of(const BitString& other) const {
    if (size() > other.size()) return false;
    for (size_t i = 0; i < size(); ++i)
      if (bits_[i] != other.bits_[i]) return false;
    return true;
  }
  bool is_proper_prefix_of(const BitString& other) const {
    return size() < other.size() && is_prefix_of(other);
  }

  bool operator==(const BitString& other) const { return bits_ == other.bits_; }
  bool operator!=(const BitString& other) const { return bits_ != other.bits_; }

  // Pure lexicographic order; a proper prefix sorts before its extensions.
  static bool lex_less(const BitString& a, const BitString& b) {
    size_t n = a.size() < b.size() ? a.size() : b.size();
    for (size_t i = 0; i < n; ++i)
      if (a.bits_[i] != b.bits_[i]) return a.bits_[i] < b.bits_[i];
    return a.size() < b.size();
  }

  // Length-lexicographic order: by length, then lexicographically.
  static bool lenlex_less(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_less(a, b);
  }

  std::string to_text() const {
    std::string out;
    out.reserve(bits_.size());
    for (uint8_t b : bits_) out.push_back(b ? '1' : '0');
    return out;
  }

  // Numeric value of the bits, MSB first. Requires size() <= 64.
  uint64_t value() const {
    if (size() > 64) throw std::invalid_argument("BitString::value: too long");
    uint64_t v = 0;
    for (uint8_t b : bits_) v = (v << 1) | b;
    return v;
  }

  // Packed byte form: bits MSB-first within each byte, final byte zero-padded.
  std::vector<uint8_t> to_packed_bytes() const {
    std::vector<uint8_t> out((bits_.size() + 7) / 8, 0);
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out[i / 8] |= static_cast<uint8_t>(0x80u >> (i % 8));
    return out;
  }

  // Length-prefixed binary form: 8-byte big-endian bit count, then packed bytes.
  std::vector<uint8_t> to_length_prefixed_bytes() const {
    std::vector<uint8_t> out;
    uint64_t n = bits_.size();
    for (int i = 7; i >= 0; --i) out.push_back(static_cast<uint8_t>((n >> (8 * i)) & 0xFF));
    auto packed = to_packed_bytes();
    out.insert(out.end(), packed.begin(), packed.end());
    return out;
  }

  static std::optional<BitString> from_length_prefixed_bytes(const std::vector<uint8_t>& data) {
    if (data.size() < 8) return std::nullopt;
    uint64_t n = 0;
    for (int i = 0; i < 8; ++i) n = (n << 8) | data[static_cast<size_t>(i)];
    if (data.size() != 8 + (n + 7) / 8) return std::nullopt;
    BitString s;
    s.bits_.reserve(n);
    for (uint64_t i = 0; i < n; ++i) {
      uint8_t byte = data[8 + i / 8];
      s.bits_.push_back((byte >> (7 - i % 8)) & 1u);
    }
    return s;
  }

  // Hex of the packed bytes (MSB-first). Witness columns use "len:hex".
  std::string to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out = std::to_string(bits_.size());
    out.push_back(':');
    for (uint8_t byte : to_packed_bytes()) {
      out.push_back(digits[byte >> 4]);
      out.push_back(digits[byte & 0xF]);
    }
    return out;
  }

  const std::vector<uint8_t>& raw() const { return bits_; }

 private:
  std::vector<uint8_t> bits_;
};

struct BitStringHash {
  size_t operator()(const BitString& s) const {
    uint64_t h = 1469598103934665603ull;
    for (uint8_t b : s.raw()) {
      h ^= b + 1;
      h *= 1099511628211ull;
    }
    h ^= s.size();
    h *= 1099511628211ull;
    return static_cast<size_t>(h);
  }
};

}  // namespace naqkit

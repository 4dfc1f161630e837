#pragma once
// The alphabet bijection phi between strings over two finite alphabets,
// realized by matching length-lex ranks. For arity 2 <-> 2 it is the identity.

#include "naqkit/bitstring.hpp"
#include "naqkit/rational.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace naqkit {

class AlphabetCodec {
 public:
  AlphabetCodec(unsigned sigma_arity, unsigned gamma_arity)
      : sigma_(sigma_arity), gamma_(gamma_arity) {
    if (sigma_ < 1 || gamma_ < 1 || sigma_ > 36 || gamma_ > 36)
      throw std::invalid_argument("AlphabetCodec: arity out of [1,36]");
  }

  unsigned sigma_arity() const { return sigma_; }
  unsigned gamma_arity() const { return gamma_; }

  // Sigma-string -> Gamma-string, preserving length-lex rank.
  std::string encode(std::string_view s) const { return unrank(rank(s, sigma_), gamma_); }
  // Inverse direction.
  std::string decode(std::string_view g) const { return unrank(rank(g, gamma_), sigma_); }

  // Convenience when Gamma = {0,1}.
  BitString encode_bits(std::string_view s) const {
    if (gamma_ != 2) throw std::invalid_argument("encode_bits: gamma arity != 2");
    return BitString::from_text(encode(s));
  }
  std::string decode_bits(const BitString& b) const {
    if (gamma_ != 2) throw std::invalid_argument("decode_bits: gamma arity != 2");
    return decode(b.to_text());
  }

  static unsigned digit_value(char c, unsigned arity) {
    unsigned v;
    if (c >= '0' && c <= '9')
      v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'z')
      v = static_cast<unsigned>(c - 'a') + 10;
    else
      throw std::invalid_argument("AlphabetCodec: bad digit");
    if (v >= arity) throw std::invalid_argument("AlphabetCodec: digit out of alphabet");
    return v;
  }

  static char digit_char(unsigned v) {
    return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + (v - 10));
  }

 private:
  // 0-based length-lex rank of s over an alphabet of size k.
  static BigInt rank(std::string_view s, unsigned k) {
    if (k == 1) {
      for (char c : s) digit_value(c, 1);
      return BigInt(s.size());
    }
    BigInt kk(k);
    BigInt shorter = (boost::multiprecision::pow(kk, static_cast<unsigned>(s.size())) - 1) / (kk - 1);
    BigInt v = 0;
    for (char c : s) v = v * kk + digit_value(c, k);
    return shorter + v;
  }

  static std::string unrank(BigInt r, unsigned k) {
    if (k == 1) {
      std::string out;
      for (BigInt i = 0; i < r; ++i) out.push_back('0');
      return out;
    }
    BigInt kk(k);
    size_t len = 0;
    BigInt block = 1;  // k^len
    BigInt shorter = 0;
    while (shorter + block <= r) {
      shorter += block;
      block *= kk;
      ++len;
    }
    BigInt v = r - shorter;
    std::string out(len, '0');
    for (size_t i = len; i-- > 0;) {
      BigInt d = v % kk;
      out[i] = digit_char(d.convert_to<unsigned>());
      v /= kk;
    }
    return out;
  }

  unsigned sigma_;
  unsigned gamma_;
};

}  // namespace naqkit

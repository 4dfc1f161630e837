#include <doctest.h>

#include "naqkit/alphabet.hpp"
#include "naqkit/bitcode.hpp"
#include "naqkit/bitstring.hpp"

#include "oracles.hpp"

#include <set>

using namespace naqkit;

TEST_CASE("elias gamma hand-encoded values") {
  CHECK(encode_nat(1).to_text() == "1");
  CHECK(encode_nat(2).to_text() == "010");
  CHECK(encode_nat(3).to_text() == "011");
  CHECK(encode_nat(4).to_text() == "00100");
  CHECK(encode_nat(13).to_text() == "0001101");
  CHECK_THROWS_AS(encode_nat(0), std::invalid_argument);
}

TEST_CASE("gamma decode inverts encode over [1, 2^16]") {
  for (uint64_t n = 1; n <= (1u << 16); ++n) {
    BitString code = encode_nat(n);
    CHECK(code.size() == encode_nat_length(n));
    BitCursor cur(code);
    auto back = decode_nat(cur);
    REQUIRE(back.has_value());
    CHECK(*back == n);
    CHECK(cur.at_end());
  }
}

TEST_CASE("gamma code set over [1, 2^16] is prefix-free with kraft <= 1") {
  std::vector<BitString> codes;
  for (uint64_t n = 1; n <= (1u << 16); ++n) codes.push_back(encode_nat(n));
  auto res = check_prefix_free(codes);
  CHECK(res.is_prefix_free);
  CHECK(res.kraft_sum <= 1);
}

TEST_CASE("check_prefix_free on the spec sets") {
  auto complete = check_prefix_free(
      {BitString::from_text("0"), BitString::from_text("10"), BitString::from_text("11")});
  CHECK(complete.is_prefix_free);
  CHECK(complete.kraft_sum == 1);

  auto bad = check_prefix_free({BitString::from_text("0"), BitString::from_text("01")});
  CHECK_FALSE(bad.is_prefix_free);
  CHECK(bad.kraft_sum == Rat(3, 4));

  auto empty = check_prefix_free({});
  CHECK(empty.is_prefix_free);
  CHECK(empty.kraft_sum == 0);
}

TEST_CASE("prefix code set construction rejects non-prefix-free members") {
  CHECK_THROWS_AS(PrefixCodeSet({BitString::from_text("0"), BitString::from_text("01")}),
                  std::invalid_argument);
  PrefixCodeSet ok({BitString::from_text("1"), BitString::from_text("010")});
  CHECK(ok.kraft_sum() == Rat(5, 8));
  CHECK(ok.contains(BitString::from_text("1")));
  CHECK_FALSE(ok.contains(BitString::from_text("0")));
}

TEST_CASE("pair/unpair against the header table") {
  PrefixCodeSet headers({BitString::from_text("1"), BitString::from_text("010")});

  BitString paired =
      pair_header_payload(headers, BitString::from_text("1"), BitString::from_text("0101"));
  CHECK(paired.to_text() == "10101");
  CHECK(paired.size() == 5);

  CHECK(pair_header_payload(headers, BitString::from_text("010"), BitString()).to_text() ==
        "010");

  CHECK_THROWS_AS(
      pair_header_payload(headers, BitString::from_text("00"), BitString::from_text("1")),
      std::invalid_argument);

  SUBCASE("round-trip sweep: unpair(pair(h,w)) = (h,w), 10^4 cases") {
    std::vector<BitString> hs = {BitString::from_text("1"), BitString::from_text("010")};
    size_t cases = 0;
    std::set<std::string> images;
    for (const BitString& h : hs) {
      for (size_t len = 0; len <= 12 && cases < 10000; ++len) {
        for (uint64_t v = 0; v < (uint64_t(1) << len) && cases < 10000; ++v) {
          BitString payload = BitString::from_value(v, len);
          BitString both = pair_header_payload(headers, h, payload);
          auto split = unpair_header_payload(headers, both);
          REQUIRE(split.has_value());
          CHECK(split->header == h);
          CHECK(split->payload == payload);
          // Injective onto its image.
          CHECK(images.insert(both.to_text()).second);
          ++cases;
        }
      }
    }
    CHECK(cases == 10000);
  }
}

TEST_CASE("length-lex rank/unrank round-trips") {
  CHECK(lenlex_rank(BitString()) == 0);
  CHECK(lenlex_rank(BitString::from_text("0")) == 1);
  CHECK(lenlex_rank(BitString::from_text("1")) == 2);
  CHECK(lenlex_rank(BitString::from_text("00")) == 3);
  for (BigInt i = 0; i < 1000; ++i) CHECK(lenlex_rank(lenlex_unrank(i)) == i);
}

TEST_CASE("bit string serializations") {
  BitString s = BitString::from_text("10110");
  CHECK(s.to_hex() == "5:b0");
  auto bytes = s.to_length_prefixed_bytes();
  auto back = BitString::from_length_prefixed_bytes(bytes);
  REQUIRE(back.has_value());
  CHECK(*back == s);

  BitString empty;
  auto eb = BitString::from_length_prefixed_bytes(empty.to_length_prefixed_bytes());
  REQUIRE(eb.has_value());
  CHECK(eb->empty());
}

TEST_CASE("alphabet codec is a bijection and identity for binary") {
  AlphabetCodec binary(2, 2);
  for (const BitString& s : oracle::all_strings(8)) {
    CHECK(binary.encode(s.to_text()) == s.to_text());
    CHECK(binary.decode(s.to_text()) == s.to_text());
  }

  AlphabetCodec ternary(3, 2);
  // encode/decode invert each other on strings of both alphabets.
  std::vector<std::string> sigma = {"", "0", "1", "2", "00", "21", "120", "2221"};
  for (const std::string& s : sigma) CHECK(ternary.decode(ternary.encode(s)) == s);
  for (const BitString& g : oracle::all_strings(7))
    CHECK(ternary.encode(ternary.decode(g.to_text())) == g.to_text());

  // Length-lex order is preserved, so the map is the canonical bijection.
  CHECK(ternary.encode("") == "");
  CHECK(ternary.encode("0") == "0");
  CHECK(ternary.encode("1") == "1");
  CHECK(ternary.encode("2") == "00");
}

TEST_CASE("alphabet codec rejects bad digits") {
  AlphabetCodec ternary(3, 2);
  CHECK_THROWS_AS(ternary.encode("3"), std::invalid_argument);
  CHECK_THROWS_AS(AlphabetCodec(0, 2), std::invalid_argument);
}

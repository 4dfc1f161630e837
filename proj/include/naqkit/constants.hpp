#pragma once
// The exported constants registry. Every O(1) claim in reports resolves to a
// concrete number here, relative to the reference coding (Elias gamma
// framing), the tape8-v1 machine and the shipped header table. Empirical
// constants are frozen against the shipped fixture corpora; unit tests
// re-derive the derivable ones.

#include <cstdint>
#include <string>

namespace naqkit {

inline constexpr const char* kArtifactVersion = "0.1.0";

struct ConstantsRegistry {
  std::string artifact_version = kArtifactVersion;
  std::string machine_version = "tape8-v1";
  int header_registry_version = 1;

  // Pairing and translation (Lemma-style constants on the bounded machine).
  int pairing_overhead_bits = 0;
  int translation_a = 3;  // burden(E_univ) <= K-hat + a  (a = |h_machine| + pairing)
  int translation_b = 9;  // K-hat <= burden(E_univ) + b  for |r| <= response_len_cap
  int response_len_cap = 4;

  // Default budgets.
  uint64_t default_length_cap = 20;
  uint64_t interactive_length_cap = 16;
  uint64_t default_step_budget = uint64_t(1) << 16;
  uint64_t default_burden_max_len = 24;

  // Machine bookkeeping.
  int c_machine = 1;  // step bound for the empty program

  // Identity-family / panel slack.
  int c_id = 0;
  int c_vp = 0;

  // Description+selection constants (empirical maxima over the shipped
  // fixture corpora, relative to the reference coding).
  int c_dsel = 7;  // m_exact <= two-part bound + c_dsel
  int c_fa = 3;    // |m_exact - min_y K(y)| <= c_fa under finite ambiguity
  int c_cond = 8;  // fiber-min K >= K(y|x) - c_cond
  int c_tight = 7; // |m_exact - two-part bound| <= c_tight on generic corpora
  int c_en = 0;    // enumeration-distortion slack beyond ceil(log D)

  // Compressor proxy report constant (sanity report only, not a gate).
  int c_cat = 16;
};

const ConstantsRegistry& constants();

}  // namespace naqkit

#pragma once
// The bounded reference machine U_B: an 8-instruction tape machine whose
// programs are self-delimited by a gamma length frame. All complexity
// measurements in the toolkit are relative to this machine and its budgets.
// The instruction set is specified bit-exactly in docs/machine.md.

#include "naqkit/bitcode.hpp"
#include "naqkit/bitstring.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace naqkit {

inline constexpr const char* kMachineVersion = "tape8-v1";
inline constexpr uint64_t kDefaultStepBudget = 1u << 16;

enum class MachineOp : uint8_t {
  kHalt = 0,   // stop
  kOut0 = 1,   // append 0 to the output
  kOut1 = 2,   // append 1 to the output
  kLeft = 3,   // move head left
  kRight = 4,  // move head right
  kFlip = 5,   // invert the tape bit under the head
  kJzf = 6,    // if the tape bit under the head is 0, skip the next instruction
  kJmpb = 7,   // jump to instruction 0
};

struct RunOutcome {
  enum class Status { kHalted, kTimeout };
  Status status = Status::kHalted;
  BitString output;  // present iff halted
  uint64_t steps = 0;
};

// Total program length for a body of `body_len` bits.
inline size_t framed_program_length(size_t body_len) {
  return encode_nat_length(static_cast<uint64_t>(body_len) + 1) + body_len;
}

inline BitString frame_program(const BitString& body) {
  return encode_nat(static_cast<uint64_t>(body.size()) + 1) + body;
}

// Strict parse: gamma(body_len + 1) followed by exactly body_len bits.
inline std::optional<BitString> parse_program_body(const BitString& program) {
  BitCursor cur(program);
  auto n = decode_nat(cur);
  if (!n) return std::nullopt;
  uint64_t body_len = *n - 1;
  if (cur.remaining() != body_len) return std::nullopt;
  return program.substr(cur.pos, body_len);
}

class BoundedMachine {
 public:
  // Runs a framed program. Non-programs halt with empty output at zero steps.
  RunOutcome run(const BitString& program, uint64_t budget) const {
    auto body = parse_program_body(program);
    if (!body) return RunOutcome{RunOutcome::Status::kHalted, BitString(), 0};
    return run_body(*body, budget, nullptr);
  }

  // Conditional variant: the work tape starts holding `condition` at cells
  // 0..n-1 (head at cell 0) instead of all zeros.
  RunOutcome run_conditional(const BitString& program, const BitString& condition,
                             uint64_t budget) const {
    auto body = parse_program_body(program);
    if (!body) return RunOutcome{RunOutcome::Status::kHalted, BitString(), 0};
    return run_body(*body, budget, &condition);
  }

  RunOutcome run_body(const BitString& body, uint64_t budget,
                      const BitString* condition) const {
    ops_.clear();
    size_t full = body.size() / 3;  // trailing partial opcode is ignored
    for (size_t j = 0; j < full; ++j) {
      uint8_t op = static_cast<uint8_t>((body[3 * j] << 2) | (body[3 * j + 1] << 1) |
                                        body[3 * j + 2]);
      ops_.push_back(op);
    }
    return execute(budget, condition);
  }

  // Fast path for enumeration: body given as the low `body_len` bits of
  // `body_value`, MSB first.
  RunOutcome run_packed_body(uint64_t body_value, size_t body_len, uint64_t budget,
                             const BitString* condition = nullptr) const {
    ops_.clear();
    size_t full = body_len / 3;
    for (size_t j = 0; j < full; ++j) {
      size_t shift = body_len - 3 * (j + 1);
      ops_.push_back(static_cast<uint8_t>((body_value >> shift) & 7u));
    }
    return execute(budget, condition);
  }

 private:
  RunOutcome execute(uint64_t budget, const BitString* condition) const {
    pos_.clear();
    neg_.clear();
    out_.clear();
    if (condition)
      for (size_t i = 0; i < condition->size(); ++i)
        pos_.push_back(static_cast<uint8_t>((*condition)[i]));

    int64_t head = 0;
    size_t pc = 0;
    uint64_t steps = 0;
    const size_t n = ops_.size();

    while (pc < n) {
      if (steps == budget) return RunOutcome{RunOutcome::Status::kTimeout, BitString(), steps};
      ++steps;
      switch (static_cast<MachineOp>(ops_[pc])) {
        case MachineOp::kHalt:
          pc = n;
          break;
        case MachineOp::kOut0:
          out_.push_back(0);
          ++pc;
          break;
        case MachineOp::kOut1:
          out_.push_back(1);
          ++pc;
          break;
        case MachineOp::kLeft:
          --head;
          ++pc;
          break;
        case MachineOp::kRight:
          ++head;
          ++pc;
          break;
        case MachineOp::kFlip:
          cell(head) ^= 1;
          ++pc;
          break;
        case MachineOp::kJzf:
          pc += (cell(head) == 0) ? 2 : 1;
          break;
        case MachineOp::kJmpb:
          pc = 0;
          break;
      }
    }
    RunOutcome res;
    res.status = RunOutcome::Status::kHalted;
    res.steps = steps;
    for (uint8_t b : out_) res.output.push_back(b);
    return res;
  }

  uint8_t& cell(int64_t i) const {
    if (i >= 0) {
      size_t idx = static_cast<size_t>(i);
      if (idx >= pos_.size()) pos_.resize(idx + 1, 0);
      return pos_[idx];
    }
    size_t idx = static_cast<size_t>(-i - 1);
    if (idx >= neg_.size()) neg_.resize(idx + 1, 0);
    return neg_[idx];
  }

  mutable std::vector<uint8_t> ops_;
  mutable std::vector<uint8_t> pos_;
  mutable std::vector<uint8_t> neg_;
  mutable std::vector<uint8_t> out_;
};

inline RunOutcome run_machine(const BitString& program, uint64_t budget) {
  static thread_local BoundedMachine machine;
  return machine.run(program, budget);
}

// Enumerates framed programs in (length, lex) order: body length ascending
// (total length is strictly monotone in it), body value ascending.
// fn(body_value, body_len, total_len) -> bool; return false to stop.
inline void enumerate_programs(size_t max_total_len,
                               const std::function<bool(uint64_t, size_t, size_t)>& fn) {
  for (size_t body_len = 0; body_len <= 62; ++body_len) {
    size_t total = framed_program_length(body_len);
    if (total > max_total_len) break;
    uint64_t count = uint64_t(1) << body_len;
    for (uint64_t v = 0; v < count; ++v)
      if (!fn(v, body_len, total)) return;
  }
}

inline BitString body_bits(uint64_t body_value, size_t body_len) {
  return BitString::from_value(body_value, body_len);
}

// 1-based length-lex enumeration of framed programs; stands in for the fixed
// program enumeration (p_n) of the fixture families.
inline BitString nth_program(uint64_t n) {
  if (n == 0) throw std::invalid_argument("nth_program: 1-based index");
  uint64_t idx = n - 1;
  for (size_t body_len = 0; body_len <= 62; ++body_len) {
    uint64_t count = uint64_t(1) << body_len;
    if (idx < count) return frame_program(body_bits(idx, body_len));
    idx -= count;
  }
  throw std::invalid_argument("nth_program: index out of desk-scale range");
}

}  // namespace naqkit

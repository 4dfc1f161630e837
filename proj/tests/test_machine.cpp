#include <doctest.h>

#include "naqkit/machine.hpp"

#include "oracles.hpp"

using namespace naqkit;

namespace {

// 3-bit opcode stream as text, e.g. OUT1 OUT0 = "010" "001".
BitString program_from_ops(std::initializer_list<MachineOp> ops) {
  BitString body;
  for (MachineOp op : ops) {
    uint8_t v = static_cast<uint8_t>(op);
    body.push_back((v >> 2) & 1);
    body.push_back((v >> 1) & 1);
    body.push_back(v & 1);
  }
  return frame_program(body);
}

}  // namespace

TEST_CASE("empty program halts immediately with empty output") {
  RunOutcome out = run_machine(frame_program(BitString()), 1000);
  CHECK(out.status == RunOutcome::Status::kHalted);
  CHECK(out.output.empty());
  CHECK(out.steps <= 1);  // c_machine
}

TEST_CASE("non-program bit strings halt with empty output, never crash") {
  for (const BitString& w : oracle::all_strings(10)) {
    RunOutcome out = run_machine(w, 100);
    if (!parse_program_body(w)) {
      CHECK(out.status == RunOutcome::Status::kHalted);
      CHECK(out.output.empty());
      CHECK(out.steps == 0);
    }
  }
}

TEST_CASE("literal output programs") {
  RunOutcome out = run_machine(
      program_from_ops({MachineOp::kOut1, MachineOp::kOut0, MachineOp::kOut1}), 100);
  CHECK(out.status == RunOutcome::Status::kHalted);
  CHECK(out.output.to_text() == "101");
  CHECK(out.steps == 3);
}

TEST_CASE("flip and conditional skip read the tape") {
  // FLIP sets cell 0 to 1; JZF then must NOT skip; OUT1 runs.
  RunOutcome out =
      run_machine(program_from_ops({MachineOp::kFlip, MachineOp::kJzf, MachineOp::kOut1}), 100);
  CHECK(out.output.to_text() == "1");

  // Without the flip, JZF skips the OUT1.
  RunOutcome skipped =
      run_machine(program_from_ops({MachineOp::kJzf, MachineOp::kOut1}), 100);
  CHECK(skipped.output.empty());
}

TEST_CASE("a hand-written looping program times out at budget 100") {
  BitString loop = program_from_ops({MachineOp::kJmpb});
  RunOutcome out = run_machine(loop, 100);
  CHECK(out.status == RunOutcome::Status::kTimeout);
  CHECK(out.steps == 100);
  CHECK(out.output.empty());
}

TEST_CASE("toggle loop halts on the second pass") {
  // FLIP; JZF; JMPB: first pass leaves the bit at 1 so JMPB restarts; second
  // pass flips it back to 0 and JZF skips the jump.
  BitString p = program_from_ops({MachineOp::kFlip, MachineOp::kJzf, MachineOp::kJmpb});
  RunOutcome out = run_machine(p, 100);
  CHECK(out.status == RunOutcome::Status::kHalted);
  CHECK(out.steps == 5);
}

TEST_CASE("halt opcode stops mid-program") {
  RunOutcome out = run_machine(
      program_from_ops({MachineOp::kOut1, MachineOp::kHalt, MachineOp::kOut0}), 100);
  CHECK(out.output.to_text() == "1");
  CHECK(out.steps == 2);
}

TEST_CASE("budget monotonicity: halted outcomes are identical at any larger budget") {
  // Exhaustive over all programs with |p| <= 10 and budgets 1..128.
  for (const BitString& p : oracle::all_strings(10)) {
    if (!parse_program_body(p)) continue;
    for (uint64_t budget : {1ull, 2ull, 4ull, 16ull, 64ull}) {
      RunOutcome a = run_machine(p, budget);
      if (a.status != RunOutcome::Status::kHalted) continue;
      RunOutcome b = run_machine(p, 2 * budget);
      CHECK(b.status == RunOutcome::Status::kHalted);
      CHECK(a.output == b.output);
      CHECK(a.steps == b.steps);
    }
  }
}

TEST_CASE("trailing partial opcode is ignored") {
  BitString body;  // OUT1 plus two dangling bits
  for (int b : {0, 1, 0, 1, 1}) body.push_back(b);
  RunOutcome out = run_machine(frame_program(body), 100);
  CHECK(out.status == RunOutcome::Status::kHalted);
  CHECK(out.output.to_text() == "1");
}

TEST_CASE("conditional runs see the condition on the tape") {
  // JZF OUT1 JZF HALT OUT0 emits the first condition bit.
  BitString p = program_from_ops({MachineOp::kJzf, MachineOp::kOut1, MachineOp::kJzf,
                                  MachineOp::kHalt, MachineOp::kOut0});
  BoundedMachine machine;
  RunOutcome on1 = machine.run_conditional(p, BitString::from_text("1"), 100);
  CHECK(on1.output.to_text() == "1");
  RunOutcome on0 = machine.run_conditional(p, BitString::from_text("0"), 100);
  CHECK(on0.output.to_text() == "0");
  RunOutcome blank = machine.run(p, 100);
  CHECK(blank.output.to_text() == "0");
}

TEST_CASE("framed program set is prefix-free") {
  std::vector<BitString> programs;
  enumerate_programs(14, [&](uint64_t v, size_t len, size_t) {
    programs.push_back(frame_program(body_bits(v, len)));
    return true;
  });
  auto res = check_prefix_free(programs);
  CHECK(res.is_prefix_free);
  CHECK(res.kraft_sum <= 1);
}

TEST_CASE("program enumeration is (length, lex) ordered and framed lengths are strict") {
  size_t prev_total = 0;
  uint64_t prev_v = 0;
  size_t prev_len = SIZE_MAX;
  enumerate_programs(16, [&](uint64_t v, size_t len, size_t total) {
    CHECK(total == framed_program_length(len));
    if (prev_len == len) {
      CHECK(v == prev_v + 1);
      CHECK(total == prev_total);
    } else if (prev_len != SIZE_MAX) {
      CHECK(total > prev_total);
    }
    prev_total = total;
    prev_v = v;
    prev_len = len;
    return true;
  });
}

TEST_CASE("nth_program enumerates framed programs in order") {
  CHECK(nth_program(1) == frame_program(BitString()));
  CHECK(nth_program(2) == frame_program(BitString::from_text("0")));
  CHECK(nth_program(3) == frame_program(BitString::from_text("1")));
  CHECK(nth_program(4) == frame_program(BitString::from_text("00")));
  CHECK_THROWS_AS(nth_program(0), std::invalid_argument);
}

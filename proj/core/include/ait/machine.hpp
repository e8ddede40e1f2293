#pragma once

#include <cstdint>
#include <string_view>
#include <variant>

#include "ait/bits.hpp"
#include "ait/profile.hpp"

namespace ait {

// Reference universal prefix-free machine.
//
// Program format: gamma(L) ++ L bytecode bits ++ data bits read on demand.
// The header and bytecode are read in full before execution starts. Each
// executed opcode costs one step; the fetch order is
//   decode opcode+operand (PC or operand outside [0, L) => Undefined)
//   -> budget check (steps == budget => OutOfBudget) -> count step -> execute.
//
// Opcodes (4 bits, MSB first):
//   0000 HALT   0001 OUT0   0010 OUT1   0011 READOUT  0100 READWORK
//   0101 W0     0110 W1     0111 LEFT   1000 RIGHT    1001 OUTW
//   1010 SETCTR g(n)   1011 DECJNZB g(d)   1100 JZF g(d)   1101 JZB g(d)
//   1110 JMPB g(d)     1111 ESCAPE g(j)
// Jump distances are measured from the bit after the operand. LEFT at cell 0
// stays. The counter starts at 0 and the work tape is zero-filled.
//
// Builtins (ESCAPE j) are terminal: they append their result and halt.
//   1 PRINT_INDEX  reads g(n), outputs lex_string(n); 1 step.
//   2 SEARCH_GE    reads g(l), l bits of bytecode F, g(n); scans x in
//                  length-lex order, v = lex_index(F run plain on
//                  g(lex_index(x)+1)), outputs the first x with v >= n;
//                  1 step + 1 per candidate. Each F run gets the full step
//                  budget of the enclosing run and is not charged.
//   3 TRIPLE_WRAP  simulates a nested prefix-mode program on the remaining
//                  input; on (x, p, t) outputs lex_string(<x,p,t>);
//                  1 step + the nested steps.
//   4 TREE_DECODE  reads g(r), walks registered tree r one input bit per
//                  branch, outputs lex_string(leaf); 1 step.
// Unregistered builtins, missing trees and absent tree branches are
// Undefined.

struct Halted {
  BitString output;
  std::uint64_t consumed = 0;
  std::uint64_t steps = 0;

  friend bool operator==(const Halted&, const Halted&) = default;
};
struct NeedsInput {
  friend bool operator==(const NeedsInput&, const NeedsInput&) = default;
};
struct Undefined {
  friend bool operator==(const Undefined&, const Undefined&) = default;
};
struct OutOfBudget {
  friend bool operator==(const OutOfBudget&, const OutOfBudget&) = default;
};

using RunOutcome = std::variant<Halted, NeedsInput, Undefined, OutOfBudget>;

enum class Mode { kPrefix, kPlain };

const char* mode_name(Mode mode);

// Prefix mode: a read past the provided bits yields NeedsInput.
RunOutcome run_prefix(const MachineProfile& profile, std::string_view program,
                      std::uint64_t step_budget);
inline RunOutcome run_prefix(const MachineProfile& profile, const BitString& program,
                             std::uint64_t step_budget) {
  return run_prefix(profile, program.digits(), step_budget);
}

// Plain mode: a read past the end of the program during execution halts
// with the output so far (the reading opcode counts as the halting step).
// Running out of bits while loading the header or bytecode is Undefined.
RunOutcome run_plain(const MachineProfile& profile, std::string_view program,
                     std::uint64_t step_budget);
inline RunOutcome run_plain(const MachineProfile& profile, const BitString& program,
                            std::uint64_t step_budget) {
  return run_plain(profile, program.digits(), step_budget);
}

RunOutcome run(Mode mode, const MachineProfile& profile, std::string_view program,
               std::uint64_t step_budget);

// Runs headerless bytecode in plain mode with `data` as its input stream.
RunOutcome run_bytecode_plain(const MachineProfile& profile, std::string_view bytecode,
                              std::string_view data, std::uint64_t step_budget);

// One prefix-mode execution that also reports the plain-mode outcome on the
// same bits; the enumerator uses it to explore both domains in a single tree
// walk.
struct Probe {
  RunOutcome prefix;
  RunOutcome plain;
};
Probe probe(const MachineProfile& profile, std::string_view program,
            std::uint64_t step_budget);

inline const Halted* as_halted(const RunOutcome& outcome) {
  return std::get_if<Halted>(&outcome);
}
std::string describe(const RunOutcome& outcome);

}  // namespace ait

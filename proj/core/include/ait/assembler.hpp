#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ait/bits.hpp"

namespace ait {

enum class Opcode : std::uint8_t {
  kHalt = 0b0000,
  kOut0 = 0b0001,
  kOut1 = 0b0010,
  kReadOut = 0b0011,
  kReadWork = 0b0100,
  kW0 = 0b0101,
  kW1 = 0b0110,
  kLeft = 0b0111,
  kRight = 0b1000,
  kOutW = 0b1001,
  kSetCtr = 0b1010,
  kDecJnzB = 0b1011,
  kJzF = 0b1100,
  kJzB = 0b1101,
  kJmpB = 0b1110,
  kEscape = 0b1111,
};

inline bool has_operand(Opcode op) { return static_cast<unsigned>(op) >= 0b1010; }
const char* mnemonic(Opcode op);
// Throws kInvalidArgument for unknown names (case-insensitive).
Opcode parse_mnemonic(std::string_view name);

struct Instruction {
  Opcode op = Opcode::kHalt;
  std::uint64_t operand = 0;  // 0 for opcodes without one

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

// Jump operands are taken verbatim. Throws kOperandOutOfRange when an
// operand-taking opcode has operand 0 or another opcode carries one.
BitString assemble(const std::vector<Instruction>& program);
// Throws kMalformedCode on a truncated opcode or operand.
std::vector<Instruction> disassemble(const BitString& bytecode);

// Text form: "SETCTR 3; READOUT; DECJNZB 15; HALT" (';' or newlines).
std::string to_text(const std::vector<Instruction>& program);
std::vector<Instruction> parse_text(std::string_view text);

// gamma(|bytecode|) ++ bytecode ++ data.
BitString make_program(const BitString& bytecode, const BitString& data = {});

// Builds bytecode with symbolic jump targets. Distances are resolved by
// fixpoint iteration because the operand width depends on the distance.
class ProgramBuilder {
 public:
  ProgramBuilder& op(Opcode op, std::uint64_t operand = 0);
  ProgramBuilder& repeat(Opcode op, std::size_t count);
  ProgramBuilder& label(std::string name);
  // JZF jumps forward; DECJNZB, JZB and JMPB jump backward.
  ProgramBuilder& jump(Opcode op, std::string target);

  std::vector<Instruction> instructions() const;
  BitString bytecode() const { return assemble(instructions()); }

 private:
  struct Item {
    Instruction ins;
    std::string target;  // empty unless a symbolic jump
  };
  std::vector<Item> items_;
  std::vector<std::pair<std::string, std::size_t>> labels_;  // name -> item index
};

}  // namespace ait

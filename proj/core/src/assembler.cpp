#include "ait/assembler.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

#include "ait/encodings.hpp"
#include "ait/errors.hpp"

namespace ait {

namespace {

constexpr std::array<const char*, 16> kNames = {
    "HALT", "OUT0",   "OUT1",    "READOUT", "READWORK", "W0",  "W1",   "LEFT",
    "RIGHT", "OUTW", "SETCTR", "DECJNZB", "JZF",      "JZB", "JMPB", "ESCAPE"};

std::size_t gamma_width(std::uint64_t n) { return 2 * static_cast<std::size_t>(63 - __builtin_clzll(n)) + 1; }

std::size_t width(const Instruction& ins) {
  return 4 + (has_operand(ins.op) ? gamma_width(ins.operand) : 0);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

const char* mnemonic(Opcode op) { return kNames[static_cast<unsigned>(op)]; }

Opcode parse_mnemonic(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (unsigned i = 0; i < kNames.size(); ++i) {
    if (upper == kNames[i]) return static_cast<Opcode>(i);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown mnemonic '" + std::string(name) + "'");
}

BitString assemble(const std::vector<Instruction>& program) {
  BitString out;
  for (const Instruction& ins : program) {
    out.append(BitString::from_uint(static_cast<unsigned>(ins.op), 4));
    if (has_operand(ins.op)) {
      if (ins.operand == 0) {
        throw Error(ErrorKind::kOperandOutOfRange,
                    std::string(mnemonic(ins.op)) + " needs an operand >= 1");
      }
      out.append(gamma_encode(Natural(ins.operand)));
    } else if (ins.operand != 0) {
      throw Error(ErrorKind::kOperandOutOfRange,
                  std::string(mnemonic(ins.op)) + " takes no operand");
    }
  }
  return out;
}

std::vector<Instruction> disassemble(const BitString& bytecode) {
  std::vector<Instruction> program;
  const std::string_view bits = bytecode.digits();
  std::size_t pos = 0;
  while (pos < bits.size()) {
    if (bits.size() - pos < 4) throw Error(ErrorKind::kMalformedCode, "truncated opcode");
    unsigned code = 0;
    for (int i = 0; i < 4; ++i) code = code * 2 + (bits[pos++] == '1' ? 1U : 0U);
    const auto op = static_cast<Opcode>(code);
    Instruction ins{op, 0};
    if (has_operand(op)) {
      const GammaDecoded g = gamma_decode(bits, pos);
      if (g.value > UINT64_MAX) throw Error(ErrorKind::kOperandOutOfRange, "operand exceeds 64 bits");
      ins.operand = static_cast<std::uint64_t>(g.value);
      pos += g.consumed;
    }
    program.push_back(ins);
  }
  return program;
}

std::string to_text(const std::vector<Instruction>& program) {
  std::string out;
  for (std::size_t i = 0; i < program.size(); ++i) {
    if (i > 0) out += "; ";
    out += mnemonic(program[i].op);
    if (has_operand(program[i].op)) out += " " + std::to_string(program[i].operand);
  }
  return out;
}

std::vector<Instruction> parse_text(std::string_view text) {
  std::vector<Instruction> program;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of(";\n", start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    if (const auto hash = item.find('#'); hash != std::string_view::npos) item = item.substr(0, hash);
    item = trim(item);
    if (!item.empty()) {
      const std::size_t space = item.find_first_of(" \t");
      Instruction ins{parse_mnemonic(item.substr(0, space)), 0};
      if (space != std::string_view::npos) {
        const std::string_view arg = trim(item.substr(space));
        if (arg.empty() || !std::all_of(arg.begin(), arg.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
          throw Error(ErrorKind::kInvalidArgument, "bad operand '" + std::string(arg) + "'");
        }
        try {
          ins.operand = std::stoull(std::string(arg));
        } catch (const std::out_of_range&) {
          throw Error(ErrorKind::kOperandOutOfRange, "operand exceeds 64 bits");
        }
      }
      program.push_back(ins);
    }
    start = end + 1;
  }
  return program;
}

BitString make_program(const BitString& bytecode, const BitString& data) {
  if (bytecode.empty()) throw Error(ErrorKind::kInvalidArgument, "bytecode must be nonempty");
  return gamma_encode(Natural(bytecode.size())) + bytecode + data;
}

ProgramBuilder& ProgramBuilder::op(Opcode op, std::uint64_t operand) {
  items_.push_back({{op, operand}, {}});
  return *this;
}

ProgramBuilder& ProgramBuilder::repeat(Opcode op, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) this->op(op);
  return *this;
}

ProgramBuilder& ProgramBuilder::label(std::string name) {
  labels_.emplace_back(std::move(name), items_.size());
  return *this;
}

ProgramBuilder& ProgramBuilder::jump(Opcode op, std::string target) {
  if (op != Opcode::kJzF && op != Opcode::kDecJnzB && op != Opcode::kJzB && op != Opcode::kJmpB) {
    throw Error(ErrorKind::kInvalidArgument, std::string(mnemonic(op)) + " is not a jump");
  }
  items_.push_back({{op, 1}, std::move(target)});
  return *this;
}

std::vector<Instruction> ProgramBuilder::instructions() const {
  auto find_label = [&](const std::string& name) {
    for (const auto& [label, index] : labels_) {
      if (label == name) return index;
    }
    throw Error(ErrorKind::kInvalidArgument, "undefined label '" + name + "'");
  };
  std::vector<Instruction> program;
  for (const Item& item : items_) program.push_back(item.ins);

  // Distances only grow as operands widen, so this reaches a fixpoint.
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::size_t> offset(program.size() + 1, 0);
    for (std::size_t i = 0; i < program.size(); ++i) offset[i + 1] = offset[i] + width(program[i]);
    for (std::size_t i = 0; i < program.size(); ++i) {
      if (items_[i].target.empty()) continue;
      const std::size_t target = offset[find_label(items_[i].target)];
      const std::size_t after = offset[i + 1];
      std::uint64_t distance;
      if (program[i].op == Opcode::kJzF) {
        if (target <= after) {
          throw Error(ErrorKind::kOperandOutOfRange, "forward jump to '" + items_[i].target + "' has no positive distance");
        }
        distance = target - after;
      } else {
        if (target >= after) {
          throw Error(ErrorKind::kOperandOutOfRange, "backward jump to '" + items_[i].target + "' has no positive distance");
        }
        distance = after - target;
      }
      if (distance != program[i].operand) {
        program[i].operand = distance;
        changed = true;
      }
    }
  }
  return program;
}

}  // namespace ait

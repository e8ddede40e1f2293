#include "ait/programs.hpp"

#include "ait/assembler.hpp"
#include "ait/encodings.hpp"
#include "ait/errors.hpp"

namespace ait {

BitString print_literal_program(const BitString& x) {
  ProgramBuilder b;
  for (std::size_t i = 0; i < x.size(); ++i) b.op(x[i] ? Opcode::kOut1 : Opcode::kOut0);
  b.op(Opcode::kHalt);
  return make_program(b.bytecode());
}

BitString copy_program(const BitString& data) {
  if (data.empty()) throw Error(ErrorKind::kInvalidArgument, "copy_program needs |data| >= 1");
  ProgramBuilder b;
  b.op(Opcode::kSetCtr, data.size())
      .label("loop")
      .op(Opcode::kReadOut)
      .jump(Opcode::kDecJnzB, "loop")
      .op(Opcode::kHalt);
  return make_program(b.bytecode(), data);
}

BitString copy_all_bytecode() {
  ProgramBuilder b;
  b.label("loop").op(Opcode::kReadOut).jump(Opcode::kJmpB, "loop");
  return b.bytecode();
}

BitString copy_all_program(const BitString& x) { return make_program(copy_all_bytecode(), x); }

BitString zeros_program(std::uint64_t n) {
  if (n == 0) return make_program(BitString("0000"));
  ProgramBuilder b;
  b.op(Opcode::kSetCtr, n)
      .label("loop")
      .op(Opcode::kOut0)
      .jump(Opcode::kDecJnzB, "loop")
      .op(Opcode::kHalt);
  return make_program(b.bytecode());
}

namespace {

BitString escape_bytecode(std::uint64_t j) { return assemble({{Opcode::kEscape, j}}); }

}  // namespace

BitString print_index_program(const Natural& n) {
  return make_program(escape_bytecode(1), gamma_encode(n));
}

BitString search_ge_program(const BitString& f_bytecode, const Natural& n) {
  return make_program(escape_bytecode(2),
                      gamma_encode(Natural(f_bytecode.size())) + f_bytecode + gamma_encode(n));
}

BitString triple_wrap_program(const BitString& p) { return make_program(escape_bytecode(3), p); }

BitString tree_decode_program(std::uint64_t tree_id, const BitString& codeword) {
  return make_program(escape_bytecode(4), gamma_encode(Natural(tree_id)) + codeword);
}

std::size_t tree_decode_overhead(std::uint64_t tree_id) {
  return make_program(escape_bytecode(4)).size() + gamma_length(Natural(tree_id));
}

BitString berry_f_bytecode() {
  // Tape: cell 0 holds the last input bit; binary digit i (LSB first) of a
  // counter starting at 1 lives at cell 2i+2 with a 1-marker at 2i+1.
  using enum Opcode;
  ProgramBuilder b;
  b.op(kRight).op(kW1).op(kRight).op(kW1).op(kLeft).op(kLeft);
  b.label("read").op(kReadWork).jump(kJzF, "zero");
  b.op(kW0).jump(kJzF, "out");
  b.label("zero").op(kRight).op(kRight);
  // increment with carry
  b.label("inc").jump(kJzF, "setone");
  b.op(kW0).op(kRight).op(kW1).op(kRight).jump(kJmpB, "inc");
  b.label("setone").op(kW1).op(kLeft);
  b.label("back").op(kLeft).op(kLeft).jump(kJzF, "home").jump(kJmpB, "back");
  b.label("home").jump(kJmpB, "read");
  // walk to the first unused marker, then print all digits below the top one
  b.label("out").op(kRight);
  b.label("fwd").op(kRight).op(kRight).jump(kJzF, "top").jump(kJmpB, "fwd");
  b.label("top").repeat(kLeft, 4);
  b.label("ptest").jump(kJzF, "done");
  b.op(kRight).op(kOutW).repeat(kLeft, 3).jump(kJmpB, "ptest");
  b.label("done").op(kOut1).op(kHalt);
  return b.bytecode();
}

}  // namespace ait

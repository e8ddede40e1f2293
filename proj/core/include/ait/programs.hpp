#pragma once

#include <cstdint>

#include "ait/bits.hpp"
#include "ait/natural.hpp"

namespace ait {

// Witness programs for the reference machine. Each returns a complete
// program (gamma header, bytecode, data) unless the name says bytecode.

// OUT0/OUT1 per bit, then HALT.
BitString print_literal_program(const BitString& x);

// SETCTR n; READOUT; DECJNZB back; HALT, followed by `data` (n = |data| >= 1).
BitString copy_program(const BitString& data);

// Plain-mode copier: READOUT; JMPB 15. Halts at the end of input, so in
// plain mode it outputs x with C(x) <= |x| + 22.
BitString copy_all_bytecode();
BitString copy_all_program(const BitString& x);

// SETCTR n; OUT0; DECJNZB back; HALT. Outputs 0^n with |gamma(n)| + O(1) bits.
BitString zeros_program(std::uint64_t n);

// ESCAPE 1 ++ gamma(n): outputs lex_string(n). Length 10 + |gamma(n)|.
BitString print_index_program(const Natural& n);
constexpr std::size_t kPrintIndexOverhead = 10;

// ESCAPE 2 ++ gamma(|F|) ++ F ++ gamma(n).
BitString search_ge_program(const BitString& f_bytecode, const Natural& n);

// ESCAPE 3 ++ p: outputs lex_string(<x, p, t>) when p halts with (x, t).
BitString triple_wrap_program(const BitString& p);
constexpr std::size_t kTripleWrapOverhead = 12;

// ESCAPE 4 ++ gamma(r) ++ codeword.
BitString tree_decode_program(std::uint64_t tree_id, const BitString& codeword);
std::size_t tree_decode_overhead(std::uint64_t tree_id);

// Bytecode F with F(gamma(lex_index(x) + 1)) = lex_string(|x|) ++ "1", so
// that lex_index of its output is 2|x| + 2. F only reads the gamma prefix
// 0^|x| 1 and never looks at the bits of x.
BitString berry_f_bytecode();
// The host-side rule computed by berry_f_bytecode.
inline Natural berry_f(const BitString& x) { return Natural(2 * x.size() + 2); }

}  // namespace ait

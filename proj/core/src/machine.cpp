#include "ait/machine.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "ait/encodings.hpp"

namespace ait {

namespace {

enum class Status { kHalted, kReadPastEnd, kUndefined, kOutOfBudget };

// Input stream shared by a top-level run and every nested TRIPLE_WRAP
// simulation inside it.
struct Context {
  const MachineProfile& profile;
  std::string_view input;
  std::size_t pos = 0;
  std::uint64_t budget = 0;
  std::uint64_t steps = 0;

  // -1 when the stream is exhausted.
  int read() {
    if (pos >= input.size()) return -1;
    return input[pos++] == '1' ? 1 : 0;
  }
};

// Reads gamma(n) from the input stream bit by bit.
Status read_gamma(Context& ctx, Natural& value) {
  std::size_t zeros = 0;
  int bit;
  while ((bit = ctx.read()) == 0) ++zeros;
  if (bit < 0) return Status::kReadPastEnd;
  value = 1;
  for (std::size_t i = 0; i < zeros; ++i) {
    bit = ctx.read();
    if (bit < 0) return Status::kReadPastEnd;
    value <<= 1;
    if (bit) value |= 1;
  }
  return Status::kHalted;
}

Status read_gamma_u64(Context& ctx, std::uint64_t& value) {
  std::size_t zeros = 0;
  int bit;
  while ((bit = ctx.read()) == 0) ++zeros;
  if (bit < 0) return Status::kReadPastEnd;
  value = 1;
  for (std::size_t i = 0; i < zeros; ++i) {
    bit = ctx.read();
    if (bit < 0) return Status::kReadPastEnd;
    value = value > (UINT64_MAX >> 1) ? UINT64_MAX : (value << 1) | static_cast<unsigned>(bit);
  }
  return Status::kHalted;
}

// Reads gamma(L) and then L bytecode bits; `code` views the input buffer.
Status load_program(Context& ctx, std::string_view& code) {
  std::uint64_t length = 0;
  if (Status s = read_gamma_u64(ctx, length); s != Status::kHalted) return s;
  if (ctx.input.size() - ctx.pos < length) {
    ctx.pos = ctx.input.size();
    return Status::kReadPastEnd;
  }
  code = ctx.input.substr(ctx.pos, length);
  ctx.pos += length;
  return Status::kHalted;
}

// Gamma operand inside the bytecode. Values beyond 64 bits saturate; the
// machine cannot observe the difference within any representable budget.
bool decode_operand(std::string_view code, std::size_t& pc, std::uint64_t& value) {
  std::size_t zeros = 0;
  while (pc < code.size() && code[pc] == '0') {
    ++zeros;
    ++pc;
  }
  if (pc >= code.size() || code.size() - pc < zeros + 1) return false;
  value = 0;
  for (std::size_t i = 0; i <= zeros; ++i) {
    const unsigned bit = code[pc + i] == '1' ? 1U : 0U;
    value = value > (UINT64_MAX >> 1) ? UINT64_MAX : (value << 1) | bit;
  }
  pc += zeros + 1;
  return true;
}

Status execute(Context& ctx, std::string_view code, std::string& output);

std::string gamma_digits(std::uint64_t n) {
  const int width = 64 - __builtin_clzll(n);
  std::string out(static_cast<std::size_t>(width - 1), '0');
  for (int i = width - 1; i >= 0; --i) out.push_back(((n >> i) & 1U) ? '1' : '0');
  return out;
}

Status builtin_print_index(Context& ctx, std::string& output) {
  Natural n;
  if (Status s = read_gamma(ctx, n); s != Status::kHalted) return s;
  output += lex_string(n).digits();
  return Status::kHalted;
}

Status builtin_search_ge(Context& ctx, std::string& output) {
  std::uint64_t length = 0;
  if (Status s = read_gamma_u64(ctx, length); s != Status::kHalted) return s;
  if (ctx.input.size() - ctx.pos < length) {
    ctx.pos = ctx.input.size();
    return Status::kReadPastEnd;
  }
  const std::string_view fcode = ctx.input.substr(ctx.pos, length);
  ctx.pos += length;
  Natural threshold;
  if (Status s = read_gamma(ctx, threshold); s != Status::kHalted) return s;

  // Candidates sharing the input prefix that F actually read produce the
  // same run, so they are settled as one aligned block while still being
  // charged one step each.
  std::uint64_t index = 0;
  while (true) {
    if (ctx.steps == ctx.budget) return Status::kOutOfBudget;
    ++ctx.steps;
    if (index == UINT64_MAX) return Status::kOutOfBudget;
    const std::uint64_t m = index + 1;
    const int k = 63 - __builtin_clzll(m);  // candidate length
    const std::string data = gamma_digits(m);

    Context inner{ctx.profile, data, 0, ctx.budget, 0};
    std::string value;
    const Status s = execute(inner, fcode, value);
    if (s == Status::kUndefined) return Status::kUndefined;
    if (s == Status::kOutOfBudget) return Status::kOutOfBudget;
    // kReadPastEnd is a plain-mode halt for F.
    if (lex_index(BitString(value)) >= threshold) {
      output += data.substr(static_cast<std::size_t>(k) + 1);
      return Status::kHalted;
    }
    const std::size_t header = static_cast<std::size_t>(k) + 1;
    const std::size_t read_of_x = inner.pos > header ? inner.pos - header : 0;
    std::uint64_t block = 1;
    if (s == Status::kHalted || inner.pos >= data.size()) {
      const int free_bits = k - static_cast<int>(std::min<std::size_t>(read_of_x, k));
      const std::uint64_t offset = m - (std::uint64_t{1} << k);
      if (free_bits < 64) {
        const std::uint64_t size = std::uint64_t{1} << free_bits;
        if (offset % size == 0) block = size;
      }
    }
    const std::uint64_t rest = block - 1;
    if (ctx.budget - ctx.steps < rest) {
      ctx.steps = ctx.budget;
      return Status::kOutOfBudget;
    }
    ctx.steps += rest;
    if (UINT64_MAX - index < block) return Status::kOutOfBudget;
    index += block;
  }
}

Status builtin_triple_wrap(Context& ctx, std::string& output) {
  const std::size_t start = ctx.pos;
  const std::uint64_t steps_before = ctx.steps;
  std::string_view code;
  if (Status s = load_program(ctx, code); s != Status::kHalted) return s;
  std::string inner_output;
  const Status s = execute(ctx, code, inner_output);
  if (s != Status::kHalted) return s;
  const BitString p(ctx.input.substr(start, ctx.pos - start));
  const Natural t = ctx.steps - steps_before;
  output += lex_string(triple_code(BitString(inner_output), p, t)).digits();
  return Status::kHalted;
}

Status builtin_tree_decode(Context& ctx, std::string& output) {
  std::uint64_t id = 0;
  if (Status s = read_gamma_u64(ctx, id); s != Status::kHalted) return s;
  const CodeTree* tree = ctx.profile.tree(id);
  if (tree == nullptr) return Status::kUndefined;
  int node = tree->root();
  while (node != CodeTree::kNone && !tree->node(node).payload) {
    const int bit = ctx.read();
    if (bit < 0) return Status::kReadPastEnd;
    node = tree->node(node).child[bit];
  }
  if (node == CodeTree::kNone) return Status::kUndefined;
  output += lex_string(*tree->node(node).payload).digits();
  return Status::kHalted;
}

Status execute(Context& ctx, std::string_view code, std::string& output) {
  const std::size_t length = code.size();
  std::string tape(1, '\0');
  std::size_t head = 0;
  std::uint64_t counter = 0;
  std::size_t pc = 0;

  while (true) {
    if (pc + 4 > length) return Status::kUndefined;
    const unsigned op = (code[pc] == '1' ? 8U : 0U) | (code[pc + 1] == '1' ? 4U : 0U) |
                        (code[pc + 2] == '1' ? 2U : 0U) | (code[pc + 3] == '1' ? 1U : 0U);
    pc += 4;
    std::uint64_t operand = 0;
    if (op >= 0b1010 && !decode_operand(code, pc, operand)) return Status::kUndefined;
    if (ctx.steps == ctx.budget) return Status::kOutOfBudget;
    ++ctx.steps;

    switch (op) {
      case 0b0000:  // HALT
        return Status::kHalted;
      case 0b0001:  // OUT0
        output.push_back('0');
        break;
      case 0b0010:  // OUT1
        output.push_back('1');
        break;
      case 0b0011: {  // READOUT
        const int bit = ctx.read();
        if (bit < 0) return Status::kReadPastEnd;
        output.push_back(bit ? '1' : '0');
        break;
      }
      case 0b0100: {  // READWORK
        const int bit = ctx.read();
        if (bit < 0) return Status::kReadPastEnd;
        tape[head] = static_cast<char>(bit);
        break;
      }
      case 0b0101:  // W0
        tape[head] = 0;
        break;
      case 0b0110:  // W1
        tape[head] = 1;
        break;
      case 0b0111:  // LEFT
        if (head > 0) --head;
        break;
      case 0b1000:  // RIGHT
        ++head;
        if (head == tape.size()) tape.push_back('\0');
        break;
      case 0b1001:  // OUTW
        output.push_back(tape[head] ? '1' : '0');
        break;
      case 0b1010:  // SETCTR
        counter = operand;
        break;
      case 0b1011:  // DECJNZB
        if (counter > 0) {
          --counter;
          if (counter > 0) {
            if (operand > pc) return Status::kUndefined;
            pc -= operand;
          }
        }
        break;
      case 0b1100:  // JZF
        if (tape[head] == 0) {
          if (operand > length - pc) return Status::kUndefined;
          pc += operand;
        }
        break;
      case 0b1101:  // JZB
        if (tape[head] == 0) {
          if (operand > pc) return Status::kUndefined;
          pc -= operand;
        }
        break;
      case 0b1110:  // JMPB
        if (operand > pc) return Status::kUndefined;
        pc -= operand;
        break;
      case 0b1111:  // ESCAPE
        if (!ctx.profile.builtin_enabled(operand)) return Status::kUndefined;
        switch (static_cast<Builtin>(operand)) {
          case Builtin::kPrintIndex: return builtin_print_index(ctx, output);
          case Builtin::kSearchGe: return builtin_search_ge(ctx, output);
          case Builtin::kTripleWrap: return builtin_triple_wrap(ctx, output);
          case Builtin::kTreeDecode: return builtin_tree_decode(ctx, output);
        }
        return Status::kUndefined;
    }
  }
}

struct RawRun {
  Status status = Status::kUndefined;
  bool in_load = false;
  std::string output;
  std::size_t consumed = 0;
  std::uint64_t steps = 0;
};

RawRun raw_run(const MachineProfile& profile, std::string_view program, std::uint64_t budget) {
  Context ctx{profile, program, 0, budget, 0};
  RawRun r;
  std::string_view code;
  if (load_program(ctx, code) != Status::kHalted) {
    r.status = Status::kReadPastEnd;
    r.in_load = true;
    return r;
  }
  r.status = execute(ctx, code, r.output);
  r.consumed = ctx.pos;
  r.steps = ctx.steps;
  return r;
}

RunOutcome to_outcome(RawRun&& r, Mode mode) {
  switch (r.status) {
    case Status::kHalted:
      return Halted{BitString(r.output), r.consumed, r.steps};
    case Status::kReadPastEnd:
      if (mode == Mode::kPrefix) return NeedsInput{};
      if (r.in_load) return Undefined{};
      return Halted{BitString(r.output), r.consumed, r.steps};
    case Status::kUndefined:
      return Undefined{};
    case Status::kOutOfBudget:
      return OutOfBudget{};
  }
  return Undefined{};
}

}  // namespace

const char* mode_name(Mode mode) { return mode == Mode::kPrefix ? "prefix" : "plain"; }

RunOutcome run(Mode mode, const MachineProfile& profile, std::string_view program,
               std::uint64_t step_budget) {
  return to_outcome(raw_run(profile, program, step_budget), mode);
}

RunOutcome run_prefix(const MachineProfile& profile, std::string_view program,
                      std::uint64_t step_budget) {
  return run(Mode::kPrefix, profile, program, step_budget);
}

RunOutcome run_plain(const MachineProfile& profile, std::string_view program,
                     std::uint64_t step_budget) {
  return run(Mode::kPlain, profile, program, step_budget);
}

RunOutcome run_bytecode_plain(const MachineProfile& profile, std::string_view bytecode,
                              std::string_view data, std::uint64_t step_budget) {
  Context ctx{profile, data, 0, step_budget, 0};
  RawRun r;
  r.status = execute(ctx, bytecode, r.output);
  r.consumed = ctx.pos;
  r.steps = ctx.steps;
  return to_outcome(std::move(r), Mode::kPlain);
}

Probe probe(const MachineProfile& profile, std::string_view program, std::uint64_t step_budget) {
  RawRun r = raw_run(profile, program, step_budget);
  RawRun copy = r;
  return {to_outcome(std::move(r), Mode::kPrefix), to_outcome(std::move(copy), Mode::kPlain)};
}

std::string describe(const RunOutcome& outcome) {
  std::ostringstream os;
  if (const Halted* h = as_halted(outcome)) {
    os << "Halted(output=" << h->output.display() << ", consumed=" << h->consumed
       << ", steps=" << h->steps << ")";
  } else if (std::holds_alternative<NeedsInput>(outcome)) {
    os << "NeedsInput";
  } else if (std::holds_alternative<Undefined>(outcome)) {
    os << "Undefined";
  } else {
    os << "OutOfBudget";
  }
  return os.str();
}

}  // namespace ait

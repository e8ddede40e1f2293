#include "naive_machine.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace naive {

namespace {

using Big = boost::multiprecision::cpp_int;

struct PastEnd {};
struct Undef {};
struct Budget {};

std::string index_to_string(Big n) {
  // lex_string by repeated halving of n+1
  std::string digits;
  Big m = n + 1;
  while (m > 1) {
    digits.insert(digits.begin(), (m & 1) != 0 ? '1' : '0');
    m >>= 1;
  }
  return digits;
}

Big string_to_index(const std::string& x) {
  Big m = 1;
  for (char c : x) m = m * 2 + (c == '1' ? 1 : 0);
  return m - 1;
}

Big pair(const Big& a, const Big& b) { return (a + b) * (a + b + 1) / 2 + b; }

std::string gamma(Big n) {
  std::string bin;
  while (n > 0) {
    bin.insert(bin.begin(), (n & 1) != 0 ? '1' : '0');
    n >>= 1;
  }
  return std::string(bin.size() - 1, '0') + bin;
}

struct Run {
  const ait::MachineProfile& profile;
  const std::string& in;
  std::size_t pos = 0;
  std::uint64_t budget;
  std::uint64_t steps = 0;

  int bit() {
    if (pos >= in.size()) throw PastEnd{};
    return in[pos++] - '0';
  }

  Big gamma_in() {
    int zeros = 0;
    while (bit() == 0) ++zeros;
    Big v = 1;
    for (int i = 0; i < zeros; ++i) v = v * 2 + bit();
    return v;
  }

  std::string load() {
    Big length = gamma_in();
    std::string code;
    for (Big i = 0; i < length; ++i) code.push_back(static_cast<char>('0' + bit()));
    return code;
  }

  void tick() {
    if (steps >= budget) throw Budget{};
    ++steps;
  }

  // Returns normally on HALT (or a finished builtin).
  void exec(const std::string& code, std::string& out) {
    std::vector<int> tape(1, 0);
    std::size_t head = 0;
    Big ctr = 0;
    long long pc = 0;
    const long long L = static_cast<long long>(code.size());
    for (;;) {
      if (pc < 0 || pc + 4 > L) throw Undef{};
      int op = 0;
      for (int i = 0; i < 4; ++i) op = op * 2 + (code[pc + i] - '0');
      pc += 4;
      Big arg = 0;
      if (op >= 10) {
        int zeros = 0;
        while (pc < L && code[pc] == '0') {
          ++zeros;
          ++pc;
        }
        if (pc + zeros + 1 > L) throw Undef{};
        for (int i = 0; i <= zeros; ++i) arg = arg * 2 + (code[pc + i] - '0');
        pc += zeros + 1;
      }
      tick();
      auto jump_back = [&] {
        if (arg > pc) throw Undef{};
        pc -= static_cast<long long>(arg);
      };
      switch (op) {
        case 0: return;
        case 1: out += '0'; break;
        case 2: out += '1'; break;
        case 3: out += static_cast<char>('0' + bit()); break;
        case 4: tape[head] = bit(); break;
        case 5: tape[head] = 0; break;
        case 6: tape[head] = 1; break;
        case 7: if (head) --head; break;
        case 8: if (++head == tape.size()) tape.push_back(0); break;
        case 9: out += static_cast<char>('0' + tape[head]); break;
        case 10: ctr = arg; break;
        case 11:
          if (ctr > 0) {
            ctr -= 1;
            if (ctr > 0) jump_back();
          }
          break;
        case 12:
          if (tape[head] == 0) {
            if (arg > L - pc) throw Undef{};
            pc += static_cast<long long>(arg);
          }
          break;
        case 13: if (tape[head] == 0) jump_back(); break;
        case 14: jump_back(); break;
        case 15: {
          if (arg > 4 || arg == 0) throw Undef{};
          const auto j = static_cast<std::uint64_t>(arg);
          if (!profile.builtin_enabled(j)) throw Undef{};
          builtin(j, out);
          return;
        }
      }
    }
  }

  void builtin(std::uint64_t j, std::string& out) {
    if (j == 1) {
      out += index_to_string(gamma_in());
    } else if (j == 2) {
      Big length = gamma_in();
      std::string f;
      for (Big i = 0; i < length; ++i) f.push_back(static_cast<char>('0' + bit()));
      Big n = gamma_in();
      for (Big idx = 0;; ++idx) {
        tick();
        const std::string data = gamma(idx + 1);
        Run inner{profile, data, 0, budget, 0};
        std::string value;
        try {
          inner.exec(f, value);
        } catch (const PastEnd&) {
        }
        if (string_to_index(value) >= n) {
          out += index_to_string(idx);
          return;
        }
      }
    } else if (j == 3) {
      const std::size_t start = pos;
      const std::uint64_t before = steps;
      std::string code = load();
      std::string x;
      exec(code, x);
      const std::string p = in.substr(start, pos - start);
      out += index_to_string(pair(pair(string_to_index(x), string_to_index(p)), steps - before));
    } else {
      Big r = gamma_in();
      const ait::CodeTree* tree = r > 64 ? nullptr : profile.tree(static_cast<std::uint64_t>(r));
      if (tree == nullptr) throw Undef{};
      std::string word;
      for (;;) {
        auto payload = tree->decode(ait::BitString(word));
        if (payload) {
          out += index_to_string(*payload);
          return;
        }
        // absent branch: no leaf below `word`
        bool below = false;
        for (const auto& [cw, value] : tree->leaves()) {
          if (word.size() < cw.size() && cw.str().compare(0, word.size(), word) == 0) below = true;
        }
        if (!below) throw Undef{};
        word += static_cast<char>('0' + bit());
      }
    }
  }
};

}  // namespace

ait::RunOutcome run(ait::Mode mode, const ait::MachineProfile& profile, const std::string& bits,
                    std::uint64_t budget) {
  Run r{profile, bits, 0, budget, 0};
  std::string code;
  try {
    code = r.load();
  } catch (const PastEnd&) {
    if (mode == ait::Mode::kPrefix) return ait::NeedsInput{};
    return ait::Undefined{};
  }
  std::string out;
  try {
    r.exec(code, out);
  } catch (const PastEnd&) {
    if (mode == ait::Mode::kPrefix) return ait::NeedsInput{};
    return ait::Halted{ait::BitString(out), bits.size(), r.steps};
  } catch (const Undef&) {
    return ait::Undefined{};
  } catch (const Budget&) {
    return ait::OutOfBudget{};
  }
  return ait::Halted{ait::BitString(out), r.pos, r.steps};
}

Tables brute_force(const ait::MachineProfile& profile, unsigned stage) {
  Tables t;
  for (unsigned len = 0; len <= stage; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      std::string p;
      for (unsigned i = 0; i < len; ++i) p.push_back(((v >> (len - 1 - i)) & 1) ? '1' : '0');
      const auto pre = run(ait::Mode::kPrefix, profile, p, stage);
      if (const auto* h = std::get_if<ait::Halted>(&pre); h && h->consumed == len) {
        t.domain.push_back(p);
        t.omega_numerator += std::uint64_t{1} << (stage - len);
        auto [it, fresh] = t.K.emplace(h->output.str(), len);
        if (!fresh && it->second > len) it->second = len;
      }
      const auto plain = run(ait::Mode::kPlain, profile, p, stage);
      if (const auto* h = std::get_if<ait::Halted>(&plain)) {
        auto [it, fresh] = t.C.emplace(h->output.str(), len);
        if (!fresh && it->second > len) it->second = len;
      }
    }
  }
  return t;
}

}  // namespace naive

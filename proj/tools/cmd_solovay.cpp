#include <iostream>
#include <sstream>

#include "ait/encodings.hpp"
#include "ait/errors.hpp"
#include "ait/kraft_chaitin.hpp"
#include "ait/programs.hpp"
#include "ait/solovay.hpp"
#include "common.hpp"

namespace ait::cli {

namespace {

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidArgument, "not a number: " + item);
    }
  }
  return out;
}

struct GapOptions {
  TableOptions table;
  std::string f = "solovay";
  std::uint64_t M = 1000;
};

void run_gap(const Global& g, const GapOptions& o, const CLI::App* sub) {
  const Enumeration e = obtain_table(g, o.table);
  const UpperBoundFunction f = UpperBoundFunction::by_name(o.f, e.profile());
  const GapReport r = gap_table(f, e, o.M);
  CsvTable t({"m", "f", "K_s", "gap", "running_min"});
  stamp(t, e.profile(), sub);
  t.provenance("watermark", std::to_string(r.watermark));
  t.provenance("undiscovered", std::to_string(r.undiscovered));
  for (const GapRow& row : r.rows) {
    t.row({std::to_string(row.m), std::to_string(row.f), cell(row.K), cell(row.gap),
           cell(row.running_min)});
  }
  write_text(g, "gap.csv", t.str());
  std::cout << r.rows.size() << " rows, " << r.undiscovered << " undiscovered\n";
}

struct SumOptions {
  std::string f = "solovay";
  std::uint64_t n = 1000000;
};

void run_sum(const Global& g, const SumOptions& o, const CLI::App* sub) {
  const MachineProfile profile = load_profile(g);
  const UpperBoundFunction f = UpperBoundFunction::by_name(o.f, profile);
  CsvTable t({"n", "partial_sum", "approx"});
  stamp(t, profile, sub);
  Dyadic sum;
  std::uint64_t next = 1;
  for (std::uint64_t m = 0; m <= o.n; ++m) {
    sum += Dyadic::inverse_pow2(f(m));
    if (m + 1 == next || m == o.n) {
      t.row({std::to_string(m), sum.to_string(), std::to_string(sum.approx())});
      while (next <= m + 1) next *= 10;
    }
  }
  const bool below = sum < Dyadic(8);
  t.provenance("below_8", below ? "true" : "false");
  write_text(g, "sum.csv", t.str());
  std::cout << "sum_{m<=" << o.n << "} 2^-f(m) = " << sum.approx() << " (exact "
            << sum.to_string() << ")\n"
            << "partial sum < 8: " << (below ? "true" : "false") << "\n";
}

struct AlphaOptions {
  std::string f = "linear";
  std::uint64_t k = 32;
  std::uint64_t N = 1000;
};

void run_alpha(const Global& g, const AlphaOptions& o, const CLI::App* sub) {
  const MachineProfile profile = load_profile(g);
  const UpperBoundFunction f = UpperBoundFunction::by_name(o.f, profile);
  const Membership mem = membership_check(f, o.N);
  CsvTable t({"quantity", "value"});
  stamp(t, profile, sub);
  t.row({"partial_sum", mem.partial.to_string()});
  t.row({"certified_k", cell(mem.k)});
  t.row({"upper", mem.upper ? mem.upper->to_string() : "none"});
  std::string bits = "none";
  if (f.certificate()) bits = certified_bits(f, o.k).str();
  t.row({"alpha_bits", bits});
  write_text(g, "alpha.csv", t.str());
  std::cout << "alpha = 0." << bits << "...\n";
}

struct AllocOptions {
  std::string requests;
  std::uint64_t budget_exponent = 0;
};

void run_alloc(const Global& g, const AllocOptions& o, const CLI::App* sub) {
  const MachineProfile profile = load_profile(g);
  KraftChaitinAllocator alloc(o.budget_exponent);
  CsvTable t({"index", "k", "codeword", "status", "free_weight"});
  stamp(t, profile, sub);
  std::uint64_t refused = 0;
  std::uint64_t i = 0;
  for (std::uint64_t k : parse_list(o.requests)) {
    std::string codeword;
    std::string status = "issued";
    try {
      codeword = alloc.request(k, Natural(i)).str();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kInsufficientBudget) throw;
      status = "refused";
      ++refused;
    }
    t.row({std::to_string(i++), std::to_string(k), codeword, status,
           alloc.free_weight().to_string()});
  }
  t.provenance("refused", std::to_string(refused));
  write_text(g, "alloc.csv", t.str());
  std::cout << alloc.issued().size() << " issued, " << refused << " refused\n";
}

struct CompileOptions {
  std::string f = "two_log";
  std::uint64_t c = 1;
  std::uint64_t N = 64;
};

void run_compile(const Global& g, const CompileOptions& o, const CLI::App* sub) {
  const MachineProfile base = load_profile(g);
  const UpperBoundFunction f = UpperBoundFunction::by_name(o.f, base);
  const CompiledCode code = compile_function(f, o.c, o.N, base);
  CsvTable t({"n", "f", "codeword", "program_length"});
  stamp(t, base, sub);
  t.provenance("tree_id", std::to_string(code.tree_id));
  t.provenance("overhead", std::to_string(code.overhead));
  t.provenance("compiled_profile", code.profile.fingerprint());
  for (const auto& [cw, payload] : code.tree.leaves()) {
    const std::uint64_t n = static_cast<std::uint64_t>(payload);
    t.row({std::to_string(n), std::to_string(f(n)), cw.str(),
           std::to_string(cw.size() + code.overhead)});
  }
  write_text(g, "compile.csv", t.str());
  code.profile.save(out_path(g, "compiled.profile"));
  std::cout << code.tree.leaf_count() << " codewords, tree " << code.tree_id << ", overhead "
            << code.overhead << "\n";
}

struct BerryOptions {
  std::string ns = "4,8,16,32,64";
  std::uint64_t stage = 0;
};

void run_berry(const Global& g, const BerryOptions& o, const CLI::App* sub) {
  const MachineProfile profile = load_profile(g);
  std::optional<Enumeration> table;
  if (o.stage > 0) {
    table.emplace(profile, Enumeration::kDefaultWorkCap, g.threads);
    table->advance(o.stage);
  }
  std::vector<Natural> ns;
  for (std::uint64_t n : parse_list(o.ns)) ns.emplace_back(n);
  const BitString F = berry_f_bytecode();
  const std::vector<BerryRow> rows =
      ratio_table(profile, berry_rule(), F, ns, table ? &*table : nullptr);
  CsvTable t({"n", "x_n", "f_x", "C_s", "bound", "steps", "ratio"});
  stamp(t, profile, sub);
  t.provenance("F_length", std::to_string(F.size()));
  for (const BerryRow& r : rows) {
    std::ostringstream ratio;
    ratio.precision(6);
    ratio << std::fixed << r.fx.convert_to<double>() / static_cast<double>(r.bound);
    t.row({to_string(r.n), r.x.str(), to_string(r.fx), cell(r.C), std::to_string(r.bound),
           std::to_string(r.steps), ratio.str()});
  }
  write_text(g, "berry.csv", t.str());
  std::cout << rows.size() << " rows\n";
}

}  // namespace

void add_solovay(CLI::App& app, Global& g) {
  CLI::App* top = app.add_subcommand("solovay", "Solovay function experiments");
  top->require_subcommand(1);

  auto gap = std::make_shared<GapOptions>();
  CLI::App* s = top->add_subcommand("gap", "Table of f(m) - K_s(m) with running minimum");
  gap->table.add(s);
  s->add_option("--f", gap->f, "Upper bound function")->capture_default_str();
  s->add_option("--M", gap->M, "Largest argument")->capture_default_str();
  s->callback([&g, gap, s] { run_gap(g, *gap, s); });

  auto sum = std::make_shared<SumOptions>();
  s = top->add_subcommand("sum", "Exact partial sums of 2^-f(m)");
  s->add_option("--f", sum->f, "Upper bound function")->capture_default_str();
  s->add_option("--n", sum->n, "Largest argument")->capture_default_str();
  s->callback([&g, sum, s] { run_sum(g, *sum, s); });

  auto alpha = std::make_shared<AlphaOptions>();
  s = top->add_subcommand("alpha", "Membership check and certified bits of sum 2^-f(n)");
  s->add_option("--f", alpha->f, "Upper bound function")->capture_default_str();
  s->add_option("--k", alpha->k, "Bits to certify")->capture_default_str();
  s->add_option("--N", alpha->N, "Terms for the membership check")->capture_default_str();
  s->callback([&g, alpha, s] { run_alpha(g, *alpha, s); });
}

void add_kc(CLI::App& app, Global& g) {
  CLI::App* top = app.add_subcommand("kc", "Kraft-Chaitin allocation");
  top->require_subcommand(1);

  auto alloc = std::make_shared<AllocOptions>();
  CLI::App* s = top->add_subcommand("alloc", "Allocate a stream of length requests");
  s->add_option("--requests", alloc->requests, "Comma-separated lengths")->required();
  s->add_option("--budget-exp", alloc->budget_exponent, "Budget exponent")
      ->capture_default_str();
  s->callback([&g, alloc, s] { run_alloc(g, *alloc, s); });

  auto compile = std::make_shared<CompileOptions>();
  s = top->add_subcommand("compile", "Compile f into a decoding tree and profile");
  s->add_option("--f", compile->f, "Upper bound function")->capture_default_str();
  s->add_option("--c", compile->c, "Budget exponent")->capture_default_str();
  s->add_option("--N", compile->N, "Largest argument")->capture_default_str();
  s->callback([&g, compile, s] { run_compile(g, *compile, s); });
}

void add_berry(CLI::App& app, Global& g) {
  auto o = std::make_shared<BerryOptions>();
  CLI::App* s = app.add_subcommand("berry", "Berry ratio table for f(x) = 2|x| + 2");
  s->add_option("--ns", o->ns, "Comma-separated n")->capture_default_str();
  s->add_option("--stage", o->stage, "Also report C_s(x_n) at this stage (0: skip)")
      ->capture_default_str();
  s->callback([&g, o, s] { run_berry(g, *o, s); });
}

}  // namespace ait::cli

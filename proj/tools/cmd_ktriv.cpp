#include <fstream>
#include <iostream>
#include <sstream>

#include "ait/encodings.hpp"
#include "ait/errors.hpp"
#include "ait/ktrivial.hpp"
#include "ait/solovay.hpp"
#include "common.hpp"

namespace ait::cli {

namespace {

struct RunOptions {
  TableOptions table;
  std::string alpha = "zeros";
  std::uint64_t c = 0;
  std::uint64_t d = 4;
  std::uint64_t n_max = 8;
  std::string g = "solovay";
  bool index_length = true;
};

void run_ktriv(const Global& g, const RunOptions& o, const CLI::App* sub) {
  const Enumeration e = obtain_table(g, o.table);
  const MachineProfile& profile = e.profile();
  StrategyConfig cfg;
  cfg.c = o.c;
  cfg.d = o.d;
  cfg.n_max = o.n_max;
  cfg.output_len_index = o.index_length;
  if (o.g == "solovay") {
    cfg.g = [profile](const Natural& m) { return f_solovay(profile, m); };
  } else if (o.g == "witness") {
    cfg.g = witness_length_g();
  } else {
    throw Error(ErrorKind::kInvalidArgument, "unknown g " + o.g);
  }
  const SequenceSource alpha = SequenceSource::parse(o.alpha, profile, &e);
  const StrategyResult r = run_strategy(ComplexityEventStream::from_enumeration(e), alpha, cfg);
  CsvTable t = r.summary();
  stamp(t, profile, sub);
  t.provenance("watermark", std::to_string(e.watermark()));
  write_text(g, "ktriv_summary.csv", t.str());
  const std::string header = "fingerprint=" + profile.fingerprint() +
                             " watermark=" + std::to_string(e.watermark()) + " " +
                             config_echo(sub);
  write_text(g, "ktriv_ledger.txt", r.ledger.serialize(header));
  std::uint64_t covered = 0;
  std::uint64_t known = 0;
  for (const CoverageRow& row : r.coverage) {
    known += row.value.has_value();
    covered += row.covered;
  }
  std::cout << r.ledger.size() << " pairs, weight " << ledger_weight(r.ledger).to_string()
            << "; covered " << covered << " of " << known << " discovered n\n";
}

struct CompileOptions {
  std::string ledger;
  std::uint64_t e = 3;
};

void run_compile(const Global& g, const CompileOptions& o, const CLI::App* sub) {
  std::ifstream in(o.ledger, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot read " + o.ledger);
  std::stringstream buf;
  buf << in.rdbuf();
  const RequestLedger l = RequestLedger::parse(buf.str());
  const CodeTree tree = compile_ledger(l, o.e);
  CsvTable t({"codeword", "w", "length"});
  stamp(t, load_profile(g), sub);
  t.provenance("weight", ledger_weight(l).to_string());
  for (const auto& [cw, payload] : tree.leaves()) {
    t.row({cw.str(), lex_string(payload).str(), std::to_string(cw.size())});
  }
  write_text(g, "ktriv_codes.csv", t.str());
  write_text(g, "ktriv_tree.txt", tree.serialize() + "\n");
  std::cout << tree.leaf_count() << " codewords\n";
}

}  // namespace

void add_ktriv(CLI::App& app, Global& g) {
  CLI::App* top = app.add_subcommand("ktriv", "K-trivial request strategy");
  top->require_subcommand(1);

  auto run = std::make_shared<RunOptions>();
  CLI::App* s = top->add_subcommand("run", "Run the strategy on the live K_s stream");
  run->table.add(s);
  s->add_option("--alpha", run->alpha, "Source whose prefixes are checked")->capture_default_str();
  s->add_option("--c", run->c, "Slack constant")->capture_default_str();
  s->add_option("--d", run->d, "Emission cap per assumption")->capture_default_str();
  s->add_option("--n-max", run->n_max, "Largest n")->capture_default_str();
  s->add_option("--g", run->g, "solovay|witness")->capture_default_str();
  s->add_option("--index-length", run->index_length,
                "Candidate length |lex_string(m_s)| (else m_s)")
      ->capture_default_str();
  s->callback([&g, run, s] { run_ktriv(g, *run, s); });

  auto compile = std::make_shared<CompileOptions>();
  s = top->add_subcommand("compile", "Compile a request ledger with headroom e");
  s->add_option("--ledger", compile->ledger, "Ledger file")->required();
  s->add_option("--e", compile->e, "Headroom exponent")->capture_default_str();
  s->callback([&g, compile, s] { run_compile(g, *compile, s); });
}

}  // namespace ait::cli

#include <iostream>

#include "ait/errors.hpp"
#include "ait/nogap.hpp"
#include "common.hpp"

namespace ait::cli {

namespace {

struct NogapOptions {
  std::string h = "half";
  std::string phi = "immediate";
  std::string alpha = "coin:1";
  std::uint64_t K = 50;
  std::uint64_t N = 0;  // 0: up to the last insertion
  TableOptions table;
};

// "immediate", "linear:<a>:<b>", "reading" (keyed on alpha).
OracleMachine machine_by_name(const std::string& spec, const NondecreasingFn& h,
                              const SequenceSource& alpha) {
  if (spec == "immediate") return immediate_machine(h);
  if (spec == "reading") return oracle_reading_machine(h, alpha);
  if (spec.rfind("linear:", 0) == 0) {
    const std::string rest = spec.substr(7);
    const std::size_t colon = rest.find(':');
    if (colon != std::string::npos) {
      try {
        return linear_delay_machine(h, std::stoull(rest.substr(0, colon)),
                                    std::stoull(rest.substr(colon + 1)));
      } catch (const std::logic_error&) {
      }
    }
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown machine " + spec);
}

struct Construction {
  NondecreasingFn h;
  SequenceSource alpha;
  OracleMachine phi;
  InsertionSchedule schedule;
  std::uint64_t N;
};

Construction build(const NogapOptions& o, const MachineProfile& profile) {
  NondecreasingFn h = NondecreasingFn::by_name(o.h);
  SequenceSource alpha = SequenceSource::parse(o.alpha, profile);
  OracleMachine phi = machine_by_name(o.phi, h, alpha);
  InsertionSchedule s = build_schedule(h, phi, alpha, o.K);
  // S must see the same step counts the schedule used.
  if (s.adjusted) phi = pad_monotone(phi);
  const std::uint64_t N = o.N != 0 ? o.N : (s.positions.empty() ? 0 : s.positions.back() + 1);
  return {std::move(h), std::move(alpha), std::move(phi), std::move(s), N};
}

void run_build(const Global& g, const NogapOptions& o, const CLI::App* sub) {
  const MachineProfile profile = load_profile(g);
  const Construction c = build(o, profile);
  CsvTable t({"k", "n_k", "t"});
  stamp(t, profile, sub);
  t.provenance("adjusted", c.schedule.adjusted ? "true" : "false");
  for (std::size_t i = 0; i < c.schedule.positions.size(); ++i) {
    t.row({std::to_string(i + 1), std::to_string(c.schedule.positions[i]),
           std::to_string(c.schedule.t[i])});
  }
  write_text(g, "schedule.csv", t.str());
  write_text(g, "schedule.txt", c.schedule.serialize());
  write_text(g, "beta.txt", insert_zeros(c.alpha, c.schedule, c.N).str() + "\n");
  std::cout << c.schedule.positions.size() << " insertions, beta|" << c.N << " written\n";
}

void run_select(const Global& g, const NogapOptions& o, const CLI::App* sub) {
  const MachineProfile profile = load_profile(g);
  const Construction c = build(o, profile);
  const SequenceSource beta = beta_source(c.alpha, c.schedule, c.N);
  const SelectionTrace tr = selection_rule_S(beta, c.phi, c.N);
  std::vector<std::uint64_t> inserted;
  for (std::uint64_t p : c.schedule.positions) {
    if (p < c.N) inserted.push_back(p);
  }
  const bool match = tr.selected == inserted;
  const BiasReport bias = bias_report(tr);
  CsvTable t = bias.csv(tr);
  stamp(t, profile, sub);
  t.provenance("selected_equals_inserted", match ? "true" : "false");
  write_text(g, "bias.csv", t.str());
  write_text(g, "trace.txt", tr.serialize());
  std::cout << "selected = inserted: " << (match ? "true" : "false") << "\n"
            << "selected " << tr.selected.size() << " bits, frequency of ones "
            << bias.frequency_of_ones << "\n";
}

void run_report(const Global& g, const NogapOptions& o, const CLI::App* sub) {
  const MachineProfile profile = load_profile(g);
  const Construction c = build(o, profile);
  const Enumeration e = obtain_table(g, o.table);
  const SequenceSource beta = beta_source(c.alpha, c.schedule, c.N);
  const DeficiencyReport r = complexity_consistency(beta, e, c.h, c.N);
  CsvTable t = r.csv();
  stamp(t, profile, sub);
  const std::int64_t slack = schedule_slack(c.schedule, c.h, c.N);
  t.provenance("schedule_slack", std::to_string(slack));
  write_text(g, "consistency.csv", t.str());

  const SettlingSchedule st = settling_schedule(e, c.N);
  CsvTable s({"n", "settle", "position", "stable"});
  stamp(s, profile, sub);
  s.provenance("watermark", std::to_string(st.watermark));
  s.provenance("absent", std::to_string(st.absent));
  for (std::size_t i = 0; i < st.settle.size(); ++i) {
    s.row({std::to_string(i + 1), std::to_string(st.settle[i]),
           std::to_string(st.schedule.positions[i]), st.schedule.unstable[i] ? "0" : "1"});
  }
  write_text(g, "settling.csv", s.str());
  std::cout << r.verdict() << "; schedule slack " << slack << "\n";
}

}  // namespace

void add_nogap(CLI::App& app, Global& g) {
  CLI::App* top = app.add_subcommand("nogap", "Zero insertion and the selection rule S");
  top->require_subcommand(1);
  const std::vector<std::pair<std::string, void (*)(const Global&, const NogapOptions&,
                                                      const CLI::App*)>>
      cmds = {{"build", run_build}, {"select", run_select}, {"report", run_report}};
  for (const auto& [name, fn] : cmds) {
    auto o = std::make_shared<NogapOptions>();
    CLI::App* s = top->add_subcommand(name);
    s->add_option("--h-rule", o->h, "identity|half|sqrt|log|const:C|dual:NAME")->capture_default_str();
    s->add_option("--phi", o->phi, "immediate|linear:A:B|reading")->capture_default_str();
    s->add_option("--alpha", o->alpha, "Source for alpha")->capture_default_str();
    s->add_option("--K", o->K, "Insertions")->capture_default_str();
    s->add_option("--N", o->N, "Prefix length of beta (0: through the last insertion)")
        ->capture_default_str();
    if (name == "report") o->table.add(s);
    auto run = fn;
    s->callback([&g, o, s, run] { run(g, *o, s); });
  }
  top->get_subcommand("build")->description("Insertion schedule and beta");
  top->get_subcommand("select")->description("Run S on beta and compare with the insertions");
  top->get_subcommand("report")->description("Complexity of beta and the settling schedule");
}

}  // namespace ait::cli

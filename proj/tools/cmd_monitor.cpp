#include <iostream>

#include "ait/errors.hpp"
#include "ait/monitors.hpp"
#include "ait/solovay.hpp"
#include "common.hpp"

namespace ait::cli {

namespace {

struct MonitorOptions {
  TableOptions table;
  std::string src = "zeros";
  std::uint64_t n = 20;
  std::string f;
};

void emit(const Global& g, const std::string& name, const DeficiencyReport& r,
          const MachineProfile& profile, const CLI::App* sub) {
  CsvTable t = r.csv();
  stamp(t, profile, sub);
  write_text(g, name + ".csv", t.str());
  std::cout << r.criterion << " on " << r.source << ": " << r.verdict() << "\n";
}

void run(const Global& g, const std::string& criterion, const MonitorOptions& o,
         const CLI::App* sub) {
  const MachineProfile profile = load_profile(g);
  if (criterion == "bm") {
    const StringRule f = string_rule_by_name(o.f.empty() ? "const2len" : o.f, profile);
    emit(g, "monitor_bm", bm_criterion(SequenceSource::parse(o.src, profile), f, o.n), profile,
         sub);
    return;
  }
  const Enumeration e = obtain_table(g, o.table);
  const SequenceSource src = SequenceSource::parse(o.src, profile, &e);
  if (criterion == "ls") {
    emit(g, "monitor_ls", levin_schnorr(src, e, o.n), profile, sub);
  } else if (criterion == "my") {
    const UpperBoundFunction gf = UpperBoundFunction::by_name(o.f.empty() ? "two_log" : o.f, profile);
    emit(g, "monitor_my", miller_yu(src, e, gf, o.n), profile, sub);
  } else if (criterion == "trend") {
    emit(g, "monitor_trend", chaitin_trend(src, e, o.n), profile, sub);
  } else if (criterion == "probe") {
    const UpperBoundFunction gf = UpperBoundFunction::by_name(o.f.empty() ? "solovay" : o.f, profile);
    const GapReport r = solovayness_probe(gf, e, o.n);
    CsvTable t({"m", "g", "K_s", "gap", "running_min"});
    stamp(t, profile, sub);
    t.provenance("watermark", std::to_string(r.watermark));
    for (const GapRow& row : r.rows) {
      t.row({std::to_string(row.m), std::to_string(row.f), cell(row.K), cell(row.gap),
             cell(row.running_min)});
    }
    write_text(g, "monitor_probe.csv", t.str());
    const std::optional<std::int64_t> last =
        r.rows.empty() ? std::nullopt : r.rows.back().running_min;
    std::cout << "probe " << gf.id() << ": running min " << cell(last)
              << " up to stage " << r.watermark << "\n";
  } else {
    throw Error(ErrorKind::kInvalidArgument, "unknown criterion " + criterion);
  }
}

}  // namespace

void add_monitor(CLI::App& app, Global& g) {
  CLI::App* top = app.add_subcommand("monitor", "Randomness criteria on a sequence source");
  top->require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> criteria = {
      {"ls", "n - K_s(src|n), running sup"},
      {"my", "n - g(n) - C_s(src|n), running sup"},
      {"bm", "n - f(src|n) for a string rule f, exact"},
      {"trend", "K_s(src|n) - n, running min"},
      {"probe", "g(m) - K_s(m), running min (--n is the largest m)"},
  };
  for (const auto& [name, help] : criteria) {
    auto o = std::make_shared<MonitorOptions>();
    CLI::App* s = top->add_subcommand(name, help);
    o->table.add(s);
    s->add_option("--src", o->src, "zeros|ones|alt|coin:S|bits:D|file:P|alpha:F|omega")
        ->capture_default_str();
    s->add_option("--n", o->n, "Prefix lengths 1..n")->capture_default_str();
    s->add_option("--f", o->f, "Rule or bound function");
    const std::string crit = name;
    s->callback([&g, crit, o, s] { run(g, crit, *o, s); });
  }
}

}  // namespace ait::cli

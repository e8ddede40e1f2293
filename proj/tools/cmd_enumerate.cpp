#include <algorithm>
#include <filesystem>
#include <iostream>

#include "ait/encodings.hpp"
#include "ait/errors.hpp"
#include "common.hpp"

namespace ait::cli {

namespace {

struct EnumerateOptions {
  std::uint64_t stage = 12;
  std::string ledger;
  bool resume = false;
  std::uint64_t step = 0;
  std::uint64_t work_cap = Enumeration::kDefaultWorkCap;
  std::uint64_t count_n = 10;
  std::int64_t count_c = 4;
};

CsvTable complexity_table(const Enumeration& e, Mode mode, const CLI::App* sub) {
  CsvTable t({"x", mode == Mode::kPrefix ? "K_s" : "C_s", "p", "t", "stage"});
  stamp(t, e.profile(), sub);
  t.provenance("watermark", std::to_string(e.watermark()));
  std::vector<const BitString*> xs;
  for (const auto& [x, entry] : e.table(mode)) xs.push_back(&x);
  std::sort(xs.begin(), xs.end(),
            [](const BitString* a, const BitString* b) { return length_lex_less(*a, *b); });
  for (const BitString* x : xs) {
    const HaltEvent* w = e.witness(mode, *x);
    t.row({x->str(), std::to_string(w->p.size()), w->p.str(), std::to_string(w->t),
           std::to_string(w->stage)});
  }
  return t;
}

void run(const Global& g, const EnumerateOptions& o, const CLI::App* sub) {
  const MachineProfile profile = load_profile(g);
  const std::filesystem::path ledger =
      o.ledger.empty() ? out_path(g, "ledger.txt") : std::filesystem::path(o.ledger);
  if (ledger.has_parent_path()) std::filesystem::create_directories(ledger.parent_path());

  Enumeration e = o.resume && std::filesystem::exists(ledger)
                      ? Enumeration::restore(ledger, profile, o.work_cap)
                      : Enumeration(profile, o.work_cap, g.threads);
  e.set_threads(g.threads);
  // With --step the ledger is rewritten after every increment, so an
  // interrupted run resumes from the last completed stage.
  const std::uint64_t step = o.step == 0 ? o.stage : o.step;  // > 0 inside the loop
  if (e.watermark() == 0 && o.stage == 0) e.advance(0);
  while (e.watermark() < o.stage) {
    e.advance(std::min(o.stage, e.watermark() + step));
    e.snapshot(ledger);
  }
  e.snapshot(ledger);

  write_text(g, "k_table.csv", complexity_table(e, Mode::kPrefix, sub).str());
  write_text(g, "c_table.csv", complexity_table(e, Mode::kPlain, sub).str());

  CsvTable omega({"stage", "omega", "omega_approx"});
  stamp(omega, profile, sub);
  for (std::uint64_t s = 0; s <= e.watermark(); ++s) {
    const Dyadic w = e.omega_at(s);
    omega.row({std::to_string(s), w.to_string(), std::to_string(w.approx())});
  }
  write_text(g, "omega.csv", omega.str());

  CsvTable counting({"n", "c", "count", "implied"});
  stamp(counting, profile, sub);
  counting.provenance("watermark", std::to_string(e.watermark()));
  std::int64_t max_implied = 0;
  for (const CountingCell& cell : counting_matrix(e, o.count_n, o.count_c)) {
    counting.row({std::to_string(cell.n), std::to_string(cell.c), std::to_string(cell.count),
                  std::to_string(cell.implied)});
    max_implied = std::max(max_implied, cell.implied);
  }
  counting.provenance("max_implied", std::to_string(max_implied));
  write_text(g, "counting.csv", counting.str());

  std::cout << "watermark " << e.watermark() << ", " << e.events().size() << " events, omega "
            << e.omega().to_string() << "\n";
  std::cout << "counting: max implied constant " << max_implied;
  if (const auto bound = profile.counting_bound()) {
    std::cout << " (profile bound " << *bound << ")\n";
    if (max_implied > *bound) {
      throw Error(ErrorKind::kInvalidArgument, "counting constant " + std::to_string(max_implied) +
                                                   " exceeds the profile bound");
    }
  } else {
    std::cout << " (no profile bound)\n";
  }
}

}  // namespace

void add_enumerate(CLI::App& app, Global& g) {
  auto o = std::make_shared<EnumerateOptions>();
  CLI::App* sub = app.add_subcommand("enumerate", "Run the dovetailed enumeration and write tables");
  sub->add_option("--stage", o->stage, "Target stage")->capture_default_str();
  sub->add_option("--ledger", o->ledger, "Ledger path (default <out>/ledger.txt)");
  sub->add_flag("--resume", o->resume, "Continue from an existing ledger");
  sub->add_option("--step", o->step, "Checkpoint the ledger every this many stages")
      ->capture_default_str();
  sub->add_option("--work-cap", o->work_cap, "Work-unit cap")->capture_default_str();
  sub->add_option("--count-n", o->count_n, "Counting table: largest n")->capture_default_str();
  sub->add_option("--count-c", o->count_c, "Counting table: largest c")->capture_default_str();
  sub->callback([&g, o, sub] { run(g, *o, sub); });
}

}  // namespace ait::cli

#include "common.hpp"

#include <cstdlib>
#include <fstream>

#include "ait/errors.hpp"

namespace ait::cli {

void TableOptions::add(CLI::App* sub) {
  sub->add_option("--stage", stage, "Enumeration stage for K_s / C_s")->capture_default_str();
  sub->add_option("--ledger", ledger, "Restore the table from this ledger instead");
  sub->add_option("--work-cap", work_cap, "Work-unit cap for enumeration")->capture_default_str();
}

MachineProfile load_profile(const Global& g) {
  std::string path = g.profile_path;
  if (path.empty()) {
    if (const char* env = std::getenv("AIT_PROFILE")) path = env;
  }
  return path.empty() ? MachineProfile::standard() : MachineProfile::load(path);
}

Enumeration obtain_table(const Global& g, const TableOptions& t) {
  const MachineProfile profile = load_profile(g);
  if (!t.ledger.empty()) {
    Enumeration e = Enumeration::restore(t.ledger, profile, t.work_cap);
    e.set_threads(g.threads);
    if (t.stage > e.watermark()) e.advance(t.stage);
    return e;
  }
  Enumeration e(profile, t.work_cap, g.threads);
  e.advance(t.stage);
  return e;
}

std::filesystem::path out_path(const Global& g, const std::string& name) {
  std::filesystem::create_directories(g.out_dir);
  return std::filesystem::path(g.out_dir) / name;
}

void write_text(const Global& g, const std::string& name, const std::string& text) {
  const auto path = out_path(g, name);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path.string());
  f << text;
}

std::string config_echo(const CLI::App* sub) {
  std::string out;
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help") continue;
    std::string value;
    if (opt->count() > 0) {
      for (const std::string& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    } else {
      value = opt->get_default_str();
    }
    if (!out.empty()) out += ' ';
    out += opt->get_lnames()[0] + "=" + value;
  }
  return out;
}

void stamp(CsvTable& table, const MachineProfile& profile, const CLI::App* sub) {
  std::string cmd;
  for (const CLI::App* a = sub; a != nullptr && a->get_parent() != nullptr; a = a->get_parent()) {
    cmd = a->get_name() + (cmd.empty() ? "" : " " + cmd);
  }
  table.provenance("command", cmd);
  table.provenance("profile", profile.fingerprint());
  table.provenance("config", config_echo(sub));
}

}  // namespace ait::cli

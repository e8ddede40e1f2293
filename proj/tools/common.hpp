#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ait/enumerator.hpp"
#include "ait/profile.hpp"
#include "ait/report.hpp"

namespace ait::cli {

// Exit codes; printed in --help.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFingerprint = 2;
inline constexpr int kExitResource = 3;

struct Global {
  std::string profile_path;  // empty: $AIT_PROFILE, then the built-in profile
  std::string out_dir = ".";
  unsigned threads = 1;
};

// Options shared by commands that need a complexity table.
struct TableOptions {
  std::uint64_t stage = 22;
  std::string ledger;  // restore from here instead of enumerating, if set
  std::uint64_t work_cap = Enumeration::kDefaultWorkCap;

  void add(CLI::App* sub);
};

MachineProfile load_profile(const Global& g);
Enumeration obtain_table(const Global& g, const TableOptions& t);

std::filesystem::path out_path(const Global& g, const std::string& name);
void write_text(const Global& g, const std::string& name, const std::string& text);
// Adds profile fingerprint, command and the effective configuration.
void stamp(CsvTable& table, const MachineProfile& profile, const CLI::App* sub);
std::string config_echo(const CLI::App* sub);

void add_enumerate(CLI::App& app, Global& g);
void add_solovay(CLI::App& app, Global& g);
void add_kc(CLI::App& app, Global& g);
void add_berry(CLI::App& app, Global& g);
void add_monitor(CLI::App& app, Global& g);
void add_nogap(CLI::App& app, Global& g);
void add_ktriv(CLI::App& app, Global& g);

}  // namespace ait::cli

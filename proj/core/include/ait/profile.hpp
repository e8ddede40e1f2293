#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ait/code_tree.hpp"

namespace ait {

enum class Builtin : std::uint64_t {
  kPrintIndex = 1,
  kSearchGe = 2,
  kTripleWrap = 3,
  kTreeDecode = 4,
};

// Immutable description of the reference machine: opcode table version,
// enabled builtins and registered code trees. Every ledger and report carries
// the fingerprint (SHA-256 of the canonical serialization).
//
// File format (key=value, '#' comments):
//   opcode_table=1
//   builtins=1,2,3,4
//   counting_bound=3
//   tree.1=((0)(1))
class MachineProfile {
 public:
  static constexpr int kOpcodeTableVersion = 1;

  // All four builtins, no trees.
  static MachineProfile standard();
  // No builtins: every ESCAPE is undefined.
  static MachineProfile bare();

  static MachineProfile parse(std::string_view text);
  static MachineProfile load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  std::string serialize() const;
  const std::string& fingerprint() const { return fingerprint_; }

  int opcode_table_version() const { return opcode_table_; }
  const std::vector<std::uint64_t>& builtins() const { return builtins_; }
  bool builtin_enabled(std::uint64_t id) const;

  const CodeTree* tree(std::uint64_t id) const;
  const std::map<std::uint64_t, CodeTree>& trees() const { return trees_; }
  std::uint64_t next_tree_id() const;

  // Regression constant for the counting-lemma report, if recorded.
  std::optional<std::int64_t> counting_bound() const { return counting_bound_; }

  MachineProfile with_tree(std::uint64_t id, CodeTree tree) const;
  MachineProfile with_builtins(std::vector<std::uint64_t> ids) const;
  MachineProfile with_counting_bound(std::int64_t bound) const;

  friend bool operator==(const MachineProfile& a, const MachineProfile& b) {
    return a.fingerprint_ == b.fingerprint_;
  }

 private:
  MachineProfile() = default;
  void refresh_fingerprint();

  int opcode_table_ = kOpcodeTableVersion;
  std::vector<std::uint64_t> builtins_;
  std::map<std::uint64_t, CodeTree> trees_;
  std::optional<std::int64_t> counting_bound_;
  std::string fingerprint_;
};

std::string sha256_hex(std::string_view data);

}  // namespace ait

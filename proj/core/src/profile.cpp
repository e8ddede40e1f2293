#include "ait/profile.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ait/errors.hpp"

namespace ait {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

MachineProfile MachineProfile::standard() {
  MachineProfile p;
  p.builtins_ = {1, 2, 3, 4};
  p.refresh_fingerprint();
  return p;
}

MachineProfile MachineProfile::bare() {
  MachineProfile p;
  p.refresh_fingerprint();
  return p;
}

void MachineProfile::refresh_fingerprint() { fingerprint_ = sha256_hex(serialize()); }

bool MachineProfile::builtin_enabled(std::uint64_t id) const {
  return std::find(builtins_.begin(), builtins_.end(), id) != builtins_.end();
}

const CodeTree* MachineProfile::tree(std::uint64_t id) const {
  auto it = trees_.find(id);
  return it == trees_.end() ? nullptr : &it->second;
}

std::uint64_t MachineProfile::next_tree_id() const {
  return trees_.empty() ? 1 : trees_.rbegin()->first + 1;
}

std::string MachineProfile::serialize() const {
  std::ostringstream os;
  os << "opcode_table=" << opcode_table_ << "\n";
  os << "builtins=";
  for (std::size_t i = 0; i < builtins_.size(); ++i) os << (i ? "," : "") << builtins_[i];
  os << "\n";
  if (counting_bound_) os << "counting_bound=" << *counting_bound_ << "\n";
  for (const auto& [id, tree] : trees_) os << "tree." << id << "=" << tree.serialize() << "\n";
  return os.str();
}

namespace {

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorKind::kInvalidArgument, "profile: bad " + what + " '" + text + "'");
  }
  return std::stoull(text);
}

}  // namespace

MachineProfile MachineProfile::parse(std::string_view text) {
  MachineProfile p;
  bool saw_table = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::kInvalidArgument, "profile: expected key=value, got '" + line + "'");
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "opcode_table") {
      p.opcode_table_ = static_cast<int>(parse_u64(value, "opcode table"));
      if (p.opcode_table_ != kOpcodeTableVersion) {
        throw Error(ErrorKind::kInvalidArgument,
                    "profile: unsupported opcode table version " + value);
      }
      saw_table = true;
    } else if (key == "builtins") {
      std::istringstream ids(value);
      std::string id;
      while (std::getline(ids, id, ',')) {
        if (!id.empty()) p.builtins_.push_back(parse_u64(id, "builtin id"));
      }
    } else if (key == "counting_bound") {
      const bool negative = !value.empty() && value[0] == '-';
      const auto magnitude = parse_u64(negative ? value.substr(1) : value, "counting bound");
      p.counting_bound_ = negative ? -static_cast<std::int64_t>(magnitude)
                                   : static_cast<std::int64_t>(magnitude);
    } else if (key.rfind("tree.", 0) == 0) {
      const auto id = parse_u64(key.substr(5), "tree id");
      if (id == 0) throw Error(ErrorKind::kInvalidArgument, "profile: tree ids start at 1");
      p.trees_[id] = CodeTree::parse(value);
    } else {
      throw Error(ErrorKind::kInvalidArgument, "profile: unknown key '" + key + "'");
    }
  }
  if (!saw_table) throw Error(ErrorKind::kInvalidArgument, "profile: missing opcode_table");
  p.refresh_fingerprint();
  return p;
}

MachineProfile MachineProfile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot read profile " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void MachineProfile::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write profile " + path.string());
  out << serialize();
}

MachineProfile MachineProfile::with_tree(std::uint64_t id, CodeTree tree) const {
  if (id == 0) throw Error(ErrorKind::kInvalidArgument, "tree ids start at 1");
  MachineProfile p = *this;
  p.trees_[id] = std::move(tree);
  p.refresh_fingerprint();
  return p;
}

MachineProfile MachineProfile::with_builtins(std::vector<std::uint64_t> ids) const {
  MachineProfile p = *this;
  p.builtins_ = std::move(ids);
  p.refresh_fingerprint();
  return p;
}

MachineProfile MachineProfile::with_counting_bound(std::int64_t bound) const {
  MachineProfile p = *this;
  p.counting_bound_ = bound;
  p.refresh_fingerprint();
  return p;
}

}  // namespace ait

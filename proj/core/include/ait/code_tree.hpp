#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ait/bits.hpp"
#include "ait/natural.hpp"

namespace ait {

// A binary prefix-code tree whose leaves carry natural-number payloads.
// Missing subtrees are allowed (Kraft-Chaitin codes need not be complete).
//
// Text form, preorder:  leaf "(" decimal ")", internal "(" left right ")",
// absent subtree "()". The empty tree is "()" and a single leaf at the root
// (codeword ε) is e.g. "(5)".
class CodeTree {
 public:
  static constexpr int kNone = -1;

  struct Node {
    std::optional<Natural> payload;  // set iff leaf
    int child[2] = {kNone, kNone};
  };

  CodeTree() = default;

  // Adds a codeword. Throws kInvalidArgument if it is prefix-comparable with
  // an existing codeword.
  void insert(const BitString& codeword, const Natural& payload);

  bool empty() const { return nodes_.empty(); }
  std::size_t leaf_count() const;
  // (codeword, payload) pairs in preorder (= lexicographic codeword order).
  std::vector<std::pair<BitString, Natural>> leaves() const;

  // Payload for an exact codeword, nullopt otherwise.
  std::optional<Natural> decode(const BitString& codeword) const;

  // Walking interface used by the TREE_DECODE builtin.
  int root() const { return nodes_.empty() ? kNone : 0; }
  const Node& node(int index) const { return nodes_[static_cast<std::size_t>(index)]; }

  std::string serialize() const;
  // Throws kMalformedCode on syntax errors.
  static CodeTree parse(std::string_view text);

  friend bool operator==(const CodeTree& a, const CodeTree& b) {
    return a.serialize() == b.serialize();
  }

 private:
  void serialize_node(int index, std::string& out) const;
  int parse_node(std::string_view text, std::size_t& pos, std::size_t depth);

  std::vector<Node> nodes_;
};

}  // namespace ait

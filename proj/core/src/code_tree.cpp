#include "ait/code_tree.hpp"

#include "ait/errors.hpp"

namespace ait {

void CodeTree::insert(const BitString& codeword, const Natural& payload) {
  if (nodes_.empty()) nodes_.emplace_back();
  int current = 0;
  for (std::size_t i = 0; i < codeword.size(); ++i) {
    if (nodes_[current].payload) {
      throw Error(ErrorKind::kInvalidArgument,
                  "codeword " + codeword.display() + " extends an existing leaf");
    }
    const int bit = codeword[i] ? 1 : 0;
    int next = nodes_[current].child[bit];
    if (next == kNone) {
      next = static_cast<int>(nodes_.size());
      nodes_.emplace_back();
      nodes_[current].child[bit] = next;
    }
    current = next;
  }
  Node& leaf = nodes_[current];
  if (leaf.payload || leaf.child[0] != kNone || leaf.child[1] != kNone) {
    throw Error(ErrorKind::kInvalidArgument,
                "codeword " + codeword.display() + " is prefix-comparable with another");
  }
  leaf.payload = payload;
}

std::size_t CodeTree::leaf_count() const {
  std::size_t count = 0;
  for (const Node& n : nodes_) count += n.payload ? 1 : 0;
  return count;
}

std::vector<std::pair<BitString, Natural>> CodeTree::leaves() const {
  std::vector<std::pair<BitString, Natural>> out;
  if (nodes_.empty()) return out;
  // Iterative preorder with explicit path.
  struct Frame {
    int node;
    BitString path;
  };
  std::vector<Frame> stack{{0, BitString{}}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const Node& n = nodes_[f.node];
    if (n.payload) {
      out.emplace_back(f.path, *n.payload);
      continue;
    }
    for (int bit = 1; bit >= 0; --bit) {
      if (n.child[bit] != kNone) {
        BitString p = f.path;
        p.push_back(bit == 1);
        stack.push_back({n.child[bit], std::move(p)});
      }
    }
  }
  return out;
}

std::optional<Natural> CodeTree::decode(const BitString& codeword) const {
  int current = root();
  for (std::size_t i = 0; i < codeword.size() && current != kNone; ++i) {
    if (nodes_[current].payload) return std::nullopt;
    current = nodes_[current].child[codeword[i] ? 1 : 0];
  }
  if (current == kNone) return std::nullopt;
  return nodes_[current].payload;
}

void CodeTree::serialize_node(int index, std::string& out) const {
  out.push_back('(');
  if (index != kNone) {
    const Node& n = nodes_[index];
    if (n.payload) {
      out += n.payload->str();
    } else {
      serialize_node(n.child[0], out);
      serialize_node(n.child[1], out);
    }
  }
  out.push_back(')');
}

std::string CodeTree::serialize() const {
  std::string out;
  serialize_node(root(), out);
  return out;
}

int CodeTree::parse_node(std::string_view text, std::size_t& pos, std::size_t depth) {
  auto fail = [&](const char* why) {
    throw Error(ErrorKind::kMalformedCode,
                std::string("code tree: ") + why + " at offset " + std::to_string(pos));
  };
  if (depth > 100000) fail("nesting too deep");
  if (pos >= text.size() || text[pos] != '(') fail("expected '('");
  ++pos;
  if (pos >= text.size()) fail("unterminated node");
  if (text[pos] == ')') {
    ++pos;
    return kNone;
  }
  const int index = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  if (text[pos] >= '0' && text[pos] <= '9') {
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    nodes_[index].payload = Natural(std::string(text.substr(start, pos - start)));
  } else {
    const int left = parse_node(text, pos, depth + 1);
    const int right = parse_node(text, pos, depth + 1);
    if (left == kNone && right == kNone) fail("internal node without children");
    nodes_[index].child[0] = left;
    nodes_[index].child[1] = right;
  }
  if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
  ++pos;
  return index;
}

CodeTree CodeTree::parse(std::string_view text) {
  CodeTree tree;
  std::size_t pos = 0;
  const int root = tree.parse_node(text, pos, 0);
  if (pos != text.size()) {
    throw Error(ErrorKind::kMalformedCode, "code tree: trailing characters");
  }
  if (root == kNone) tree.nodes_.clear();
  return tree;
}

}  // namespace ait

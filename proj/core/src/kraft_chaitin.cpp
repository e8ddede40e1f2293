#include "ait/kraft_chaitin.hpp"

#include "ait/errors.hpp"
#include "ait/programs.hpp"

namespace ait {

KraftChaitinAllocator::KraftChaitinAllocator(std::uint64_t budget_exponent)
    : c_(budget_exponent), free_{BitString()} {}

BitString KraftChaitinAllocator::request(std::uint64_t k, const Natural& payload) {
  const std::uint64_t length = k + c_;
  std::size_t i = 0;
  while (i < free_.size() && free_[i].size() > length) ++i;
  if (i == free_.size()) {
    throw Error(ErrorKind::kInsufficientBudget,
                "no free interval of size 2^-" + std::to_string(length) + " (free weight " +
                    free_weight().to_string() + ")");
  }
  const BitString node = free_[i];
  std::vector<BitString> pieces;
  // Right halves split off while descending, smallest (leftmost) first.
  for (std::uint64_t depth = length; depth > node.size(); --depth) {
    BitString piece = node + BitString::zeros(depth - node.size() - 1);
    piece.push_back(true);
    pieces.push_back(std::move(piece));
  }
  free_.erase(free_.begin() + static_cast<std::ptrdiff_t>(i));
  free_.insert(free_.begin() + static_cast<std::ptrdiff_t>(i), pieces.begin(), pieces.end());
  BitString codeword = node + BitString::zeros(length - node.size());
  issued_.emplace_back(codeword, payload);
  return codeword;
}

Dyadic KraftChaitinAllocator::free_weight() const {
  Dyadic sum;
  for (const BitString& f : free_) sum += Dyadic::inverse_pow2(f.size());
  return sum;
}

Dyadic KraftChaitinAllocator::issued_weight() const {
  Dyadic sum;
  for (const auto& [codeword, payload] : issued_) sum += Dyadic::inverse_pow2(codeword.size());
  return sum;
}

CodeTree KraftChaitinAllocator::tree() const {
  CodeTree t;
  for (const auto& [codeword, payload] : issued_) t.insert(codeword, payload);
  return t;
}

CompiledCode compile_function(const UpperBoundFunction& f, std::uint64_t c, std::uint64_t N,
                              const MachineProfile& base) {
  const Dyadic weight = alpha_approx(f, N);
  if (weight > Dyadic(Natural(1) << c)) {
    throw Error(ErrorKind::kInsufficientBudget, "sum of 2^-f(n) for n <= " + std::to_string(N) +
                                                    " is " + weight.to_string() + " > 2^" +
                                                    std::to_string(c));
  }
  KraftChaitinAllocator alloc;
  for (std::uint64_t n = 0; n <= N; ++n) alloc.request(f(n) + c, n);
  const std::uint64_t id = base.next_tree_id();
  CodeTree tree = alloc.tree();
  MachineProfile profile = base.with_tree(id, tree);
  return {std::move(tree), std::move(profile), id, tree_decode_overhead(id)};
}

}  // namespace ait

#pragma once

#include <utility>
#include <vector>

#include "divide_forge/numeric.hpp"

namespace divide_forge::puiseux {

struct Pair {
  Integer a;
  Integer b;
};

/// A validated sequence of essential Puiseux pairs. Only `validate` constructs one.
class PuiseuxSeq {
 public:
  const std::vector<Pair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }

 private:
  friend PuiseuxSeq validate(std::vector<Pair> pairs);
  std::vector<Pair> pairs_;
};

struct CableData {
  std::vector<Integer> lambda;  // linking numbers of consecutive stages
  std::vector<Integer> delta;   // double points of each stage
  std::vector<Integer> bprime;  // cable pattern exponents, bprime[0] == b_1
  std::vector<Integer> mult;    // a_1 * ... * a_k
  Integer mu;
};

struct Block {
  Integer p;
  Integer q;
};

/// Throws ValidationError listing every violated condition.
PuiseuxSeq validate(std::vector<Pair> pairs);
PuiseuxSeq validate_ll(const std::vector<std::pair<long long, long long>>& pairs);

CableData cable_data(const PuiseuxSeq& seq);

/// Blocks in written order, outermost first: [(a_n, b'_n), ..., (a_2, b'_2), (a_1, b_1)].
std::vector<Block> divide_spec(const PuiseuxSeq& seq);

/// a_n...a_2 + a_{n-1}...a_2 + ... + a_2; zero for a single pair.
Integer reduction_count(const PuiseuxSeq& seq);

/// Parses "a1,b1;a2,b2;..." into raw pairs (no validation).
std::vector<Pair> parse_pairs(const std::string& text);

}  // namespace divide_forge::puiseux

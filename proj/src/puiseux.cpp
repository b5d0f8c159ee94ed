#include "divide_forge/puiseux.hpp"

#include <cassert>
#include <sstream>

#include "divide_forge/error.hpp"

namespace divide_forge::puiseux {

namespace {

std::string str(const Integer& v) { return v.str(); }

Integer exact_half(const Integer& v) {
  if (v % 2 != 0) throw std::logic_error("odd double-point numerator " + v.str());
  return v / 2;
}

}  // namespace

PuiseuxSeq validate(std::vector<Pair> pairs) {
  std::vector<ValidationError::Issue> issues;
  if (pairs.empty()) {
    issues.push_back({ErrorCode::BadPair, "empty pair list"});
    throw ValidationError(std::move(issues));
  }
  Integer prod = 1;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [a, b] = pairs[i];
    const std::string where = "pair " + std::to_string(i + 1) + " (" + str(a) + "," + str(b) + ")";
    if (a < 2 || a >= b) issues.push_back({ErrorCode::BadPair, where + ": need 2 <= a < b"});
    if (i + 1 < pairs.size() && b * pairs[i + 1].a >= pairs[i + 1].b) {
      issues.push_back({ErrorCode::ExponentOrder,
                        where + ": need b_i*a_{i+1} < b_{i+1}, got " + str(b * pairs[i + 1].a) +
                            " >= " + str(pairs[i + 1].b)});
    }
    prod *= a;
    if (prod != 0 && gcd(b, prod) != 1) {
      issues.push_back({ErrorCode::NotCoprime,
                        where + ": gcd(b_i, a_1...a_i) = " + str(gcd(b, prod))});
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  PuiseuxSeq seq;
  seq.pairs_ = std::move(pairs);
  return seq;
}

PuiseuxSeq validate_ll(const std::vector<std::pair<long long, long long>>& pairs) {
  std::vector<Pair> raw;
  raw.reserve(pairs.size());
  for (auto [a, b] : pairs) raw.push_back({Integer(a), Integer(b)});
  return validate(std::move(raw));
}

CableData cable_data(const PuiseuxSeq& seq) {
  const auto& pr = seq.pairs();
  CableData out;
  Integer mult = 1;
  for (std::size_t k = 0; k < pr.size(); ++k) {
    const auto& [a, b] = pr[k];
    mult *= a;
    out.mult.push_back(mult);
    if (k == 0) {
      out.lambda.push_back(b);
      out.bprime.push_back(b);
      out.delta.push_back(exact_half((a - 1) * (b - 1)));
      continue;
    }
    const auto& prev = pr[k - 1];
    const Integer lambda = b - prev.b * a + out.lambda.back() * prev.a * a;
    const Integer bprime = lambda - 2 * a * out.delta.back();
    const Integer delta = exact_half((a - 1) * (bprime - 1)) + out.delta.back() * a * a;
    assert(gcd(a, bprime) == 1);
    out.lambda.push_back(lambda);
    out.bprime.push_back(bprime);
    out.delta.push_back(delta);
  }
  out.mu = 2 * out.delta.back();
  return out;
}

std::vector<Block> divide_spec(const PuiseuxSeq& seq) {
  const CableData data = cable_data(seq);
  std::vector<Block> blocks;
  for (std::size_t k = seq.size(); k-- > 0;) blocks.push_back({seq.pairs()[k].a, data.bprime[k]});
  return blocks;
}

Integer reduction_count(const PuiseuxSeq& seq) {
  const auto& pr = seq.pairs();
  Integer total = 0;
  // Sum over j = 2..n of a_j * a_{j-1} * ... * a_2.
  Integer prod = 1;
  for (std::size_t j = 1; j < pr.size(); ++j) {
    prod *= pr[j].a;
    total += prod;
  }
  return total;
}

std::vector<Pair> parse_pairs(const std::string& text) {
  std::vector<Pair> out;
  std::stringstream whole(text);
  std::string item;
  while (std::getline(whole, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "pair without comma: '" + item + "'");
    try {
      out.push_back({Integer(std::stoll(item.substr(0, comma))), Integer(std::stoll(item.substr(comma + 1)))});
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ParseError, "bad integer in pair '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "no pairs in '" + text + "'");
  return out;
}

}  // namespace divide_forge::puiseux

#include "multicubic/combinatorics.hpp"

#include "multicubic/errors.hpp"

namespace multicubic {

char to_char(NodeChoice choice) {
  switch (choice) {
    case NodeChoice::First:
      return 'F';
    case NodeChoice::PlusDiff:
      return 'P';
    case NodeChoice::MinusDiff:
      return 'M';
  }
  return '?';
}

NodeChoice node_choice_from_char(char c) {
  switch (c) {
    case 'F':
      return NodeChoice::First;
    case 'P':
      return NodeChoice::PlusDiff;
    case 'M':
      return NodeChoice::MinusDiff;
    default:
      throw ParseError(std::string("invalid node choice '") + c + "' (expected F, P or M)");
  }
}

std::string MkTerm::to_string() const {
  std::string out;
  out.reserve(choices.size());
  for (NodeChoice c : choices) out.push_back(to_char(c));
  return out;
}

MkTerm MkTerm::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty M-set term");
  MkTerm term;
  for (char c : text) {
    term.choices.push_back(node_choice_from_char(c));
    if (term.choices.back() == NodeChoice::First) ++term.fix_count;
  }
  return term;
}

namespace {

void check_k(std::size_t n, long k) {
  if (n == 0) throw DomainError("arity n must be at least 1");
  if (k < 0 || static_cast<std::size_t>(k) > n) {
    throw DomainError("k = " + std::to_string(k) + " out of range [0, " + std::to_string(n) + "]");
  }
}

void enumerate_rec(std::size_t n, std::size_t firsts_left, std::vector<NodeChoice>& prefix,
                   std::size_t fix_count, std::vector<MkTerm>& out) {
  const std::size_t pos = prefix.size();
  if (pos == n) {
    out.push_back(MkTerm{prefix, fix_count});
    return;
  }
  const std::size_t remaining = n - pos;
  if (firsts_left > 0) {
    prefix.push_back(NodeChoice::First);
    enumerate_rec(n, firsts_left - 1, prefix, fix_count, out);
    prefix.pop_back();
  }
  if (remaining > firsts_left) {
    for (NodeChoice c : {NodeChoice::PlusDiff, NodeChoice::MinusDiff}) {
      prefix.push_back(c);
      enumerate_rec(n, firsts_left, prefix, fix_count, out);
      prefix.pop_back();
    }
  }
}

}  // namespace

std::vector<MkTerm> enumerate_mk(std::size_t n, long k) {
  check_k(n, k);
  std::vector<MkTerm> out;
  std::vector<NodeChoice> prefix;
  prefix.reserve(n);
  enumerate_rec(n, static_cast<std::size_t>(k), prefix, static_cast<std::size_t>(k), out);
  return out;
}

std::vector<SignPattern> enumerate_sign_patterns(std::size_t n) {
  if (n == 0) throw DomainError("arity n must be at least 1");
  if (n >= 8 * sizeof(std::size_t) - 1) throw DomainError("arity too large for sign enumeration");
  const std::size_t count = std::size_t{1} << n;
  std::vector<SignPattern> out;
  out.reserve(count);
  // Bit (n-1-j) of the counter selects -1 in position j, so the leftmost
  // position varies slowest.
  for (std::size_t mask = 0; mask < count; ++mask) {
    SignPattern p;
    p.signs.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      p.signs[j] = (mask >> (n - 1 - j)) & 1U ? -1 : 1;
    }
    out.push_back(std::move(p));
  }
  return out;
}

Integer binomial(std::size_t n, std::size_t k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

namespace {

Integer ipow_z(unsigned long base, unsigned long e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return out;
}

}  // namespace

Integer rhs_weight(std::size_t n, long k) {
  check_k(n, k);
  return ipow_z(2, n - static_cast<std::size_t>(k)) * ipow_z(12, static_cast<unsigned long>(k));
}

IdentityCheck identity_total_weight(std::size_t n) {
  if (n == 0) throw DomainError("arity n must be at least 1");
  IdentityCheck out;
  for (std::size_t k = 0; k <= n; ++k) {
    out.computed += binomial(n, k) * ipow_z(2, 2 * (n - k)) * ipow_z(12, k);
  }
  out.expected = ipow_z(2, 4 * n);
  out.equal = out.computed == out.expected;
  return out;
}

IdentityCheck identity_w2(std::size_t n) {
  if (n == 0) throw DomainError("arity n must be at least 1");
  IdentityCheck out;
  out.computed = ipow_z(2, 2 * n - 1);
  for (std::size_t k = 1; k + 1 <= n; ++k) {
    out.computed += binomial(n - 1, k) * ipow_z(2, 2 * (n - k) - 1) * ipow_z(12, k);
  }
  out.expected = ipow_z(2, 4 * n - 3);
  out.equal = out.computed == out.expected;
  return out;
}

IdentityCheck identity_w1(std::size_t n) {
  if (n == 0) throw DomainError("arity n must be at least 1");
  IdentityCheck out;
  out.computed = ipow_z(12, n);
  for (std::size_t k = 1; k + 1 <= n; ++k) {
    out.computed += binomial(n - 1, k - 1) * ipow_z(2, 2 * (n - k)) * ipow_z(12, k);
  }
  out.expected = 12 * ipow_z(2, 4 * (n - 1));
  out.equal = out.computed == out.expected;
  return out;
}

}  // namespace multicubic

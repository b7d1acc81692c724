#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "multicubic/scalar.hpp"

namespace multicubic {

/// Per-coordinate choice for one summand of M_k^n. The enumerator order
/// (First < PlusDiff < MinusDiff) is the lexicographic order used everywhere.
enum class NodeChoice : std::uint8_t {
  First,      ///< x_{1j}
  PlusDiff,   ///< x_{1j} + x_{2j}
  MinusDiff,  ///< x_{1j} - x_{2j}
};

char to_char(NodeChoice choice);
NodeChoice node_choice_from_char(char c);

/// One summand of M_k^n; fix_count is the number of First entries.
struct MkTerm {
  std::vector<NodeChoice> choices;
  std::size_t fix_count = 0;

  /// Serialized over the alphabet {F, P, M}, e.g. "FPM".
  std::string to_string() const;
  static MkTerm parse(std::string_view text);

  bool operator==(const MkTerm&) const = default;
};

struct SignPattern {
  std::vector<int> signs;  // each +1 or -1

  bool operator==(const SignPattern&) const = default;
};

/// All terms of M_k^n, each once, in lexicographic order.
/// Throws DomainError unless 0 <= k <= n and n >= 1.
std::vector<MkTerm> enumerate_mk(std::size_t n, long k);

/// All 2^n patterns; +1 sorts before -1 in each position.
std::vector<SignPattern> enumerate_sign_patterns(std::size_t n);

Integer binomial(std::size_t n, std::size_t k);

/// 2^{n-k} * 12^k.
Integer rhs_weight(std::size_t n, long k);

struct IdentityCheck {
  Integer computed;
  Integer expected;
  bool equal = false;
};

/// sum_k C(n,k) 2^{2(n-k)} 12^k  against 2^{4n}.
IdentityCheck identity_total_weight(std::size_t n);
/// 2^{2n-1} + sum_{k=1}^{n-1} C(n-1,k) 2^{2(n-k)-1} 12^k  against 2^{4n-3}.
IdentityCheck identity_w2(std::size_t n);
/// 12^n + sum_{k=1}^{n-1} C(n-1,k-1) 2^{2(n-k)} 12^k  against 12 * 2^{4(n-1)}.
IdentityCheck identity_w1(std::size_t n);

}  // namespace multicubic

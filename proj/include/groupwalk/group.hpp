#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "groupwalk/errors.hpp"

namespace groupwalk {

using element_t = int;

using Permutation = std::vector<int>;

/// A finite group given by its complete multiplication structure. Elements
/// are indices 0..n-1 with display labels; the Cayley table stores a*b for
/// every pair. Immutable after construction, safe to share across threads.
class FiniteGroup {
 public:
  /// Validates and wraps an explicit Cayley table. Checks run in order:
  /// Latin square, associativity (full triple scan), identity, inverses.
  static std::shared_ptr<const FiniteGroup> from_cayley(
      const std::vector<std::vector<int>>& table,
      const std::vector<std::string>& labels = {});

  /// Closure of permutation generators under composition. Element 0 is the
  /// identity; the rest follow breadth-first, multiplying by generators in
  /// the given order. Composition reads left to right: (p*q)(x) = q(p(x)).
  static std::shared_ptr<const FiniteGroup> from_permutations(
      const std::vector<Permutation>& generators, int order_cap = kDefaultOrderCap);

  /// Named constructions: cyclic(n), dihedral(n), symmetric(n), quaternion8,
  /// direct_product(a,b) where a and b are themselves preset names.
  static std::shared_ptr<const FiniteGroup> preset(const std::string& name,
                                                   int order_cap = kDefaultOrderCap);

  static std::shared_ptr<const FiniteGroup> direct_product(
      const std::shared_ptr<const FiniteGroup>& a,
      const std::shared_ptr<const FiniteGroup>& b, int order_cap = kDefaultOrderCap);

  static constexpr int kDefaultOrderCap = 10000;

  int order() const { return order_; }
  element_t identity() const { return identity_; }
  element_t mul(element_t a, element_t b) const { return table_[size_t(a) * order_ + b]; }
  element_t inv(element_t a) const { return inverse_[a]; }
  const std::string& label(element_t a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }

  element_t pow(element_t a, long long k) const;
  int element_order(element_t a) const;

  /// Element index for a display label, or -1.
  element_t find_label(const std::string& label) const;

 private:
  FiniteGroup() = default;

  int order_ = 0;
  element_t identity_ = 0;
  std::vector<std::uint16_t> table_;  // flattened n*n
  std::vector<element_t> inverse_;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Parses one-line cycle notation, e.g. "(0 1)(2 3)". Degree is the largest
/// point mentioned plus one unless a larger degree is forced by the caller.
Permutation parse_cycles(const std::string& text, int degree = -1);

std::string format_cycles(const Permutation& p);

/// Reads the plain-text Cayley format: first line n, then n rows of n
/// space-separated indices, then an optional line of n labels.
GroupPtr read_cayley_file(const std::string& path);

}  // namespace groupwalk

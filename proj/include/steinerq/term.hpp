#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "steinerq/errors.hpp"

namespace steinerq {

// Binary terms over variables x1, x2, ... and a single commutative product.
// Immutable; copies share structure. Rank, length, largest variable index
// and a structural hash are cached on every node, so those accessors and
// the equality fast path are O(1).
//
// length = number of variable occurrences, rank = nesting depth
// (variables have rank 0, a product has rank max(children) + 1).
class Term {
 public:
  static Term variable(int index);  // index >= 1
  static Term product(const Term& left, const Term& right);

  bool is_variable() const;
  bool is_product() const;
  int var_index() const;  // requires is_variable()
  Term left() const;      // requires is_product()
  Term right() const;     // requires is_product()

  int length() const;
  int rank() const;
  int max_var() const;  // largest variable index occurring, >= 1
  std::uint64_t hash() const;

  // Structural equality (not equivalence up to commutations; see equiv()).
  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

  struct Node;

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend struct TermHash;
  friend std::strong_ordering term_order_compare(const Term&, const Term&);
  friend std::string print_term(const Term&);
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return static_cast<std::size_t>(t.hash()); }
};

// Grammar (whitespace insignificant, '*' left-associative):
//   term     := factor { '*' factor }
//   factor   := variable | '(' term ')'
//   variable := 'x' digits        with value >= 1
// Throws parse_error with the offset of the first bad character.
Term parse_term(std::string_view text);

// Fully parenthesized form, e.g. "((x1*x2)*x3)". parse_term(print_term(t)) == t.
std::string print_term(const Term& t);

// Total order on terms: by length, then rank, then lexicographically on the
// fully parenthesized serialization. Canonical forms of distinct equivalence
// classes always compare unequal, so this orders classes as well.
std::strong_ordering term_order_compare(const Term& a, const Term& b);

// Representative of the equivalence class of t under commuting subterms:
// every product's children are put in term_order_compare order, recursively.
Term canonicalize(const Term& t);

// Equality up to commuting subterms at any depth.
bool equiv(const Term& a, const Term& b);

// Number of occurrences of the given variable.
int count_occurrences(const Term& t, int variable);

// No subterm has the shape a*b with a ~ b, a*(b*c) with a ~ b or a ~ c,
// or (a*b)*c with a ~ c or b ~ c.
bool is_reduced(const Term& t);

// Replaces every occurrence of `variable` by `replacement`.
Term substitute(const Term& t, int variable, const Term& replacement);

// Simultaneous substitution: x_i is replaced by images[i-1]. Every variable
// occurring in t must have an image.
Term substitute_all(const Term& t, const std::vector<Term>& images);

// A term that is canonical and reduced. The checked constructor validates
// both invariants; reduce() and reduced_product() construct directly.
// These are exactly the elements of a free model.
class ReducedTerm {
 public:
  explicit ReducedTerm(const Term& t);  // throws validation_error if not canonical reduced

  const Term& term() const { return term_; }
  int length() const { return term_.length(); }
  int rank() const { return term_.rank(); }
  int max_var() const { return term_.max_var(); }

  friend bool operator==(const ReducedTerm& a, const ReducedTerm& b) {
    return a.term_ == b.term_;
  }
  friend bool operator!=(const ReducedTerm& a, const ReducedTerm& b) { return !(a == b); }

 private:
  struct unchecked {};
  ReducedTerm(Term t, unchecked) : term_(std::move(t)) {}
  Term term_;

  friend ReducedTerm reduce(const Term&);
  friend ReducedTerm reduced_product(const ReducedTerm&, const ReducedTerm&);
};

struct ReducedTermHash {
  std::size_t operator()(const ReducedTerm& t) const {
    return static_cast<std::size_t>(t.term().hash());
  }
};

// The canonical reduced form of t. Equivalent to t in every Steiner
// quasigroup, and a fixed point on inputs that are already canonical reduced.
ReducedTerm reduce(const Term& t);

// Canonical reduced form of a*b for already-reduced a, b. Collapses the
// absorption cases (a ~ b gives a; a ~ r*b gives r; b ~ r*a gives r) and
// otherwise forms the ordered product, which is then reduced as well.
ReducedTerm reduced_product(const ReducedTerm& a, const ReducedTerm& b);

struct EnumerationLimits {
  std::size_t max_classes = 1000000;
  int max_rank = 6;
};

// All equivalence classes of reduced terms over x1..x{num_vars} with rank
// <= max_rank, grouped by exact rank and sorted by term_order_compare.
// Throws cap_exceeded when a limit is hit.
std::vector<std::vector<ReducedTerm>> enumerate_reduced_by_rank(
    int num_vars, int max_rank, const EnumerationLimits& limits = {});

// Flattened form of the above, ordered by rank then term order.
std::vector<ReducedTerm> enumerate_reduced(int num_vars, int max_rank,
                                           const EnumerationLimits& limits = {});

}  // namespace steinerq

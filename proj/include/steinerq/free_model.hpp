#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "steinerq/term.hpp"

namespace steinerq {

// The free Steiner quasigroup on generators a1..an. Elements are canonical
// reduced terms over x1..xn; the product of two elements is the reduced form
// of their formal product. Stateless and freely copyable.
class FreeModel {
 public:
  explicit FreeModel(int num_generators);  // >= 1

  int num_generators() const { return num_generators_; }
  ReducedTerm generator(int i) const;  // a_i, 1 <= i <= num_generators

  // Both operands must only use variables x1..xn.
  ReducedTerm mul(const ReducedTerm& a, const ReducedTerm& b) const;

  // Value of t when x_i denotes assignment[i-1].
  ReducedTerm evaluate(const Term& t, std::span<const ReducedTerm> assignment) const;

  bool contains(const ReducedTerm& e) const { return e.max_var() <= num_generators_; }

 private:
  int num_generators_;
};

struct LevelLimits {
  int max_depth = 6;
  int max_generators = 5;
  std::size_t max_classes = 1000000;
};

// Levels of the generation sequence S_0 = generators, S_{i+1} = all products
// of pairs from S_i. Returns cumulative sets S_0..S_k, each sorted by term
// order. The two constructions below build the same sets along different
// routes; levels() runs both and insists they agree.
std::vector<std::vector<ReducedTerm>> levels_closure(const FreeModel& m, int k,
                                                     const LevelLimits& limits = {});
std::vector<std::vector<ReducedTerm>> levels_enumeration(const FreeModel& m, int k,
                                                         const LevelLimits& limits = {});
std::vector<std::vector<ReducedTerm>> levels(const FreeModel& m, int k,
                                             const LevelLimits& limits = {});

// Least k with e in S_k; by the level-rank correspondence this is the rank
// of the canonical term (the closure construction in the tests pins this).
int level_of(const FreeModel& m, const ReducedTerm& e);

struct ClosureLimits {
  std::size_t max_classes = 500000;
};

struct ClosureResult {
  std::vector<ReducedTerm> elements;  // sorted by term order
  bool saturated;                     // true iff a fixpoint was reached with no discards

  bool contains(const ReducedTerm& e) const;
};

// 4x the longest generator; the working default for bounded membership tests.
int default_closure_length_cap(std::span<const ReducedTerm> gens);

// Closes gens under mul, discarding any product longer than length_cap.
// Generators are kept regardless of length. Throws cap_exceeded if the
// working set outgrows limits.max_classes.
ClosureResult subalgebra_closure(const FreeModel& m, std::span<const ReducedTerm> gens,
                                 int length_cap, const ClosureLimits& limits = {});

// As above, but records for every element a reduced witness term over the
// given variables (gen_vars[j] stands for gens[j]) whose value is the element.
struct DerivedClosureResult {
  std::vector<ReducedTerm> elements;
  std::vector<Term> derivations;
  bool saturated;

  std::optional<Term> derivation_of(const ReducedTerm& e) const;
};
DerivedClosureResult subalgebra_closure_derived(const FreeModel& m,
                                                std::span<const ReducedTerm> gens,
                                                std::span<const int> gen_vars, int length_cap,
                                                const ClosureLimits& limits = {});

// Two non-equivalent reduced terms taking the same value on the tuple.
struct IndependenceWitness {
  Term first;
  Term second;
};

struct RefutationResult {
  std::optional<IndependenceWitness> witness;
  int rank_bound;  // the bound that was searched when no witness was found

  bool dependent() const { return witness.has_value(); }
};

// Searches reduced terms of rank <= rank_bound over |elems| variables for a
// dependence witness. A returned witness is re-verified by evaluation; its
// absence is only a statement about the searched bound.
RefutationResult independence_refute(const FreeModel& m, std::span<const ReducedTerm> elems,
                                     int rank_bound, const EnumerationLimits& limits = {});

// A finite Steiner quasigroup given by its blocks: x*x = x, and for x != y
// the product is the third point of the unique block through x and y. The
// constructor requires every pair to be covered exactly once and re-checks
// the three quasigroup laws exhaustively.
class FiniteModel {
 public:
  static FiniteModel from_blocks(std::vector<std::string> point_names,
                                 const std::vector<std::array<int, 3>>& blocks);
  static FiniteModel parse(std::string_view text);  // fixture text format

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& point_name(int p) const;
  int point_id(std::string_view name) const;  // throws validation_error if unknown
  int mul(int a, int b) const;
  int evaluate(const Term& t, std::span<const int> assignment) const;
  const std::vector<std::array<int, 3>>& blocks() const { return blocks_; }

 private:
  FiniteModel() = default;
  std::vector<std::string> names_;
  std::vector<std::array<int, 3>> blocks_;
  std::vector<int> table_;  // size * size
};

// Fixture text format shared by finite models and partial systems:
//   # comment
//   points: a b c ...
//   block: a b c
struct DesignText {
  std::vector<std::string> points;
  std::vector<std::array<std::string, 3>> blocks;
};
DesignText parse_design_text(std::string_view text);

// Built-in validated fixtures: the 7-point and 9-point triple systems.
std::string_view fano_fixture();
std::string_view sts9_fixture();
const FiniteModel& fano_model();
const FiniteModel& sts9_model();

// Homomorphism out of a free model, determined by generator images.
class FreeHomomorphism {
 public:
  FreeHomomorphism(FreeModel domain, FreeModel target, std::vector<ReducedTerm> images);
  ReducedTerm operator()(const ReducedTerm& e) const;
  const std::vector<ReducedTerm>& images() const { return images_; }
  const FreeModel& target() const { return target_; }

 private:
  FreeModel domain_;
  FreeModel target_;
  std::vector<ReducedTerm> images_;
};

class FiniteHomomorphism {
 public:
  FiniteHomomorphism(FreeModel domain, FiniteModel target, std::vector<int> images);
  int operator()(const ReducedTerm& e) const;
  const std::vector<int>& images() const { return images_; }
  const FiniteModel& target() const { return target_; }

 private:
  FreeModel domain_;
  FiniteModel target_;
  std::vector<int> images_;
};

FreeHomomorphism extend_hom(const FreeModel& domain, const FreeModel& target,
                            std::vector<ReducedTerm> images);
FiniteHomomorphism extend_hom(const FreeModel& domain, FiniteModel target,
                              std::vector<int> images);

}  // namespace steinerq

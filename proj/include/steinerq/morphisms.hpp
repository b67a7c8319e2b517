#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "steinerq/errors.hpp"
#include "steinerq/free_model.hpp"
#include "steinerq/term.hpp"

namespace steinerq {

// Occurrence analysis of one distinguished variable.
struct OccurrenceReport {
  int variable = 0;
  int count = 0;
  // some occurrence all of whose enclosing subterms are single
  bool single_path_exists = false;
};

// A subterm class r is single in t when any two product subterms of t having
// a factor equivalent to r have equivalent cofactors; otherwise double.
// Decided by the literal scan over subterm pairs.
bool subterm_is_single(const Term& t, const Term& r);

// Count plus the single-path flag. For reduced t the flag provably equals
// count == 1; that identity is re-asserted here and a violation throws
// std::logic_error.
OccurrenceReport occurrences(const Term& t, int variable);

// For reduced t with exactly one occurrence of x_y, the term r(x̄, x_z) such
// that in every model t(x̄, b) = c holds exactly when r(x̄, c) = b. The
// one-argument form uses y = max_var(t) and z = y + 1.
Term invert_single(const Term& t, int y_var, int z_var);
Term invert_single(const Term& t);

// An endomorphism of a finitely generated free model, one image per
// generator, stored reduced.
class EndoSpec {
 public:
  EndoSpec(FreeModel model, std::vector<ReducedTerm> images);
  const FreeModel& model() const { return model_; }
  const std::vector<ReducedTerm>& images() const { return images_; }

  friend bool operator==(const EndoSpec& a, const EndoSpec& b) {
    return a.model_.num_generators() == b.model_.num_generators() && a.images_ == b.images_;
  }

 private:
  FreeModel model_;
  std::vector<ReducedTerm> images_;
};

EndoSpec identity_endo(const FreeModel& m);

// Image of an element: its term evaluated at the generator images.
ReducedTerm apply_endo(const EndoSpec& spec, const ReducedTerm& e);

// g after h: (compose(g, h))(e) = g(h(e)).
EndoSpec compose(const EndoSpec& g, const EndoSpec& h);

// Classification of the endomorphism of <ā, b> fixing ā and sending
// b ↦ t(ā, b), where y = x_{|ā|+1} stands for b in the image term.
struct NotInjective {
  ReducedTerm first;   // b
  ReducedTerm second;  // t(ā), a different element with the same image
};
struct AutomorphismClass {
  Term inverse_image;  // same convention: b ↦ inverse_image(ā, b) inverts
};
struct EmbeddingClass {
  ReducedTerm excluded;  // b itself: not in the image subalgebra
};
using EndoClass = std::variant<NotInjective, AutomorphismClass, EmbeddingClass>;

// The image term is reduced first; the branch is chosen by the number of
// occurrences of y in the reduced form (0 / 1 / several). The caller
// certifies that (ā, b) is independent, e.g. the full generator base.
EndoClass classify_endo(const FreeModel& m, std::span<const ReducedTerm> base_prefix,
                        const ReducedTerm& b, const Term& image);

// Substitution diagnostic: t(x̄, z) with x_z replaced by r(x̄, y).
struct SubstitutionReport {
  Term substituted;
  bool reduced_after = false;
  // r is a product with the distinguished variable in both factors; in that
  // case reduced_after is guaranteed and re-asserted
  bool y_in_both_factors = false;
};
SubstitutionReport substitution_check(const Term& t, int z_var, const Term& r, int y_var);

// Bounded injectivity of the substitution y ↦ t on reduced classes.
struct InjectivityHolds {
  std::optional<int> rank_bound;  // empty: unbounded (single occurrence)
};
struct CounterexamplePair {
  Term first;
  Term second;
};
using InjectivityResult = std::variant<InjectivityHolds, CounterexamplePair>;

InjectivityResult injectivity_condition(const Term& t, int y_var, int rank_bound,
                                        const EnumerationLimits& limits = {});

}  // namespace steinerq

#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "steinerq/errors.hpp"
#include "steinerq/free_model.hpp"
#include "steinerq/morphisms.hpp"
#include "steinerq/term.hpp"

namespace steinerq {

// The automorphism a_pivot ↦ a_pivot · shift(ā) fixing every other
// generator. The pivot variable must not occur in the shift, which makes the
// map self-inverse.
class ElementaryAuto {
 public:
  ElementaryAuto(FreeModel model, int pivot, const Term& shift);

  const FreeModel& model() const { return model_; }
  int pivot() const { return pivot_; }
  const Term& shift() const { return shift_; }  // canonical

  EndoSpec to_endo() const;

 private:
  FreeModel model_;
  int pivot_;
  Term shift_;
};

ElementaryAuto elementary(const FreeModel& m, int pivot, const Term& shift);

// Irreducibility of an image tuple: reducible means some images[i] is
// equivalent to combination(images) · factor where the combination avoids
// slot i. Deciding membership uses a bounded closure, so the answer can be
// inconclusive.
struct Irreducible {};
struct ReducibilityWitness {
  int index;         // 1-based pivot i
  Term combination;  // r, a term in the other generators' slots
  Term factor;       // s, the remaining canonical child of images[i]
};
struct UnknownAtBound {
  int length_cap;  // the largest closure cap tried
};
using IrreducibilityResult = std::variant<Irreducible, ReducibilityWitness, UnknownAtBound>;

// length_cap 0 picks the default policy: 4x the longest image, doubled on
// an inconclusive round, at most 3 rounds.
IrreducibilityResult is_irreducible(const EndoSpec& spec, int length_cap = 0,
                                    const ClosureLimits& limits = {});

// First reduced class (by rank, then term order) whose image under the
// substitution fails to stay reduced; empty when every class up to the rank
// bound is preserved.
struct PreservationViolation {
  Term input;        // the reduced class that breaks
  Term substituted;  // its unreduced image term
};
std::optional<PreservationViolation> preserves_reduced(const EndoSpec& spec, int rank_bound,
                                                       const EnumerationLimits& limits = {});

// spec = factors[0] ∘ factors[1] ∘ … (rightmost applied first).
struct TameDecomposition {
  std::vector<ElementaryAuto> factors;
};

// Peels elementary factors off an automorphism by strict descent on total
// image length, then factors the remaining generator permutation into
// transpositions. Throws validation_error when the images do not define an
// automorphism and cap_exceeded when the witness search is inconclusive.
TameDecomposition tame_decompose(const EndoSpec& spec, const ClosureLimits& limits = {});

// Left-to-right composition of the factors; identity when empty.
EndoSpec compose_factors(const FreeModel& m, const std::vector<ElementaryAuto>& factors);

// Composes the decomposition and compares generator images with spec.
bool verify_tame(const EndoSpec& spec, const TameDecomposition& dec);

}  // namespace steinerq

#include "steinerq/automorph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace steinerq {

ElementaryAuto::ElementaryAuto(FreeModel model, int pivot, const Term& shift)
    : model_(model), pivot_(pivot), shift_(canonicalize(shift)) {
  if (pivot_ < 1 || pivot_ > model_.num_generators())
    throw validation_error("pivot index out of range");
  if (!is_reduced(shift_)) throw validation_error("shift term must be reduced");
  if (shift_.max_var() > model_.num_generators())
    throw validation_error("shift term uses variables beyond the generators");
  if (count_occurrences(shift_, pivot_) != 0)
    throw validation_error("pivot variable occurs in the shift term");
}

EndoSpec ElementaryAuto::to_endo() const {
  std::vector<ReducedTerm> images;
  for (int j = 1; j <= model_.num_generators(); ++j) {
    if (j == pivot_)
      images.push_back(model_.mul(model_.generator(j), reduce(shift_)));
    else
      images.push_back(model_.generator(j));
  }
  return EndoSpec(model_, std::move(images));
}

ElementaryAuto elementary(const FreeModel& m, int pivot, const Term& shift) {
  return ElementaryAuto(m, pivot, shift);
}

IrreducibilityResult is_irreducible(const EndoSpec& spec, int length_cap,
                                    const ClosureLimits& limits) {
  if (length_cap < 0) throw validation_error("length cap must be >= 0");
  const FreeModel& m = spec.model();
  int n = m.num_generators();
  const std::vector<ReducedTerm>& images = spec.images();

  int max_len = 1;
  bool all_vars = true;
  for (const ReducedTerm& im : images) {
    max_len = std::max(max_len, im.length());
    if (!im.term().is_variable()) all_vars = false;
  }
  if (all_vars) return Irreducible{};

  int cap = length_cap > 0 ? length_cap : 4 * max_len;
  int tried = cap;
  for (int round = 0; round < 3; ++round) {
    tried = cap;
    bool decisive = true;
    for (int i = 1; i <= n; ++i) {
      const Term& ti = images[i - 1].term();
      // a variable cannot be equivalent to a product
      if (ti.is_variable()) continue;

      std::vector<ReducedTerm> gens;
      std::vector<int> gen_vars;
      for (int j = 1; j <= n; ++j) {
        if (j == i) continue;
        gens.push_back(images[j - 1]);
        gen_vars.push_back(j);
      }

      DerivedClosureResult dc;
      try {
        dc = subalgebra_closure_derived(m, gens, gen_vars, cap, limits);
      } catch (const cap_exceeded&) {
        decisive = false;
        continue;
      }

      ReducedTerm u = reduce(ti.left());
      ReducedTerm v = reduce(ti.right());
      if (std::optional<Term> r = dc.derivation_of(u))
        return ReducibilityWitness{i, *r, ti.right()};
      if (std::optional<Term> r = dc.derivation_of(v))
        return ReducibilityWitness{i, *r, ti.left()};
      if (!dc.saturated) decisive = false;
    }
    if (decisive) return Irreducible{};
    cap *= 2;
  }
  return UnknownAtBound{tried};
}

std::optional<PreservationViolation> preserves_reduced(const EndoSpec& spec, int rank_bound,
                                                       const EnumerationLimits& limits) {
  if (rank_bound < 0) throw validation_error("rank bound must be >= 0");
  std::vector<Term> image_terms;
  for (const ReducedTerm& im : spec.images()) image_terms.push_back(im.term());
  for (const ReducedTerm& r : enumerate_reduced(spec.model().num_generators(), rank_bound, limits)) {
    Term composed = substitute_all(r.term(), image_terms);
    if (!is_reduced(composed)) return PreservationViolation{r.term(), composed};
  }
  return std::nullopt;
}

namespace {

int total_length(const std::vector<ReducedTerm>& images) {
  int sum = 0;
  for (const ReducedTerm& im : images) sum += im.length();
  return sum;
}

void emit_transposition(const FreeModel& m, int p, int q, std::vector<ElementaryAuto>& out) {
  // swap of a_p and a_q as [g, h, g] with g: a_p ↦ a_p·a_q, h: a_q ↦ a_q·a_p
  ElementaryAuto g = elementary(m, p, Term::variable(q));
  ElementaryAuto h = elementary(m, q, Term::variable(p));
  out.push_back(g);
  out.push_back(h);
  out.push_back(g);
}

}  // namespace

TameDecomposition tame_decompose(const EndoSpec& spec, const ClosureLimits& limits) {
  const FreeModel& m = spec.model();
  int n = m.num_generators();
  std::vector<ReducedTerm> images = spec.images();
  std::vector<ElementaryAuto> peeled;  // in discovery order; applied first-to-last

  auto all_variables = [&images]() {
    return std::all_of(images.begin(), images.end(),
                       [](const ReducedTerm& im) { return im.term().is_variable(); });
  };

  while (!all_variables()) {
    IrreducibilityResult res = is_irreducible(EndoSpec(m, images), 0, limits);
    if (std::holds_alternative<Irreducible>(res))
      throw validation_error("the images do not define an automorphism");
    if (std::holds_alternative<UnknownAtBound>(res))
      throw cap_exceeded("witness search hit the closure cap before deciding reducibility");
    const ReducibilityWitness& w = std::get<ReducibilityWitness>(res);

    int before = total_length(images);
    ReducedTerm combo = m.evaluate(w.combination, images);
    images[w.index - 1] = m.mul(images[w.index - 1], combo);
    if (total_length(images) >= before)
      throw std::logic_error("tame descent failed to shorten the image tuple");
    peeled.push_back(elementary(m, w.index, w.combination));
  }

  // the remaining images must be a permutation of the generators
  std::vector<int> perm(n + 1, 0);
  std::vector<bool> hit(n + 1, false);
  for (int i = 1; i <= n; ++i) {
    int target = images[i - 1].term().var_index();
    perm[i] = target;
    if (hit[target]) throw validation_error("the images do not define an automorphism");
    hit[target] = true;
  }

  std::vector<ElementaryAuto> factors;
  std::vector<bool> seen(n + 1, false);
  for (int p = 1; p <= n; ++p) {
    if (seen[p] || perm[p] == p) continue;
    // walk the cycle starting at its smallest element
    std::vector<int> cycle;
    for (int c = p; !seen[c]; c = perm[c]) {
      seen[c] = true;
      cycle.push_back(c);
    }
    for (std::size_t k = 0; k + 1 < cycle.size(); ++k)
      emit_transposition(m, cycle[k], cycle[k + 1], factors);
  }

  factors.insert(factors.end(), peeled.rbegin(), peeled.rend());
  TameDecomposition dec{std::move(factors)};
  if (!verify_tame(spec, dec))
    throw std::logic_error("tame decomposition failed its composition check");
  return dec;
}

EndoSpec compose_factors(const FreeModel& m, const std::vector<ElementaryAuto>& factors) {
  EndoSpec acc = identity_endo(m);
  for (const ElementaryAuto& f : factors) {
    if (f.model().num_generators() != m.num_generators())
      throw validation_error("factor belongs to a different model");
    acc = compose(acc, f.to_endo());
  }
  return acc;
}

bool verify_tame(const EndoSpec& spec, const TameDecomposition& dec) {
  for (const ElementaryAuto& f : dec.factors)
    if (f.model().num_generators() != spec.model().num_generators()) return false;
  return compose_factors(spec.model(), dec.factors) == spec;
}

}  // namespace steinerq

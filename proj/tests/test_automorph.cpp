#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "steinerq/automorph.hpp"
#include "steinerq/free_model.hpp"
#include "steinerq/morphisms.hpp"
#include "steinerq/term.hpp"

using namespace steinerq;

namespace {

Term T(const char* s) { return parse_term(s); }
std::string P(const Term& t) { return print_term(t); }
ReducedTerm R(const char* s) { return reduce(parse_term(s)); }

}  // namespace

TEST_CASE("elementary automorphisms shift one generator") {
  FreeModel m(3);
  ElementaryAuto e = elementary(m, 1, T("x2"));
  CHECK(e.pivot() == 1);
  CHECK(P(e.shift()) == "x2");

  EndoSpec spec = e.to_endo();
  CHECK(spec.images()[0] == R("x1*x2"));
  CHECK(spec.images()[1] == R("x2"));
  CHECK(spec.images()[2] == R("x3"));

  // shifts are stored canonically
  CHECK(P(elementary(m, 3, T("x2*x1")).shift()) == "(x1*x2)");

  CHECK_THROWS_AS(elementary(m, 1, T("x1*x2")), validation_error);  // pivot in shift
  CHECK_THROWS_AS(elementary(m, 0, T("x2")), validation_error);
  CHECK_THROWS_AS(elementary(m, 4, T("x2")), validation_error);
  CHECK_THROWS_AS(elementary(m, 1, T("x2*x2")), validation_error);  // unreduced shift
  CHECK_THROWS_AS(elementary(m, 1, T("x4")), validation_error);     // beyond generators
}

TEST_CASE("elementary automorphisms are involutions") {
  for (int n = 2; n <= 4; ++n) {
    FreeModel m(n);
    std::vector<ElementaryAuto> cases;
    cases.push_back(elementary(m, 1, T("x2")));
    cases.push_back(elementary(m, 2, T("x1")));
    if (n >= 3) {
      cases.push_back(elementary(m, 3, T("x1*x2")));
      cases.push_back(elementary(m, 1, T("x2*x3")));
    }
    if (n >= 4) cases.push_back(elementary(m, 4, T("(x1*x2)*x3")));

    std::vector<ReducedTerm> elems = levels(m, 3).back();
    for (const ElementaryAuto& e : cases) {
      EndoSpec f = e.to_endo();
      CHECK(compose(f, f) == identity_endo(m));
      for (const ReducedTerm& u : elems) CHECK(apply_endo(f, apply_endo(f, u)) == u);
    }
  }
}

TEST_CASE("irreducibility of image tuples") {
  FreeModel m2(2);
  CHECK(std::holds_alternative<Irreducible>(is_irreducible(EndoSpec(m2, {R("x2"), R("x1")}))));

  FreeModel m3(3);
  CHECK(std::holds_alternative<Irreducible>(
      is_irreducible(EndoSpec(m3, {R("x1"), R("x2"), R("x3")}))));

  // (x1*x2, x2): the first image splits off x2, which the second image spans
  IrreducibilityResult res = is_irreducible(EndoSpec(m2, {R("x1*x2"), R("x2")}));
  REQUIRE(std::holds_alternative<ReducibilityWitness>(res));
  const ReducibilityWitness& w = std::get<ReducibilityWitness>(res);
  CHECK(w.index == 1);
  CHECK(P(w.combination) == "x2");
  CHECK(P(w.factor) == "x1");
  // the witness really factors the image: t1 ~ r(t̄)·s
  {
    std::vector<Term> image_terms = {T("x1*x2"), T("x2")};
    Term recombined = Term::product(substitute_all(w.combination, image_terms), w.factor);
    CHECK(equiv(recombined, T("x1*x2")));
  }

  // both children outside the (saturated) closures of the other images:
  // decisively irreducible even though an image is a product
  CHECK(std::holds_alternative<Irreducible>(
      is_irreducible(EndoSpec(m2, {R("x1*x2"), R("x1*x2")}))));

  // the embedding-style tuple is irreducible, decisively: the closure of
  // {x1, x2} is the full 3-element subalgebra and misses both children
  CHECK(std::holds_alternative<Irreducible>(
      is_irreducible(EndoSpec(m3, {R("x1"), R("x2"), R("(x1*x3)*(x2*x3)")}))));

  CHECK_THROWS_AS(is_irreducible(EndoSpec(m2, {R("x1"), R("x2")}), -1), validation_error);
}

TEST_CASE("irreducibility reports an unknown verdict when capped") {
  // with four generators the pivot closure is a genuinely infinite
  // subalgebra; a tiny class budget forces the inconclusive branch
  FreeModel m(4);
  EndoSpec spec(m, {R("x1"), R("x2"), R("x3"), R("(x1*x4)*(x2*x4)")});
  ClosureLimits tight;
  tight.max_classes = 50;
  IrreducibilityResult res = is_irreducible(spec, 0, tight);
  REQUIRE(std::holds_alternative<UnknownAtBound>(res));
  // default cap 4 x longest image, doubled twice across the three rounds
  CHECK(std::get<UnknownAtBound>(res).length_cap == 4 * 4 * 4);

  CHECK_THROWS_AS(tame_decompose(spec, tight), cap_exceeded);
}

TEST_CASE("reduced-term preservation under substitution") {
  FreeModel m2(2);
  FreeModel m3(3);

  CHECK_FALSE(preserves_reduced(identity_endo(m3), 3).has_value());

  // permutation images preserve reducedness at every bound
  CHECK_FALSE(preserves_reduced(EndoSpec(m3, {R("x2"), R("x3"), R("x1")}), 3).has_value());

  auto viol = preserves_reduced(EndoSpec(m2, {R("x1*x2"), R("x2")}), 2);
  REQUIRE(viol.has_value());
  CHECK(P(viol->input) == "(x1*x2)");
  CHECK(P(viol->substituted) == "((x1*x2)*x2)");
  CHECK_FALSE(is_reduced(viol->substituted));

  // an elementary automorphism with a product image already breaks at the
  // first class containing the shifted pattern
  EndoSpec el = elementary(m3, 3, T("x1*x2")).to_endo();
  auto ev = preserves_reduced(el, 2);
  REQUIRE(ev.has_value());
  CHECK(P(ev->input) == "(x3*(x1*x2))");
  CHECK_FALSE(is_reduced(ev->substituted));

  CHECK_THROWS_AS(preserves_reduced(identity_endo(m3), -1), validation_error);
}

TEST_CASE("surjective specs with product images always break preservation") {
  // shadow of the variables-only characterization: every elementary
  // automorphism with a non-variable shift must fail at a small bound
  FreeModel m(3);
  std::vector<ElementaryAuto> cases = {
      elementary(m, 1, T("x2*x3")),
      elementary(m, 2, T("x1*x3")),
      elementary(m, 3, T("x1*x2")),
  };
  for (const ElementaryAuto& e : cases) {
    EndoSpec spec = e.to_endo();
    int bound = 0;
    for (const ReducedTerm& im : spec.images()) bound = std::max(bound, im.rank());
    CHECK(preserves_reduced(spec, bound + 1).has_value());
  }
}

TEST_CASE("tame decomposition of permutations") {
  FreeModel m(3);

  TameDecomposition none = tame_decompose(identity_endo(m));
  CHECK(none.factors.empty());
  CHECK(verify_tame(identity_endo(m), none));

  // transposition of the first two generators: the three-factor pattern
  EndoSpec swap12(m, {R("x2"), R("x1"), R("x3")});
  TameDecomposition dec = tame_decompose(swap12);
  REQUIRE(dec.factors.size() == 3);
  CHECK(dec.factors[0].pivot() == 1);
  CHECK(P(dec.factors[0].shift()) == "x2");
  CHECK(dec.factors[1].pivot() == 2);
  CHECK(P(dec.factors[1].shift()) == "x1");
  CHECK(dec.factors[2].pivot() == 1);
  CHECK(P(dec.factors[2].shift()) == "x2");
  CHECK(verify_tame(swap12, dec));

  // a 3-cycle needs two transpositions
  EndoSpec cyc(m, {R("x2"), R("x3"), R("x1")});
  TameDecomposition dec3 = tame_decompose(cyc);
  CHECK(dec3.factors.size() == 6);
  CHECK(verify_tame(cyc, dec3));
}

TEST_CASE("tame decomposition peels a single elementary factor") {
  FreeModel m(3);
  EndoSpec spec(m, {R("x1"), R("x2"), R("(x1*x2)*x3")});
  TameDecomposition dec = tame_decompose(spec);
  REQUIRE(dec.factors.size() == 1);
  CHECK(dec.factors[0].pivot() == 3);
  CHECK(P(dec.factors[0].shift()) == "(x1*x2)");
  CHECK(verify_tame(spec, dec));
}

TEST_CASE("non-automorphisms are rejected by decomposition") {
  FreeModel m(3);
  // proper embedding: decisively irreducible with a non-variable image
  EndoSpec emb(m, {R("x1"), R("x2"), R("(x1*x3)*(x2*x3)")});
  CHECK_THROWS_AS(tame_decompose(emb), validation_error);
  // variable images that repeat a generator
  EndoSpec coll(m, {R("x1"), R("x1"), R("x3")});
  CHECK_THROWS_AS(tame_decompose(coll), validation_error);
  // constant-ish collapse through a product image
  FreeModel m2(2);
  EndoSpec folded(m2, {R("x1*x2"), R("x1*x2")});
  CHECK_THROWS_AS(tame_decompose(folded), validation_error);
}

TEST_CASE("random elementary products decompose and verify") {
  FreeModel m(3);
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> pick_count(1, 5);
  std::uniform_int_distribution<int> pick_pivot(1, 3);
  std::uniform_int_distribution<int> pick_shift(0, 2);

  for (int trial = 0; trial < 60; ++trial) {
    int count = pick_count(rng);
    std::vector<ElementaryAuto> built;
    for (int s = 0; s < count; ++s) {
      int pivot = pick_pivot(rng);
      int a = 0, b = 0;
      for (int j = 1; j <= 3; ++j) {
        if (j == pivot) continue;
        (a == 0 ? a : b) = j;
      }
      Term shifts[3] = {Term::variable(a), Term::variable(b),
                        Term::product(Term::variable(a), Term::variable(b))};
      built.push_back(elementary(m, pivot, shifts[pick_shift(rng)]));
    }
    EndoSpec spec = compose_factors(m, built);
    TameDecomposition dec = tame_decompose(spec);
    CHECK(verify_tame(spec, dec));
    // the factorization is genuinely elementary: recomposing step by step
    // matches, and every factor is an involution
    for (const ElementaryAuto& f : dec.factors)
      CHECK(compose(f.to_endo(), f.to_endo()) == identity_endo(m));
  }
}

TEST_CASE("verification rejects a dropped factor") {
  FreeModel m(3);
  EndoSpec swap12(m, {R("x2"), R("x1"), R("x3")});
  TameDecomposition dec = tame_decompose(swap12);
  TameDecomposition damaged{std::vector<ElementaryAuto>(dec.factors.begin(), dec.factors.end() - 1)};
  CHECK_FALSE(verify_tame(swap12, damaged));

  // the empty decomposition only verifies against the identity
  CHECK_FALSE(verify_tame(swap12, TameDecomposition{}));
  CHECK(verify_tame(identity_endo(m), TameDecomposition{}));

  // a factor over the wrong model never verifies
  FreeModel m4(4);
  TameDecomposition foreign{{elementary(m4, 1, T("x2"))}};
  CHECK_FALSE(verify_tame(identity_endo(m), foreign));
}

TEST_CASE("composing factors left to right applies the rightmost first") {
  FreeModel m(3);
  ElementaryAuto g = elementary(m, 1, T("x2"));
  ElementaryAuto h = elementary(m, 2, T("x1"));
  // g∘h sends a2 ↦ g(a2·a1) = (a1·a2)·a2... spelled out via compose()
  EndoSpec both = compose_factors(m, {g, h});
  CHECK(both == compose(g.to_endo(), h.to_endo()));
  CHECK(apply_endo(both, m.generator(2)) == apply_endo(g.to_endo(), apply_endo(h.to_endo(), m.generator(2))));
}

#include "steinerq/morphisms.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace steinerq {

namespace {

void collect_subterms(const Term& t, std::vector<Term>& out) {
  out.push_back(t);
  if (t.is_product()) {
    collect_subterms(t.left(), out);
    collect_subterms(t.right(), out);
  }
}

}  // namespace

bool subterm_is_single(const Term& t, const Term& r) {
  std::vector<Term> subs;
  collect_subterms(t, subs);
  std::vector<Term> cofactors;
  for (const Term& u : subs) {
    if (!u.is_product()) continue;
    if (equiv(u.left(), r)) cofactors.push_back(u.right());
    if (equiv(u.right(), r)) cofactors.push_back(u.left());
  }
  for (std::size_t i = 0; i < cofactors.size(); ++i)
    for (std::size_t j = i + 1; j < cofactors.size(); ++j)
      if (!equiv(cofactors[i], cofactors[j])) return false;
  return true;
}

namespace {

// exists an occurrence of x_v inside node whose enclosing subterms, from
// node downward, are all single in t
bool single_path_below(const Term& t, const Term& node, int v,
                       std::unordered_map<Term, bool, TermHash>& cache) {
  if (count_occurrences(node, v) == 0) return false;
  Term key = canonicalize(node);
  auto it = cache.find(key);
  bool node_single;
  if (it != cache.end()) {
    node_single = it->second;
  } else {
    node_single = subterm_is_single(t, node);
    cache.emplace(key, node_single);
  }
  if (!node_single) return false;
  if (node.is_variable()) return true;
  return single_path_below(t, node.left(), v, cache) ||
         single_path_below(t, node.right(), v, cache);
}

}  // namespace

OccurrenceReport occurrences(const Term& t, int variable) {
  if (variable < 1) throw validation_error("variable index must be >= 1");
  OccurrenceReport rep;
  rep.variable = variable;
  rep.count = count_occurrences(t, variable);
  std::unordered_map<Term, bool, TermHash> cache;
  rep.single_path_exists = single_path_below(t, t, variable, cache);
  if (is_reduced(t) && rep.single_path_exists != (rep.count == 1))
    throw std::logic_error(
        "single-path existence disagrees with the occurrence count on a reduced term");
  return rep;
}

Term invert_single(const Term& t, int y_var, int z_var) {
  if (y_var < 1 || z_var < 1) throw validation_error("variable index must be >= 1");
  if (y_var == z_var) throw validation_error("the fresh variable must differ from the inverted one");
  if (!is_reduced(t)) throw validation_error("term must be reduced");
  if (count_occurrences(t, y_var) != 1)
    throw validation_error("variable x" + std::to_string(y_var) + " must occur exactly once");
  if (count_occurrences(t, z_var) != 0)
    throw validation_error("variable x" + std::to_string(z_var) + " already occurs in the term");

  Term acc = Term::variable(z_var);
  Term cur = t;
  while (cur.is_product()) {
    if (count_occurrences(cur.left(), y_var) == 1) {
      acc = Term::product(cur.right(), acc);
      cur = cur.left();
    } else {
      acc = Term::product(cur.left(), acc);
      cur = cur.right();
    }
  }
  return reduce(acc).term();
}

Term invert_single(const Term& t) {
  int y = t.max_var();
  return invert_single(t, y, y + 1);
}

EndoSpec::EndoSpec(FreeModel model, std::vector<ReducedTerm> images)
    : model_(model), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != model_.num_generators())
    throw validation_error("need one image per generator");
  for (const ReducedTerm& im : images_)
    if (!model_.contains(im)) throw validation_error("image is not an element of the model");
}

EndoSpec identity_endo(const FreeModel& m) {
  std::vector<ReducedTerm> images;
  for (int i = 1; i <= m.num_generators(); ++i) images.push_back(m.generator(i));
  return EndoSpec(m, std::move(images));
}

ReducedTerm apply_endo(const EndoSpec& spec, const ReducedTerm& e) {
  return spec.model().evaluate(e.term(), spec.images());
}

EndoSpec compose(const EndoSpec& g, const EndoSpec& h) {
  if (g.model().num_generators() != h.model().num_generators())
    throw validation_error("cannot compose endomorphisms of different models");
  std::vector<ReducedTerm> images;
  for (const ReducedTerm& im : h.images()) images.push_back(apply_endo(g, im));
  return EndoSpec(g.model(), std::move(images));
}

EndoClass classify_endo(const FreeModel& m, std::span<const ReducedTerm> base_prefix,
                        const ReducedTerm& b, const Term& image) {
  int k = static_cast<int>(base_prefix.size());
  int y = k + 1;
  for (const ReducedTerm& a : base_prefix)
    if (!m.contains(a)) throw validation_error("base element is not in the model");
  if (!m.contains(b)) throw validation_error("base element is not in the model");
  if (image.max_var() > y)
    throw validation_error("image term uses variables beyond the base");

  ReducedTerm tr = reduce(image);
  int cnt = count_occurrences(tr.term(), y);
  std::vector<ReducedTerm> asg(base_prefix.begin(), base_prefix.end());

  if (cnt == 0) {
    ReducedTerm c = m.evaluate(tr.term(), asg);
    if (c == b) throw std::logic_error("collapsing pair is degenerate");
    return NotInjective{b, c};
  }

  asg.push_back(b);
  if (cnt == 1) {
    Term r = invert_single(tr.term(), y, y + 1);
    Term inverse_image = canonicalize(substitute(r, y + 1, Term::variable(y)));
    ReducedTerm forward = m.evaluate(tr.term(), asg);
    std::vector<ReducedTerm> back(base_prefix.begin(), base_prefix.end());
    back.push_back(forward);
    if (m.evaluate(inverse_image, back) != b)
      throw std::logic_error("inverse certificate failed to recover the base element");
    return AutomorphismClass{inverse_image};
  }

  return EmbeddingClass{b};
}

SubstitutionReport substitution_check(const Term& t, int z_var, const Term& r, int y_var) {
  if (z_var < 1 || y_var < 1) throw validation_error("variable index must be >= 1");
  if (z_var == y_var)
    throw validation_error("the substituted and distinguished variables must differ");
  if (!is_reduced(t)) throw validation_error("t must be reduced");
  if (!is_reduced(r)) throw validation_error("r must be reduced");
  if (count_occurrences(r, y_var) == 0)
    throw validation_error("distinguished variable must occur in r");
  if (count_occurrences(r, z_var) != 0)
    throw validation_error("substituted variable must not occur in r");
  if (count_occurrences(t, y_var) != 0)
    throw validation_error("distinguished variable of r must not occur in t");

  Term substituted = substitute(t, z_var, r);
  bool both = r.is_product() && count_occurrences(r.left(), y_var) > 0 &&
              count_occurrences(r.right(), y_var) > 0;
  SubstitutionReport rep{substituted, is_reduced(substituted), both};
  if (rep.y_in_both_factors && !rep.reduced_after)
    throw std::logic_error("substitution broke reducedness despite the double-occurrence guarantee");
  return rep;
}

InjectivityResult injectivity_condition(const Term& t, int y_var, int rank_bound,
                                        const EnumerationLimits& limits) {
  if (y_var < 1) throw validation_error("variable index must be >= 1");
  if (rank_bound < 0) throw validation_error("rank bound must be >= 0");
  if (!is_reduced(t)) throw validation_error("term must be reduced");
  int cnt = count_occurrences(t, y_var);
  if (cnt == 0) throw validation_error("distinguished variable must occur in the term");
  if (cnt == 1) return InjectivityHolds{std::nullopt};

  int num_vars = std::max(t.max_var(), y_var);
  auto classes = enumerate_reduced(num_vars, rank_bound, limits);
  std::unordered_map<Term, Term, TermHash> seen;
  for (const ReducedTerm& r : classes) {
    Term image = reduce(substitute(t, y_var, r.term())).term();
    auto [it, fresh] = seen.try_emplace(image, r.term());
    if (!fresh) return CounterexamplePair{it->second, r.term()};
  }
  return InjectivityHolds{rank_bound};
}

}  // namespace steinerq

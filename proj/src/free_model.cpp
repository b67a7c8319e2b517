#include "steinerq/free_model.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace steinerq {

namespace {

void sort_by_term_order(std::vector<ReducedTerm>& v) {
  std::sort(v.begin(), v.end(), [](const ReducedTerm& a, const ReducedTerm& b) {
    return term_order_compare(a.term(), b.term()) < 0;
  });
}

}  // namespace

FreeModel::FreeModel(int num_generators) : num_generators_(num_generators) {
  if (num_generators < 1) throw validation_error("a free model needs at least one generator");
}

ReducedTerm FreeModel::generator(int i) const {
  if (i < 1 || i > num_generators_)
    throw validation_error("generator index out of range: " + std::to_string(i));
  return reduce(Term::variable(i));
}

ReducedTerm FreeModel::mul(const ReducedTerm& a, const ReducedTerm& b) const {
  if (!contains(a) || !contains(b)) throw validation_error("operand is not an element of the model");
  return reduced_product(a, b);
}

ReducedTerm FreeModel::evaluate(const Term& t, std::span<const ReducedTerm> assignment) const {
  if (t.is_variable()) {
    int i = t.var_index();
    if (i > static_cast<int>(assignment.size()))
      throw validation_error("no assignment for variable x" + std::to_string(i));
    const ReducedTerm& v = assignment[i - 1];
    if (!contains(v)) throw validation_error("assigned value is not an element of the model");
    return v;
  }
  return reduced_product(evaluate(t.left(), assignment), evaluate(t.right(), assignment));
}

std::vector<std::vector<ReducedTerm>> levels_closure(const FreeModel& m, int k,
                                                     const LevelLimits& limits) {
  if (k < 0) throw validation_error("level depth must be >= 0");
  if (k > limits.max_depth)
    throw cap_exceeded("level depth " + std::to_string(k) + " exceeds cap " +
                       std::to_string(limits.max_depth));
  if (m.num_generators() > limits.max_generators)
    throw cap_exceeded("generator count exceeds level cap");

  std::vector<std::vector<ReducedTerm>> out;
  std::vector<ReducedTerm> cur;
  for (int i = 1; i <= m.num_generators(); ++i) cur.push_back(m.generator(i));
  sort_by_term_order(cur);
  out.push_back(cur);

  for (int step = 0; step < k; ++step) {
    std::unordered_set<Term, TermHash> seen;
    std::vector<ReducedTerm> next;
    for (const ReducedTerm& e : cur) {
      seen.insert(e.term());
      next.push_back(e);
    }
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        ReducedTerm p = m.mul(cur[i], cur[j]);
        if (seen.insert(p.term()).second) {
          next.push_back(p);
          if (next.size() > limits.max_classes) throw cap_exceeded("level size exceeds class cap");
        }
      }
    }
    sort_by_term_order(next);
    out.push_back(next);
    cur = std::move(next);
  }
  return out;
}

std::vector<std::vector<ReducedTerm>> levels_enumeration(const FreeModel& m, int k,
                                                          const LevelLimits& limits) {
  if (k < 0) throw validation_error("level depth must be >= 0");
  if (k > limits.max_depth)
    throw cap_exceeded("level depth " + std::to_string(k) + " exceeds cap " +
                       std::to_string(limits.max_depth));
  if (m.num_generators() > limits.max_generators)
    throw cap_exceeded("generator count exceeds level cap");

  EnumerationLimits el;
  el.max_classes = limits.max_classes;
  el.max_rank = k;
  auto by_rank = enumerate_reduced_by_rank(m.num_generators(), k, el);

  std::vector<std::vector<ReducedTerm>> out;
  std::vector<ReducedTerm> cumulative;
  for (int i = 0; i <= k; ++i) {
    cumulative.insert(cumulative.end(), by_rank[i].begin(), by_rank[i].end());
    std::vector<ReducedTerm> level = cumulative;
    sort_by_term_order(level);
    out.push_back(std::move(level));
  }
  return out;
}

std::vector<std::vector<ReducedTerm>> levels(const FreeModel& m, int k, const LevelLimits& limits) {
  auto via_closure = levels_closure(m, k, limits);
  auto via_enumeration = levels_enumeration(m, k, limits);
  if (via_closure != via_enumeration)
    throw std::logic_error("level constructions disagree");
  return via_closure;
}

int level_of(const FreeModel& m, const ReducedTerm& e) {
  if (!m.contains(e)) throw validation_error("element is not in the model");
  return e.rank();
}

bool ClosureResult::contains(const ReducedTerm& e) const {
  return std::binary_search(elements.begin(), elements.end(), e,
                            [](const ReducedTerm& a, const ReducedTerm& b) {
                              return term_order_compare(a.term(), b.term()) < 0;
                            });
}

std::optional<Term> DerivedClosureResult::derivation_of(const ReducedTerm& e) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == e) return derivations[i];
  return std::nullopt;
}

int default_closure_length_cap(std::span<const ReducedTerm> gens) {
  int longest = 1;
  for (const ReducedTerm& g : gens) longest = std::max(longest, g.length());
  return 4 * longest;
}

namespace {

// Worklist closure under mul. Non-collapsing products have length equal to
// the sum of their factors, so pairs beyond the length cap are enumerated
// only through the collapse route: a product absorbs one of its own children
// and yields the other. Tracking child/parent incidence covers exactly those
// pairs, and everything else is pruned by length up front, which keeps the
// pair work near-linear in the result size instead of quadratic.
class ClosureEngine {
 public:
  ClosureEngine(int length_cap, std::size_t max_classes, bool track_derivations)
      : cap_(length_cap), max_classes_(max_classes), track_(track_derivations) {}

  void add_generator(const ReducedTerm& g, int var) {
    Term deriv = Term::variable(var);
    insert(g, &deriv, /*gate_length=*/false);
  }

  void run() {
    while (head_ < elems_.size()) {
      std::size_t a = head_++;
      pair_with_shorter(a);
      collapse_rules(a);
    }
  }

  bool saturated() const {
    if (dropped_long_product_) return false;
    // Pairs never enumerated because their product would be too long are
    // discards unless they collapse; count both sides exactly.
    std::vector<int> lens;
    lens.reserve(elems_.size());
    for (const ReducedTerm& e : elems_) lens.push_back(e.length());
    std::sort(lens.begin(), lens.end());
    std::size_t overlong = 0;
    for (std::size_t j = 0; j < lens.size(); ++j) {
      // count i < j with lens[i] + lens[j] > cap
      int need = cap_ - lens[j];
      auto it = std::upper_bound(lens.begin(), lens.begin() + j, need);
      overlong += (lens.begin() + j) - it;
    }
    std::size_t accounted = 0;
    for (const ReducedTerm& e : elems_) {
      const Term& t = e.term();
      if (!t.is_product()) continue;
      for (Term c : {t.left(), t.right()})
        if (index_.count(c) && t.length() + c.length() > cap_) ++accounted;
      // an over-cap generator is the product of its own factor pair, so that
      // pair is not a discard even though it was never enumerated
      if (e.length() > cap_ && index_.count(t.left()) && index_.count(t.right())) ++accounted;
    }
    return overlong == accounted;
  }

  std::vector<ReducedTerm> take_elements() { return std::move(elems_); }
  std::vector<Term> take_derivations() { return std::move(derivs_); }

 private:
  void pair_with_shorter(std::size_t a) {
    int budget = cap_ - elems_[a].length();
    for (int len = 1; len <= budget; ++len) {
      if (len >= static_cast<int>(by_length_.size())) break;
      // snapshot: later insertions enumerate the pair from their own side
      std::size_t count = by_length_[len].size();
      for (std::size_t k = 0; k < count; ++k) {
        std::size_t b = by_length_[len][k];
        if (b == a) continue;
        combine(a, b);
      }
    }
  }

  void collapse_rules(std::size_t a) {
    Term t = elems_[a].term();  // by value: combine() may grow elems_
    if (t.is_product()) {
      for (Term c : {t.left(), t.right()})
        if (auto it = index_.find(c); it != index_.end()) combine(a, it->second);
    }
    if (auto it = parents_.find(t); it != parents_.end())
      for (std::size_t p : std::vector<std::size_t>(it->second.begin(), it->second.end()))
        combine(p, a);
  }

  void combine(std::size_t a, std::size_t b) {
    ReducedTerm p = reduced_product(elems_[a], elems_[b]);
    if (track_) {
      Term d = reduce(Term::product(derivs_[a], derivs_[b])).term();
      insert(p, &d, /*gate_length=*/true);
    } else {
      insert(p, nullptr, /*gate_length=*/true);
    }
  }

  void insert(const ReducedTerm& e, const Term* deriv, bool gate_length) {
    if (index_.count(e.term())) return;
    if (gate_length && e.length() > cap_) {
      dropped_long_product_ = true;
      return;
    }
    if (elems_.size() >= max_classes_)
      throw cap_exceeded("closure working set exceeds " + std::to_string(max_classes_) +
                         " classes");
    std::size_t id = elems_.size();
    elems_.push_back(e);
    if (track_) derivs_.push_back(*deriv);
    index_.emplace(e.term(), id);
    int len = e.length();
    if (len >= static_cast<int>(by_length_.size())) by_length_.resize(len + 1);
    by_length_[len].push_back(id);
    const Term& t = e.term();
    if (t.is_product()) {
      parents_[t.left()].push_back(id);
      parents_[t.right()].push_back(id);
    }
  }

  int cap_;
  std::size_t max_classes_;
  bool track_;
  bool dropped_long_product_ = false;
  std::size_t head_ = 0;
  std::vector<ReducedTerm> elems_;
  std::vector<Term> derivs_;
  std::unordered_map<Term, std::size_t, TermHash> index_;
  std::unordered_map<Term, std::vector<std::size_t>, TermHash> parents_;
  std::vector<std::vector<std::size_t>> by_length_;
};

}  // namespace

ClosureResult subalgebra_closure(const FreeModel& m, std::span<const ReducedTerm> gens,
                                 int length_cap, const ClosureLimits& limits) {
  if (length_cap < 1) throw validation_error("length cap must be >= 1");
  ClosureEngine engine(length_cap, limits.max_classes, false);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!m.contains(gens[i])) throw validation_error("generator is not an element of the model");
    engine.add_generator(gens[i], 1);
  }
  engine.run();
  ClosureResult out;
  out.saturated = engine.saturated();
  out.elements = engine.take_elements();
  sort_by_term_order(out.elements);
  return out;
}

DerivedClosureResult subalgebra_closure_derived(const FreeModel& m,
                                                std::span<const ReducedTerm> gens,
                                                std::span<const int> gen_vars, int length_cap,
                                                const ClosureLimits& limits) {
  if (length_cap < 1) throw validation_error("length cap must be >= 1");
  if (gens.size() != gen_vars.size())
    throw validation_error("need one derivation variable per generator");
  ClosureEngine engine(length_cap, limits.max_classes, true);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!m.contains(gens[i])) throw validation_error("generator is not an element of the model");
    engine.add_generator(gens[i], gen_vars[i]);
  }
  engine.run();
  DerivedClosureResult out;
  out.saturated = engine.saturated();
  out.elements = engine.take_elements();
  out.derivations = engine.take_derivations();

  std::vector<std::size_t> perm(out.elements.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return term_order_compare(out.elements[a].term(), out.elements[b].term()) < 0;
  });
  DerivedClosureResult sorted;
  sorted.saturated = out.saturated;
  for (std::size_t i : perm) {
    sorted.elements.push_back(out.elements[i]);
    sorted.derivations.push_back(out.derivations[i]);
  }
  return sorted;
}

RefutationResult independence_refute(const FreeModel& m, std::span<const ReducedTerm> elems,
                                     int rank_bound, const EnumerationLimits& limits) {
  if (elems.empty()) throw validation_error("need at least one element");
  for (const ReducedTerm& e : elems)
    if (!m.contains(e)) throw validation_error("tuple entry is not an element of the model");

  auto by_rank = enumerate_reduced_by_rank(static_cast<int>(elems.size()), rank_bound, limits);
  std::unordered_map<Term, Term, TermHash> first_of;
  for (const auto& group : by_rank) {
    for (const ReducedTerm& t : group) {
      ReducedTerm value = m.evaluate(t.term(), elems);
      auto [it, fresh] = first_of.try_emplace(value.term(), t.term());
      if (!fresh) {
        IndependenceWitness w{it->second, t.term()};
        // certificate check: genuinely distinct classes, identical value
        if (equiv(w.first, w.second) ||
            m.evaluate(w.first, elems) != m.evaluate(w.second, elems))
          throw std::logic_error("malformed dependence witness");
        return RefutationResult{w, rank_bound};
      }
    }
  }
  return RefutationResult{std::nullopt, rank_bound};
}

FiniteModel FiniteModel::from_blocks(std::vector<std::string> point_names,
                                     const std::vector<std::array<int, 3>>& blocks) {
  FiniteModel mdl;
  int n = static_cast<int>(point_names.size());
  {
    std::unordered_set<std::string> seen;
    for (const std::string& name : point_names)
      if (!seen.insert(name).second) throw validation_error("duplicate point name: " + name);
  }
  mdl.names_ = std::move(point_names);
  mdl.table_.assign(static_cast<std::size_t>(n) * n, -1);
  auto cell = [&](int a, int b) -> int& { return mdl.table_[static_cast<std::size_t>(a) * n + b]; };

  for (const auto& blk : blocks) {
    auto [a, b, c] = blk;
    for (int p : {a, b, c})
      if (p < 0 || p >= n) throw validation_error("block references an unknown point");
    if (a == b || a == c || b == c) throw validation_error("block with repeated point");
    const int pairs[3][3] = {{a, b, c}, {a, c, b}, {b, c, a}};
    for (const auto& pr : pairs) {
      if (cell(pr[0], pr[1]) != -1)
        throw validation_error("pair {" + mdl.names_[pr[0]] + ", " + mdl.names_[pr[1]] +
                               "} lies in two blocks");
      cell(pr[0], pr[1]) = pr[2];
      cell(pr[1], pr[0]) = pr[2];
    }
    std::array<int, 3> sorted_blk{a, b, c};
    std::sort(sorted_blk.begin(), sorted_blk.end());
    mdl.blocks_.push_back(sorted_blk);
  }
  for (int a = 0; a < n; ++a) cell(a, a) = a;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (cell(a, b) == -1)
        throw validation_error("pair {" + mdl.names_[a] + ", " + mdl.names_[b] +
                               "} lies in no block");
  std::sort(mdl.blocks_.begin(), mdl.blocks_.end());

  // re-check the three laws exhaustively rather than trusting the table
  for (int a = 0; a < n; ++a) {
    if (cell(a, a) != a) throw validation_error("product is not idempotent");
    for (int b = 0; b < n; ++b) {
      if (cell(a, b) != cell(b, a)) throw validation_error("product is not commutative");
      if (cell(a, cell(a, b)) != b) throw validation_error("product does not invert itself");
    }
  }
  return mdl;
}

FiniteModel FiniteModel::parse(std::string_view text) {
  DesignText design = parse_design_text(text);
  std::unordered_map<std::string, int> ids;
  for (int i = 0; i < static_cast<int>(design.points.size()); ++i) {
    if (!ids.emplace(design.points[i], i).second)
      throw validation_error("duplicate point name: " + design.points[i]);
  }
  std::vector<std::array<int, 3>> blocks;
  for (const auto& blk : design.blocks) {
    std::array<int, 3> ids_blk{};
    for (int k = 0; k < 3; ++k) {
      auto it = ids.find(blk[k]);
      if (it == ids.end()) throw validation_error("block references unknown point: " + blk[k]);
      ids_blk[k] = it->second;
    }
    blocks.push_back(ids_blk);
  }
  return from_blocks(std::move(design.points), blocks);
}

const std::string& FiniteModel::point_name(int p) const {
  if (p < 0 || p >= size()) throw validation_error("point id out of range");
  return names_[p];
}

int FiniteModel::point_id(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  throw validation_error("unknown point: " + std::string(name));
}

int FiniteModel::mul(int a, int b) const {
  if (a < 0 || a >= size() || b < 0 || b >= size())
    throw validation_error("point id out of range");
  return table_[static_cast<std::size_t>(a) * size() + b];
}

int FiniteModel::evaluate(const Term& t, std::span<const int> assignment) const {
  if (t.is_variable()) {
    int i = t.var_index();
    if (i > static_cast<int>(assignment.size()))
      throw validation_error("no assignment for variable x" + std::to_string(i));
    int v = assignment[i - 1];
    if (v < 0 || v >= size()) throw validation_error("assigned value is not a point");
    return v;
  }
  return mul(evaluate(t.left(), assignment), evaluate(t.right(), assignment));
}

DesignText parse_design_text(std::string_view text) {
  DesignText out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    std::size_t line_start = pos;
    pos = eol + 1;

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);

    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) tokens.emplace_back(line.substr(start, i - start));
    }
    if (tokens.empty()) {
      if (line_start >= text.size()) break;
      continue;
    }

    if (tokens[0] == "points:") {
      for (std::size_t k = 1; k < tokens.size(); ++k) out.points.push_back(tokens[k]);
    } else if (tokens[0] == "block:") {
      if (tokens.size() != 4)
        throw parse_error("block line needs exactly three points", line_start);
      out.blocks.push_back({tokens[1], tokens[2], tokens[3]});
    } else {
      throw parse_error("expected 'points:' or 'block:'", line_start);
    }
  }
  return out;
}

namespace {

constexpr std::string_view kFanoFixture =
    "# the 7-point triple system\n"
    "points: 1 2 3 4 5 6 7\n"
    "block: 1 2 3\n"
    "block: 1 4 5\n"
    "block: 1 6 7\n"
    "block: 2 4 6\n"
    "block: 2 5 7\n"
    "block: 3 4 7\n"
    "block: 3 5 6\n";

constexpr std::string_view kSts9Fixture =
    "# the 9-point triple system: rows, columns and both diagonal\n"
    "# families of the 3x3 grid\n"
    "points: 1 2 3 4 5 6 7 8 9\n"
    "block: 1 2 3\n"
    "block: 4 5 6\n"
    "block: 7 8 9\n"
    "block: 1 4 7\n"
    "block: 2 5 8\n"
    "block: 3 6 9\n"
    "block: 1 5 9\n"
    "block: 2 6 7\n"
    "block: 3 4 8\n"
    "block: 3 5 7\n"
    "block: 1 6 8\n"
    "block: 2 4 9\n";

}  // namespace

std::string_view fano_fixture() { return kFanoFixture; }
std::string_view sts9_fixture() { return kSts9Fixture; }

const FiniteModel& fano_model() {
  static const FiniteModel m = FiniteModel::parse(kFanoFixture);
  return m;
}

const FiniteModel& sts9_model() {
  static const FiniteModel m = FiniteModel::parse(kSts9Fixture);
  return m;
}

FreeHomomorphism::FreeHomomorphism(FreeModel domain, FreeModel target,
                                   std::vector<ReducedTerm> images)
    : domain_(domain), target_(target), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != domain_.num_generators())
    throw validation_error("need one image per generator");
  for (const ReducedTerm& im : images_)
    if (!target_.contains(im)) throw validation_error("image is not an element of the target");
}

ReducedTerm FreeHomomorphism::operator()(const ReducedTerm& e) const {
  if (!domain_.contains(e)) throw validation_error("argument is not an element of the domain");
  return target_.evaluate(e.term(), images_);
}

FiniteHomomorphism::FiniteHomomorphism(FreeModel domain, FiniteModel target,
                                       std::vector<int> images)
    : domain_(domain), target_(std::move(target)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != domain_.num_generators())
    throw validation_error("need one image per generator");
  for (int im : images_)
    if (im < 0 || im >= target_.size()) throw validation_error("image is not a point");
}

int FiniteHomomorphism::operator()(const ReducedTerm& e) const {
  if (!domain_.contains(e)) throw validation_error("argument is not an element of the domain");
  return target_.evaluate(e.term(), images_);
}

FreeHomomorphism extend_hom(const FreeModel& domain, const FreeModel& target,
                            std::vector<ReducedTerm> images) {
  return FreeHomomorphism(domain, target, std::move(images));
}

FiniteHomomorphism extend_hom(const FreeModel& domain, FiniteModel target,
                              std::vector<int> images) {
  return FiniteHomomorphism(domain, std::move(target), std::move(images));
}

}  // namespace steinerq

#include "steinerq/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "steinerq/automorph.hpp"
#include "steinerq/errors.hpp"
#include "steinerq/free_model.hpp"
#include "steinerq/morphisms.hpp"
#include "steinerq/psts.hpp"
#include "steinerq/term.hpp"

namespace steinerq {

namespace {

struct Globals {
  int rank_bound = 3;
  int length_cap = 0;  // 0 = derive a default from the inputs
  unsigned seed = 0;
  std::string format = "plain";
};

const char* yesno(bool b) { return b ? "yes" : "no"; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<Term> parse_term_list(const std::string& csv) {
  std::vector<Term> out;
  for (const std::string& piece : split(csv, ',')) out.push_back(parse_term(piece));
  return out;
}

std::vector<ReducedTerm> reduce_all(const std::vector<Term>& terms) {
  std::vector<ReducedTerm> out;
  for (const Term& t : terms) out.push_back(reduce(t));
  return out;
}

// either a file in the design text format or one of the built-in systems
std::string load_design_text(const std::string& file, int builtin) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw validation_error("cannot open file: " + file);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  if (builtin == 7) return std::string(fano_fixture());
  if (builtin == 9) return std::string(sts9_fixture());
  if (builtin != 0) throw validation_error("no built-in system with that point count (use 7 or 9)");
  throw validation_error("a design is required: pass --file or --builtin");
}

int gens_or_infer(int gens, const std::vector<Term>& terms) {
  if (gens > 0) return gens;
  int n = 1;
  for (const Term& t : terms) n = std::max(n, t.max_var());
  return n;
}

// list output: one `key: a b c` line in plain format, one `item: v` line per
// entry in lines format
void print_list(std::ostream& out, const Globals& g, const std::string& plural,
                const std::string& singular, const std::vector<std::string>& items) {
  if (g.format == "lines") {
    for (const std::string& it : items) out << singular << ": " << it << "\n";
    return;
  }
  out << plural << ":";
  for (const std::string& it : items) out << " " << it;
  out << "\n";
}

std::vector<std::string> printed(const std::vector<ReducedTerm>& elems) {
  std::vector<std::string> out;
  for (const ReducedTerm& e : elems) out.push_back(print_term(e.term()));
  return out;
}

std::vector<std::string> point_names(const PartialSTS& s, const std::vector<int>& ids) {
  std::vector<std::string> out;
  for (int p : ids) out.push_back(s.point_name(p));
  return out;
}

struct FactorSpec {
  int pivot;
  Term shift;
};

// "1:x2;2:x1;1:x2" — pivot:shift pairs separated by semicolons
std::vector<FactorSpec> parse_factor_list(const std::string& text) {
  std::vector<FactorSpec> out;
  if (text.empty()) return out;
  for (const std::string& piece : split(text, ';')) {
    std::size_t colon = piece.find(':');
    if (colon == std::string::npos)
      throw validation_error("factor must look like pivot:shift, got: " + piece);
    int pivot;
    try {
      pivot = std::stoi(piece.substr(0, colon));
    } catch (const std::exception&) {
      throw validation_error("factor pivot must be an integer, got: " + piece);
    }
    out.push_back(FactorSpec{pivot, parse_term(piece.substr(colon + 1))});
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"term calculus for free Steiner quasigroups"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--rank-bound", g.rank_bound, "rank bound for enumerative searches")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--length-cap", g.length_cap, "length cap for closures (0 = automatic)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "seed for randomized commands");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"plain", "lines"}));

  // ---- term basics ----------------------------------------------------
  std::string arg_term, arg_term2;
  int arg_var = 0;

  CLI::App* c_parse = app.add_subcommand("parse", "parse a term and report its metrics");
  c_parse->add_option("term", arg_term, "term, e.g. (x1*x2)*x3")->required();
  c_parse->callback([&] {
    Term t = parse_term(arg_term);
    out << "term: " << print_term(t) << "\n";
    out << "length: " << t.length() << "\n";
    out << "rank: " << t.rank() << "\n";
    out << "max-var: " << t.max_var() << "\n";
  });

  CLI::App* c_canon = app.add_subcommand("canon", "canonical form up to commuting subterms");
  c_canon->add_option("term", arg_term)->required();
  c_canon->callback([&] {
    Term c = canonicalize(parse_term(arg_term));
    out << "canonical: " << print_term(c) << "\n";
  });

  CLI::App* c_equiv = app.add_subcommand("equiv", "are two terms equal up to commuting subterms");
  c_equiv->add_option("first", arg_term)->required();
  c_equiv->add_option("second", arg_term2)->required();
  c_equiv->callback([&] {
    bool eq = equiv(parse_term(arg_term), parse_term(arg_term2));
    out << "equivalent: " << yesno(eq) << "\n";
  });

  CLI::App* c_rank = app.add_subcommand("rank", "nesting depth of a term");
  c_rank->add_option("term", arg_term)->required();
  c_rank->callback([&] {
    Term t = parse_term(arg_term);
    out << "rank: " << t.rank() << "\n";
  });

  CLI::App* c_reduced = app.add_subcommand("reduced", "is the term already reduced");
  c_reduced->add_option("term", arg_term)->required();
  c_reduced->callback([&] {
    bool r = is_reduced(parse_term(arg_term));
    out << "reduced: " << yesno(r) << "\n";
  });

  CLI::App* c_reduce = app.add_subcommand("reduce", "canonical reduced form of a term");
  c_reduce->add_option("term", arg_term)->required();
  c_reduce->callback([&] {
    ReducedTerm r = reduce(parse_term(arg_term));
    out << "reduced: " << print_term(r.term()) << "\n";
  });

  int arg_vars = 0;
  CLI::App* c_enum = app.add_subcommand("enumerate", "all reduced classes up to the rank bound");
  c_enum->add_option("vars", arg_vars, "number of variables")->required()->check(CLI::PositiveNumber);
  c_enum->callback([&] {
    std::vector<ReducedTerm> classes = enumerate_reduced(arg_vars, g.rank_bound);
    out << "count: " << classes.size() << "\n";
    print_list(out, g, "terms", "term", printed(classes));
  });

  // ---- free model ------------------------------------------------------
  int arg_gens = 0;
  CLI::App* c_mul = app.add_subcommand("mul", "product of two elements of a free model");
  c_mul->add_option("--gens", arg_gens, "number of generators (0 = infer)")->check(CLI::NonNegativeNumber);
  c_mul->add_option("first", arg_term)->required();
  c_mul->add_option("second", arg_term2)->required();
  c_mul->callback([&] {
    Term a = parse_term(arg_term), b = parse_term(arg_term2);
    FreeModel m(gens_or_infer(arg_gens, {a, b}));
    ReducedTerm p = m.mul(reduce(a), reduce(b));
    out << "product: " << print_term(p.term()) << "\n";
  });

  int arg_n = 0, arg_k = 0;
  CLI::App* c_levels = app.add_subcommand("levels", "level sizes by both constructions");
  c_levels->add_option("gens", arg_n, "number of generators")->required()->check(CLI::PositiveNumber);
  c_levels->add_option("depth", arg_k, "last level index")->required()->check(CLI::NonNegativeNumber);
  c_levels->callback([&] {
    std::vector<std::vector<ReducedTerm>> via_closure = levels_closure(FreeModel(arg_n), arg_k);
    std::vector<std::vector<ReducedTerm>> via_enum = levels_enumeration(FreeModel(arg_n), arg_k);
    bool agree = via_closure == via_enum;
    out << "ranks:";
    std::size_t prev = 0;
    for (const auto& lv : via_closure) {
      out << " " << (lv.size() - prev);
      prev = lv.size();
    }
    out << "\n";
    out << "cumulative:";
    for (const auto& lv : via_closure) out << " " << lv.size();
    out << "\n";
    out << "agree: " << yesno(agree) << "\n";
  });

  CLI::App* c_levelof = app.add_subcommand("level-of", "first level containing an element");
  c_levelof->add_option("--gens", arg_gens, "number of generators (0 = infer)")->check(CLI::NonNegativeNumber);
  c_levelof->add_option("term", arg_term)->required();
  c_levelof->callback([&] {
    Term t = parse_term(arg_term);
    FreeModel m(gens_or_infer(arg_gens, {t}));
    int level = level_of(m, reduce(t));
    out << "level: " << level << "\n";
  });

  std::vector<std::string> arg_terms;
  CLI::App* c_closure = app.add_subcommand("closure", "length-capped subalgebra closure");
  c_closure->add_option("--gens", arg_gens, "number of generators (0 = infer)")->check(CLI::NonNegativeNumber);
  c_closure->add_option("terms", arg_terms, "generating elements")->required();
  c_closure->callback([&] {
    std::vector<Term> parsed;
    for (const std::string& s : arg_terms) parsed.push_back(parse_term(s));
    FreeModel m(gens_or_infer(arg_gens, parsed));
    std::vector<ReducedTerm> gens = reduce_all(parsed);
    int cap = g.length_cap > 0 ? g.length_cap : default_closure_length_cap(gens);
    ClosureResult res = subalgebra_closure(m, gens, cap);
    out << "cap: " << cap << "\n";
    out << "size: " << res.elements.size() << "\n";
    out << "saturated: " << yesno(res.saturated) << "\n";
    print_list(out, g, "elements", "element", printed(res.elements));
  });

  CLI::App* c_indep = app.add_subcommand("independent", "search for a dependence witness");
  c_indep->add_option("--gens", arg_gens, "number of generators (0 = infer)")->check(CLI::NonNegativeNumber);
  c_indep->add_option("terms", arg_terms, "elements to test")->required();
  c_indep->callback([&] {
    std::vector<Term> parsed;
    for (const std::string& s : arg_terms) parsed.push_back(parse_term(s));
    FreeModel m(gens_or_infer(arg_gens, parsed));
    std::vector<ReducedTerm> elems = reduce_all(parsed);
    RefutationResult res = independence_refute(m, elems, g.rank_bound);
    out << "dependent: " << yesno(res.dependent()) << "\n";
    if (res.witness) {
      out << "first: " << print_term(res.witness->first) << "\n";
      out << "second: " << print_term(res.witness->second) << "\n";
    } else {
      out << "rank-bound: " << res.rank_bound << "\n";
    }
  });

  std::string arg_images, arg_file, arg_points;
  int arg_builtin = 0;
  CLI::App* c_hom = app.add_subcommand("hom", "apply the homomorphism extending generator images");
  c_hom->add_option("--gens", arg_gens, "generators of the domain")->required()->check(CLI::PositiveNumber);
  c_hom->add_option("--images", arg_images, "comma-separated image terms (free target)");
  c_hom->add_option("--points", arg_points, "comma-separated image point names (finite target)");
  c_hom->add_option("--file", arg_file, "finite target in design text format");
  c_hom->add_option("--builtin", arg_builtin, "built-in finite target: 7 or 9")->check(CLI::NonNegativeNumber);
  c_hom->add_option("term", arg_term, "element of the domain")->required();
  c_hom->callback([&] {
    FreeModel dom(arg_gens);
    ReducedTerm e = reduce(parse_term(arg_term));
    if (!arg_points.empty()) {
      FiniteModel target = FiniteModel::parse(load_design_text(arg_file, arg_builtin));
      std::vector<int> ids;
      for (const std::string& name : split(arg_points, ',')) ids.push_back(target.point_id(name));
      FiniteHomomorphism h(dom, target, ids);
      int image = h(e);
      out << "image: " << target.point_name(image) << "\n";
      return;
    }
    if (arg_images.empty()) throw validation_error("pass --images (free target) or --points (finite target)");
    std::vector<Term> ims = parse_term_list(arg_images);
    FreeModel target(gens_or_infer(0, ims));
    FreeHomomorphism h(dom, target, reduce_all(ims));
    ReducedTerm image = h(e);
    out << "image: " << print_term(image.term()) << "\n";
  });

  // ---- designs ----------------------------------------------------------
  CLI::App* c_validate = app.add_subcommand("validate", "check a design file");
  c_validate->add_option("--file", arg_file, "design in the points:/block: format");
  c_validate->add_option("--builtin", arg_builtin, "built-in system: 7 or 9")->check(CLI::NonNegativeNumber);
  c_validate->callback([&] {
    PartialSTS s = PartialSTS::parse(load_design_text(arg_file, arg_builtin));
    int n = s.num_points();
    bool complete = 3 * s.num_blocks() == n * (n - 1) / 2;
    out << "points: " << n << "\n";
    out << "blocks: " << s.num_blocks() << "\n";
    out << "delta: " << s.delta() << "\n";
    out << "complete: " << yesno(complete) << "\n";
  });

  CLI::App* c_delta = app.add_subcommand("delta", "predimension of a partial system");
  c_delta->add_option("--file", arg_file);
  c_delta->add_option("--builtin", arg_builtin)->check(CLI::NonNegativeNumber);
  c_delta->callback([&] {
    PartialSTS s = PartialSTS::parse(load_design_text(arg_file, arg_builtin));
    out << "delta: " << s.delta() << "\n";
  });

  CLI::App* c_hforder = app.add_subcommand("hf-order", "greedy ordering or a confined witness");
  c_hforder->add_option("--file", arg_file);
  c_hforder->add_option("--builtin", arg_builtin)->check(CLI::NonNegativeNumber);
  c_hforder->callback([&] {
    PartialSTS s = PartialSTS::parse(load_design_text(arg_file, arg_builtin));
    auto res = hf_order(s);
    if (const HfOrdering* ord = std::get_if<HfOrdering>(&res)) {
      out << "confined: no\n";
      print_list(out, g, "ordering", "point", point_names(s, ord->order));
    } else {
      const ConfinedWitness& w = std::get<ConfinedWitness>(res);
      out << "confined: yes\n";
      print_list(out, g, "witness", "point", point_names(s, w.points));
    }
  });

  CLI::App* c_hfbase = app.add_subcommand("hf-base", "maximal confined core of a partial system");
  c_hfbase->add_option("--file", arg_file);
  c_hfbase->add_option("--builtin", arg_builtin)->check(CLI::NonNegativeNumber);
  c_hfbase->callback([&] {
    PartialSTS s = PartialSTS::parse(load_design_text(arg_file, arg_builtin));
    std::vector<int> base = hf_base(s);
    out << "size: " << base.size() << "\n";
    print_list(out, g, "base", "point", point_names(s, base));
  });

  CLI::App* c_export = app.add_subcommand("export-levels",
                                          "emit a free-model level set as a partial system");
  c_export->add_option("--gens", arg_gens, "number of generators")->required()->check(CLI::PositiveNumber);
  c_export->add_option("--depth", arg_k, "level index")->required()->check(CLI::NonNegativeNumber);
  c_export->callback([&] { out << from_free_levels(arg_gens, arg_k).format(); });

  // ---- occurrence analysis and endomorphisms ----------------------------
  CLI::App* c_occ = app.add_subcommand("occ", "occurrences of a variable and the single-path flag");
  c_occ->add_option("term", arg_term)->required();
  c_occ->add_option("var", arg_var, "variable index")->required()->check(CLI::PositiveNumber);
  c_occ->callback([&] {
    OccurrenceReport rep = occurrences(parse_term(arg_term), arg_var);
    out << "variable: " << rep.variable << "\n";
    out << "count: " << rep.count << "\n";
    out << "single-path: " << yesno(rep.single_path_exists) << "\n";
  });

  int arg_y = 0, arg_z = 0;
  CLI::App* c_invert = app.add_subcommand("invert", "invert a single-occurrence term");
  c_invert->add_option("term", arg_term)->required();
  c_invert->add_option("--y", arg_y, "distinguished variable (default: largest)")->check(CLI::PositiveNumber);
  c_invert->add_option("--z", arg_z, "fresh variable (default: y + 1)")->check(CLI::PositiveNumber);
  c_invert->callback([&] {
    Term t = parse_term(arg_term);
    int y = arg_y > 0 ? arg_y : t.max_var();
    int z = arg_z > 0 ? arg_z : y + 1;
    Term r = invert_single(t, y, z);
    out << "y: " << y << "\n";
    out << "z: " << z << "\n";
    out << "inverse: " << print_term(r) << "\n";
  });

  CLI::App* c_classify = app.add_subcommand("classify",
                                            "classify b ↦ t(ā,b) fixing the first gens-1 generators");
  c_classify->add_option("--gens", arg_gens, "generators; the last one plays b")->required()->check(CLI::PositiveNumber);
  c_classify->add_option("term", arg_term, "image term over x1..xgens")->required();
  c_classify->callback([&] {
    FreeModel m(arg_gens);
    std::vector<ReducedTerm> base;
    for (int i = 1; i < arg_gens; ++i) base.push_back(m.generator(i));
    EndoClass cls = classify_endo(m, base, m.generator(arg_gens), parse_term(arg_term));
    if (const AutomorphismClass* a = std::get_if<AutomorphismClass>(&cls)) {
      out << "class: automorphism\n";
      out << "inverse: " << print_term(a->inverse_image) << "\n";
    } else if (const EmbeddingClass* e = std::get_if<EmbeddingClass>(&cls)) {
      out << "class: embedding\n";
      out << "excluded: " << print_term(e->excluded.term()) << "\n";
    } else {
      const NotInjective& n = std::get<NotInjective>(cls);
      out << "class: not-injective\n";
      out << "first: " << print_term(n.first.term()) << "\n";
      out << "second: " << print_term(n.second.term()) << "\n";
    }
  });

  CLI::App* c_apply = app.add_subcommand("apply", "apply an endomorphism given by generator images");
  c_apply->add_option("--gens", arg_gens)->required()->check(CLI::PositiveNumber);
  c_apply->add_option("--images", arg_images, "comma-separated images")->required();
  c_apply->add_option("term", arg_term)->required();
  c_apply->callback([&] {
    FreeModel m(arg_gens);
    EndoSpec spec(m, reduce_all(parse_term_list(arg_images)));
    ReducedTerm image = apply_endo(spec, reduce(parse_term(arg_term)));
    out << "image: " << print_term(image.term()) << "\n";
  });

  CLI::App* c_inject = app.add_subcommand("inject-check", "bounded injectivity of y ↦ t");
  c_inject->add_option("term", arg_term)->required();
  c_inject->add_option("--y", arg_y, "distinguished variable (default: largest)")->check(CLI::PositiveNumber);
  c_inject->callback([&] {
    Term t = parse_term(arg_term);
    int y = arg_y > 0 ? arg_y : t.max_var();
    int cnt = count_occurrences(t, y);
    InjectivityResult res = injectivity_condition(t, y, g.rank_bound);
    out << "occurrences: " << cnt << "\n";
    if (const InjectivityHolds* h = std::get_if<InjectivityHolds>(&res)) {
      out << "injective: yes\n";
      if (h->rank_bound)
        out << "bound: " << *h->rank_bound << "\n";
      else
        out << "bound: unbounded\n";
    } else {
      const CounterexamplePair& c = std::get<CounterexamplePair>(res);
      out << "injective: no\n";
      out << "first: " << print_term(c.first) << "\n";
      out << "second: " << print_term(c.second) << "\n";
    }
  });

  // ---- automorphisms -----------------------------------------------------
  int arg_pivot = 0;
  std::string arg_shift;
  CLI::App* c_elem = app.add_subcommand("elementary", "images of an elementary automorphism");
  c_elem->add_option("--gens", arg_gens)->required()->check(CLI::PositiveNumber);
  c_elem->add_option("--pivot", arg_pivot)->required()->check(CLI::PositiveNumber);
  c_elem->add_option("--shift", arg_shift, "shift term avoiding the pivot")->required();
  c_elem->callback([&] {
    ElementaryAuto e = elementary(FreeModel(arg_gens), arg_pivot, parse_term(arg_shift));
    out << "pivot: " << e.pivot() << "\n";
    out << "shift: " << print_term(e.shift()) << "\n";
    print_list(out, g, "images", "image", printed(e.to_endo().images()));
  });

  CLI::App* c_irred = app.add_subcommand("irreducible", "irreducibility of an image tuple");
  c_irred->add_option("--gens", arg_gens)->required()->check(CLI::PositiveNumber);
  c_irred->add_option("--images", arg_images)->required();
  c_irred->callback([&] {
    FreeModel m(arg_gens);
    EndoSpec spec(m, reduce_all(parse_term_list(arg_images)));
    IrreducibilityResult res = is_irreducible(spec, g.length_cap);
    if (std::holds_alternative<Irreducible>(res)) {
      out << "irreducible: yes\n";
    } else if (const ReducibilityWitness* w = std::get_if<ReducibilityWitness>(&res)) {
      out << "irreducible: no\n";
      out << "index: " << w->index << "\n";
      out << "combination: " << print_term(w->combination) << "\n";
      out << "factor: " << print_term(w->factor) << "\n";
    } else {
      out << "irreducible: unknown\n";
      out << "cap: " << std::get<UnknownAtBound>(res).length_cap << "\n";
    }
  });

  CLI::App* c_pres = app.add_subcommand("preserves", "do the images preserve reducedness");
  c_pres->add_option("--gens", arg_gens)->required()->check(CLI::PositiveNumber);
  c_pres->add_option("--images", arg_images)->required();
  c_pres->callback([&] {
    FreeModel m(arg_gens);
    EndoSpec spec(m, reduce_all(parse_term_list(arg_images)));
    auto viol = preserves_reduced(spec, g.rank_bound);
    out << "rank-bound: " << g.rank_bound << "\n";
    out << "preserved: " << yesno(!viol.has_value()) << "\n";
    if (viol) {
      out << "input: " << print_term(viol->input) << "\n";
      out << "substituted: " << print_term(viol->substituted) << "\n";
    }
  });

  auto print_factors = [&](const std::vector<ElementaryAuto>& fs) {
    for (const ElementaryAuto& f : fs)
      out << "factor: pivot=" << f.pivot() << " shift=" << print_term(f.shift()) << "\n";
  };

  CLI::App* c_tame = app.add_subcommand("tame", "decompose an automorphism into elementary factors");
  c_tame->add_option("--gens", arg_gens)->required()->check(CLI::PositiveNumber);
  c_tame->add_option("--images", arg_images)->required();
  c_tame->callback([&] {
    FreeModel m(arg_gens);
    EndoSpec spec(m, reduce_all(parse_term_list(arg_images)));
    TameDecomposition dec = tame_decompose(spec);
    out << "factors: " << dec.factors.size() << "\n";
    print_factors(dec.factors);
    out << "verified: " << yesno(verify_tame(spec, dec)) << "\n";
  });

  std::string arg_factors;
  CLI::App* c_verify = app.add_subcommand("verify-tame", "check a factor list against an automorphism");
  c_verify->add_option("--gens", arg_gens)->required()->check(CLI::PositiveNumber);
  c_verify->add_option("--images", arg_images)->required();
  c_verify->add_option("--factors", arg_factors, "pivot:shift pairs separated by ';'")->required();
  c_verify->callback([&] {
    FreeModel m(arg_gens);
    EndoSpec spec(m, reduce_all(parse_term_list(arg_images)));
    std::vector<ElementaryAuto> factors;
    for (const FactorSpec& f : parse_factor_list(arg_factors))
      factors.push_back(elementary(m, f.pivot, f.shift));
    out << "verified: " << yesno(verify_tame(spec, TameDecomposition{factors})) << "\n";
  });

  // ---- dispatch ----------------------------------------------------------
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const validation_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const cap_exceeded& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace steinerq

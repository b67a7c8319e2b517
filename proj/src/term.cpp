#include "steinerq/term.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>
#include <utility>

namespace steinerq {

struct Term::Node {
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
  std::uint64_t hash;
  int var;  // >= 1 for a variable, 0 for a product
  int length;
  int rank;
  int max_var;
};

namespace {

std::uint64_t mix_hash(std::uint64_t a, std::uint64_t b) {
  // Asymmetric combine: the children of a canonical product are ordered,
  // so the hash must distinguish (a,b) from (b,a).
  std::uint64_t h = a * 0x9e3779b97f4a7c15ull;
  h ^= b + 0x517cc1b727220a95ull + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t var_hash(int index) {
  std::uint64_t h = static_cast<std::uint64_t>(index) * 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return h | 1;  // never zero
}

bool node_equal(const Term::Node* a, const Term::Node* b) {
  if (a == b) return true;
  if (a->hash != b->hash || a->var != b->var || a->length != b->length || a->rank != b->rank)
    return false;
  if (a->var != 0) return true;
  return node_equal(a->left.get(), b->left.get()) && node_equal(a->right.get(), b->right.get());
}

// Streams the characters of the fully parenthesized serialization without
// materializing the string; used for lexicographic comparison.
class CharStream {
 public:
  explicit CharStream(const Term::Node* root) { stack_.push_back({root, 0}); }

  int next() {
    if (digit_pos_ < digit_end_) return digits_[digit_pos_++];
    while (!stack_.empty()) {
      Frame& f = stack_.back();
      const Term::Node* n = f.node;
      if (n->var != 0) {
        stack_.pop_back();
        load_digits(n->var);
        return 'x';
      }
      switch (f.phase++) {
        case 0:
          stack_.push_back({n->left.get(), 0});
          return '(';
        case 1:
          stack_.push_back({n->right.get(), 0});
          return '*';
        default:
          stack_.pop_back();
          return ')';
      }
    }
    return -1;
  }

 private:
  struct Frame {
    const Term::Node* node;
    int phase;
  };

  void load_digits(int value) {
    digit_end_ = 0;
    char buf[12];
    int k = 0;
    while (value > 0) {
      buf[k++] = static_cast<char>('0' + value % 10);
      value /= 10;
    }
    while (k > 0) digits_[digit_end_++] = buf[--k];
    digit_pos_ = 0;
  }

  std::vector<Frame> stack_;
  char digits_[12];
  int digit_pos_ = 0;
  int digit_end_ = 0;
};

}  // namespace

Term Term::variable(int index) {
  if (index < 1) throw validation_error("variable index must be >= 1");
  auto node = std::make_shared<Node>();
  node->hash = var_hash(index);
  node->var = index;
  node->length = 1;
  node->rank = 0;
  node->max_var = index;
  return Term(std::move(node));
}

Term Term::product(const Term& left, const Term& right) {
  auto node = std::make_shared<Node>();
  node->left = left.node_;
  node->right = right.node_;
  node->hash = mix_hash(left.hash(), right.hash());
  node->var = 0;
  node->length = left.length() + right.length();
  node->rank = std::max(left.rank(), right.rank()) + 1;
  node->max_var = std::max(left.max_var(), right.max_var());
  return Term(std::move(node));
}

bool Term::is_variable() const { return node_->var != 0; }
bool Term::is_product() const { return node_->var == 0; }

int Term::var_index() const {
  if (!is_variable()) throw std::logic_error("var_index on a product");
  return node_->var;
}

Term Term::left() const {
  if (!is_product()) throw std::logic_error("left on a variable");
  return Term(node_->left);
}

Term Term::right() const {
  if (!is_product()) throw std::logic_error("right on a variable");
  return Term(node_->right);
}

int Term::length() const { return node_->length; }
int Term::rank() const { return node_->rank; }
int Term::max_var() const { return node_->max_var; }
std::uint64_t Term::hash() const { return node_->hash; }

bool operator==(const Term& a, const Term& b) { return node_equal(a.node_.get(), b.node_.get()); }

std::strong_ordering term_order_compare(const Term& a, const Term& b) {
  if (a.length() != b.length()) return a.length() <=> b.length();
  if (a.rank() != b.rank()) return a.rank() <=> b.rank();
  CharStream sa(a.node_.get());
  CharStream sb(b.node_.get());
  for (;;) {
    int ca = sa.next();
    int cb = sb.next();
    if (ca != cb) return ca <=> cb;
    if (ca == -1) return std::strong_ordering::equal;
  }
}

namespace {

Term ordered_product(const Term& a, const Term& b) {
  return term_order_compare(a, b) <= 0 ? Term::product(a, b) : Term::product(b, a);
}

}  // namespace

Term canonicalize(const Term& t) {
  if (t.is_variable()) return t;
  return ordered_product(canonicalize(t.left()), canonicalize(t.right()));
}

bool equiv(const Term& a, const Term& b) { return canonicalize(a) == canonicalize(b); }

int count_occurrences(const Term& t, int variable) {
  if (t.is_variable()) return t.var_index() == variable ? 1 : 0;
  return count_occurrences(t.left(), variable) + count_occurrences(t.right(), variable);
}

namespace {

// Scan of a canonical term for the three forbidden shapes; on canonical
// input, equivalence of subterms is structural equality.
bool canonical_is_reduced(const Term& t) {
  if (t.is_variable()) return true;
  Term l = t.left();
  Term r = t.right();
  if (l == r) return false;
  if (r.is_product() && (l == r.left() || l == r.right())) return false;
  if (l.is_product() && (l.left() == r || l.right() == r)) return false;
  return canonical_is_reduced(l) && canonical_is_reduced(r);
}

}  // namespace

bool is_reduced(const Term& t) { return canonical_is_reduced(canonicalize(t)); }

Term substitute(const Term& t, int variable, const Term& replacement) {
  if (t.is_variable()) return t.var_index() == variable ? replacement : t;
  if (count_occurrences(t, variable) == 0) return t;
  return Term::product(substitute(t.left(), variable, replacement),
                       substitute(t.right(), variable, replacement));
}

Term substitute_all(const Term& t, const std::vector<Term>& images) {
  if (t.is_variable()) {
    int i = t.var_index();
    if (i > static_cast<int>(images.size()))
      throw validation_error("no image for variable x" + std::to_string(i));
    return images[i - 1];
  }
  return Term::product(substitute_all(t.left(), images), substitute_all(t.right(), images));
}

ReducedTerm::ReducedTerm(const Term& t) : term_(t) {
  if (canonicalize(t) != t) throw validation_error("term is not canonical: " + print_term(t));
  if (!canonical_is_reduced(t)) throw validation_error("term is not reduced: " + print_term(t));
}

ReducedTerm reduced_product(const ReducedTerm& ra, const ReducedTerm& rb) {
  const Term& a = ra.term();
  const Term& b = rb.term();
  if (a == b) return ra;
  if (a.is_product()) {
    if (a.left() == b) return ReducedTerm(a.right(), ReducedTerm::unchecked{});
    if (a.right() == b) return ReducedTerm(a.left(), ReducedTerm::unchecked{});
  }
  if (b.is_product()) {
    if (b.left() == a) return ReducedTerm(b.right(), ReducedTerm::unchecked{});
    if (b.right() == a) return ReducedTerm(b.left(), ReducedTerm::unchecked{});
  }
  return ReducedTerm(ordered_product(a, b), ReducedTerm::unchecked{});
}

ReducedTerm reduce(const Term& t) {
  if (t.is_variable()) return ReducedTerm(t, ReducedTerm::unchecked{});
  return reduced_product(reduce(t.left()), reduce(t.right()));
}

namespace {

// Children of a canonical product never absorb each other exactly when the
// ordered product is reduced, so candidate pairs can be screened in O(1).
bool forms_reduced_product(const Term& a, const Term& b) {
  if (a == b) return false;
  if (a.is_product() && (a.left() == b || a.right() == b)) return false;
  if (b.is_product() && (b.left() == a || b.right() == a)) return false;
  return true;
}

}  // namespace

std::vector<std::vector<ReducedTerm>> enumerate_reduced_by_rank(int num_vars, int max_rank,
                                                                const EnumerationLimits& limits) {
  if (num_vars < 1) throw validation_error("need at least one variable");
  if (max_rank < 0) throw validation_error("max_rank must be >= 0");
  if (max_rank > limits.max_rank)
    throw cap_exceeded("rank bound " + std::to_string(max_rank) + " exceeds cap " +
                       std::to_string(limits.max_rank));

  std::vector<std::vector<ReducedTerm>> by_rank;
  std::vector<ReducedTerm> all;
  std::size_t total = 0;

  std::vector<ReducedTerm> vars;
  for (int i = 1; i <= num_vars; ++i) vars.push_back(reduce(Term::variable(i)));
  total += vars.size();
  by_rank.push_back(vars);
  all = vars;

  for (int k = 0; k < max_rank; ++k) {
    std::unordered_set<Term, TermHash> seen;
    std::vector<ReducedTerm> next;
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        const ReducedTerm& a = all[i];
        const ReducedTerm& b = all[j];
        if (std::max(a.rank(), b.rank()) != k) continue;
        if (!forms_reduced_product(a.term(), b.term())) continue;
        ReducedTerm p = reduced_product(a, b);
        if (seen.insert(p.term()).second) {
          next.push_back(p);
          if (++total > limits.max_classes)
            throw cap_exceeded("enumeration exceeds " + std::to_string(limits.max_classes) +
                               " classes");
        }
      }
    }
    std::sort(next.begin(), next.end(), [](const ReducedTerm& x, const ReducedTerm& y) {
      return term_order_compare(x.term(), y.term()) < 0;
    });
    all.insert(all.end(), next.begin(), next.end());
    by_rank.push_back(std::move(next));
  }
  return by_rank;
}

std::vector<ReducedTerm> enumerate_reduced(int num_vars, int max_rank,
                                           const EnumerationLimits& limits) {
  auto by_rank = enumerate_reduced_by_rank(num_vars, max_rank, limits);
  std::vector<ReducedTerm> out;
  for (auto& group : by_rank) out.insert(out.end(), group.begin(), group.end());
  return out;
}

namespace {

void print_into(const Term& t, std::string& out) {
  if (t.is_variable()) {
    out += 'x';
    out += std::to_string(t.var_index());
    return;
  }
  out += '(';
  print_into(t.left(), out);
  out += '*';
  print_into(t.right(), out);
  out += ')';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = parse_term();
    skip_ws();
    if (pos_ != text_.size()) throw parse_error("unexpected trailing input", pos_);
    return t;
  }

 private:
  Term parse_term() {
    Term t = parse_factor();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        Term rhs = parse_factor();
        t = Term::product(t, rhs);
      } else {
        return t;
      }
    }
  }

  Term parse_factor() {
    skip_ws();
    if (pos_ >= text_.size()) throw parse_error("expected a variable or '('", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = parse_term();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw parse_error("expected ')'", pos_);
      ++pos_;
      return t;
    }
    if (c == 'x') return parse_variable();
    throw parse_error(std::string("expected a variable or '(', found '") + c + "'", pos_);
  }

  Term parse_variable() {
    std::size_t start = pos_;
    ++pos_;  // consume 'x'
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw parse_error("expected digits after 'x'", pos_);
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1000000) throw parse_error("variable index too large", start);
      ++pos_;
    }
    if (value == 0) throw parse_error("variable index must be >= 1", start);
    return Term::variable(static_cast<int>(value));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).parse(); }

std::string print_term(const Term& t) {
  std::string out;
  out.reserve(static_cast<std::size_t>(t.length()) * 6);
  print_into(t, out);
  return out;
}

}  // namespace steinerq

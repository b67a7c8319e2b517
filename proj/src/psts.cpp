#include "steinerq/psts.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace steinerq {

PartialSTS PartialSTS::from_blocks(std::vector<std::string> point_names,
                                   const std::vector<std::array<int, 3>>& blocks) {
  PartialSTS s;
  int n = static_cast<int>(point_names.size());
  {
    std::unordered_set<std::string> seen;
    for (const std::string& name : point_names)
      if (!seen.insert(name).second) throw validation_error("duplicate point name: " + name);
  }
  s.names_ = std::move(point_names);

  std::set<std::pair<int, int>> used_pairs;
  for (const auto& blk : blocks) {
    auto [a, b, c] = blk;
    for (int p : {a, b, c})
      if (p < 0 || p >= n) throw validation_error("block references an unknown point");
    if (a == b || a == c || b == c) throw validation_error("block with repeated point");
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    const std::pair<int, int> pairs[3] = {{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}};
    for (const auto& pr : pairs)
      if (!used_pairs.insert(pr).second)
        throw validation_error("pair {" + s.names_[pr.first] + ", " + s.names_[pr.second] +
                               "} lies in two blocks");
    s.blocks_.push_back(t);
  }
  std::sort(s.blocks_.begin(), s.blocks_.end());
  return s;
}

PartialSTS PartialSTS::parse(std::string_view text) {
  DesignText design = parse_design_text(text);
  std::unordered_map<std::string, int> ids;
  for (int i = 0; i < static_cast<int>(design.points.size()); ++i)
    if (!ids.emplace(design.points[i], i).second)
      throw validation_error("duplicate point name: " + design.points[i]);
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

std::string PartialSTS::format() const {
  std::ostringstream out;
  out << "points:";
  for (const std::string& name : names_) out << ' ' << name;
  out << '\n';
  for (const auto& blk : blocks_)
    out << "block: " << names_[blk[0]] << ' ' << names_[blk[1]] << ' ' << names_[blk[2]] << '\n';
  return out.str();
}

const std::string& PartialSTS::point_name(int p) const {
  if (p < 0 || p >= num_points()) throw validation_error("point id out of range");
  return names_[p];
}

int PartialSTS::point_id(std::string_view name) const {
  for (int i = 0; i < num_points(); ++i)
    if (names_[i] == name) return i;
  throw validation_error("unknown point: " + std::string(name));
}

int PartialSTS::degree_within(int p, std::span<const int> points) const {
  if (p < 0 || p >= num_points()) throw validation_error("point id out of range");
  std::vector<char> in(names_.size(), 0);
  for (int q : points) {
    if (q < 0 || q >= num_points()) throw validation_error("point id out of range");
    in[q] = 1;
  }
  int deg = 0;
  for (const auto& blk : blocks_)
    if ((blk[0] == p || blk[1] == p || blk[2] == p) && in[blk[0]] && in[blk[1]] && in[blk[2]])
      ++deg;
  return deg;
}

PartialSTS PartialSTS::induced(std::span<const int> points) const {
  std::vector<int> keep(points.begin(), points.end());
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw validation_error("repeated point in subset");
  std::vector<int> new_id(names_.size(), -1);
  std::vector<std::string> names;
  for (int q : keep) {
    if (q < 0 || q >= num_points()) throw validation_error("point id out of range");
    new_id[q] = static_cast<int>(names.size());
    names.push_back(names_[q]);
  }
  std::vector<std::array<int, 3>> blocks;
  for (const auto& blk : blocks_)
    if (new_id[blk[0]] >= 0 && new_id[blk[1]] >= 0 && new_id[blk[2]] >= 0)
      blocks.push_back({new_id[blk[0]], new_id[blk[1]], new_id[blk[2]]});
  return from_blocks(std::move(names), blocks);
}

namespace {

// Greedy strip shared by hf_order and hf_base: removal sequence plus the
// stuck residue (one of the two is empty at the end).
struct StripResult {
  std::vector<int> removed;   // in removal order
  std::vector<int> residue;   // sorted ids
};

StripResult greedy_strip(const PartialSTS& s) {
  int n = s.num_points();
  std::vector<char> alive(n, 1);
  std::vector<char> block_alive(s.blocks().size(), 1);
  std::vector<int> degree(n, 0);
  for (const auto& blk : s.blocks())
    for (int p : blk) ++degree[p];

  StripResult out;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int p = 0; p < n; ++p) {
      if (!alive[p] || degree[p] > 1) continue;
      if (best == -1 || s.point_name(p) < s.point_name(best)) best = p;
    }
    if (best == -1) break;
    alive[best] = 0;
    out.removed.push_back(best);
    for (std::size_t b = 0; b < s.blocks().size(); ++b) {
      if (!block_alive[b]) continue;
      const auto& blk = s.blocks()[b];
      if (blk[0] != best && blk[1] != best && blk[2] != best) continue;
      block_alive[b] = 0;
      for (int p : blk) --degree[p];
    }
  }
  for (int p = 0; p < n; ++p)
    if (alive[p]) out.residue.push_back(p);
  return out;
}

}  // namespace

bool is_hf_ordering(const PartialSTS& s, std::span<const int> order) {
  int n = s.num_points();
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int p : order) {
    if (p < 0 || p >= n || seen[p]) return false;
    seen[p] = 1;
  }
  std::vector<int> prefix;
  for (int p : order) {
    prefix.push_back(p);
    if (s.degree_within(p, prefix) > 1) return false;
  }
  return true;
}

std::variant<HfOrdering, ConfinedWitness> hf_order(const PartialSTS& s) {
  StripResult strip = greedy_strip(s);
  if (strip.residue.empty()) {
    HfOrdering result;
    result.order.assign(strip.removed.rbegin(), strip.removed.rend());
    if (!is_hf_ordering(s, result.order)) throw std::logic_error("greedy ordering is invalid");
    // stripping one point never closes more than one block, so the
    // deficiency of the prefixes must be non-decreasing
    std::vector<int> prefix;
    int prev = 0;
    for (int p : result.order) {
      prefix.push_back(p);
      int d = s.induced(prefix).delta();
      if (d < prev) throw std::logic_error("prefix deficiency decreased");
      prev = d;
    }
    return result;
  }
  ConfinedWitness witness;
  witness.points = strip.residue;
  for (int p : witness.points)
    if (s.degree_within(p, witness.points) < 2)
      throw std::logic_error("stuck residue is not confined");
  return witness;
}

std::vector<int> hf_base(const PartialSTS& s) { return greedy_strip(s).residue; }

PartialSTS from_free_levels(int num_generators, int k, const LevelLimits& limits) {
  FreeModel m(num_generators);
  auto lv = levels(m, k, limits);
  const std::vector<ReducedTerm>& elems = lv.back();

  std::vector<std::string> names;
  std::unordered_map<Term, int, TermHash> ids;
  for (const ReducedTerm& e : elems) {
    ids.emplace(e.term(), static_cast<int>(names.size()));
    names.push_back(print_term(e.term()));
  }
  std::vector<std::array<int, 3>> blocks;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      ReducedTerm p = m.mul(elems[i], elems[j]);
      auto it = ids.find(p.term());
      if (it == ids.end()) continue;
      std::array<int, 3> blk{static_cast<int>(i), static_cast<int>(j), it->second};
      std::sort(blk.begin(), blk.end());
      blocks.push_back(blk);
    }
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
  return PartialSTS::from_blocks(std::move(names), blocks);
}

PartialSTS builtin_sts(int num_points) {
  if (num_points == 7) return PartialSTS::parse(fano_fixture());
  if (num_points == 9) return PartialSTS::parse(sts9_fixture());
  throw validation_error("no built-in system on " + std::to_string(num_points) + " points");
}

}  // namespace steinerq

#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "steinerq/errors.hpp"
#include "steinerq/free_model.hpp"

namespace steinerq {

// A partial triple system: named points and three-element blocks in which
// every pair of points appears at most once. Unlike FiniteModel, pairs may
// be uncovered, so the system does not induce a total product.
class PartialSTS {
 public:
  static PartialSTS from_blocks(std::vector<std::string> point_names,
                                const std::vector<std::array<int, 3>>& blocks);
  static PartialSTS parse(std::string_view text);

  // Design text that parses back to this system.
  std::string format() const;

  int num_points() const { return static_cast<int>(names_.size()); }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const std::string& point_name(int p) const;
  int point_id(std::string_view name) const;
  const std::vector<std::string>& point_names() const { return names_; }

  // Sorted triples in sorted order.
  const std::vector<std::array<int, 3>>& blocks() const { return blocks_; }

  // Point deficiency: points minus blocks.
  int delta() const { return num_points() - num_blocks(); }

  // Number of blocks through p that lie entirely inside the given point set.
  int degree_within(int p, std::span<const int> points) const;

  // The subsystem on a subset of points, keeping exactly the blocks that lie
  // inside it. Point names carry over.
  PartialSTS induced(std::span<const int> points) const;

 private:
  PartialSTS() = default;
  std::vector<std::string> names_;
  std::vector<std::array<int, 3>> blocks_;
};

// An ordering of all points in which each point lies in at most one block
// among its predecessors.
struct HfOrdering {
  std::vector<int> order;
};

// A nonempty point set in which every point lies in at least two blocks of
// the induced subsystem; no ordering of the whole system can exist.
struct ConfinedWitness {
  std::vector<int> points;
};

// Greedy construction: repeatedly strip a point lying in at most one block,
// preferring the lexicographically least name, and reverse the removal
// order. Either outcome is verified before it is returned.
std::variant<HfOrdering, ConfinedWitness> hf_order(const PartialSTS& s);

// Check that order is a permutation of the points and each one closes at
// most one block among its predecessors.
bool is_hf_ordering(const PartialSTS& s, std::span<const int> order);

// The unique maximal point set on which the greedy strip gets stuck; empty
// exactly when a full ordering exists. Sorted point ids.
std::vector<int> hf_base(const PartialSTS& s);

// The triple system carried by the free model's level set: one point per
// element of the k-th level, named by its printed form, and one block per
// product that stays inside the level.
PartialSTS from_free_levels(int num_generators, int k, const LevelLimits& limits = {});

// The built-in complete systems on 7 and 9 points.
PartialSTS builtin_sts(int num_points);

}  // namespace steinerq

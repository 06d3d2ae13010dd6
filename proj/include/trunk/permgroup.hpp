#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "trunk/perm.hpp"

namespace trunk {

// Finite permutation group given by generators. All algorithms are exhaustive
// over the enumerated element set; the cap bounds enumeration work and is a
// hard error when exceeded, never a silent truncation.
struct PermGroup {
  int degree = 0;
  std::vector<Perm> generators;
  std::string name;

  static PermGroup from_generators(int degree, std::vector<Perm> gens,
                                   std::string name = "");
};

inline constexpr std::size_t kDefaultCap = 2'000'000;
inline constexpr int kDefaultNormalizerDegreeLimit = 8;

// Breadth-first closure of the generators. Deterministic order: identity
// first, then by word length, ties broken by generator index.
std::vector<Perm> enumerate_elements(const PermGroup& g, std::size_t cap = kDefaultCap);

unsigned long long group_order(const PermGroup& g, std::size_t cap = kDefaultCap);

// Orbits as sorted point lists, ordered by smallest member.
std::vector<std::vector<int>> orbits(const PermGroup& g);

bool is_transitive(const PermGroup& g);

// Largest t such that the action on ordered t-tuples of distinct points is
// transitive; 0 for a non-transitive group.
int transitivity_degree(const PermGroup& g, std::size_t cap = kDefaultCap);

struct PointStabilizerView {
  int point = 0;
  PermGroup full;        // stabilizer acting on the original points
  PermGroup restricted;  // same group on degree-1 points, gap closed
  // kept_points[i] is the original point now labelled i in the restricted view.
  std::vector<int> kept_points;
};

PointStabilizerView point_stabilizer(const PermGroup& g, int point,
                                     std::size_t cap = kDefaultCap);

// Partition of the points into blocks permuted by the group. Blocks are
// sorted internally and ordered by smallest member.
struct BlockSystem {
  int degree = 0;
  std::vector<std::vector<int>> blocks;

  bool is_trivial() const;  // singletons or one block
  bool refines(const BlockSystem& coarser) const;
  bool operator==(const BlockSystem& o) const { return blocks == o.blocks; }
};

// Finest block system in which all seed points share a block.
BlockSystem minimal_block_closure(const PermGroup& g, const std::vector<int>& seed);

// All minimal non-trivial block systems (transitive groups only).
std::vector<BlockSystem> block_systems(const PermGroup& g);

// All maximal non-trivial block systems (transitive groups only).
std::vector<BlockSystem> maximal_blocks(const PermGroup& g);

bool is_primitive(const PermGroup& g);

// True when the setwise stabilizer of each cell acts regularly on that cell:
// transitive on the cell with order equal to the cell size.
bool is_regular_on_block(const PermGroup& g, const BlockSystem& b,
                         std::size_t cap = kDefaultCap);

// Brute-force normalizer of g inside the full symmetric group on its points.
// Refuses degrees above the limit rather than guessing.
PermGroup normalizer_in_sym(const PermGroup& g,
                            int degree_limit = kDefaultNormalizerDegreeLimit,
                            std::size_t cap = kDefaultCap);

bool is_generated_by_point_stabilizers(const PermGroup& g, std::size_t cap = kDefaultCap);

// Searches for a point bijection b with b^-1 g1 b = g2 as element sets,
// backtracking over point images in ascending order, so the returned witness
// is the lexicographically smallest one. nullopt when no witness exists.
std::optional<Perm> permutation_equivalence(const PermGroup& g1, const PermGroup& g2,
                                            std::size_t cap = kDefaultCap);

struct StructureFlags {
  unsigned long long order = 0;
  bool is_perfect = false;
  bool in_alternating = false;  // every element even
  // Two readings of "fixed-point-free", reported side by side:
  bool no_global_fixed_point = false;        // no point fixed by the whole group
  bool nonidentity_fixed_point_free = false; // no non-identity element fixes a point
};

StructureFlags structure_flags(const PermGroup& g, std::size_t cap = kDefaultCap);

// Abstract isomorphism by generator-image backtracking, with order and
// element-order-histogram pre-checks. Degrees may differ.
bool abstractly_isomorphic(const PermGroup& g1, const PermGroup& g2,
                           std::size_t cap = kDefaultCap);

// Smallest generating subset of the given elements (greedy, deterministic).
std::vector<Perm> reduce_generators(int degree, const std::vector<Perm>& elements,
                                    std::size_t cap = kDefaultCap);

using PermSet = std::unordered_set<Perm, PermHash>;

PermSet element_set(const PermGroup& g, std::size_t cap = kDefaultCap);

}  // namespace trunk

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trunk/perm.hpp"
#include "trunk/permgroup.hpp"

namespace trunk {

// Finite ball in the d-regular tree under its canonical edge colouring: the
// d edges at each vertex carry the d distinct colours, the centre uses them
// in slot order, and every other vertex gives its child slots the smallest
// colours different from its parent edge. The model stores the automorphisms
// whose induced colour map at every internal vertex lies in the local group.
//
// A vertex-centred ball of radius R holds the centre, its d children and
// (d-1)-ary subtrees to depth R. An edge-centred ball holds both endpoints
// of the central edge (colour 0) and depth-R half-trees below each.
struct BallModel {
  int valency = 0;  // d
  int radius = 0;
  bool edge_centered = false;
  PermGroup local;  // the prescribed group of colour maps, degree d

  // Vertices in breadth-first order; centres first.
  std::vector<int> parent;                      // -1 at a centre vertex
  std::vector<int> parent_colour;               // colour toward the parent
  std::vector<int> level;                       // distance to the nearest centre
  std::vector<std::vector<int>> child_slots;    // slot -> vertex id
  std::vector<std::vector<int>> slot_colour;    // slot -> edge colour
  std::vector<std::vector<int>> slot_of_colour; // colour -> slot or -1

  std::vector<Perm> elements;  // the whole ball group on vertex ids
  PermGroup group;             // the same group with a reduced generating set

  int vertex_count() const { return static_cast<int>(parent.size()); }
};

BallModel vertex_ball_model(const PermGroup& local, int radius,
                            std::size_t cap = kDefaultCap);
BallModel edge_ball_model(const PermGroup& local, int radius,
                          std::size_t cap = kDefaultCap);

// The colour map an element induces at a vertex (its local action), read off
// the edges around that vertex. Defined for internal vertices.
Perm induced_colour_map(const BallModel& m, const Perm& g, int vertex);

// Transitive and generated by its point stabilizers: the two conditions the
// ball models need from their local group to present a meaningful ball.
bool bm_admissible(const PermGroup& local, std::size_t cap = kDefaultCap);

// Factorization of the central-edge stabilizer of an edge-centred ball into
// the two half-tree-fixing subgroups, element by element.
struct TitsIndependence {
  unsigned long long edge_fixing_order = 0;
  unsigned long long first_half_order = 0;
  unsigned long long second_half_order = 0;
  bool trivial_intersection = false;
  bool order_factorizes = false;
  bool every_element_splits = false;
  bool holds = false;
};

TitsIndependence tits_independence_check(const BallModel& m);

// Reads the local group back out of a vertex-centred ball: the action induced
// on the centre's d neighbours, its kernel, and a point bijection carrying
// the recovered action onto the prescribed one. Needs a transitive local
// group; otherwise the neighbour identification is ambiguous and the recipe
// refuses.
struct LocalActionRecovery {
  unsigned long long ball_order = 0;
  unsigned long long kernel_order = 0;
  PermGroup recovered;               // degree d, acting on the neighbours
  std::optional<Perm> equivalence;   // recovered ~ prescribed, if any
};

LocalActionRecovery recover_local_action(const PermGroup& local, int radius,
                                         std::size_t cap = kDefaultCap);

// Structural report on a finite group acting on d+1 points, framed as the
// local action of a tree with that valency: two-transitivity, the stabilizer
// of the last point restricted to d points, whether that stabilizer is
// self-normalizing, perfect, or inside the alternating group, and the two
// predictions those flags drive. Stabilizer fields are meaningful only when
// the action is two-transitive.
struct TheoremAudit {
  std::string name;
  int degree = 0;                    // d + 1
  unsigned long long order = 0;
  bool two_transitive = false;
  bool applicable = false;           // same as two_transitive
  unsigned long long stabilizer_order = 0;
  bool stabilizer_self_normalizing = false;
  bool stabilizer_perfect = false;
  bool stabilizer_in_alternating = false;
  bool predicted_compactly_generated = false;
  int predicted_index = 0;  // 2 when d is odd and the stabilizer is alternating
};

TheoremAudit audit_theorems(const PermGroup& f, std::size_t cap = kDefaultCap);

}  // namespace trunk

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "trunk/portrait.hpp"

namespace trunk {

// A finite complete prefix code on the rooted tree whose root has root_arity
// children and whose deeper vertices have deep_arity children each. The root
// itself is never a leaf; leaves are kept sorted lexicographically, which
// places every vertex directly before its descendants.
struct LeafSet {
  int root_arity = 0;
  int deep_arity = 0;
  std::vector<Address> leaves;

  // Sorts, then rejects out-of-range symbols, duplicates, prefix overlaps and
  // incomplete codes (by exact Kraft count in 128 bits).
  static LeafSet validated(int root_arity, int deep_arity, std::vector<Address> leaves);

  // All addresses of the given level (level >= 1).
  static LeafSet level(int root_arity, int deep_arity, int n);

  int size() const { return static_cast<int>(leaves.size()); }
  int index_of(const Address& a) const;              // throws LeafAbsent
  int max_depth() const;

  bool operator==(const LeafSet& o) const {
    return root_arity == o.root_arity && deep_arity == o.deep_arity && leaves == o.leaves;
  }
  bool operator!=(const LeafSet& o) const { return !(*this == o); }
};

// Index of the unique leaf that equals a or is a proper prefix of it.
int leaf_prefix_index(const LeafSet& s, const Address& a);

// Every leaf of fine extends (or equals) a leaf of coarse.
bool is_refinement(const LeafSet& fine, const LeafSet& coarse);

LeafSet common_refinement(const LeafSet& a, const LeafSet& b);

// Prefix substitution dom -> cod: the leaf dom[i] and everything below it is
// carried rigidly onto cod[sigma[i]]. Stored exactly as given; call reduce to
// collapse it, equal_elements to compare modulo representative.
struct TreePair {
  LeafSet dom;
  LeafSet cod;
  std::vector<int> sigma;  // sigma[i] = cod index of the image of dom leaf i

  static TreePair validated(LeafSet dom, LeafSet cod, std::vector<int> sigma);
  static TreePair identity(int root_arity, int deep_arity);
};

// Image of an address under the prefix substitution; the address must reach
// or pass a dom leaf.
Address apply_address(const TreePair& t, const Address& a);

// Splits dom leaf i and its image into their children (t maps child to child).
TreePair refine_at(const TreePair& t, int dom_index);

// Rewrites t onto the given finer domain; new_dom must refine t.dom.
TreePair rewrite_on_domain(const TreePair& t, const LeafSet& new_dom);

// Dom indices starting a collapsible family: d sibling dom leaves u.0 .. u.(d-1)
// with |u| >= 1 whose images are the siblings v.0 .. v.(d-1) of a single cod
// vertex, matched child to child. Collapsing to the root is never offered.
std::vector<int> collapsible_families(const TreePair& t);

TreePair collapse(const TreePair& t, int family_start);

// Collapses leftmost-first until nothing is collapsible. The result is the
// canonical representative of the element.
TreePair reduce(const TreePair& t);

TreePair inverse(const TreePair& t);

// s first, then t: interfaces are matched on the common refinement of s.cod
// and t.dom; the result is reduced.
TreePair compose(const TreePair& s, const TreePair& t);

bool equal_elements(const TreePair& a, const TreePair& b);

// sigma is the identity indexing, i.e. the boundary order is preserved.
bool is_order_preserving(const TreePair& t);

// Sign of sigma as a permutation of leaf indices. Independent of the chosen
// representative exactly when deep_arity is odd.
int parity(const TreePair& t);

// Two representatives of the same element whose stored sigmas have opposite
// signs. Exists only for even deep_arity and a non-order-preserving element;
// throws IncompatibleParameters otherwise. At most two refinement steps.
std::pair<TreePair, TreePair> flip_witness(const TreePair& t);

// Three-line text form: dom leaves, cod leaves (dot-joined, space-separated,
// in sorted order), then sigma. Round-trips exactly.
std::string format_tree_pair(const TreePair& t);
TreePair parse_tree_pair(const std::string& text, int root_arity, int deep_arity);

}  // namespace trunk

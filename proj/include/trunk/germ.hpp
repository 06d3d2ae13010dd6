#pragma once

#include <memory>
#include <string>
#include <vector>

#include "trunk/portrait.hpp"
#include "trunk/treepair.hpp"

namespace trunk {

// Shared parameters for one family of germs: the tree has root_arity children
// at the root and deep_arity = degree(local group) children everywhere else,
// and the tower data of the local group is computed once and reused.
struct GermContext {
  int root_arity = 0;
  TowerLocal local;

  int deep_arity() const { return local.D.degree; }
};

using GermContextPtr = std::shared_ptr<const GermContext>;

GermContextPtr make_germ_context(int root_arity, const PermGroup& local_group,
                                 std::size_t cap = kDefaultCap);

// A finitely-supported germ: a tree pair with one finite portrait attached to
// each domain leaf. The element maps dom[i].x to cod[sigma[i]].P_i(x); beyond
// the recorded label depth it acts rigidly. Every label has the uniform
// profile (d, d) and passes is_a_portrait, and the stored pair carries the
// labels of the representative it was built from; use germ_equal, never field
// comparison, to compare elements.
struct GermElement {
  GermContextPtr ctx;
  TreePair pair;
  std::vector<Portrait> labels;  // aligned with pair.dom.leaves
};

// Validates arities, label profiles and the A-portrait condition, then stores
// the reduced form.
GermElement make_germ(GermContextPtr ctx, TreePair pair, std::vector<Portrait> labels);

GermElement germ_identity(const GermContextPtr& ctx);

// Lifts a label-free tree pair.
GermElement germ_from_pair(const GermContextPtr& ctx, const TreePair& pair);

// Image of an address that reaches or passes a domain leaf.
Address germ_apply(const GermElement& g, const Address& a);

// Depth below which the germ acts rigidly: the maximum over leaf pairs of
// the longer address plus the trimmed label depth. Rigidity makes this the
// comparison level for equality and the canonical level for the sign.
int germ_total_depth(const GermElement& g);

// Splits domain leaf i and its image leaf into their children; the children
// route through the label's root permutation and the label splits into its
// image-child subtrees. The result is a representative, not reduced.
GermElement refine_dom_leaf(const GermElement& g, int dom_index);

// Refined representative on the given finer domain (or codomain). Both keep
// the stored form unreduced so the requested interface survives.
GermElement germ_on_domain(const GermElement& g, const LeafSet& target);
GermElement germ_with_codomain(const GermElement& g, const LeafSet& target);

// Collapses sibling families that map to sibling families child-to-child and
// whose labels merge into one A-portrait, leftmost-first until stable. Keeps
// label-free elements label-free, so it agrees with tree-pair reduction on
// those; distinct reduced representatives of one element still exist (a root
// permutation inside a label can encode the same swap as sigma).
GermElement germ_reduce(const GermElement& g);

// g first, then h; interfaces meet on the common refinement of cod(g) and
// dom(h); the result is reduced.
GermElement germ_compose(const GermElement& g, const GermElement& h);

GermElement germ_inverse(const GermElement& g);

// Agreement of the boundary maps, decided exactly by comparing images of all
// addresses at the deeper of the two rigidity levels.
bool germ_equal(const GermElement& g, const GermElement& h,
                std::size_t cap = kDefaultCap);

// Layer flags of the stored representative. in_a is independent of the
// representative (it asks whether uniformising the domain to the level set
// V_N, N = total depth, forces the codomain to V_N as well); the other flags
// describe how the stored form presents the element.
struct GermMembership {
  bool in_v = false;       // labels all trivial
  bool in_f = false;       // in_v and the pair preserves boundary order
  bool in_a = false;       // level-preserving
  bool in_o = false;       // in_a with all labels inside the local group
  bool in_wtilde = false;  // in_o with dom = cod = V_1
};

GermMembership germ_membership(const GermElement& g);

// Permutation of the level addresses by sorted position: entry i is the rank
// of germ_apply(level[i]) within the sorted image code. Requires the level to
// be at or below the rigidity depth.
Perm induced_level_perm(const GermElement& g, int level,
                        std::size_t cap = kDefaultCap);

// Image of a complete prefix code refining the domain: the code of images
// with the index bijection. index_map[i] is the position of the image of
// domain leaf i inside the image code.
struct LeafMap {
  LeafSet domain;
  LeafSet image;
  std::vector<int> index_map;
};

LeafMap phi_leafmap(const GermElement& g, const LeafSet& fine);

// Unique factorisation g = f then a with f an order-preserving label-free
// pair onto the level set V_N and a level-preserving. f is returned with its
// working interface dom -> V_N intact (not reduced).
struct FAFactorization {
  TreePair f;
  GermElement a;
};

FAFactorization factor_fa(const GermElement& g);

// Sign of the induced position permutation at the canonical level (0 = even,
// 1 = odd). For odd deep arity the value is the same at every level at or
// beyond the total depth; for even deep arity every strictly deeper level is
// even, so only the canonical level carries information.
int chi_sign(const GermElement& g);
int chi_sign_at(const GermElement& g, int level, std::size_t cap = kDefaultCap);

// Membership in the kernel-of-sign subgroup when the sign cuts one out: for
// odd deep arity with the local group inside the alternating group the
// subgroup has index two and membership is chi_sign = 0; otherwise every
// element belongs and the rationale says why the sign cannot separate.
struct MVerdict {
  bool member = false;
  std::string rationale;
};

MVerdict m_membership(const GermElement& g);

}  // namespace trunk

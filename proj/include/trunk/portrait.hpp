#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trunk/perm.hpp"
#include "trunk/permgroup.hpp"

namespace trunk {

// Shape of the rooted tree a portrait lives on: the root has root_arity
// children, every deeper internal vertex has deep_arity children. Equal
// arities give the regular rooted tree.
struct ArityProfile {
  int root_arity = 0;
  int deep_arity = 0;

  bool operator==(const ArityProfile& o) const {
    return root_arity == o.root_arity && deep_arity == o.deep_arity;
  }
  // Number of vertices at the given level (root = level 0).
  unsigned long long level_width(int level) const;
};

using Address = std::vector<int>;

std::string format_address(const Address& a);          // "2.0.1", root = ""
Address parse_address(const std::string& s, const ArityProfile& profile);

// Automorphism of the profile tree truncated at a finite depth, stored as one
// permutation label per internal vertex of level < depth. Labels are indexed
// by the image-side prefix: applying an address routes its first symbol
// through the root label and each later symbol through the label stored at
// the prefix already produced. Below the recorded depth the action is the
// identity, so a portrait acts on addresses of every length.
class Portrait {
 public:
  Portrait() = default;
  static Portrait identity(ArityProfile profile, int depth = 0);
  // levels[m] lists the labels of level m in address order; arity of level 0
  // is root_arity, deeper levels deep_arity.
  static Portrait from_levels(ArityProfile profile, std::vector<std::vector<Perm>> levels);

  const ArityProfile& profile() const { return profile_; }
  int depth() const { return static_cast<int>(levels_.size()); }
  const Perm& label(int level, unsigned long long rank) const;
  const Perm& label_at(const Address& image_prefix) const;
  const std::vector<std::vector<Perm>>& levels() const { return levels_; }

  void set_label(int level, unsigned long long rank, Perm p);

  Address apply(const Address& a) const;

  // Drops all-identity deepest levels; the canonical form used by equality.
  Portrait trimmed() const;
  bool is_identity() const;

  bool operator==(const Portrait& o) const;
  bool operator!=(const Portrait& o) const { return !(*this == o); }

 private:
  ArityProfile profile_;
  std::vector<std::vector<Perm>> levels_;
};

// p first, then q. Profiles must match; depths may differ.
Portrait compose(const Portrait& p, const Portrait& q);
Portrait inverse(const Portrait& p);

// Subtree automorphism below root child i; requires the root label to fix i.
Portrait restrict_to_child(const Portrait& p, int i);

// Labels hanging below image child j, as a portrait over the (deep, deep)
// subtree: p sends any address t.x with root(t) = j to j.(subtree applied to x).
Portrait subtree_at_image_child(const Portrait& p, int j);

// Inverse of the subtree split: root label first, then one child portrait per
// image slot. Children must share a uniform (a, a) profile with a matching root.
Portrait assemble_portrait(const Perm& root, const std::vector<Portrait>& children);

// Local data for the tower over a fixed finite group D of degree d: its
// normalizer N in the symmetric group and both element sets.
struct TowerLocal {
  PermGroup D;
  PermGroup N;
  PermSet d_set;
  PermSet n_set;
  unsigned long long d_order = 0;
  unsigned long long n_order = 0;
  unsigned long long index = 0;  // [N : D]
};

TowerLocal make_tower_local(const PermGroup& D, std::size_t cap = kDefaultCap);

// All labels drawn from D. Requires a uniform profile (d, d) with d matching.
bool is_w_portrait(const Portrait& p, const TowerLocal& local);

// Root label in N; every deeper level has labels in N lying pairwise in the
// same coset of D.
bool is_a_portrait(const Portrait& p, const TowerLocal& local);

struct TowerOrders {
  unsigned __int128 w_order = 0;  // depth-n portraits labelled inside D
  unsigned __int128 a_order = 0;  // depth-n portraits normalizing the tower
  unsigned __int128 ratio = 0;    // a_order / w_order = [N:D]^n
};

// Orders of the depth-n truncations by the wreath recursion, exact in 128
// bits; throws Overflow rather than wrapping.
TowerOrders tower_orders(const TowerLocal& local, int n);

// The group of D-labelled depth-n portraits acts transitively on level-n
// addresses (checked by orbit growth, never by full enumeration).
bool level_transitive_check(const PermGroup& D, int n, std::size_t cap = kDefaultCap);

std::string u128_to_string(unsigned __int128 v);

}  // namespace trunk

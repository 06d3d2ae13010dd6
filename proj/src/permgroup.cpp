#include "trunk/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "trunk/error.hpp"

namespace trunk {

PermGroup PermGroup::from_generators(int degree, std::vector<Perm> gens, std::string name) {
  for (const Perm& p : gens)
    if (p.degree() != degree)
      throw IncompatibleParameters("generator degree " + std::to_string(p.degree()) +
                                   " does not match group degree " + std::to_string(degree));
  PermGroup g;
  g.degree = degree;
  g.generators = std::move(gens);
  g.name = std::move(name);
  return g;
}

std::vector<Perm> enumerate_elements(const PermGroup& g, std::size_t cap) {
  std::vector<Perm> out;
  PermSet seen;
  Perm id(g.degree);
  out.push_back(id);
  seen.insert(id);
  for (std::size_t head = 0; head < out.size(); ++head) {
    Perm cur = out[head];  // copy: out may reallocate below
    for (const Perm& s : g.generators) {
      Perm next = cur * s;
      if (seen.insert(next).second) {
        if (out.size() + 1 > cap) throw OrderExceedsCap(cap);
        out.push_back(std::move(next));
      }
    }
  }
  return out;
}

PermSet element_set(const PermGroup& g, std::size_t cap) {
  auto v = enumerate_elements(g, cap);
  return PermSet(v.begin(), v.end());
}

unsigned long long group_order(const PermGroup& g, std::size_t cap) {
  return enumerate_elements(g, cap).size();
}

std::vector<std::vector<int>> orbits(const PermGroup& g) {
  std::vector<int> owner(g.degree, -1);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < g.degree; ++start) {
    if (owner[start] >= 0) continue;
    std::vector<int> orbit{start};
    owner[start] = static_cast<int>(out.size());
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (const Perm& s : g.generators) {
        int next = s[orbit[head]];
        if (owner[next] < 0) {
          owner[next] = owner[start];
          orbit.push_back(next);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

bool is_transitive(const PermGroup& g) {
  return g.degree > 0 && orbits(g).size() == 1;
}

int transitivity_degree(const PermGroup& g, std::size_t cap) {
  if (!is_transitive(g)) return 0;
  int best = 0;
  for (int t = 1; t <= g.degree; ++t) {
    unsigned long long target = 1;
    for (int i = 0; i < t; ++i) target *= static_cast<unsigned long long>(g.degree - i);

    std::vector<int> base(t);
    std::iota(base.begin(), base.end(), 0);
    std::set<std::vector<int>> seen{base};
    std::deque<std::vector<int>> queue{base};
    while (!queue.empty()) {
      std::vector<int> cur = queue.front();
      queue.pop_front();
      for (const Perm& s : g.generators) {
        std::vector<int> next(t);
        for (int i = 0; i < t; ++i) next[i] = s[cur[i]];
        if (seen.insert(next).second) {
          if (seen.size() > cap) throw OrderExceedsCap(cap);
          queue.push_back(std::move(next));
        }
      }
    }
    if (seen.size() == target)
      best = t;
    else
      break;
  }
  return best;
}

PointStabilizerView point_stabilizer(const PermGroup& g, int point, std::size_t cap) {
  if (point < 0 || point >= g.degree)
    throw InvalidAddress("stabilized point " + std::to_string(point) +
                         " is outside 0.." + std::to_string(g.degree - 1));
  std::vector<Perm> fixing;
  for (const Perm& e : enumerate_elements(g, cap))
    if (e[point] == point) fixing.push_back(e);

  PointStabilizerView view;
  view.point = point;
  view.full = PermGroup::from_generators(g.degree, reduce_generators(g.degree, fixing, cap),
                                         g.name.empty() ? "" : g.name + "_stab" + std::to_string(point));
  for (int i = 0; i < g.degree; ++i)
    if (i != point) view.kept_points.push_back(i);

  std::vector<int> new_label(g.degree, -1);
  for (std::size_t i = 0; i < view.kept_points.size(); ++i)
    new_label[view.kept_points[i]] = static_cast<int>(i);

  std::vector<Perm> restricted_gens;
  for (const Perm& s : view.full.generators) {
    std::vector<int> img(g.degree - 1);
    for (int old_pt : view.kept_points) img[new_label[old_pt]] = new_label[s[old_pt]];
    restricted_gens.push_back(Perm::from_images(std::move(img)));
  }
  view.restricted = PermGroup::from_generators(
      g.degree - 1, std::move(restricted_gens),
      view.full.name.empty() ? "" : view.full.name + "_restricted");
  return view;
}

bool BlockSystem::is_trivial() const {
  return blocks.size() == static_cast<std::size_t>(degree) || blocks.size() <= 1;
}

bool BlockSystem::refines(const BlockSystem& coarser) const {
  std::vector<int> cell_of(degree, -1);
  for (std::size_t i = 0; i < coarser.blocks.size(); ++i)
    for (int p : coarser.blocks[i]) cell_of[p] = static_cast<int>(i);
  for (const auto& b : blocks) {
    for (int p : b)
      if (cell_of[p] != cell_of[b[0]]) return false;
  }
  return true;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

BlockSystem dsu_to_system(int degree, Dsu& dsu) {
  std::map<int, std::vector<int>> cells;
  for (int p = 0; p < degree; ++p) cells[dsu.find(p)].push_back(p);
  BlockSystem out;
  out.degree = degree;
  for (auto& [root, cell] : cells) out.blocks.push_back(std::move(cell));
  return out;
}

}  // namespace

BlockSystem minimal_block_closure(const PermGroup& g, const std::vector<int>& seed) {
  Dsu dsu(g.degree);
  std::deque<std::pair<int, int>> queue;
  for (std::size_t i = 1; i < seed.size(); ++i)
    if (dsu.unite(seed[0], seed[i])) queue.emplace_back(seed[0], seed[i]);
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    for (const Perm& s : g.generators)
      if (dsu.unite(s[a], s[b])) queue.emplace_back(s[a], s[b]);
  }
  return dsu_to_system(g.degree, dsu);
}

std::vector<BlockSystem> block_systems(const PermGroup& g) {
  if (!is_transitive(g)) throw NotTransitive();
  std::vector<BlockSystem> candidates;
  for (int b = 1; b < g.degree; ++b) {
    BlockSystem sys = minimal_block_closure(g, {0, b});
    if (sys.is_trivial()) continue;
    if (std::find(candidates.begin(), candidates.end(), sys) == candidates.end())
      candidates.push_back(std::move(sys));
  }
  std::vector<BlockSystem> minimal;
  for (const auto& sys : candidates) {
    bool has_finer = false;
    for (const auto& other : candidates)
      if (!(other == sys) && other.refines(sys)) {
        has_finer = true;
        break;
      }
    if (!has_finer) minimal.push_back(sys);
  }
  return minimal;
}

namespace {

// A subset S containing 0 is a block iff the finest system gluing S together
// has exactly S as the cell of 0.
bool is_block_seed(const PermGroup& g, const std::vector<int>& s) {
  BlockSystem sys = minimal_block_closure(g, s);
  for (const auto& cell : sys.blocks)
    if (std::find(cell.begin(), cell.end(), 0) != cell.end()) return cell == s;
  return false;
}

}  // namespace

std::vector<BlockSystem> maximal_blocks(const PermGroup& g) {
  if (!is_transitive(g)) throw NotTransitive();
  if (g.degree > 20)
    throw DegreeTooLarge(g.degree, 20);  // subset enumeration over 2^(degree-1)
  std::vector<BlockSystem> systems;
  for (unsigned long mask = 1; mask < (1ul << (g.degree - 1)); ++mask) {
    std::vector<int> s{0};
    for (int p = 1; p < g.degree; ++p)
      if (mask & (1ul << (p - 1))) s.push_back(p);
    if (s.size() < 2 || s.size() >= static_cast<std::size_t>(g.degree)) continue;
    if (g.degree % static_cast<int>(s.size()) != 0) continue;
    if (!is_block_seed(g, s)) continue;
    BlockSystem sys = minimal_block_closure(g, s);
    if (sys.is_trivial()) continue;
    if (std::find(systems.begin(), systems.end(), sys) == systems.end())
      systems.push_back(std::move(sys));
  }
  std::vector<BlockSystem> maximal;
  for (const auto& sys : systems) {
    bool has_coarser = false;
    for (const auto& other : systems)
      if (!(other == sys) && sys.refines(other)) {
        has_coarser = true;
        break;
      }
    if (!has_coarser) maximal.push_back(sys);
  }
  return maximal;
}

bool is_primitive(const PermGroup& g) {
  if (!is_transitive(g)) return false;
  return block_systems(g).empty();
}

bool is_regular_on_block(const PermGroup& g, const BlockSystem& b, std::size_t cap) {
  if (b.degree != g.degree)
    throw IncompatibleParameters("block system degree does not match the group");
  auto elements = enumerate_elements(g, cap);
  for (const auto& cell : b.blocks) {
    std::vector<Perm> setwise;
    for (const Perm& e : elements) {
      bool stable = true;
      for (int p : cell)
        if (!std::binary_search(cell.begin(), cell.end(), e[p])) {
          stable = false;
          break;
        }
      if (stable) setwise.push_back(e);
    }
    // Regular: transitive on the cell and exactly one element per target.
    std::set<int> images_of_first;
    for (const Perm& e : setwise) images_of_first.insert(e[cell[0]]);
    if (images_of_first.size() != cell.size()) return false;
    if (setwise.size() != cell.size()) return false;
  }
  return true;
}

PermGroup normalizer_in_sym(const PermGroup& g, int degree_limit, std::size_t cap) {
  if (g.degree > degree_limit) throw DegreeTooLarge(g.degree, degree_limit);
  PermSet elems = element_set(g, cap);

  // Orbit structure pruning: a normalizing permutation maps orbits onto
  // orbits of equal size.
  auto orbs = orbits(g);
  std::vector<int> orbit_size_of(g.degree);
  for (const auto& o : orbs)
    for (int p : o) orbit_size_of[p] = static_cast<int>(o.size());

  std::vector<int> images(g.degree);
  std::iota(images.begin(), images.end(), 0);
  std::vector<Perm> normalizing;
  do {
    bool ok = true;
    for (int p = 0; p < g.degree; ++p)
      if (orbit_size_of[images[p]] != orbit_size_of[p]) {
        ok = false;
        break;
      }
    if (!ok) continue;
    Perm b = Perm::from_images(images);
    for (const Perm& s : g.generators)
      if (!elems.count(conjugate(s, b))) {
        ok = false;
        break;
      }
    if (ok) normalizing.push_back(std::move(b));
  } while (std::next_permutation(images.begin(), images.end()));

  PermGroup n = PermGroup::from_generators(
      g.degree, reduce_generators(g.degree, normalizing, cap),
      g.name.empty() ? "normalizer" : "N_Sym(" + g.name + ")");
  return n;
}

bool is_generated_by_point_stabilizers(const PermGroup& g, std::size_t cap) {
  auto elements = enumerate_elements(g, cap);
  std::vector<Perm> stab_elements;
  for (const Perm& e : elements)
    if (!e.fixed_points().empty() && !e.is_identity()) stab_elements.push_back(e);
  if (stab_elements.empty()) return elements.size() == 1;
  PermGroup h = PermGroup::from_generators(g.degree, std::move(stab_elements));
  return enumerate_elements(h, cap).size() == elements.size();
}

namespace {

// Partial-consistency test: some element of target must agree with the
// partial conjugate of e (on points whose image is already decided).
bool partially_consistent(const Perm& e, const std::vector<int>& img, int decided,
                          const std::vector<Perm>& target) {
  for (const Perm& c : target) {
    bool ok = true;
    for (int p = 0; p < decided && ok; ++p) {
      int q = e[p];
      if (q < decided && c[img[p]] != img[q]) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

bool equivalence_backtrack(const std::vector<Perm>& g1_gens, const PermSet& g2_elems,
                           const std::vector<Perm>& g2_list, int degree, int depth,
                           std::vector<int>& img, std::vector<char>& used) {
  if (depth == degree) {
    for (const Perm& s : g1_gens) {
      Perm b = Perm::from_images(img);
      if (!g2_elems.count(conjugate(s, b))) return false;
    }
    return true;
  }
  for (int candidate = 0; candidate < degree; ++candidate) {
    if (used[candidate]) continue;
    img[depth] = candidate;
    used[candidate] = 1;
    bool ok = true;
    for (const Perm& s : g1_gens)
      if (!partially_consistent(s, img, depth + 1, g2_list)) {
        ok = false;
        break;
      }
    if (ok && equivalence_backtrack(g1_gens, g2_elems, g2_list, degree, depth + 1, img, used))
      return true;
    used[candidate] = 0;
  }
  img[depth] = -1;
  return false;
}

}  // namespace

std::optional<Perm> permutation_equivalence(const PermGroup& g1, const PermGroup& g2,
                                            std::size_t cap) {
  if (g1.degree != g2.degree) return std::nullopt;
  auto e1 = enumerate_elements(g1, cap);
  auto e2 = enumerate_elements(g2, cap);
  if (e1.size() != e2.size()) return std::nullopt;
  PermSet set2(e2.begin(), e2.end());
  std::vector<int> img(g1.degree, -1);
  std::vector<char> used(g1.degree, 0);
  if (equivalence_backtrack(g1.generators, set2, e2, g1.degree, 0, img, used))
    return Perm::from_images(img);
  return std::nullopt;
}

namespace {

// Derived subgroup as the closure of all element commutators for small
// groups; for large ones, the normal closure of generator commutators.
std::vector<Perm> derived_subgroup_elements(const PermGroup& g,
                                            const std::vector<Perm>& elements,
                                            std::size_t cap) {
  std::vector<Perm> comm_gens;
  auto add_commutator = [&](const Perm& a, const Perm& b) {
    Perm c = a.inverse() * b.inverse() * a * b;
    if (!c.is_identity()) comm_gens.push_back(std::move(c));
  };
  if (elements.size() <= 2000) {
    for (const Perm& a : elements)
      for (const Perm& b : g.generators) add_commutator(a, b);
  } else {
    for (const Perm& a : g.generators)
      for (const Perm& b : g.generators) add_commutator(a, b);
  }
  if (comm_gens.empty()) return {Perm(g.degree)};
  comm_gens = reduce_generators(g.degree, comm_gens, cap);

  // Normal closure under conjugation by the group's generators.
  while (true) {
    PermGroup d = PermGroup::from_generators(g.degree, comm_gens);
    auto delems = enumerate_elements(d, cap);
    PermSet dset(delems.begin(), delems.end());
    bool grew = false;
    for (const Perm& e : delems) {
      for (const Perm& s : g.generators) {
        Perm c = s.inverse() * e * s;
        if (!dset.count(c)) {
          comm_gens.push_back(c);
          grew = true;
        }
      }
      if (grew) break;
    }
    if (!grew) return delems;
  }
}

}  // namespace

StructureFlags structure_flags(const PermGroup& g, std::size_t cap) {
  auto elements = enumerate_elements(g, cap);
  StructureFlags f;
  f.order = elements.size();
  f.in_alternating = std::all_of(g.generators.begin(), g.generators.end(),
                                 [](const Perm& p) { return p.is_even(); });
  f.is_perfect = derived_subgroup_elements(g, elements, cap).size() == elements.size();

  std::vector<char> fixed_by_all(g.degree, 1);
  bool free_action = true;
  for (const Perm& e : elements) {
    if (e.is_identity()) continue;
    auto fixed = e.fixed_points();
    if (!fixed.empty()) free_action = false;
    std::vector<char> here(g.degree, 0);
    for (int p : fixed) here[p] = 1;
    for (int p = 0; p < g.degree; ++p) fixed_by_all[p] &= here[p];
  }
  f.no_global_fixed_point =
      elements.size() > 1 &&
      std::none_of(fixed_by_all.begin(), fixed_by_all.end(), [](char c) { return c; });
  f.nonidentity_fixed_point_free = free_action && elements.size() > 1;
  return f;
}

namespace {

int element_order(const Perm& p) {
  Perm acc = p;
  int n = 1;
  while (!acc.is_identity()) {
    acc = acc * p;
    ++n;
  }
  return n;
}

// Word-closure homomorphism check: given candidate images for the
// generators, rebuild the closure of g1 while mapping along, and confirm the
// map is well-defined and injective.
bool extends_to_isomorphism(const PermGroup& g1, const std::vector<Perm>& e1,
                            const std::vector<Perm>& images, int target_degree) {
  std::unordered_map<Perm, Perm, PermHash> phi;
  phi.reserve(e1.size());
  std::vector<Perm> order;
  order.reserve(e1.size());
  Perm id1(g1.degree);
  phi.emplace(id1, Perm(target_degree));
  order.push_back(id1);
  PermSet image_set;
  image_set.insert(Perm(target_degree));
  for (std::size_t head = 0; head < order.size(); ++head) {
    Perm cur = order[head];
    Perm cur_img = phi.at(cur);
    for (std::size_t i = 0; i < g1.generators.size(); ++i) {
      Perm next = cur * g1.generators[i];
      Perm next_img = cur_img * images[i];
      auto it = phi.find(next);
      if (it != phi.end()) {
        if (!(it->second == next_img)) return false;
      } else {
        if (!image_set.insert(next_img).second) return false;  // not injective
        phi.emplace(next, next_img);
        order.push_back(std::move(next));
      }
    }
  }
  return phi.size() == e1.size();
}

bool iso_backtrack(const PermGroup& g1, const std::vector<Perm>& e1,
                   const std::vector<std::vector<Perm>>& candidates, std::size_t idx,
                   std::vector<Perm>& chosen, int target_degree) {
  if (idx == candidates.size())
    return extends_to_isomorphism(g1, e1, chosen, target_degree);
  for (const Perm& c : candidates[idx]) {
    chosen.push_back(c);
    if (iso_backtrack(g1, e1, candidates, idx + 1, chosen, target_degree)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

bool abstractly_isomorphic(const PermGroup& g1, const PermGroup& g2, std::size_t cap) {
  auto e1 = enumerate_elements(g1, cap);
  auto e2 = enumerate_elements(g2, cap);
  if (e1.size() != e2.size()) return false;

  std::map<int, int> hist1, hist2;
  std::map<int, std::vector<Perm>> by_order2;
  for (const Perm& e : e1) hist1[element_order(e)]++;
  for (const Perm& e : e2) {
    int o = element_order(e);
    hist2[o]++;
    by_order2[o].push_back(e);
  }
  if (hist1 != hist2) return false;

  std::vector<std::vector<Perm>> candidates;
  for (const Perm& s : g1.generators) candidates.push_back(by_order2[element_order(s)]);
  std::vector<Perm> chosen;
  return iso_backtrack(g1, e1, candidates, 0, chosen, g2.degree);
}

std::vector<Perm> reduce_generators(int degree, const std::vector<Perm>& elements,
                                    std::size_t cap) {
  std::vector<Perm> gens;
  PermSet closed;
  closed.insert(Perm(degree));
  for (const Perm& e : elements) {
    if (closed.count(e)) continue;
    gens.push_back(e);
    PermGroup h = PermGroup::from_generators(degree, gens);
    closed = element_set(h, cap);
  }
  return gens;
}

}  // namespace trunk

#include "trunk/ball.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "trunk/error.hpp"
#include "trunk/portrait.hpp"

using namespace trunk;

namespace {

// Oracle: decides ball-group membership from scratch. A valid element
// preserves levels and adjacency, keeps the centre(s) in place, and induces a
// colour permutation from the local set at every internal vertex.
bool member_oracle(const BallModel& m, const Perm& g, const PermSet& locals) {
  const int n = m.vertex_count();
  for (int i = 0; i < n; ++i) {
    if (m.level[g[i]] != m.level[i]) return false;
  }
  if (m.edge_centered) {
    if (!((g[0] == 0 && g[1] == 1) || (g[0] == 1 && g[1] == 0))) return false;
  } else {
    if (g[0] != 0) return false;
  }
  int first_deep = m.edge_centered ? 2 : 1;
  for (int i = first_deep; i < n; ++i) {
    if (g[m.parent[i]] != m.parent[g[i]]) return false;
  }
  for (int x = 0; x < n; ++x) {
    if (m.child_slots[x].empty()) continue;
    std::vector<int> colour_map(m.valency, -1);
    if (m.parent[x] >= 0) colour_map[m.parent_colour[x]] = m.parent_colour[g[x]];
    for (std::size_t j = 0; j < m.child_slots[x].size(); ++j) {
      int child = m.child_slots[x][j];
      colour_map[m.slot_colour[x][j]] = m.parent_colour[g[child]];
    }
    for (int c : colour_map) {
      if (c < 0) return false;
    }
    if (!locals.count(Perm::from_images(colour_map))) return false;
  }
  return true;
}

// Oracle: scans every permutation of the vertices. Only for tiny balls.
unsigned long long scan_count(const BallModel& m, const PermSet& locals) {
  std::vector<int> ids(m.vertex_count());
  std::iota(ids.begin(), ids.end(), 0);
  unsigned long long count = 0;
  do {
    if (member_oracle(m, Perm::from_images(ids), locals)) ++count;
  } while (std::next_permutation(ids.begin(), ids.end()));
  return count;
}

unsigned long long upow(unsigned long long b, int e) {
  unsigned long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Predicted orders for a transitive local group.
unsigned long long vertex_ball_order(unsigned long long f, unsigned long long f0,
                                     int d, int radius) {
  int internal_below = 0;
  int width = d;
  for (int level = 1; level < radius; ++level) {
    internal_below += width;
    width *= d - 1;
  }
  return f * upow(f0, internal_below);
}

unsigned long long edge_ball_order(unsigned long long f0, int d, int radius) {
  int per_half = 0;
  int width = 1;
  for (int level = 0; level < radius; ++level) {
    per_half += width;
    width *= d - 1;
  }
  return 2 * upow(f0, 2 * per_half);
}

Address address_of(const BallModel& m, int v) {
  Address a;
  while (m.parent[v] >= 0 && !(m.edge_centered && m.level[v] == 0)) {
    int p = m.parent[v];
    a.push_back(m.slot_of_colour[p][m.parent_colour[v]]);
    v = p;
  }
  std::reverse(a.begin(), a.end());
  return a;
}

unsigned long long slot_rank(const ArityProfile& profile, const Address& a) {
  unsigned long long r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    r = i == 0 ? static_cast<unsigned long long>(a[0]) : r * profile.deep_arity + a[i];
  }
  return r;
}

// Slot-path view of a vertex-ball element: one label per internal vertex,
// stored at the image vertex's address.
Portrait portrait_of(const BallModel& m, const Perm& g) {
  ArityProfile profile{m.valency, m.valency - 1};
  Portrait p = Portrait::identity(profile, m.radius);
  for (int x = 0; x < m.vertex_count(); ++x) {
    if (m.child_slots[x].empty()) continue;
    int y = g[x];
    std::vector<int> tau(m.child_slots[x].size());
    for (std::size_t j = 0; j < m.child_slots[x].size(); ++j) {
      int image_child = g[m.child_slots[x][j]];
      tau[j] = m.slot_of_colour[y][m.parent_colour[image_child]];
    }
    p.set_label(m.level[x], slot_rank(profile, address_of(m, y)),
                Perm::from_images(tau));
  }
  return p;
}

}  // namespace

TEST_CASE("canonical colouring shapes") {
  BallModel m = vertex_ball_model(fixtures::sym(3), 2);
  CHECK(m.vertex_count() == 10);
  CHECK(m.slot_colour[0] == std::vector<int>{0, 1, 2});
  // Child reached along colour 1 gives its slots the remaining colours.
  int via1 = m.child_slots[0][1];
  CHECK(m.parent_colour[via1] == 1);
  CHECK(m.slot_colour[via1] == std::vector<int>{0, 2});
  CHECK(m.level == std::vector<int>{0, 1, 1, 1, 2, 2, 2, 2, 2, 2});

  BallModel e = edge_ball_model(fixtures::sym(3), 2);
  CHECK(e.vertex_count() == 14);
  CHECK(e.parent[0] == 1);
  CHECK(e.parent[1] == 0);
  CHECK(e.parent_colour[0] == 0);
  CHECK(e.slot_colour[0] == std::vector<int>{1, 2});
  CHECK(std::count(e.level.begin(), e.level.end(), 2) == 8);

  CHECK_THROWS_AS(vertex_ball_model(fixtures::sym(3), 0), IncompatibleParameters);
  CHECK_THROWS_AS(vertex_ball_model(fixtures::cyclic(1), 1), IncompatibleParameters);
}

TEST_CASE("tiny balls against the full permutation scan") {
  struct Case {
    PermGroup local;
    int radius;
    bool edge;
    unsigned long long expect;
  };
  std::vector<Case> cases = {
      {fixtures::sym(2), 2, false, 2},
      {fixtures::sym(3), 1, false, 6},
      {fixtures::cyclic(3), 1, false, 3},
      {fixtures::sym(3), 1, true, 8},
      {fixtures::sym(2), 1, true, 2},
      {fixtures::cyclic(3), 1, true, 2},
  };
  for (const Case& c : cases) {
    BallModel m = c.edge ? edge_ball_model(c.local, c.radius)
                         : vertex_ball_model(c.local, c.radius);
    PermSet locals = element_set(c.local);
    CHECK(m.elements.size() == c.expect);
    CHECK(scan_count(m, locals) == c.expect);
    for (const Perm& g : m.elements) {
      CHECK(member_oracle(m, g, locals));
    }
  }
}

TEST_CASE("ball groups satisfy the membership oracle and close under products") {
  std::mt19937 rng(140);
  for (bool edge : {false, true}) {
    BallModel m = edge ? edge_ball_model(fixtures::sym(3), 2)
                       : vertex_ball_model(fixtures::sym(3), 2);
    PermSet locals = element_set(fixtures::sym(3));
    PermSet all(m.elements.begin(), m.elements.end());
    CHECK(all.size() == m.elements.size());
    CHECK(all.count(Perm(m.vertex_count())) == 1);
    std::uniform_int_distribution<std::size_t> pick(0, m.elements.size() - 1);
    for (int i = 0; i < 300; ++i) {
      const Perm& a = m.elements[pick(rng)];
      const Perm& b = m.elements[pick(rng)];
      CHECK(member_oracle(m, a, locals));
      CHECK(all.count(a * b) == 1);
      CHECK(all.count(a.inverse()) == 1);
    }
    CHECK(group_order(m.group) == m.elements.size());
  }
}

TEST_CASE("ball orders follow the stabilizer power formulas") {
  struct Case {
    PermGroup local;
    unsigned long long f0;
  };
  std::vector<Case> cases = {{fixtures::sym(3), 2}, {fixtures::cyclic(3), 1}};
  for (const Case& c : cases) {
    unsigned long long f = group_order(c.local);
    for (int radius = 1; radius <= 3; ++radius) {
      BallModel m = vertex_ball_model(c.local, radius);
      CHECK(m.elements.size() == vertex_ball_order(f, c.f0, 3, radius));
    }
    for (int radius = 1; radius <= 2; ++radius) {
      BallModel e = edge_ball_model(c.local, radius);
      CHECK(e.elements.size() == edge_ball_order(c.f0, 3, radius));
    }
  }
  CHECK(vertex_ball_model(fixtures::sym(3), 3).elements.size() == 3072);
  CHECK_THROWS_AS(vertex_ball_model(fixtures::sym(3), 3, 1000), OrderExceedsCap);
}

TEST_CASE("vertex ball elements are slot portraits") {
  std::mt19937 rng(33);
  BallModel m = vertex_ball_model(fixtures::sym(3), 2);
  std::uniform_int_distribution<std::size_t> pick(0, m.elements.size() - 1);
  for (int i = 0; i < 60; ++i) {
    const Perm& g = m.elements[pick(rng)];
    const Perm& h = m.elements[pick(rng)];
    Portrait pg = portrait_of(m, g);
    Portrait ph = portrait_of(m, h);

    // The slot-path action mirrors the vertex action.
    for (int v = 0; v < m.vertex_count(); ++v) {
      CHECK(pg.apply(address_of(m, v)) == address_of(m, g[v]));
    }
    // And products carry over.
    CHECK(compose(pg, ph) == portrait_of(m, g * h));
    CHECK(inverse(pg) == portrait_of(m, g.inverse()));
  }
}

TEST_CASE("central edge stabilizer splits into half-tree factors") {
  BallModel e = edge_ball_model(fixtures::sym(3), 2);
  TitsIndependence t = tits_independence_check(e);
  CHECK(t.edge_fixing_order == 64);
  CHECK(t.first_half_order == 8);
  CHECK(t.second_half_order == 8);
  CHECK(t.trivial_intersection);
  CHECK(t.order_factorizes);
  CHECK(t.every_element_splits);
  CHECK(t.holds);

  TitsIndependence shallow = tits_independence_check(edge_ball_model(fixtures::sym(3), 1));
  CHECK(shallow.edge_fixing_order == 4);
  CHECK(shallow.holds);

  TitsIndependence tiny = tits_independence_check(edge_ball_model(fixtures::cyclic(3), 2));
  CHECK(tiny.edge_fixing_order == 1);
  CHECK(tiny.holds);

  CHECK_THROWS_AS(tits_independence_check(vertex_ball_model(fixtures::sym(3), 1)),
                  IncompatibleParameters);
}

TEST_CASE("the local action is recoverable from the ball") {
  LocalActionRecovery r = recover_local_action(fixtures::sym(3), 2);
  CHECK(r.ball_order == 48);
  CHECK(r.kernel_order == 8);
  CHECK(group_order(r.recovered) == 6);
  REQUIRE(r.equivalence.has_value());

  LocalActionRecovery small = recover_local_action(fixtures::sym(2), 2);
  CHECK(small.ball_order == 2);
  CHECK(small.kernel_order == 1);
  CHECK(group_order(small.recovered) == 2);
  CHECK(small.equivalence.has_value());

  LocalActionRecovery cyc = recover_local_action(fixtures::cyclic(3), 2);
  CHECK(cyc.ball_order == 3);
  CHECK(group_order(cyc.recovered) == 3);
  CHECK(cyc.equivalence.has_value());

  PermGroup stuck = PermGroup::from_generators(3, {Perm::from_cycles("(0 1)", 3)});
  CHECK_THROWS_AS(recover_local_action(stuck, 2), RecipeDegenerate);
}

TEST_CASE("admissibility of local groups") {
  CHECK(bm_admissible(fixtures::sym(3)));
  CHECK(bm_admissible(fixtures::sym(4)));
  CHECK(bm_admissible(fixtures::alt(5)));
  CHECK(bm_admissible(fixtures::psl27()));
  CHECK_FALSE(bm_admissible(fixtures::cyclic(3)));
  CHECK_FALSE(bm_admissible(fixtures::sym(2)));
  CHECK_FALSE(bm_admissible(
      PermGroup::from_generators(4, {Perm::from_cycles("(0 1)", 4)})));
}

TEST_CASE("structural audit of two-transitive local actions") {
  TheoremAudit s3 = audit_theorems(fixtures::sym(3));
  CHECK(s3.applicable);
  CHECK(s3.stabilizer_order == 2);
  CHECK(s3.stabilizer_self_normalizing);
  CHECK_FALSE(s3.stabilizer_in_alternating);
  CHECK(s3.predicted_compactly_generated);
  CHECK(s3.predicted_index == 1);

  TheoremAudit s4 = audit_theorems(fixtures::sym(4));
  CHECK(s4.stabilizer_order == 6);
  CHECK(s4.stabilizer_self_normalizing);
  CHECK(s4.predicted_compactly_generated);
  CHECK(s4.predicted_index == 1);

  TheoremAudit s5 = audit_theorems(fixtures::sym(5));
  CHECK(s5.stabilizer_self_normalizing);
  CHECK(s5.predicted_compactly_generated);
  CHECK(s5.predicted_index == 1);

  TheoremAudit a4 = audit_theorems(fixtures::alt(4));
  CHECK(a4.applicable);
  CHECK(a4.stabilizer_order == 3);
  CHECK_FALSE(a4.stabilizer_self_normalizing);
  CHECK_FALSE(a4.predicted_compactly_generated);
  CHECK(a4.stabilizer_in_alternating);
  CHECK(a4.predicted_index == 2);

  TheoremAudit a5 = audit_theorems(fixtures::alt(5));
  CHECK(a5.stabilizer_order == 12);
  CHECK_FALSE(a5.stabilizer_self_normalizing);
  CHECK(a5.stabilizer_in_alternating);
  CHECK(a5.predicted_index == 1);  // even valency below

  TheoremAudit agl = audit_theorems(fixtures::agl15());
  CHECK(agl.applicable);
  CHECK(agl.stabilizer_order == 4);
  CHECK_FALSE(agl.stabilizer_self_normalizing);
  CHECK_FALSE(agl.predicted_compactly_generated);

  TheoremAudit c4 = audit_theorems(fixtures::cyclic(4));
  CHECK_FALSE(c4.applicable);
  CHECK(c4.order == 4);
  CHECK(c4.stabilizer_order == 0);
}

TEST_CASE("audit separates the two order-168 actions only abstractly") {
  TheoremAudit psl = audit_theorems(fixtures::psl27());
  CHECK(psl.order == 168);
  CHECK(psl.two_transitive);
  CHECK(psl.stabilizer_order == 21);
  CHECK_FALSE(psl.stabilizer_self_normalizing);
  CHECK(psl.stabilizer_in_alternating);
  CHECK(psl.predicted_index == 2);
  CHECK_FALSE(psl.stabilizer_perfect);

  TheoremAudit agl = audit_theorems(fixtures::agammal18());
  CHECK(agl.order == 168);
  CHECK(agl.two_transitive);
  CHECK(agl.stabilizer_order == 21);
  CHECK_FALSE(agl.stabilizer_self_normalizing);
  CHECK(agl.stabilizer_in_alternating);
  CHECK(agl.predicted_index == 2);
}

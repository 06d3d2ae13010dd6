#include "trunk/ball.hpp"

#include <algorithm>
#include <unordered_set>

#include "trunk/error.hpp"

namespace trunk {

namespace {

// Colours of the child slots at a vertex whose parent edge has the given
// colour (-1 at a centre vertex: all colours in slot order).
std::vector<int> child_colours(int valency, int parent_colour) {
  std::vector<int> out;
  for (int c = 0; c < valency; ++c) {
    if (c != parent_colour) out.push_back(c);
  }
  return out;
}

void add_vertex(BallModel& m, int parent, int parent_colour, int level) {
  m.parent.push_back(parent);
  m.parent_colour.push_back(parent_colour);
  m.level.push_back(level);
  m.child_slots.emplace_back();
  m.slot_colour.emplace_back();
  m.slot_of_colour.emplace_back(m.valency, -1);
}

void grow_children(BallModel& m, int vertex) {
  for (int c : child_colours(m.valency, m.parent_colour[vertex])) {
    int id = m.vertex_count();
    add_vertex(m, vertex, c, m.level[vertex] + 1);
    int slot = static_cast<int>(m.child_slots[vertex].size());
    m.child_slots[vertex].push_back(id);
    m.slot_colour[vertex].push_back(c);
    m.slot_of_colour[vertex][c] = slot;
  }
}

BallModel build_shape(const PermGroup& local, int radius, bool edge_centered) {
  if (local.degree < 2) {
    throw IncompatibleParameters("ball models need valency at least 2");
  }
  if (radius < 1) {
    throw IncompatibleParameters("ball radius must be at least 1");
  }
  BallModel m;
  m.valency = local.degree;
  m.radius = radius;
  m.edge_centered = edge_centered;
  m.local = local;
  if (edge_centered) {
    add_vertex(m, 1, 0, 0);
    add_vertex(m, 0, 0, 0);
  } else {
    add_vertex(m, -1, -1, 0);
  }
  for (int i = 0; i < m.vertex_count(); ++i) {
    if (m.level[i] < radius) grow_children(m, i);
  }
  return m;
}

// Depth-first choice of one colour map per internal vertex, children mapped
// colour by colour. Vertices are in breadth-first order, so every image is
// known by the time its vertex is processed.
void enumerate_ball(BallModel& m, const std::vector<Perm>& locals, std::size_t cap) {
  std::vector<int> internal;
  for (int i = 0; i < m.vertex_count(); ++i) {
    if (!m.child_slots[i].empty()) internal.push_back(i);
  }
  std::vector<int> img(m.vertex_count(), -1);

  auto emit = [&] {
    if (m.elements.size() >= cap) throw OrderExceedsCap(cap);
    m.elements.push_back(Perm::from_images(img));
  };

  auto step = [&](auto&& self, std::size_t t) -> void {
    if (t == internal.size()) {
      emit();
      return;
    }
    int x = internal[t];
    int y = img[x];
    for (const Perm& s : locals) {
      if (m.parent_colour[x] >= 0 && s[m.parent_colour[x]] != m.parent_colour[y]) {
        continue;
      }
      for (std::size_t j = 0; j < m.child_slots[x].size(); ++j) {
        int mapped = s[m.slot_colour[x][j]];
        img[m.child_slots[x][j]] = m.child_slots[y][m.slot_of_colour[y][mapped]];
      }
      self(self, t + 1);
    }
    for (int child : m.child_slots[x]) img[child] = -1;
  };

  if (m.edge_centered) {
    img[0] = 0;
    img[1] = 1;
    step(step, 0);
    img[0] = 1;
    img[1] = 0;
    step(step, 0);
  } else {
    img[0] = 0;
    step(step, 0);
  }

  m.group = PermGroup::from_generators(
      m.vertex_count(), reduce_generators(m.vertex_count(), m.elements, cap),
      (m.edge_centered ? "EdgeBall(" : "VertexBall(") + m.local.name + "," +
          std::to_string(m.radius) + ")");
}

}  // namespace

BallModel vertex_ball_model(const PermGroup& local, int radius, std::size_t cap) {
  BallModel m = build_shape(local, radius, false);
  enumerate_ball(m, enumerate_elements(local, cap), cap);
  return m;
}

BallModel edge_ball_model(const PermGroup& local, int radius, std::size_t cap) {
  BallModel m = build_shape(local, radius, true);
  enumerate_ball(m, enumerate_elements(local, cap), cap);
  return m;
}

Perm induced_colour_map(const BallModel& m, const Perm& g, int vertex) {
  if (vertex < 0 || vertex >= m.vertex_count() || m.child_slots[vertex].empty()) {
    throw IncompatibleParameters("colour maps are induced at internal vertices only");
  }
  int y = g[vertex];
  std::vector<int> images(m.valency, -1);
  if (m.parent_colour[vertex] >= 0) {
    images[m.parent_colour[vertex]] = m.parent_colour[y];
  }
  for (std::size_t j = 0; j < m.child_slots[vertex].size(); ++j) {
    int child = m.child_slots[vertex][j];
    int image_child = g[child];
    images[m.slot_colour[vertex][j]] = m.parent_colour[image_child];
  }
  return Perm::from_images(images);
}

bool bm_admissible(const PermGroup& local, std::size_t cap) {
  return is_transitive(local) && is_generated_by_point_stabilizers(local, cap);
}

TitsIndependence tits_independence_check(const BallModel& m) {
  if (!m.edge_centered) {
    throw IncompatibleParameters("independence is checked on an edge-centred ball");
  }
  std::vector<int> side(m.vertex_count());
  for (int i = 0; i < m.vertex_count(); ++i) {
    side[i] = i < 2 ? i : side[m.parent[i]];
  }
  auto fixes_side = [&](const Perm& g, int s) {
    for (int i = 0; i < m.vertex_count(); ++i) {
      if (side[i] == s && g[i] != i) return false;
    }
    return true;
  };

  std::vector<Perm> edge_fixing, first_half;
  PermSet second_set;
  for (const Perm& g : m.elements) {
    if (g[0] != 0) continue;
    edge_fixing.push_back(g);
    // Supported on one half means fixing the other half pointwise.
    if (fixes_side(g, 1)) first_half.push_back(g);
    if (fixes_side(g, 0)) second_set.insert(g);
  }

  TitsIndependence out;
  out.edge_fixing_order = edge_fixing.size();
  out.first_half_order = first_half.size();
  out.second_half_order = second_set.size();

  int both = 0;
  for (const Perm& g : first_half) {
    if (second_set.count(g)) ++both;
  }
  out.trivial_intersection = both == 1;
  out.order_factorizes =
      out.edge_fixing_order == out.first_half_order * out.second_half_order;

  out.every_element_splits = true;
  for (const Perm& g : edge_fixing) {
    bool split = false;
    for (const Perm& a : first_half) {
      if (second_set.count(a.inverse() * g)) {
        split = true;
        break;
      }
    }
    if (!split) {
      out.every_element_splits = false;
      break;
    }
  }
  out.holds = out.trivial_intersection && out.order_factorizes && out.every_element_splits;
  return out;
}

LocalActionRecovery recover_local_action(const PermGroup& local, int radius,
                                         std::size_t cap) {
  if (!is_transitive(local)) {
    throw RecipeDegenerate(
        "an intransitive colour group does not reach every neighbour of the centre");
  }
  BallModel m = vertex_ball_model(local, radius, cap);
  const int d = m.valency;

  PermSet induced;
  unsigned long long kernel = 0;
  for (const Perm& g : m.elements) {
    std::vector<int> images(d);
    bool identity = true;
    for (int j = 0; j < d; ++j) {
      images[j] = g[1 + j] - 1;
      identity = identity && images[j] == j;
    }
    if (identity) ++kernel;
    induced.insert(Perm::from_images(images));
  }

  LocalActionRecovery out;
  out.ball_order = m.elements.size();
  out.kernel_order = kernel;
  std::vector<Perm> induced_list(induced.begin(), induced.end());
  out.recovered = PermGroup::from_generators(
      d, reduce_generators(d, induced_list, cap), "Recovered(" + local.name + ")");
  if (out.kernel_order * induced.size() != out.ball_order) {
    throw RecipeDegenerate("the neighbour action does not factor the ball group");
  }
  out.equivalence = permutation_equivalence(out.recovered, local, cap);
  return out;
}

TheoremAudit audit_theorems(const PermGroup& f, std::size_t cap) {
  TheoremAudit out;
  out.name = f.name;
  out.degree = f.degree;
  out.order = group_order(f, cap);
  out.two_transitive = transitivity_degree(f, cap) >= 2;
  out.applicable = out.two_transitive;
  if (!out.applicable) return out;

  PointStabilizerView stab = point_stabilizer(f, f.degree - 1, cap);
  const PermGroup& s = stab.restricted;
  StructureFlags flags = structure_flags(s, cap);
  out.stabilizer_order = flags.order;
  out.stabilizer_perfect = flags.is_perfect;
  out.stabilizer_in_alternating = flags.in_alternating;
  out.stabilizer_self_normalizing =
      group_order(normalizer_in_sym(s, s.degree, cap), cap) == flags.order;
  out.predicted_compactly_generated = out.two_transitive && out.stabilizer_self_normalizing;
  int d = f.degree - 1;
  out.predicted_index = (d % 2 == 1 && out.stabilizer_in_alternating) ? 2 : 1;
  return out;
}

}  // namespace trunk

#include "trunk/germ.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <utility>

#include "trunk/error.hpp"

namespace trunk {

namespace {

using Triple = std::tuple<Address, Address, Portrait>;

void check_context(const GermElement& g) {
  if (!g.ctx) throw IncompatibleParameters("germ carries no context");
}

bool same_context(const GermContext& a, const GermContext& b) {
  return a.root_arity == b.root_arity && a.deep_arity() == b.deep_arity() &&
         a.local.d_set == b.local.d_set;
}

// Rebuilds a germ from (dom leaf, cod leaf, label) triples. Labels are
// trimmed; nothing is reduced.
GermElement from_triples(GermContextPtr ctx, std::vector<Triple> triples) {
  std::sort(triples.begin(), triples.end(), [](const Triple& a, const Triple& b) {
    return std::get<0>(a) < std::get<0>(b);
  });
  std::vector<Address> dom_leaves;
  std::vector<Address> cod_leaves;
  dom_leaves.reserve(triples.size());
  cod_leaves.reserve(triples.size());
  for (const Triple& t : triples) {
    dom_leaves.push_back(std::get<0>(t));
    cod_leaves.push_back(std::get<1>(t));
  }
  const int k = ctx->root_arity;
  const int d = ctx->deep_arity();
  LeafSet dom = LeafSet::validated(k, d, std::move(dom_leaves));
  LeafSet cod = LeafSet::validated(k, d, std::move(cod_leaves));
  std::vector<int> sigma(triples.size());
  std::vector<Portrait> labels;
  labels.reserve(triples.size());
  for (std::size_t i = 0; i < triples.size(); ++i) {
    sigma[i] = cod.index_of(std::get<1>(triples[i]));
    labels.push_back(std::get<2>(triples[i]).trimmed());
  }
  GermElement out;
  out.ctx = std::move(ctx);
  out.pair = TreePair::validated(std::move(dom), std::move(cod), std::move(sigma));
  out.labels = std::move(labels);
  return out;
}

GermElement reduce_impl(GermElement g) {
  const std::size_t d = static_cast<std::size_t>(g.ctx->deep_arity());
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<Address>& dom = g.pair.dom.leaves;
    const std::vector<Address>& cod = g.pair.cod.leaves;
    for (std::size_t i = 0; i + d <= dom.size(); ++i) {
      const Address& u0 = dom[i];
      if (u0.size() < 2 || u0.back() != 0) continue;
      const Address& c0 = cod[g.pair.sigma[i]];
      if (c0.size() < 2 || c0.back() != 0) continue;
      bool family = true;
      for (std::size_t t = 1; t < d && family; ++t) {
        Address du = u0;
        du.back() = static_cast<int>(t);
        Address dc = c0;
        dc.back() = static_cast<int>(t);
        family = dom[i + t] == du && cod[g.pair.sigma[i + t]] == dc;
      }
      if (!family) continue;
      std::vector<Portrait> children(g.labels.begin() + i, g.labels.begin() + i + d);
      Portrait merged = assemble_portrait(Perm(static_cast<int>(d)), children);
      if (!is_a_portrait(merged, g.ctx->local)) continue;

      std::vector<Triple> triples;
      triples.reserve(dom.size() - d + 1);
      for (std::size_t j = 0; j < dom.size(); ++j) {
        if (j == i) {
          Address u = u0;
          u.pop_back();
          Address v = c0;
          v.pop_back();
          triples.emplace_back(std::move(u), std::move(v), std::move(merged));
        } else if (j < i || j >= i + d) {
          triples.emplace_back(dom[j], cod[g.pair.sigma[j]], g.labels[j]);
        }
      }
      g = from_triples(g.ctx, std::move(triples));
      changed = true;
      break;
    }
  }
  return g;
}

// The level set, guarded by the cap before any allocation.
LeafSet checked_level(const GermContext& ctx, int n, std::size_t cap) {
  unsigned __int128 count = ctx.root_arity;
  for (int m = 1; m < n; ++m) {
    count *= static_cast<unsigned>(ctx.deep_arity());
    if (count > cap) throw OrderExceedsCap(cap);
  }
  if (count > cap) throw OrderExceedsCap(cap);
  return LeafSet::level(ctx.root_arity, ctx.deep_arity(), n);
}

}  // namespace

GermContextPtr make_germ_context(int root_arity, const PermGroup& local_group,
                                 std::size_t cap) {
  if (root_arity < 1) {
    throw IncompatibleParameters("root arity must be at least 1");
  }
  if (local_group.degree < 2) {
    throw IncompatibleParameters("local group degree must be at least 2");
  }
  auto ctx = std::make_shared<GermContext>();
  ctx->root_arity = root_arity;
  ctx->local = make_tower_local(local_group, cap);
  return ctx;
}

GermElement make_germ(GermContextPtr ctx, TreePair pair, std::vector<Portrait> labels) {
  if (!ctx) throw IncompatibleParameters("germ carries no context");
  const int k = ctx->root_arity;
  const int d = ctx->deep_arity();
  if (pair.dom.root_arity != k || pair.dom.deep_arity != d) {
    throw IncompatibleParameters("tree pair arities do not match the context");
  }
  if (labels.size() != pair.dom.leaves.size()) {
    throw IncompatibleParameters("need one label per domain leaf");
  }
  const ArityProfile uniform{d, d};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!(labels[i].profile() == uniform)) {
      throw ProfileMismatch("label at leaf " + format_address(pair.dom.leaves[i]) +
                            " must have the uniform profile");
    }
    if (!is_a_portrait(labels[i], ctx->local)) {
      throw IncompatibleParameters("label at leaf " +
                                   format_address(pair.dom.leaves[i]) +
                                   " does not normalise the tower");
    }
    labels[i] = labels[i].trimmed();
  }
  GermElement g;
  g.ctx = std::move(ctx);
  g.pair = std::move(pair);
  g.labels = std::move(labels);
  return reduce_impl(std::move(g));
}

GermElement germ_identity(const GermContextPtr& ctx) {
  if (!ctx) throw IncompatibleParameters("germ carries no context");
  const int d = ctx->deep_arity();
  GermElement g;
  g.ctx = ctx;
  g.pair = TreePair::identity(ctx->root_arity, d);
  g.labels.assign(g.pair.dom.leaves.size(),
                  Portrait::identity(ArityProfile{d, d}, 0));
  return g;
}

GermElement germ_from_pair(const GermContextPtr& ctx, const TreePair& pair) {
  if (!ctx) throw IncompatibleParameters("germ carries no context");
  const int d = ctx->deep_arity();
  std::vector<Portrait> labels(pair.dom.leaves.size(),
                               Portrait::identity(ArityProfile{d, d}, 0));
  return make_germ(ctx, pair, std::move(labels));
}

Address germ_apply(const GermElement& g, const Address& a) {
  check_context(g);
  const int i = leaf_prefix_index(g.pair.dom, a);
  const Address& leaf = g.pair.dom.leaves[i];
  const Address tail(a.begin() + static_cast<int>(leaf.size()), a.end());
  Address out = g.pair.cod.leaves[g.pair.sigma[i]];
  const Address mapped = g.labels[i].apply(tail);
  out.insert(out.end(), mapped.begin(), mapped.end());
  return out;
}

int germ_total_depth(const GermElement& g) {
  check_context(g);
  int best = 1;
  for (std::size_t i = 0; i < g.labels.size(); ++i) {
    const int len = static_cast<int>(std::max(
        g.pair.dom.leaves[i].size(), g.pair.cod.leaves[g.pair.sigma[i]].size()));
    best = std::max(best, len + g.labels[i].trimmed().depth());
  }
  return best;
}

GermElement refine_dom_leaf(const GermElement& g, int dom_index) {
  check_context(g);
  if (dom_index < 0 || dom_index >= g.pair.dom.size()) {
    throw LeafAbsent("index " + std::to_string(dom_index));
  }
  const int d = g.ctx->deep_arity();
  const Address& u = g.pair.dom.leaves[dom_index];
  const Address& v = g.pair.cod.leaves[g.pair.sigma[dom_index]];
  const Portrait& label = g.labels[dom_index];
  const Perm rho = label.depth() > 0 ? label.label(0, 0) : Perm(d);

  std::vector<Triple> triples;
  triples.reserve(g.labels.size() + d - 1);
  for (std::size_t j = 0; j < g.labels.size(); ++j) {
    if (static_cast<int>(j) == dom_index) continue;
    triples.emplace_back(g.pair.dom.leaves[j], g.pair.cod.leaves[g.pair.sigma[j]],
                         g.labels[j]);
  }
  for (int c = 0; c < d; ++c) {
    Address du = u;
    du.push_back(c);
    Address dv = v;
    dv.push_back(rho[c]);
    triples.emplace_back(std::move(du), std::move(dv),
                         subtree_at_image_child(label, rho[c]));
  }
  return from_triples(g.ctx, std::move(triples));
}

GermElement germ_on_domain(const GermElement& g, const LeafSet& target) {
  check_context(g);
  if (target.root_arity != g.pair.dom.root_arity ||
      target.deep_arity != g.pair.dom.deep_arity) {
    throw IncompatibleParameters("target leaf set has different arities");
  }
  if (!is_refinement(target, g.pair.dom)) {
    throw NotARefinement("target does not refine the domain");
  }
  GermElement out = g;
  while (out.pair.dom != target) {
    int pick = -1;
    for (int i = 0; i < out.pair.dom.size(); ++i) {
      if (!std::binary_search(target.leaves.begin(), target.leaves.end(),
                              out.pair.dom.leaves[i])) {
        pick = i;
        break;
      }
    }
    out = refine_dom_leaf(out, pick);
  }
  return out;
}

GermElement germ_with_codomain(const GermElement& g, const LeafSet& target) {
  check_context(g);
  if (target.root_arity != g.pair.cod.root_arity ||
      target.deep_arity != g.pair.cod.deep_arity) {
    throw IncompatibleParameters("target leaf set has different arities");
  }
  if (!is_refinement(target, g.pair.cod)) {
    throw NotARefinement("target does not refine the codomain");
  }
  GermElement out = g;
  while (out.pair.cod != target) {
    int cod_pick = -1;
    for (int j = 0; j < out.pair.cod.size(); ++j) {
      if (!std::binary_search(target.leaves.begin(), target.leaves.end(),
                              out.pair.cod.leaves[j])) {
        cod_pick = j;
        break;
      }
    }
    int dom_pick = -1;
    for (std::size_t i = 0; i < out.pair.sigma.size(); ++i) {
      if (out.pair.sigma[i] == cod_pick) {
        dom_pick = static_cast<int>(i);
        break;
      }
    }
    out = refine_dom_leaf(out, dom_pick);
  }
  return out;
}

GermElement germ_reduce(const GermElement& g) {
  check_context(g);
  return reduce_impl(g);
}

GermElement germ_compose(const GermElement& g, const GermElement& h) {
  check_context(g);
  check_context(h);
  if (!same_context(*g.ctx, *h.ctx)) {
    throw IncompatibleParameters("germs live over different trees or local groups");
  }
  const LeafSet mid = common_refinement(g.pair.cod, h.pair.dom);
  const GermElement g2 = germ_with_codomain(g, mid);
  const GermElement h2 = germ_on_domain(h, mid);
  std::vector<Triple> triples;
  triples.reserve(g2.labels.size());
  for (std::size_t i = 0; i < g2.labels.size(); ++i) {
    const Address& c = g2.pair.cod.leaves[g2.pair.sigma[i]];
    const int j = h2.pair.dom.index_of(c);
    triples.emplace_back(g2.pair.dom.leaves[i],
                         h2.pair.cod.leaves[h2.pair.sigma[j]],
                         compose(g2.labels[i], h2.labels[j]));
  }
  return reduce_impl(from_triples(g.ctx, std::move(triples)));
}

GermElement germ_inverse(const GermElement& g) {
  check_context(g);
  std::vector<Triple> triples;
  triples.reserve(g.labels.size());
  for (std::size_t i = 0; i < g.labels.size(); ++i) {
    triples.emplace_back(g.pair.cod.leaves[g.pair.sigma[i]], g.pair.dom.leaves[i],
                         inverse(g.labels[i]));
  }
  return reduce_impl(from_triples(g.ctx, std::move(triples)));
}

bool germ_equal(const GermElement& g, const GermElement& h, std::size_t cap) {
  check_context(g);
  check_context(h);
  if (!same_context(*g.ctx, *h.ctx)) {
    throw IncompatibleParameters("germs live over different trees or local groups");
  }
  const int n = std::max(germ_total_depth(g), germ_total_depth(h));
  const LeafSet level = checked_level(*g.ctx, n, cap);
  for (const Address& a : level.leaves) {
    if (germ_apply(g, a) != germ_apply(h, a)) return false;
  }
  return true;
}

GermMembership germ_membership(const GermElement& g) {
  check_context(g);
  GermMembership m;
  m.in_v = std::all_of(g.labels.begin(), g.labels.end(),
                       [](const Portrait& p) { return p.is_identity(); });
  m.in_f = m.in_v && is_order_preserving(g.pair);
  const int n = germ_total_depth(g);
  const LeafSet vn = LeafSet::level(g.ctx->root_arity, g.ctx->deep_arity(), n);
  m.in_a = germ_on_domain(g, vn).pair.cod == vn;
  m.in_o = m.in_a && std::all_of(g.labels.begin(), g.labels.end(),
                                 [&](const Portrait& p) {
                                   return is_w_portrait(p, g.ctx->local);
                                 });
  const LeafSet v1 = LeafSet::level(g.ctx->root_arity, g.ctx->deep_arity(), 1);
  m.in_wtilde = m.in_o && g.pair.dom == v1 && g.pair.cod == v1;
  return m;
}

Perm induced_level_perm(const GermElement& g, int level, std::size_t cap) {
  check_context(g);
  const int need = germ_total_depth(g);
  if (level < need) throw LevelTooShallow(level, need);
  const LeafSet vl = checked_level(*g.ctx, level, cap);
  const int size = vl.size();
  std::vector<std::pair<Address, int>> order;
  order.reserve(size);
  for (int i = 0; i < size; ++i) {
    order.emplace_back(germ_apply(g, vl.leaves[i]), i);
  }
  std::sort(order.begin(), order.end());
  std::vector<int> images(size);
  for (int pos = 0; pos < size; ++pos) {
    images[order[pos].second] = pos;
  }
  return Perm::from_images(images);
}

LeafMap phi_leafmap(const GermElement& g, const LeafSet& fine) {
  check_context(g);
  if (fine.root_arity != g.pair.dom.root_arity ||
      fine.deep_arity != g.pair.dom.deep_arity) {
    throw IncompatibleParameters("leaf set has different arities");
  }
  if (!is_refinement(fine, g.pair.dom)) {
    throw NotARefinement("leaf set does not refine the domain");
  }
  std::vector<Address> images;
  images.reserve(fine.leaves.size());
  for (const Address& a : fine.leaves) {
    images.push_back(germ_apply(g, a));
  }
  LeafMap out;
  out.domain = fine;
  out.image = LeafSet::validated(fine.root_arity, fine.deep_arity, images);
  out.index_map.reserve(images.size());
  for (const Address& a : images) {
    out.index_map.push_back(out.image.index_of(a));
  }
  return out;
}

FAFactorization factor_fa(const GermElement& g) {
  check_context(g);
  const int n = germ_total_depth(g);
  const LeafSet vn = LeafSet::level(g.ctx->root_arity, g.ctx->deep_arity(), n);
  const GermElement flat = germ_with_codomain(g, vn);
  std::vector<int> in_order(flat.pair.dom.size());
  std::iota(in_order.begin(), in_order.end(), 0);
  FAFactorization out;
  out.f = TreePair::validated(flat.pair.dom, vn, std::move(in_order));
  const GermElement lift = germ_from_pair(g.ctx, out.f);
  out.a = germ_compose(germ_inverse(lift), flat);
  return out;
}

int chi_sign_at(const GermElement& g, int level, std::size_t cap) {
  return induced_level_perm(g, level, cap).is_even() ? 0 : 1;
}

int chi_sign(const GermElement& g) {
  return chi_sign_at(g, germ_total_depth(g));
}

MVerdict m_membership(const GermElement& g) {
  check_context(g);
  const int d = g.ctx->deep_arity();
  MVerdict v;
  if (d % 2 == 1 && structure_flags(g.ctx->local.D).in_alternating) {
    v.member = chi_sign(g) == 0;
    v.rationale =
        "odd arity with the local group inside the alternating group: the sign "
        "character cuts an index-two subgroup";
  } else if (d % 2 == 0) {
    v.member = true;
    v.rationale = "even arity: the sign vanishes beyond the total depth, so no "
                  "index-two subgroup is cut";
  } else {
    v.member = true;
    v.rationale = "the local group contains odd permutations, so the sign "
                  "character cannot separate: the subgroup is everything";
  }
  return v;
}

}  // namespace trunk

#include "trunk/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "json.hpp"
#include "trunk/error.hpp"
#include "trunk/treepair.hpp"

namespace trunk {

namespace {

using nlohmann::json;

PermGroup cyclic_group(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = (i + 1) % n;
  return PermGroup::from_generators(n, {Perm::from_images(img)},
                                    "C" + std::to_string(n));
}

PermGroup symmetric_group(int n) {
  std::vector<Perm> gens;
  if (n >= 2) {
    std::vector<int> swap01(n);
    for (int i = 0; i < n; ++i) swap01[i] = i;
    swap01[0] = 1;
    swap01[1] = 0;
    gens.push_back(Perm::from_images(swap01));
  }
  if (n >= 3) {
    std::vector<int> cycle(n);
    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    gens.push_back(Perm::from_images(cycle));
  }
  return PermGroup::from_generators(n, std::move(gens), "S" + std::to_string(n));
}

PermGroup alternating_group(int n) {
  std::vector<Perm> gens;
  for (int i = 2; i < n; ++i) {
    std::vector<int> img(n);
    for (int j = 0; j < n; ++j) img[j] = j;
    img[0] = 1;
    img[1] = i;
    img[i] = 0;
    gens.push_back(Perm::from_images(img));
  }
  return PermGroup::from_generators(n, std::move(gens), "A" + std::to_string(n));
}

// Projective line over the 7-element field: points 0..6 are the field,
// point 7 is infinity.
PermGroup psl_2_7() {
  std::vector<int> shift(8), neg_inv(8);
  for (int z = 0; z < 7; ++z) shift[z] = (z + 1) % 7;
  shift[7] = 7;
  neg_inv[0] = 7;
  neg_inv[7] = 0;
  for (int z = 1; z < 7; ++z) {
    int inv = 0;
    for (int b = 1; b < 7; ++b) {
      if (z * b % 7 == 1) inv = b;
    }
    neg_inv[z] = (7 - inv) % 7;
  }
  return PermGroup::from_generators(
      8, {Perm::from_images(shift), Perm::from_images(neg_inv)}, "PSL(2,7)");
}

PermGroup agl_1_5() {
  std::vector<int> shift(5), scale(5);
  for (int x = 0; x < 5; ++x) {
    shift[x] = (x + 1) % 5;
    scale[x] = 2 * x % 5;
  }
  return PermGroup::from_generators(
      5, {Perm::from_images(shift), Perm::from_images(scale)}, "AGL(1,5)");
}

// The 8-element field as bit patterns of binary polynomials modulo
// x^3 + x + 1; the primitive element is the pattern 2.
PermGroup agammal_1_8() {
  auto times_x = [](int v) {
    int r = v << 1;
    if (r & 8) r = (r ^ 8) ^ 3;
    return r;
  };
  auto mul = [&](int a, int b) {
    int r = 0;
    while (b) {
      if (b & 1) r ^= a;
      a = times_x(a);
      b >>= 1;
    }
    return r;
  };
  std::vector<int> add1(8), mulz(8), frob(8);
  for (int v = 0; v < 8; ++v) {
    add1[v] = v ^ 1;
    mulz[v] = times_x(v);
    frob[v] = mul(v, v);
  }
  return PermGroup::from_generators(
      8,
      {Perm::from_images(add1), Perm::from_images(mulz), Perm::from_images(frob)},
      "AGammaL(1,8)");
}

json checked_parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
}

Perm perm_from_value(const json& v, int degree, const std::string& where) {
  if (v.is_string()) {
    return Perm::from_cycles(v.get<std::string>(), degree);
  }
  if (v.is_array()) {
    std::vector<int> img;
    for (const json& x : v) {
      if (!x.is_number_integer()) {
        throw ParseError(where + ": image entries must be integers", 0);
      }
      img.push_back(x.get<int>());
    }
    if (static_cast<int>(img.size()) != degree) {
      throw ParseError(where + ": image array has length " +
                           std::to_string(img.size()) + ", expected " +
                           std::to_string(degree),
                       0);
    }
    return Perm::from_images(img);
  }
  throw ParseError(where + ": expected a cycle string or an image array", 0);
}

json perm_to_value(const Perm& p) {
  json out = json::array();
  for (int i = 0; i < p.degree(); ++i) out.push_back(p[i]);
  return out;
}

unsigned long long address_rank(const Address& a, const ArityProfile& profile) {
  unsigned long long rank = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    rank = rank * (i == 0 ? 1 : profile.deep_arity) +
           static_cast<unsigned long long>(a[i]);
  }
  return rank;
}

json portrait_to_value(const Portrait& p) {
  json labels = json::object();
  const ArityProfile& profile = p.profile();
  for (int m = 0; m < p.depth(); ++m) {
    const std::vector<Perm>& level = p.levels()[m];
    for (unsigned long long r = 0; r < level.size(); ++r) {
      if (level[r].is_identity()) continue;
      Address addr(m);
      unsigned long long rest = r;
      for (int i = m - 1; i >= 1; --i) {
        addr[i] = static_cast<int>(rest % profile.deep_arity);
        rest /= profile.deep_arity;
      }
      if (m > 0) addr[0] = static_cast<int>(rest);
      labels[format_address(addr)] = perm_to_value(level[r]);
    }
  }
  json out;
  out["depth"] = p.depth();
  out["labels"] = labels;
  out["profile"] = json::array({profile.root_arity, profile.deep_arity});
  return out;
}

Portrait portrait_from_value(const json& v) {
  if (!v.is_object() || !v.contains("profile") || !v.contains("depth")) {
    throw ParseError("portrait: expected {profile, depth, labels}", 0);
  }
  const json& pj = v["profile"];
  if (!pj.is_array() || pj.size() != 2) {
    throw ParseError("portrait: profile must be [root_arity, deep_arity]", 0);
  }
  ArityProfile profile{pj[0].get<int>(), pj[1].get<int>()};
  int depth = v["depth"].get<int>();
  if (depth < 0) throw ParseError("portrait: negative depth", 0);
  Portrait p = Portrait::identity(profile, depth);
  if (v.contains("labels")) {
    for (const auto& [key, value] : v["labels"].items()) {
      Address addr = parse_address(key, profile);
      if (static_cast<int>(addr.size()) >= depth) {
        throw ParseError("portrait: label at '" + key +
                             "' lies at level " + std::to_string(addr.size()) +
                             ", but the depth is " + std::to_string(depth),
                         0);
      }
      const int degree =
          addr.empty() ? profile.root_arity : profile.deep_arity;
      p.set_label(static_cast<int>(addr.size()), address_rank(addr, profile),
                  perm_from_value(value, degree, "portrait label '" + key + "'"));
    }
  }
  return p;
}

}  // namespace

PermGroup builtin_group(const std::string& name) {
  if (name == "PSL(2,7)") return psl_2_7();
  if (name == "AGL(1,5)") return agl_1_5();
  if (name == "AGammaL(1,8)") return agammal_1_8();
  if (name.size() >= 2 && name.size() <= 8 &&
      (name[0] == 'C' || name[0] == 'S' || name[0] == 'A') &&
      std::all_of(name.begin() + 1, name.end(),
                  [](unsigned char c) { return std::isdigit(c); })) {
    const int n = std::stoi(name.substr(1));
    if (n >= 1) {
      if (name[0] == 'C') return cyclic_group(n);
      if (name[0] == 'S') return symmetric_group(n);
      return alternating_group(n);
    }
  }
  throw IncompatibleParameters("unknown builtin group '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"C3", "S3", "S4", "A4", "A5", "PSL(2,7)", "AGL(1,5)", "AGammaL(1,8)"};
}

std::vector<CatalogEntry> parse_catalog(const std::string& json_text) try {
  json root = checked_parse(json_text);
  if (!root.is_array()) {
    throw ParseError("catalog: expected a top-level array of entries", 0);
  }
  std::vector<CatalogEntry> out;
  std::vector<std::string> seen;
  for (std::size_t idx = 0; idx < root.size(); ++idx) {
    const json& e = root[idx];
    const std::string where = "catalog entry " + std::to_string(idx);
    if (!e.is_object() || !e.contains("name") || !e.contains("degree") ||
        !e.contains("generators")) {
      throw ParseError(where + ": expected {name, degree, generators}", 0);
    }
    CatalogEntry entry;
    entry.name = e["name"].get<std::string>();
    entry.degree = e["degree"].get<int>();
    if (entry.degree < 1) {
      throw ParseError(where + " ('" + entry.name + "'): degree must be positive", 0);
    }
    if (std::find(seen.begin(), seen.end(), entry.name) != seen.end()) {
      throw ParseError("catalog: duplicate entry name '" + entry.name + "'", 0);
    }
    seen.push_back(entry.name);
    for (const json& g : e["generators"]) {
      entry.generators.push_back(perm_from_value(
          g, entry.degree, where + " ('" + entry.name + "') generator " +
                               std::to_string(entry.generators.size())));
    }
    if (e.contains("tags")) {
      for (const json& t : e["tags"]) entry.tags.push_back(t.get<std::string>());
    }
    out.push_back(std::move(entry));
  }
  return out;
} catch (const nlohmann::json::exception& e) {
  throw ParseError(std::string("catalog: ") + e.what(), 0);
}

PermGroup entry_group(const CatalogEntry& e) {
  return PermGroup::from_generators(e.degree, e.generators, e.name);
}

std::string portrait_to_json(const Portrait& p) { return portrait_to_value(p).dump(); }

Portrait portrait_from_json(const std::string& text) try {
  return portrait_from_value(checked_parse(text));
} catch (const nlohmann::json::exception& e) {
  throw ParseError(std::string("portrait: ") + e.what(), 0);
}

std::string germ_to_json(const GermElement& g) {
  json out;
  const PermGroup& d_group = g.ctx->local.D;
  if (!d_group.name.empty()) {
    out["D"] = d_group.name;
  } else {
    json gens = json::array();
    for (const Perm& p : d_group.generators) gens.push_back(perm_to_value(p));
    out["D"] = gens;
  }
  out["d"] = g.ctx->deep_arity();
  out["k"] = g.ctx->root_arity;
  json labels = json::object();
  for (int i = 0; i < g.pair.dom.size(); ++i) {
    if (g.labels[i].is_identity()) continue;
    labels[format_address(g.pair.dom.leaves[i])] = portrait_to_value(g.labels[i]);
  }
  out["labels"] = labels;
  out["pair"] = format_tree_pair(g.pair);
  return out.dump();
}

GermElement germ_from_json(const std::string& text, std::size_t cap) try {
  json root = checked_parse(text);
  if (!root.is_object() || !root.contains("D") || !root.contains("d") ||
      !root.contains("k") || !root.contains("pair")) {
    throw ParseError("germ: expected {D, d, k, pair, labels}", 0);
  }
  const int d = root["d"].get<int>();
  const int k = root["k"].get<int>();
  PermGroup local;
  if (root["D"].is_string()) {
    local = builtin_group(root["D"].get<std::string>());
  } else if (root["D"].is_array()) {
    std::vector<Perm> gens;
    for (const json& g : root["D"]) {
      gens.push_back(perm_from_value(g, d, "germ field D"));
    }
    local = PermGroup::from_generators(d, std::move(gens));
  } else {
    throw ParseError("germ: D must be a builtin name or a generator list", 0);
  }
  GermContextPtr ctx = make_germ_context(k, local, cap);
  TreePair pair = parse_tree_pair(root["pair"].get<std::string>(), k, d);
  std::vector<Portrait> labels(
      pair.dom.size(), Portrait::identity(ArityProfile{d, d}, 0));
  if (root.contains("labels")) {
    const ArityProfile leaf_profile{k, d};
    for (const auto& [key, value] : root["labels"].items()) {
      Address addr = parse_address(key, leaf_profile);
      labels[static_cast<std::size_t>(pair.dom.index_of(addr))] =
          portrait_from_value(value);
    }
  }
  return make_germ(ctx, std::move(pair), std::move(labels));
} catch (const nlohmann::json::exception& e) {
  throw ParseError(std::string("germ: ") + e.what(), 0);
}

}  // namespace trunk

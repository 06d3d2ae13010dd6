#include "trunk/treepair.hpp"

#include <algorithm>
#include <sstream>

#include "trunk/error.hpp"

namespace trunk {

namespace {

bool is_prefix(const Address& p, const Address& a) {
  return p.size() <= a.size() && std::equal(p.begin(), p.end(), a.begin());
}

// Index of the leaf equal to a, or -1.
int find_index(const LeafSet& s, const Address& a) {
  auto it = std::lower_bound(s.leaves.begin(), s.leaves.end(), a);
  if (it == s.leaves.end() || *it != a) return -1;
  return static_cast<int>(it - s.leaves.begin());
}

void check_leaf_symbols(int root_arity, int deep_arity, const Address& a) {
  if (a.empty()) throw InvalidAddress("the root cannot be a leaf");
  for (std::size_t i = 0; i < a.size(); ++i) {
    int arity = i == 0 ? root_arity : deep_arity;
    if (a[i] < 0 || a[i] >= arity) {
      throw InvalidAddress("symbol " + std::to_string(a[i]) + " at position " +
                           std::to_string(i) + " exceeds arity " +
                           std::to_string(arity));
    }
  }
}

unsigned __int128 checked_mul_u128(unsigned __int128 a, unsigned __int128 b) {
  if (a != 0 && b > ~static_cast<unsigned __int128>(0) / a) {
    throw Overflow("Kraft count overflowed 128 bits");
  }
  return a * b;
}

unsigned __int128 pow_u128(unsigned __int128 base, int exp) {
  unsigned __int128 r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul_u128(r, base);
  return r;
}

std::vector<int> identity_indices(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

// Builds a validated pair from explicit (dom leaf, cod leaf) correspondences.
TreePair from_pairs(int root_arity, int deep_arity,
                    std::vector<std::pair<Address, Address>> pairs) {
  std::vector<Address> dom_leaves, cod_leaves;
  dom_leaves.reserve(pairs.size());
  cod_leaves.reserve(pairs.size());
  for (auto& pr : pairs) {
    dom_leaves.push_back(pr.first);
    cod_leaves.push_back(pr.second);
  }
  LeafSet dom = LeafSet::validated(root_arity, deep_arity, std::move(dom_leaves));
  LeafSet cod = LeafSet::validated(root_arity, deep_arity, std::move(cod_leaves));
  std::vector<int> sigma(pairs.size());
  for (const auto& pr : pairs) {
    sigma[dom.index_of(pr.first)] = cod.index_of(pr.second);
  }
  return TreePair::validated(std::move(dom), std::move(cod), std::move(sigma));
}

}  // namespace

LeafSet LeafSet::validated(int root_arity, int deep_arity, std::vector<Address> leaves) {
  if (root_arity < 1 || deep_arity < 2) {
    throw IncompatibleParameters("need root arity >= 1 and deep arity >= 2");
  }
  if (leaves.empty()) throw IncompatibleParameters("a leaf set cannot be empty");
  for (const Address& a : leaves) check_leaf_symbols(root_arity, deep_arity, a);
  std::sort(leaves.begin(), leaves.end());
  for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
    if (is_prefix(leaves[i], leaves[i + 1])) {
      throw NotPrefixFree(format_address(leaves[i]), format_address(leaves[i + 1]));
    }
  }
  int max_len = 0;
  for (const Address& a : leaves) max_len = std::max(max_len, static_cast<int>(a.size()));
  unsigned __int128 kraft = 0;
  for (const Address& a : leaves) {
    kraft += pow_u128(deep_arity, max_len - static_cast<int>(a.size()));
  }
  unsigned __int128 full =
      checked_mul_u128(root_arity, pow_u128(deep_arity, max_len - 1));
  if (kraft != full) {
    throw NotComplete(u128_to_string(kraft) + " of " + u128_to_string(full) +
                      " at depth " + std::to_string(max_len));
  }
  LeafSet s;
  s.root_arity = root_arity;
  s.deep_arity = deep_arity;
  s.leaves = std::move(leaves);
  return s;
}

LeafSet LeafSet::level(int root_arity, int deep_arity, int n) {
  if (n < 1) throw IncompatibleParameters("leaf level must be at least 1");
  std::vector<Address> leaves;
  Address a(n, 0);
  while (true) {
    leaves.push_back(a);
    int i = n - 1;
    for (; i >= 0; --i) {
      int arity = i == 0 ? root_arity : deep_arity;
      if (++a[i] < arity) break;
      a[i] = 0;
    }
    if (i < 0) break;
  }
  return validated(root_arity, deep_arity, std::move(leaves));
}

int LeafSet::index_of(const Address& a) const {
  int i = find_index(*this, a);
  if (i < 0) throw LeafAbsent(format_address(a));
  return i;
}

int LeafSet::max_depth() const {
  int m = 0;
  for (const Address& a : leaves) m = std::max(m, static_cast<int>(a.size()));
  return m;
}

int leaf_prefix_index(const LeafSet& s, const Address& a) {
  auto it = std::upper_bound(s.leaves.begin(), s.leaves.end(), a);
  if (it == s.leaves.begin()) throw LeafAbsent(format_address(a));
  --it;
  if (!is_prefix(*it, a)) throw LeafAbsent(format_address(a));
  return static_cast<int>(it - s.leaves.begin());
}

bool is_refinement(const LeafSet& fine, const LeafSet& coarse) {
  if (fine.root_arity != coarse.root_arity || fine.deep_arity != coarse.deep_arity) {
    return false;
  }
  for (const Address& a : fine.leaves) {
    auto it = std::upper_bound(coarse.leaves.begin(), coarse.leaves.end(), a);
    if (it == coarse.leaves.begin()) return false;
    if (!is_prefix(*std::prev(it), a)) return false;
  }
  return true;
}

LeafSet common_refinement(const LeafSet& a, const LeafSet& b) {
  if (a.root_arity != b.root_arity || a.deep_arity != b.deep_arity) {
    throw IncompatibleParameters("leaf sets live on different trees");
  }
  std::vector<Address> leaves;
  for (const Address& x : a.leaves) {
    auto it = std::upper_bound(b.leaves.begin(), b.leaves.end(), x);
    if (it != b.leaves.begin() && is_prefix(*std::prev(it), x)) leaves.push_back(x);
  }
  for (const Address& y : b.leaves) {
    auto it = std::upper_bound(a.leaves.begin(), a.leaves.end(), y);
    if (it != a.leaves.begin() && is_prefix(*std::prev(it), y) && *std::prev(it) != y) {
      leaves.push_back(y);
    }
  }
  return LeafSet::validated(a.root_arity, a.deep_arity, std::move(leaves));
}

TreePair TreePair::validated(LeafSet dom, LeafSet cod, std::vector<int> sigma) {
  if (dom.root_arity != cod.root_arity || dom.deep_arity != cod.deep_arity) {
    throw IncompatibleParameters("domain and codomain live on different trees");
  }
  if (dom.size() != cod.size()) {
    throw IncompatibleParameters("domain has " + std::to_string(dom.size()) +
                                 " leaves, codomain " + std::to_string(cod.size()));
  }
  if (static_cast<int>(sigma.size()) != dom.size()) {
    throw IncompatibleParameters("index map length does not match the leaf count");
  }
  std::vector<bool> seen(sigma.size(), false);
  for (int j : sigma) {
    if (j < 0 || j >= static_cast<int>(sigma.size()) || seen[j]) {
      throw IncompatibleParameters("index map is not a bijection");
    }
    seen[j] = true;
  }
  TreePair t;
  t.dom = std::move(dom);
  t.cod = std::move(cod);
  t.sigma = std::move(sigma);
  return t;
}

TreePair TreePair::identity(int root_arity, int deep_arity) {
  LeafSet v1 = LeafSet::level(root_arity, deep_arity, 1);
  return validated(v1, v1, identity_indices(root_arity));
}

Address apply_address(const TreePair& t, const Address& a) {
  int i = leaf_prefix_index(t.dom, a);
  const Address& p = t.dom.leaves[i];
  Address out = t.cod.leaves[t.sigma[i]];
  out.insert(out.end(), a.begin() + p.size(), a.end());
  return out;
}

TreePair rewrite_on_domain(const TreePair& t, const LeafSet& new_dom) {
  if (!is_refinement(new_dom, t.dom)) {
    throw NotARefinement("the requested domain does not refine the current one");
  }
  std::vector<std::pair<Address, Address>> pairs;
  pairs.reserve(new_dom.leaves.size());
  for (const Address& a : new_dom.leaves) pairs.emplace_back(a, apply_address(t, a));
  return from_pairs(t.dom.root_arity, t.dom.deep_arity, std::move(pairs));
}

TreePair refine_at(const TreePair& t, int dom_index) {
  if (dom_index < 0 || dom_index >= t.dom.size()) {
    throw LeafAbsent("index " + std::to_string(dom_index));
  }
  std::vector<Address> leaves = t.dom.leaves;
  Address p = leaves[dom_index];
  leaves.erase(leaves.begin() + dom_index);
  for (int c = 0; c < t.dom.deep_arity; ++c) {
    Address child = p;
    child.push_back(c);
    leaves.push_back(std::move(child));
  }
  return rewrite_on_domain(
      t, LeafSet::validated(t.dom.root_arity, t.dom.deep_arity, std::move(leaves)));
}

std::vector<int> collapsible_families(const TreePair& t) {
  const int d = t.dom.deep_arity;
  std::vector<int> out;
  for (int i = 0; i + d <= t.dom.size(); ++i) {
    const Address& first = t.dom.leaves[i];
    if (first.size() < 2 || first.back() != 0) continue;
    Address u(first.begin(), first.end() - 1);
    const Address& image_first = t.cod.leaves[t.sigma[i]];
    if (image_first.size() < 2 || image_first.back() != 0) continue;
    Address v(image_first.begin(), image_first.end() - 1);
    bool ok = true;
    for (int c = 0; c < d && ok; ++c) {
      Address uc = u;
      uc.push_back(c);
      if (t.dom.leaves[i + c] != uc) {
        ok = false;
        break;
      }
      Address vc = v;
      vc.push_back(c);
      int j = find_index(t.cod, vc);
      ok = j >= 0 && t.sigma[i + c] == j;
    }
    if (ok) out.push_back(i);
  }
  return out;
}

TreePair collapse(const TreePair& t, int family_start) {
  const int d = t.dom.deep_arity;
  std::vector<int> fams = collapsible_families(t);
  if (std::find(fams.begin(), fams.end(), family_start) == fams.end()) {
    throw IncompatibleParameters("no collapsible family starts at index " +
                                 std::to_string(family_start));
  }
  const Address& first = t.dom.leaves[family_start];
  Address u(first.begin(), first.end() - 1);
  const Address& image_first = t.cod.leaves[t.sigma[family_start]];
  Address v(image_first.begin(), image_first.end() - 1);

  std::vector<std::pair<Address, Address>> pairs;
  pairs.emplace_back(u, v);
  for (int i = 0; i < t.dom.size(); ++i) {
    if (i >= family_start && i < family_start + d) continue;
    pairs.emplace_back(t.dom.leaves[i], t.cod.leaves[t.sigma[i]]);
  }
  return from_pairs(t.dom.root_arity, t.dom.deep_arity, std::move(pairs));
}

TreePair reduce(const TreePair& t) {
  TreePair out = t;
  while (true) {
    std::vector<int> fams = collapsible_families(out);
    if (fams.empty()) return out;
    out = collapse(out, fams.front());
  }
}

TreePair inverse(const TreePair& t) {
  std::vector<int> inv(t.sigma.size());
  for (std::size_t i = 0; i < t.sigma.size(); ++i) inv[t.sigma[i]] = static_cast<int>(i);
  return TreePair::validated(t.cod, t.dom, std::move(inv));
}

TreePair compose(const TreePair& s, const TreePair& t) {
  if (s.dom.root_arity != t.dom.root_arity || s.dom.deep_arity != t.dom.deep_arity) {
    throw IncompatibleParameters("composing pairs over different trees");
  }
  LeafSet mid = common_refinement(s.cod, t.dom);
  TreePair s2 = inverse(rewrite_on_domain(inverse(s), mid));
  TreePair t2 = rewrite_on_domain(t, mid);
  std::vector<int> sigma(s2.sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] = t2.sigma[s2.sigma[i]];
  return reduce(TreePair::validated(s2.dom, t2.cod, std::move(sigma)));
}

bool equal_elements(const TreePair& a, const TreePair& b) {
  if (a.dom.root_arity != b.dom.root_arity || a.dom.deep_arity != b.dom.deep_arity) {
    return false;
  }
  TreePair ra = reduce(a);
  TreePair rb = reduce(b);
  return ra.dom == rb.dom && ra.cod == rb.cod && ra.sigma == rb.sigma;
}

bool is_order_preserving(const TreePair& t) {
  for (std::size_t i = 0; i < t.sigma.size(); ++i) {
    if (t.sigma[i] != static_cast<int>(i)) return false;
  }
  return true;
}

int parity(const TreePair& t) { return sign_of_images(t.sigma); }

std::pair<TreePair, TreePair> flip_witness(const TreePair& t) {
  const int d = t.dom.deep_arity;
  if (d % 2 != 0) {
    throw IncompatibleParameters("the sign is representative-independent for odd arity");
  }
  if (is_order_preserving(t)) {
    throw IncompatibleParameters(
        "order-preserving elements keep the identity indexing in every representative");
  }
  const int n = t.dom.size();
  auto cross = [&](const TreePair& tp, int i) {
    int c = 0;
    for (int j = 0; j < static_cast<int>(tp.sigma.size()); ++j) {
      if (j < i && tp.sigma[j] > tp.sigma[i]) ++c;
      if (j > i && tp.sigma[j] < tp.sigma[i]) ++c;
    }
    return c;
  };
  for (int i = 0; i < n; ++i) {
    if (cross(t, i) % 2 == 1) return {t, refine_at(t, i)};
  }
  // Every crossing count is even, yet an inversion exists. Splitting its left
  // leaf multiplies the partner's crossings involving it by d, making the
  // partner's count odd; splitting the partner then flips the sign.
  for (int i = 0; i < n; ++i) {
    for (int x = i + 1; x < n; ++x) {
      if (t.sigma[i] > t.sigma[x]) {
        TreePair step = refine_at(t, i);
        int x_shifted = x + d - 1;
        return {t, refine_at(step, x_shifted)};
      }
    }
  }
  throw IncompatibleParameters("no inversion found");
}

std::string format_tree_pair(const TreePair& t) {
  std::ostringstream out;
  for (int i = 0; i < t.dom.size(); ++i) {
    out << (i ? " " : "") << format_address(t.dom.leaves[i]);
  }
  out << '\n';
  for (int i = 0; i < t.cod.size(); ++i) {
    out << (i ? " " : "") << format_address(t.cod.leaves[i]);
  }
  out << '\n';
  for (std::size_t i = 0; i < t.sigma.size(); ++i) {
    out << (i ? " " : "") << t.sigma[i];
  }
  out << '\n';
  return out.str();
}

TreePair parse_tree_pair(const std::string& text, int root_arity, int deep_arity) {
  std::vector<std::string> lines;
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.size() != 3) {
    throw ParseError("expected 3 lines (domain, codomain, index map), got " +
                         std::to_string(lines.size()),
                     0);
  }
  ArityProfile profile{root_arity, deep_arity};
  auto parse_leaves = [&](const std::string& s) {
    std::vector<Address> leaves;
    std::stringstream ls(s);
    std::string tok;
    while (ls >> tok) leaves.push_back(parse_address(tok, profile));
    for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
      if (!(leaves[i] < leaves[i + 1])) {
        throw ParseError("leaves must be listed in strictly increasing order", i + 1);
      }
    }
    return leaves;
  };
  std::vector<Address> dom_leaves = parse_leaves(lines[0]);
  std::vector<Address> cod_leaves = parse_leaves(lines[1]);
  std::vector<int> sigma;
  {
    std::stringstream ss(lines[2]);
    std::string tok;
    while (ss >> tok) {
      if (tok.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("index '" + tok + "' is not a number", sigma.size());
      }
      sigma.push_back(std::stoi(tok));
    }
  }
  return TreePair::validated(
      LeafSet::validated(root_arity, deep_arity, std::move(dom_leaves)),
      LeafSet::validated(root_arity, deep_arity, std::move(cod_leaves)),
      std::move(sigma));
}

}  // namespace trunk

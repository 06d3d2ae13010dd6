#include "trunk/portrait.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "trunk/error.hpp"

namespace trunk {

namespace {

void check_profile(const ArityProfile& profile) {
  if (profile.root_arity < 1 || profile.deep_arity < 1) {
    throw IncompatibleParameters("tree arities must be positive");
  }
}

int level_arity(const ArityProfile& profile, int level) {
  return level == 0 ? profile.root_arity : profile.deep_arity;
}

unsigned long long address_rank(const ArityProfile& profile, const Address& a) {
  unsigned long long r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    r = i == 0 ? static_cast<unsigned long long>(a[0])
               : r * profile.deep_arity + a[i];
  }
  return r;
}

Address address_from_rank(const ArityProfile& profile, int level,
                          unsigned long long rank) {
  Address a(level);
  for (int i = level - 1; i >= 1; --i) {
    a[i] = static_cast<int>(rank % profile.deep_arity);
    rank /= profile.deep_arity;
  }
  if (level > 0) a[0] = static_cast<int>(rank);
  return a;
}

void check_address(const ArityProfile& profile, const Address& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    int arity = level_arity(profile, static_cast<int>(i));
    if (a[i] < 0 || a[i] >= arity) {
      throw InvalidAddress("symbol " + std::to_string(a[i]) + " at position " +
                           std::to_string(i) + " exceeds arity " +
                           std::to_string(arity));
    }
  }
}

unsigned __int128 checked_mul(unsigned __int128 a, unsigned __int128 b) {
  if (a != 0 && b > ~static_cast<unsigned __int128>(0) / a) {
    throw Overflow("128-bit order arithmetic overflowed");
  }
  return a * b;
}

unsigned __int128 checked_pow(unsigned __int128 base, unsigned long long exp) {
  unsigned __int128 r = 1;
  unsigned __int128 b = base;
  while (exp > 0) {
    if (exp & 1) r = checked_mul(r, b);
    exp >>= 1;
    if (exp > 0) b = checked_mul(b, b);
  }
  return r;
}

}  // namespace

unsigned long long ArityProfile::level_width(int level) const {
  if (level == 0) return 1;
  unsigned long long w = root_arity;
  for (int i = 1; i < level; ++i) {
    if (w > (~0ULL) / deep_arity) throw Overflow("level width overflowed");
    w *= deep_arity;
  }
  return w;
}

std::string format_address(const Address& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(a[i]);
  }
  return out;
}

Address parse_address(const std::string& s, const ArityProfile& profile) {
  Address a;
  if (!s.empty()) {
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, '.')) {
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("address symbol '" + part + "' is not a number", 0);
      }
      a.push_back(std::stoi(part));
    }
  }
  check_address(profile, a);
  return a;
}

Portrait Portrait::identity(ArityProfile profile, int depth) {
  check_profile(profile);
  std::vector<std::vector<Perm>> levels;
  for (int m = 0; m < depth; ++m) {
    int arity = level_arity(profile, m);
    levels.emplace_back(profile.level_width(m), Perm(arity));
  }
  Portrait p;
  p.profile_ = profile;
  p.levels_ = std::move(levels);
  return p;
}

Portrait Portrait::from_levels(ArityProfile profile,
                               std::vector<std::vector<Perm>> levels) {
  check_profile(profile);
  for (std::size_t m = 0; m < levels.size(); ++m) {
    if (levels[m].size() != profile.level_width(static_cast<int>(m))) {
      throw IncompatibleParameters(
          "level " + std::to_string(m) + " holds " + std::to_string(levels[m].size()) +
          " labels, expected " + std::to_string(profile.level_width(static_cast<int>(m))));
    }
    int arity = level_arity(profile, static_cast<int>(m));
    for (const Perm& p : levels[m]) {
      if (p.degree() != arity) {
        throw ProfileMismatch("level " + std::to_string(m) + " label of degree " +
                              std::to_string(p.degree()) + ", expected " +
                              std::to_string(arity));
      }
    }
  }
  Portrait p;
  p.profile_ = profile;
  p.levels_ = std::move(levels);
  return p;
}

const Perm& Portrait::label(int level, unsigned long long rank) const {
  return levels_.at(level).at(rank);
}

const Perm& Portrait::label_at(const Address& image_prefix) const {
  check_address(profile_, image_prefix);
  return label(static_cast<int>(image_prefix.size()),
               address_rank(profile_, image_prefix));
}

void Portrait::set_label(int level, unsigned long long rank, Perm p) {
  if (p.degree() != level_arity(profile_, level)) {
    throw ProfileMismatch("label degree " + std::to_string(p.degree()) +
                          " at level " + std::to_string(level));
  }
  levels_.at(level).at(rank) = std::move(p);
}

Address Portrait::apply(const Address& a) const {
  check_address(profile_, a);
  Address out(a.size());
  unsigned long long prefix_rank = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int b = static_cast<int>(i) < depth()
                ? levels_[i][prefix_rank][a[i]]
                : a[i];
    out[i] = b;
    prefix_rank = i == 0 ? static_cast<unsigned long long>(b)
                         : prefix_rank * profile_.deep_arity + b;
  }
  return out;
}

Portrait Portrait::trimmed() const {
  Portrait p = *this;
  auto all_identity = [](const std::vector<Perm>& level) {
    return std::all_of(level.begin(), level.end(),
                       [](const Perm& q) { return q.is_identity(); });
  };
  while (!p.levels_.empty() && all_identity(p.levels_.back())) {
    p.levels_.pop_back();
  }
  return p;
}

bool Portrait::is_identity() const { return trimmed().depth() == 0; }

bool Portrait::operator==(const Portrait& o) const {
  if (!(profile_ == o.profile_)) return false;
  Portrait a = trimmed();
  Portrait b = o.trimmed();
  return a.levels_ == b.levels_;
}

Portrait compose(const Portrait& p, const Portrait& q) {
  if (!(p.profile() == q.profile())) {
    throw ProfileMismatch("composing portraits over different trees");
  }
  const ArityProfile profile = p.profile();
  int depth = std::max(p.depth(), q.depth());
  Portrait out = Portrait::identity(profile, depth);
  for (int m = 0; m < depth; ++m) {
    unsigned long long width = profile.level_width(m);
    for (unsigned long long r = 0; r < width; ++r) {
      Address v = address_from_rank(profile, m, r);
      Address w = q.apply(v);
      unsigned long long wr = address_rank(profile, w);
      int arity = m == 0 ? profile.root_arity : profile.deep_arity;
      Perm a = m < p.depth() ? p.label(m, r) : Perm(arity);
      Perm b = m < q.depth() ? q.label(m, wr) : Perm(arity);
      out.set_label(m, wr, a * b);
    }
  }
  return out;
}

Portrait inverse(const Portrait& p) {
  const ArityProfile profile = p.profile();
  Portrait out = Portrait::identity(profile, p.depth());
  for (int m = 0; m < p.depth(); ++m) {
    unsigned long long width = profile.level_width(m);
    for (unsigned long long r = 0; r < width; ++r) {
      Address u = address_from_rank(profile, m, r);
      Address w = p.apply(u);
      out.set_label(m, r, p.label(m, address_rank(profile, w)).inverse());
    }
  }
  return out;
}

Portrait subtree_at_image_child(const Portrait& p, int j) {
  const ArityProfile profile = p.profile();
  if (j < 0 || j >= profile.root_arity) {
    throw InvalidAddress("child " + std::to_string(j) + " out of range");
  }
  ArityProfile sub{profile.deep_arity, profile.deep_arity};
  int depth = std::max(p.depth() - 1, 0);
  Portrait out = Portrait::identity(sub, depth);
  for (int m = 0; m < depth; ++m) {
    unsigned long long width = sub.level_width(m);
    for (unsigned long long r = 0; r < width; ++r) {
      Address w = address_from_rank(sub, m, r);
      Address full(1, j);
      full.insert(full.end(), w.begin(), w.end());
      out.set_label(m, r, p.label(m + 1, address_rank(profile, full)));
    }
  }
  return out;
}

Portrait restrict_to_child(const Portrait& p, int i) {
  const ArityProfile profile = p.profile();
  if (i < 0 || i >= profile.root_arity) {
    throw InvalidAddress("child " + std::to_string(i) + " out of range");
  }
  if (p.depth() > 0 && p.label(0, 0)[i] != i) {
    throw ChildNotFixed(i);
  }
  return subtree_at_image_child(p, i);
}

Portrait assemble_portrait(const Perm& root, const std::vector<Portrait>& children) {
  if (children.size() != static_cast<std::size_t>(root.degree())) {
    throw ProfileMismatch("need one child portrait per image slot");
  }
  int deep = 0;
  int depth = 0;
  for (const Portrait& c : children) {
    const ArityProfile& cp = c.profile();
    if (cp.root_arity != cp.deep_arity) {
      throw ProfileMismatch("child portraits must have a uniform profile");
    }
    if (deep == 0) deep = cp.root_arity;
    if (cp.root_arity != deep) {
      throw ProfileMismatch("child portraits disagree on arity");
    }
    depth = std::max(depth, c.depth() + 1);
  }
  ArityProfile profile{root.degree(), deep == 0 ? root.degree() : deep};
  Portrait out = Portrait::identity(profile, depth);
  out.set_label(0, 0, root);
  ArityProfile sub{profile.deep_arity, profile.deep_arity};
  for (int j = 0; j < root.degree(); ++j) {
    const Portrait& c = children[j];
    for (int m = 0; m < c.depth(); ++m) {
      unsigned long long width = sub.level_width(m);
      for (unsigned long long r = 0; r < width; ++r) {
        Address w = address_from_rank(sub, m, r);
        Address full(1, j);
        full.insert(full.end(), w.begin(), w.end());
        out.set_label(m + 1, address_rank(profile, full), c.label(m, r));
      }
    }
  }
  return out;
}

TowerLocal make_tower_local(const PermGroup& D, std::size_t cap) {
  TowerLocal local;
  local.D = D;
  local.N = normalizer_in_sym(D, kDefaultNormalizerDegreeLimit, cap);
  local.d_set = element_set(D, cap);
  local.n_set = element_set(local.N, cap);
  local.d_order = local.d_set.size();
  local.n_order = local.n_set.size();
  local.index = local.n_order / local.d_order;
  return local;
}

namespace {

void check_uniform_profile(const Portrait& p, const TowerLocal& local) {
  const ArityProfile& profile = p.profile();
  if (profile.root_arity != profile.deep_arity ||
      profile.root_arity != local.D.degree) {
    throw ProfileMismatch("label group degree " + std::to_string(local.D.degree) +
                          " does not match tree arities");
  }
}

}  // namespace

bool is_w_portrait(const Portrait& p, const TowerLocal& local) {
  check_uniform_profile(p, local);
  for (const auto& level : p.levels()) {
    for (const Perm& q : level) {
      if (local.d_set.find(q) == local.d_set.end()) return false;
    }
  }
  return true;
}

bool is_a_portrait(const Portrait& p, const TowerLocal& local) {
  check_uniform_profile(p, local);
  for (int m = 0; m < p.depth(); ++m) {
    const auto& level = p.levels()[m];
    for (const Perm& q : level) {
      if (local.n_set.find(q) == local.n_set.end()) return false;
    }
    if (m == 0) continue;
    const Perm anchor_inv = level[0].inverse();
    for (const Perm& q : level) {
      if (local.d_set.find(q * anchor_inv) == local.d_set.end()) return false;
    }
  }
  return true;
}

TowerOrders tower_orders(const TowerLocal& local, int n) {
  if (n < 0) throw IncompatibleParameters("tower depth must be non-negative");
  if (!is_transitive(local.D)) throw NotTransitive("tower over an intransitive group");
  const unsigned long long d = local.D.degree;
  TowerOrders out;
  // Sum of level widths 1 + d + ... + d^(n-1) in the exponent.
  unsigned __int128 vertices = 0;
  unsigned __int128 width = 1;
  for (int m = 0; m < n; ++m) {
    vertices += width;
    width = checked_mul(width, d);
  }
  if (vertices > ~0ULL) throw Overflow("vertex count exceeds 64 bits");
  out.w_order = checked_pow(local.d_order, static_cast<unsigned long long>(vertices));
  out.ratio = checked_pow(local.index, static_cast<unsigned long long>(n));
  out.a_order = checked_mul(out.w_order, out.ratio);
  return out;
}

bool level_transitive_check(const PermGroup& D, int n, std::size_t cap) {
  if (n < 0) throw IncompatibleParameters("level must be non-negative");
  if (n == 0) return true;
  const int d = D.degree;
  ArityProfile profile{d, d};
  unsigned __int128 target = checked_pow(d, n);
  if (target > cap) throw OrderExceedsCap(cap);

  // One generator portrait per (level, vertex, group generator): the label
  // sits alone at that vertex.
  std::vector<Portrait> gens;
  for (int m = 0; m < n; ++m) {
    unsigned long long width = profile.level_width(m);
    for (unsigned long long r = 0; r < width; ++r) {
      for (const Perm& g : D.generators) {
        Portrait p = Portrait::identity(profile, m + 1);
        p.set_label(m, r, g);
        gens.push_back(std::move(p));
      }
    }
  }

  Address start(n, 0);
  std::unordered_set<unsigned long long> seen{0};
  std::deque<Address> queue{start};
  while (!queue.empty()) {
    Address a = queue.front();
    queue.pop_front();
    for (const Portrait& g : gens) {
      Address b = g.apply(a);
      unsigned long long r = address_rank(profile, b);
      if (seen.insert(r).second) queue.push_back(b);
    }
  }
  return seen.size() == static_cast<unsigned long long>(target);
}

std::string u128_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out += static_cast<char>('0' + static_cast<int>(v % 10));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace trunk

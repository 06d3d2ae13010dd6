#include "trunk/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "trunk/error.hpp"

namespace trunk {

Perm::Perm(int degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), 0);
}

Perm Perm::from_images(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  std::vector<char> seen(n, 0);
  for (int v : images) {
    if (v < 0 || v >= n || seen[v])
      throw ParseError("image table is not a bijection on 0.." + std::to_string(n - 1), 0);
    seen[v] = 1;
  }
  Perm p;
  p.img_ = std::move(images);
  return p;
}

Perm Perm::from_cycles(const std::string& text, int degree) {
  Perm p(degree);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw ParseError("empty permutation", i);
  bool any_cycle = false;
  while (i < text.size()) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(') throw ParseError("expected '('", i);
    ++i;
    std::vector<int> cycle;
    while (true) {
      skip_ws();
      if (i == text.size()) throw ParseError("unterminated cycle", i);
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("expected a point or ')'", i);
      std::size_t start = i;
      long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > degree) break;
        ++i;
      }
      if (v >= degree)
        throw ParseError("point " + std::to_string(v) + " is outside 0.." +
                             std::to_string(degree - 1),
                         start);
      if (std::find(cycle.begin(), cycle.end(), static_cast<int>(v)) != cycle.end())
        throw ParseError("point " + std::to_string(v) + " repeated within a cycle", start);
      cycle.push_back(static_cast<int>(v));
      skip_ws();
      if (i < text.size() && text[i] == ',') ++i;  // tolerate comma separators
    }
    any_cycle = true;
    for (std::size_t j = 0; j < cycle.size(); ++j) {
      int from = cycle[j];
      int to = cycle[(j + 1) % cycle.size()];
      if (p.img_[from] != from)
        throw ParseError("point " + std::to_string(from) + " appears in two cycles", i);
      p.img_[from] = to;
    }
  }
  if (!any_cycle) throw ParseError("no cycles found", 0);
  return p;
}

Perm Perm::operator*(const Perm& rhs) const {
  Perm out;
  out.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) out.img_[i] = rhs.img_[img_[i]];
  return out;
}

Perm Perm::inverse() const {
  Perm out;
  out.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) out.img_[img_[i]] = static_cast<int>(i);
  return out;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != static_cast<int>(i)) return false;
  return true;
}

bool Perm::is_even() const { return sign_of_images(img_) == 1; }

std::vector<int> Perm::fixed_points() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] == static_cast<int>(i)) out.push_back(static_cast<int>(i));
  return out;
}

std::string Perm::to_cycles() const {
  std::ostringstream os;
  std::vector<char> seen(img_.size(), 0);
  bool any = false;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == static_cast<int>(i)) continue;
    any = true;
    os << '(';
    std::size_t j = i;
    bool first = true;
    do {
      if (!first) os << ' ';
      first = false;
      os << j;
      seen[j] = 1;
      j = static_cast<std::size_t>(img_[j]);
    } while (j != i);
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

std::size_t PermHash::operator()(const Perm& p) const {
  std::size_t h = 1469598103934665603ull;
  for (int v : p.images()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

Perm conjugate(const Perm& g, const Perm& b) {
  // (b^-1 then g then b) as a right action: image of b[i] is b[g[i]].
  std::vector<int> out(g.degree());
  for (int i = 0; i < g.degree(); ++i) out[b[i]] = b[g[i]];
  return Perm::from_images(std::move(out));
}

int sign_of_images(const std::vector<int>& images) {
  std::vector<char> seen(images.size(), 0);
  int transpositions = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = static_cast<std::size_t>(images[j]);
      ++len;
    }
    transpositions += len - 1;
  }
  return (transpositions % 2 == 0) ? 1 : -1;
}

}  // namespace trunk

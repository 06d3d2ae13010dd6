#pragma once

#include <string>
#include <vector>

#include "trunk/germ.hpp"
#include "trunk/perm.hpp"
#include "trunk/permgroup.hpp"
#include "trunk/portrait.hpp"

namespace trunk {

// One group read from a catalog file, kept as raw generators so a bad entry
// can be reported without poisoning its neighbours.
struct CatalogEntry {
  std::string name;
  int degree = 0;
  std::vector<Perm> generators;
  std::vector<std::string> tags;
};

// Stock groups by name: the C<n>/S<n>/A<n> families for any n >= 1, plus
// PSL(2,7) on the projective line over the 7-element field (generated by
// z -> z+1 and z -> -1/z), AGL(1,5) on the 5-element field (x -> x+1,
// x -> 2x), and AGammaL(1,8) on the 8-element field realised as binary
// polynomials modulo x^3 + x + 1 (x -> x+1, x -> zx, x -> x^2).
// Throws IncompatibleParameters for a name it does not know.
PermGroup builtin_group(const std::string& name);

// The stock list used as the default audit catalog.
std::vector<std::string> builtin_names();

// Catalog file: a JSON array of {name, degree, generators, tags?} where each
// generator is either a cycle string like "(0 1 2)(3 4)" or an image array.
// Malformed input throws ParseError with a position; generator errors name
// the offending entry.
std::vector<CatalogEntry> parse_catalog(const std::string& json_text);

PermGroup entry_group(const CatalogEntry& e);

// Portrait JSON: {"profile": [r, a], "depth": n, "labels": {address: perm}}
// with dot-separated addresses keyed by image prefix, identity labels
// omitted, and permutations written as image arrays (cycle strings are also
// accepted on input). Serialisation is canonical: sorted keys, no spaces.
std::string portrait_to_json(const Portrait& p);
Portrait portrait_from_json(const std::string& text);

// Germ JSON: {"D": name or generator list, "d": .., "k": .., "labels":
// {dom-leaf address: portrait object}, "pair": three-line tree-pair block}.
// Identity labels are omitted; "D" round-trips as the name when the group
// has one.
std::string germ_to_json(const GermElement& g);
GermElement germ_from_json(const std::string& text, std::size_t cap = kDefaultCap);

}  // namespace trunk

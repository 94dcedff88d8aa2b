#pragma once

#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "iib/errors.hpp"
#include "iib/scalar.hpp"

namespace iib {

// A finite symbol set. Labels are optional display strings; identity of an
// alphabet for dimension checks is its size.
struct Alphabet {
  Index size = 0;
  std::vector<std::string> labels;  // empty, or exactly `size` unique strings

  static Alphabet of_size(Index n) {
    if (n < 1) throw InvalidConstruction("alphabet size must be >= 1");
    return Alphabet{n, {}};
  }

  static Alphabet with_labels(std::vector<std::string> ls) {
    if (ls.empty()) throw InvalidConstruction("alphabet size must be >= 1");
    std::unordered_set<std::string> seen(ls.begin(), ls.end());
    if (seen.size() != ls.size()) throw InvalidConstruction("alphabet labels must be unique");
    Alphabet a;
    a.size = static_cast<Index>(ls.size());
    a.labels = std::move(ls);
    return a;
  }

  std::string label(Index i) const {
    return labels.empty() ? std::to_string(i) : labels[static_cast<std::size_t>(i)];
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.size == b.size; }
  friend bool operator!=(const Alphabet& a, const Alphabet& b) { return !(a == b); }
};

// Product alphabet with the fixed pairing (x, y) -> x * |Y| + y. Every module
// shares this convention.
inline Index pair_index(Index x, Index y, Index ny) { return x * ny + y; }

inline Alphabet product_alphabet(const Alphabet& x, const Alphabet& y) {
  Alphabet p = Alphabet::of_size(x.size * y.size);
  if (!x.labels.empty() || !y.labels.empty()) {
    p.labels.reserve(static_cast<std::size_t>(p.size));
    for (Index i = 0; i < x.size; ++i)
      for (Index j = 0; j < y.size; ++j)
        p.labels.push_back("(" + x.label(i) + "," + y.label(j) + ")");
  }
  return p;
}

}  // namespace iib

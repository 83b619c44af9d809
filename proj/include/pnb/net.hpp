#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pnb/bits.hpp"
#include "pnb/errors.hpp"

namespace pnb {

struct BoundaryType {
  uint32_t left = 0;
  uint32_t right = 0;
  bool operator==(const BoundaryType&) const = default;
};

/// A marking assigns at most one token per place: a plain place subset.
using Marking = Bits;

/// A net transition: a subset of place ports plus a subset of boundary ports.
/// `sync_tokens` records engagements on boundaries that have become internal
/// through composition; hand-built nets leave it empty. Two transitions can
/// fire in one step only if they are disjoint everywhere, including there.
struct Transition {
  std::string name;
  std::vector<std::string> parts;  // constituent leaf names, for display

  std::vector<uint32_t> pre;     // place indices, sorted
  std::vector<uint32_t> post;    // place indices, sorted
  std::vector<uint32_t> lports;  // left boundary indices, sorted
  std::vector<uint32_t> rports;  // right boundary indices, sorted
  std::vector<std::string> sync_tokens;  // sorted

  /// Identity used for set semantics and deduplication; names are not part
  /// of it.
  auto key() const { return std::tie(pre, post, lports, rports, sync_tokens); }
  bool same_structure(const Transition& o) const { return key() == o.key(); }
};

struct Pnb {
  std::string name;
  BoundaryType type;
  std::vector<std::string> places;
  std::vector<Transition> transitions;

  uint32_t place_index(std::string_view place) const;
  Marking marking_of(std::initializer_list<std::string_view> names) const;
  Marking marking_of(const std::vector<std::string>& names) const;
};

/// Appends a transition given by place names; sorts and dedups all fields.
void add_transition(Pnb& net, std::string name, const std::vector<std::string>& pre,
                    const std::vector<std::string>& post, std::vector<uint32_t> lports,
                    std::vector<uint32_t> rports);

/// Checks every structural invariant and returns one message per violation.
std::vector<std::string> validate(const Pnb& net);

/// Whether two transitions of the same net may fire in a single step:
/// disjoint place neighbourhoods, boundary ports, and internal engagements.
bool independent(const Transition& a, const Transition& b);

/// A synchronisation across a shared boundary: a set of transitions from
/// each operand whose footprints on that boundary coincide.
struct Synchronization {
  std::vector<uint32_t> left_set;   // indices into the left operand
  std::vector<uint32_t> right_set;  // indices into the right operand
};

/// All minimal synchronisations of `m` and `n` across m.right == n.left.
std::vector<Synchronization> minimal_synchronizations(const Pnb& m, const Pnb& n);

/// Composition along the common boundary. Throws TypeError on arity mismatch.
Pnb compose(const Pnb& m, const Pnb& n);

/// Non-interacting parallel composition; boundaries concatenate.
Pnb tensor(const Pnb& m, const Pnb& n);

Pnb empty_net(uint32_t left, uint32_t right, std::string name = "empty");

/// The identity wire: no places, one boundary-only transition per port pair.
Pnb wire_net(uint32_t k);

namespace detail {

template <class T>
bool sorted_disjoint(const std::vector<T>& a, const std::vector<T>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else
      return false;
  }
  return true;
}

template <class T>
std::vector<T> sorted_union(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

}  // namespace pnb

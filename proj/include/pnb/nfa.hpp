#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pnb/bits.hpp"
#include "pnb/errors.hpp"
#include "pnb/semantics.hpp"

namespace pnb {

/// One alphabet symbol: the pair of boundary words observed in a step.
struct Letter {
  Bits left;
  Bits right;

  bool silent() const { return left.none() && right.none(); }
  auto key() const { return std::tie(left, right); }
  bool operator==(const Letter& o) const { return key() == o.key(); }
  bool operator<(const Letter& o) const { return key() < o.key(); }
  std::string to_string() const;
};

struct LetterHash {
  size_t operator()(const Letter& l) const { return l.left.hash() * 31 + l.right.hash(); }
};

struct NfaEdge {
  uint32_t src = 0;
  uint32_t dst = 0;
  Letter letter;
  auto key() const { return std::tie(src, letter, dst); }
  bool operator==(const NfaEdge& o) const { return key() == o.key(); }
  bool operator<(const NfaEdge& o) const { return key() < o.key(); }
};

enum class AcceptanceMode {
  exact,     // marking equals the target
  covering,  // marking contains the target
};

/// Reachability automaton over boundary letters. The all-zeros letter plays
/// the role of epsilon; automata stay reflexive (a silent self-loop on every
/// state) so composition never starves for a matching label.
struct Nfa {
  uint32_t left_arity = 0;
  uint32_t right_arity = 0;
  uint32_t num_states = 0;
  std::vector<NfaEdge> edges;        // sorted, unique
  std::vector<uint32_t> initial;     // sorted, unique
  std::vector<uint32_t> accepting;   // sorted, unique
  std::vector<std::string> origin;   // per-state diagnostics; may be empty

  Letter silent_letter() const { return {Bits(left_arity), Bits(right_arity)}; }
  void canonicalize();
  std::vector<Letter> letters(bool include_silent = false) const;
};

Nfa from_two_lts(const TwoLts& lts, const Marking& init, const Marking& target,
                 AcceptanceMode mode);

/// Synchronising composition: matches the right word of `a` against the left
/// word of `b`, keeping only pairs reachable from initial x initial.
/// `pairs` (when given) receives the operand state pair behind each state.
Nfa compose_nfa(const Nfa& a, const Nfa& b,
                std::vector<std::pair<uint32_t, uint32_t>>* pairs = nullptr,
                size_t budget = SIZE_MAX);

/// Parallel composition: full product with concatenated label words.
Nfa tensor_nfa(const Nfa& a, const Nfa& b, size_t budget = SIZE_MAX);

/// Marks as accepting every state that reaches an accepting state through
/// silent letters only. The weak language is unchanged.
Nfa saturate_acceptance(const Nfa& a);

/// Removes non-loop silent transitions, keeping one silent self-loop per
/// state; non-silent moves are closed under silent* x silent*.
Nfa eliminate_silent(const Nfa& a);

/// Drops states that are unreachable or cannot reach acceptance. Returns the
/// canonical empty automaton when nothing useful remains.
Nfa trim(const Nfa& a);

/// Quotient by the coarsest weak bisimulation respecting saturated
/// acceptance.
Nfa quotient_weak_bisim(const Nfa& a);

enum class ReduceLevel { none, trim, standard };

Nfa reduce(const Nfa& a, ReduceLevel level);

struct EmptinessResult {
  bool empty = true;
  std::vector<Letter> witness;  // shortest accepted word, silent letters elided
};

EmptinessResult is_empty(const Nfa& a);

/// Weak language equivalence, decided by on-the-fly determinized-pair
/// exploration with congruence-closure pruning.
bool equivalent(const Nfa& a, const Nfa& b);

/// One non-accepting initial state with its silent self-loop.
Nfa canonical_empty(uint32_t left_arity, uint32_t right_arity);

/// One accepting initial state looping on every letter of the alphabet.
Nfa universal_nfa(uint32_t left_arity, uint32_t right_arity);

bool is_reflexive(const Nfa& a);

}  // namespace pnb

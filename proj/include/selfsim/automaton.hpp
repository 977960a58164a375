#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selfsim/errors.hpp"

namespace selfsim {

// Letters are dense integers 0..k-1; a word is a finite sequence of letters.
using Letter = int;
using Word = std::vector<Letter>;

// One edge of the state diagram: on input x the state emits `out` and
// hands the rest of the word to state `next`.
struct Transition {
    Letter out = 0;
    int next = 0;

    bool operator==(const Transition&) const = default;
};

// All k transitions of one state, indexed by input letter.
struct StateRecord {
    std::vector<Transition> slots;

    bool operator==(const StateRecord&) const = default;
};

// A finite invertible Mealy automaton (wreath recursion table).
//
// Invariants, enforced by validate():
//   * every state has exactly `alphabet` transitions;
//   * the outputs of each state form a permutation of the letters;
//   * `identity`, when set (>= 0), names a state with x -> x / itself.
//
// States are plain indices; `names` is display metadata only and is either
// empty or has one entry per state. Values are immutable after construction
// by convention: no operation below mutates its inputs.
struct Automaton {
    int alphabet = 0;
    std::vector<StateRecord> states;
    std::vector<std::string> names;  // empty, or one name per state
    int identity = -1;               // -1 when unset

    int size() const { return static_cast<int>(states.size()); }

    const Transition& step(int s, Letter x) const { return states[s].slots[x]; }
    Letter out(int s, Letter x) const { return states[s].slots[x].out; }
    int next(int s, Letter x) const { return states[s].slots[x].next; }

    bool has_identity() const { return identity >= 0; }

    // Name for display; falls back to q<i>.
    std::string display_name(int s) const;

    void validate() const;  // throws ValidationError
};

// .ssg text format (see README). Throws ParseError / ValidationError.
Automaton parse_automaton(const std::string& text);

// Deterministic writer; bit-exact given a fixed state order. Synthesizes
// q<i> names when the table is missing and de-duplicates clashing names.
std::string write_automaton(const Automaton& a);

// Image of w under the automorphism of state s.
Word act(const Automaton& a, int s, const Word& w);

// State reached from s by reading the input labels of w.
int section(const Automaton& a, int s, const Word& w);

struct ComposeResult {
    Automaton automaton;
    std::vector<std::pair<int, int>> pairs;  // state i of the product is pairs[i]
};

// Product automaton: state (a,b) acts as a after b. No reduction is done.
ComposeResult compose(const Automaton& left, const Automaton& right);

// State i of the result is the inverse automorphism of state i of `a`.
Automaton invert(const Automaton& a);

struct ReduceResult {
    Automaton automaton;
    std::vector<int> state_map;  // old state -> new state
};

// Merges states defining equal tree automorphisms (coarsest bisimulation
// respecting outputs, by partition refinement). Class numbering is by
// smallest member index, so the result is canonical for a fixed input order.
ReduceResult reduce(const Automaton& a);

struct UnionResult {
    Automaton automaton;
    std::vector<int> map_left;
    std::vector<int> map_right;
};

// Disjoint union; right-hand states are shifted past the left-hand ones.
UnionResult disjoint_union(const Automaton& left, const Automaton& right);

// Smallest state bisimilar to the identity automorphism, if any.
std::optional<int> find_identity(const Automaton& a);

// True when state sa of a and state sb of b define the same automorphism.
bool bisimilar(const Automaton& a, int sa, const Automaton& b, int sb);

}  // namespace selfsim

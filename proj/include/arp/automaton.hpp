#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "arp/substitution.hpp"

namespace arp {

/// Finite automaton over the nine substitution labels.
struct Automaton {
    std::vector<std::string> states;
    std::set<std::tuple<int, Sub, int>> transitions;
    std::set<int> initial;
    std::set<int> accepting;  // acceptance by final state; all operations keep sets explicit

    int state_index(std::string_view name) const;  // -1 if absent
    int add_state(std::string name);
    void add_transition(std::string_view from, Sub label, std::string_view to);

    bool deterministic() const;
    std::vector<int> targets(int state, Sub label) const;

    /// One transition per line: `state label state`.
    std::string to_text() const;
    static Automaton from_text(std::string_view text);
};

/// The 7-state directive-sequence automaton: state Delta plus the six
/// half-triangle states Hjk; every state accepting, Delta initial.
Automaton build_arp_automaton();

/// The 12-state nondeterministic Markov automaton on the refined partition
/// {Aj Hjk} U {Pjk Hjk}; all states initial and accepting. Transition labels
/// are the matrix inverses, relabeled to the matching substitutions so the
/// whole artifact speaks one alphabet.
Automaton build_markov_nfa();

/// True iff the label sequence traces a path from the initial state.
/// Requires a deterministic automaton.
bool accepts(const Automaton& a, std::span<const Sub> seq);

Automaton determinize(const Automaton& a);
Automaton minimize(const Automaton& a);  // throws NonDeterministicInput
bool isomorphic(const Automaton& a, const Automaton& b);
bool same_language(const Automaton& a, const Automaton& b);

}  // namespace arp

#include "arp/automaton.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace arp {

int Automaton::state_index(std::string_view name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return static_cast<int>(i);
    return -1;
}

int Automaton::add_state(std::string name) {
    int idx = state_index(name);
    if (idx >= 0) return idx;
    states.push_back(std::move(name));
    return static_cast<int>(states.size() - 1);
}

void Automaton::add_transition(std::string_view from, Sub label, std::string_view to) {
    int f = add_state(std::string(from));
    int t = add_state(std::string(to));
    transitions.insert({f, label, t});
}

bool Automaton::deterministic() const {
    if (initial.size() != 1) return false;
    std::set<std::pair<int, Sub>> seen;
    for (const auto& [f, l, t] : transitions)
        if (!seen.insert({f, l}).second) return false;
    return true;
}

std::vector<int> Automaton::targets(int state, Sub label) const {
    std::vector<int> out;
    for (const auto& [f, l, t] : transitions)
        if (f == state && l == label) out.push_back(t);
    return out;
}

std::string Automaton::to_text() const {
    std::ostringstream os;
    for (const auto& [f, l, t] : transitions)
        os << states[static_cast<std::size_t>(f)] << ' ' << sub_label(l) << ' '
           << states[static_cast<std::size_t>(t)] << '\n';
    return os.str();
}

Automaton Automaton::from_text(std::string_view text) {
    Automaton a;
    std::istringstream in{std::string(text)};
    std::string from, label, to;
    while (in >> from >> label >> to) a.add_transition(from, parse_sub_label(label), to);
    // Convention for the plain text format: first listed state initial, all accepting.
    if (!a.states.empty()) a.initial.insert(0);
    for (std::size_t i = 0; i < a.states.size(); ++i) a.accepting.insert(static_cast<int>(i));
    return a;
}

Automaton build_arp_automaton() {
    Automaton g;
    g.add_state("Delta");
    auto h = [](int j, int k) { return "H" + std::to_string(j) + std::to_string(k); };
    for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k) {
            if (j == k) continue;
            int i = 6 - j - k;
            g.add_transition("Delta", ar_sub(k), "Delta");
            g.add_transition("Delta", p_sub(j, k), h(j, k));
            g.add_transition(h(j, k), ar_sub(j), h(j, k));
            g.add_transition(h(j, k), ar_sub(i), "Delta");
            g.add_transition(h(j, k), p_sub(i, j), h(i, j));
            g.add_transition(h(j, k), p_sub(k, i), h(k, i));
            g.add_transition(h(j, k), p_sub(j, i), h(j, i));
        }
    g.initial.insert(0);
    for (std::size_t i = 0; i < g.states.size(); ++i) g.accepting.insert(static_cast<int>(i));
    return g;
}

Automaton build_markov_nfa() {
    Automaton a;
    auto ah = [](int j, int k) { return "A" + std::to_string(j) + "H" + std::to_string(j) + std::to_string(k); };
    auto ph = [](int j, int k) {
        return "P" + std::to_string(j) + std::to_string(k) + "H" + std::to_string(j) +
               std::to_string(k);
    };
    for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k) {
            if (j == k) continue;
            int i = 6 - j - k;
            // T maps both cells of the pair (Aj Hjk, Pjk Hjk) onto the half
            // triangle Hjk, which splits into these six refined cells.
            const std::array<std::string, 6> targets = {ah(i, k),    ah(i, j),    ah(j, k),
                                                        ph(i, j),    ph(j, i),    ph(k, i)};
            for (const auto& t : targets) {
                a.add_transition(ah(j, k), ar_sub(j), t);     // label A_j^-1 ~ alpha_j
                a.add_transition(ph(j, k), p_sub(j, k), t);   // label P_jk^-1 ~ pi_jk
            }
        }
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        a.initial.insert(static_cast<int>(i));
        a.accepting.insert(static_cast<int>(i));
    }
    return a;
}

bool accepts(const Automaton& a, std::span<const Sub> seq) {
    if (!a.deterministic())
        throw NonDeterministicInput("accepts requires a deterministic automaton");
    int state = *a.initial.begin();
    for (Sub s : seq) {
        auto next = a.targets(state, s);
        if (next.empty()) return false;
        state = next.front();
    }
    return a.accepting.count(state) > 0;
}

Automaton determinize(const Automaton& a) {
    std::map<std::set<int>, int> subset_index;
    std::vector<std::set<int>> subsets;
    Automaton d;

    auto subset_name = [&a](const std::set<int>& s) {
        std::string name = "{";
        for (int q : s) {
            if (name.size() > 1) name += ',';
            name += a.states[static_cast<std::size_t>(q)];
        }
        return name + "}";
    };
    auto intern = [&](const std::set<int>& s) {
        auto it = subset_index.find(s);
        if (it != subset_index.end()) return it->second;
        int idx = d.add_state(subset_name(s));
        subset_index.emplace(s, idx);
        subsets.push_back(s);
        bool acc = std::any_of(s.begin(), s.end(), [&](int q) { return a.accepting.count(q); });
        if (acc) d.accepting.insert(idx);
        return idx;
    };

    std::set<int> start(a.initial.begin(), a.initial.end());
    std::queue<int> work;
    work.push(intern(start));
    d.initial.insert(0);
    std::set<int> done;
    while (!work.empty()) {
        int cur = work.front();
        work.pop();
        if (!done.insert(cur).second) continue;
        std::set<int> cur_set = subsets[static_cast<std::size_t>(cur)];
        for (Sub label : kAllSubs) {
            std::set<int> next;
            for (const auto& [f, l, t] : a.transitions)
                if (l == label && cur_set.count(f)) next.insert(t);
            if (next.empty()) continue;
            int idx = intern(next);
            d.transitions.insert({cur, label, idx});
            if (!done.count(idx)) work.push(idx);
        }
    }
    return d;
}

namespace {

/// Moore partition refinement on the completed automaton; the implicit sink
/// class is carried separately so partial automata work unchanged.
Automaton minimize_dfa(const Automaton& a) {
    int n = static_cast<int>(a.states.size());
    // reachable states only
    std::vector<bool> reach(static_cast<std::size_t>(n), false);
    std::queue<int> bfs;
    for (int q : a.initial) {
        reach[static_cast<std::size_t>(q)] = true;
        bfs.push(q);
    }
    while (!bfs.empty()) {
        int q = bfs.front();
        bfs.pop();
        for (const auto& [f, l, t] : a.transitions)
            if (f == q && !reach[static_cast<std::size_t>(t)]) {
                reach[static_cast<std::size_t>(t)] = true;
                bfs.push(t);
            }
    }

    // class id per state; sink is class -1 viewed as "dead"
    std::vector<int> cls(static_cast<std::size_t>(n), 0);
    for (int q = 0; q < n; ++q)
        cls[static_cast<std::size_t>(q)] = a.accepting.count(q) ? 1 : 0;
    const int kSink = -1;

    auto target_class = [&](int q, Sub l) {
        auto t = a.targets(q, l);
        return t.empty() ? kSink : cls[static_cast<std::size_t>(t.front())];
    };

    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::vector<int>, int> signature_to_class;
        std::vector<int> next_cls(static_cast<std::size_t>(n), 0);
        for (int q = 0; q < n; ++q) {
            if (!reach[static_cast<std::size_t>(q)]) continue;
            std::vector<int> sig{cls[static_cast<std::size_t>(q)]};
            for (Sub l : kAllSubs) sig.push_back(target_class(q, l));
            auto [it, inserted] =
                signature_to_class.emplace(sig, static_cast<int>(signature_to_class.size()));
            next_cls[static_cast<std::size_t>(q)] = it->second;
        }
        for (int q = 0; q < n; ++q)
            if (reach[static_cast<std::size_t>(q)] &&
                next_cls[static_cast<std::size_t>(q)] != cls[static_cast<std::size_t>(q)])
                changed = true;
        cls = next_cls;
    }

    Automaton m;
    std::map<int, int> class_state;
    for (int q = 0; q < n; ++q) {
        if (!reach[static_cast<std::size_t>(q)]) continue;
        int c = cls[static_cast<std::size_t>(q)];
        if (!class_state.count(c)) {
            int idx = m.add_state("q" + std::to_string(class_state.size()));
            class_state[c] = idx;
            if (a.accepting.count(q)) m.accepting.insert(idx);
        }
    }
    for (const auto& [f, l, t] : a.transitions)
        if (reach[static_cast<std::size_t>(f)])
            m.transitions.insert({class_state[cls[static_cast<std::size_t>(f)]], l,
                                  class_state[cls[static_cast<std::size_t>(t)]]});
    m.initial.insert(class_state[cls[static_cast<std::size_t>(*a.initial.begin())]]);
    return m;
}

}  // namespace

Automaton minimize(const Automaton& a) {
    if (!a.deterministic())
        throw NonDeterministicInput("minimize requires a deterministic automaton");
    return minimize_dfa(a);
}

bool isomorphic(const Automaton& a, const Automaton& b) {
    if (!a.deterministic() || !b.deterministic())
        throw NonDeterministicInput("isomorphic requires deterministic automata");
    // Canonical pairing by breadth-first traversal in fixed label order.
    std::map<int, int> pair_ab;
    std::queue<std::pair<int, int>> work;
    int ia = *a.initial.begin(), ib = *b.initial.begin();
    pair_ab[ia] = ib;
    work.push({ia, ib});
    std::size_t visited_b = 1;
    while (!work.empty()) {
        auto [qa, qb] = work.front();
        work.pop();
        if (a.accepting.count(qa) != b.accepting.count(qb)) return false;
        for (Sub l : kAllSubs) {
            auto ta = a.targets(qa, l);
            auto tb = b.targets(qb, l);
            if (ta.empty() != tb.empty()) return false;
            if (ta.empty()) continue;
            auto it = pair_ab.find(ta.front());
            if (it != pair_ab.end()) {
                if (it->second != tb.front()) return false;
            } else {
                for (const auto& [x, y] : pair_ab)
                    if (y == tb.front()) return false;  // not injective
                pair_ab[ta.front()] = tb.front();
                ++visited_b;
                work.push({ta.front(), tb.front()});
            }
        }
    }
    // Bijection requires every reachable state matched on both sides.
    std::size_t reach_a = pair_ab.size();
    (void)visited_b;
    std::size_t count_b = 0;
    {
        std::set<int> seen{ib};
        std::queue<int> q2;
        q2.push(ib);
        while (!q2.empty()) {
            int q = q2.front();
            q2.pop();
            for (Sub l : kAllSubs)
                for (int t : b.targets(q, l))
                    if (seen.insert(t).second) q2.push(t);
        }
        count_b = seen.size();
    }
    return reach_a == count_b && reach_a == a.states.size() && count_b == b.states.size();
}

bool same_language(const Automaton& a, const Automaton& b) {
    Automaton da = a.deterministic() ? a : determinize(a);
    Automaton db = b.deterministic() ? b : determinize(b);
    // Product walk over completed automata: a reachable pair disagreeing on
    // liveness or acceptance witnesses a word in the symmetric difference.
    const int kSink = -1;
    std::set<std::pair<int, int>> seen;
    std::queue<std::pair<int, int>> work;
    std::pair<int, int> start{*da.initial.begin(), *db.initial.begin()};
    seen.insert(start);
    work.push(start);
    while (!work.empty()) {
        auto [qa, qb] = work.front();
        work.pop();
        bool acc_a = qa != kSink && da.accepting.count(qa) > 0;
        bool acc_b = qb != kSink && db.accepting.count(qb) > 0;
        if (acc_a != acc_b) return false;
        for (Sub l : kAllSubs) {
            int ta = kSink, tb = kSink;
            if (qa != kSink) {
                auto v = da.targets(qa, l);
                if (!v.empty()) ta = v.front();
            }
            if (qb != kSink) {
                auto v = db.targets(qb, l);
                if (!v.empty()) tb = v.front();
            }
            if (ta == kSink && tb == kSink) continue;
            if (seen.insert({ta, tb}).second) work.push({ta, tb});
        }
    }
    return true;
}

}  // namespace arp

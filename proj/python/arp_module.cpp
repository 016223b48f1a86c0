#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arp/automaton.hpp"
#include "arp/convergence.hpp"
#include "arp/genealogy.hpp"
#include "arp/run.hpp"

namespace py = pybind11;
using namespace arp;

namespace {

InputSpec make_input(const std::optional<std::string>& vector,
                     const std::optional<std::string>& directive, bool periodic,
                     const std::optional<std::string>& word, const std::string& seed,
                     unsigned bits, std::size_t orbit_steps) {
    InputSpec in;
    in.vector_text = vector;
    in.directive_text = directive;
    in.periodic = periodic;
    in.word_text = word;
    if (seed.size() != 1 || seed[0] < '1' || seed[0] > '3')
        throw py::value_error("seed must be '1', '2' or '3'");
    in.seed = seed[0];
    in.bits = bits;
    in.orbit_steps = orbit_steps;
    return in;
}

py::list orbit_py(const std::string& vector, std::size_t steps, unsigned bits) {
    SimplexVector x = SimplexVector::parse(vector, bits);
    Orbit o = orbit(x, steps, bits);
    py::list out;
    for (const auto& e : o.steps) {
        py::dict row;
        row["cell"] = e.cell.to_string();
        row["matrix"] = std::string(matrix_label(e.matrix));
        row["value"] = e.value.decimal(12);
        out.append(row);
    }
    return out;
}

std::vector<std::string> directive_py(const std::string& vector, std::size_t steps,
                                      unsigned bits) {
    SimplexVector x = SimplexVector::parse(vector, bits);
    DirectiveSequence d = directive_from_vector(x, steps, bits);
    std::vector<std::string> out;
    for (Sub s : d.window) out.emplace_back(sub_label(s));
    return out;
}

std::string generate_py(const std::optional<std::string>& vector,
                        const std::optional<std::string>& directive, bool periodic,
                        const std::string& seed, std::size_t length, unsigned bits,
                        std::size_t orbit_steps) {
    InputSpec in = make_input(vector, directive, periodic, std::nullopt, seed, bits, orbit_steps);
    return resolve_handle(in).prefix(length);
}

py::dict complexity_py(const std::optional<std::string>& vector,
                       const std::optional<std::string>& directive, bool periodic,
                       const std::optional<std::string>& word, const std::string& seed, int nmax,
                       bool literal, unsigned bits, std::size_t orbit_steps) {
    InputSpec in = make_input(vector, directive, periodic, word, seed, bits, orbit_steps);
    FactorLanguage lang = resolve_language(in, nmax, literal);
    ComplexityProfile pr = lang.profile(nmax);
    BoundsReport rep = check_bounds(pr);
    py::dict out;
    out["p"] = pr.p;
    out["s"] = pr.s;
    out["b"] = pr.b;
    out["bounds_ok"] = rep.ok();
    out["stabilized"] = lang.stabilized();
    py::list bis;
    for (const auto& b : lang.bispecials(nmax)) {
        py::dict e;
        e["word"] = b.word;
        e["length"] = b.word.size();
        e["m"] = b.m;
        e["class"] = std::string(to_string(b.cls));
        bis.append(e);
    }
    out["bispecials"] = bis;
    return out;
}

std::vector<long long> brute_complexity_py(const std::string& word, int nmax) {
    return complexity_bruteforce(validate_word(word), nmax).p;
}

bool accepts_py(const std::string& labels) {
    return accepts(build_arp_automaton(), parse_directive_labels(labels));
}

bool refinement_minimizes_py() {
    Automaton min = minimize(determinize(build_markov_nfa()));
    return min.states.size() == 7 && isomorphic(min, build_arp_automaton());
}

std::string apply_py(const std::string& labels, const std::string& word) {
    auto seq = parse_directive_labels(labels);
    return compose(seq)(validate_word(word));
}

std::vector<std::vector<long long>> incidence_py(const std::string& label) {
    Mat3i m = incidence(parse_sub_label(label));
    std::vector<std::vector<long long>> out(3, std::vector<long long>(3));
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
    return out;
}

py::list bispecials_py(const std::optional<std::string>& vector,
                       const std::optional<std::string>& directive, bool periodic,
                       const std::string& seed, int nmax, bool literal, unsigned bits,
                       std::size_t orbit_steps) {
    InputSpec in = make_input(vector, directive, periodic, std::nullopt, seed, bits, orbit_steps);
    SadicWordHandle h = resolve_handle(in);
    ShiftedLanguageCache cache(h, nmax, StabilizeOptions{},
                               literal ? LanguageMode::Literal : LanguageMode::Stabilized);
    py::list out;
    for (const auto& b : cache.language(0).bispecials(nmax)) {
        BispecialRecord rec = life(b.word, cache);
        py::dict e;
        e["word"] = b.word;
        e["length"] = b.word.size();
        e["m"] = b.m;
        e["class"] = std::string(to_string(b.cls));
        e["age"] = rec.age;
        std::vector<std::string> hist;
        for (Sub s : rec.history) hist.emplace_back(sub_label(s));
        e["history"] = hist;
        std::vector<std::size_t> lens;
        for (const auto& [w, t] : rec.life) lens.push_back(w.size());
        e["life_lengths"] = lens;
        out.append(e);
    }
    return out;
}

py::list convergence_py(const std::string& vector, std::size_t steps, unsigned bits) {
    SimplexVector x = SimplexVector::parse(vector, bits);
    Orbit o = orbit(x, steps, bits);
    ConeProduct cp;
    py::list out;
    for (std::size_t i = 0; i < o.steps.size(); ++i) {
        cp.absorb(o.steps[i].matrix);
        py::dict row;
        row["step"] = i + 1;
        row["matrix"] = std::string(matrix_label(o.steps[i].matrix));
        row["cone_diameter"] = cone_diameter(cp.matrix);
        out.append(row);
    }
    return out;
}

py::dict balance_py(const std::optional<std::string>& vector,
                    const std::optional<std::string>& directive, bool periodic,
                    const std::string& seed, std::size_t length, int n_cap, unsigned bits,
                    std::size_t orbit_steps) {
    InputSpec in = make_input(vector, directive, periodic, std::nullopt, seed, bits, orbit_steps);
    BalanceReport rep = balance_report(resolve_handle(in), length, n_cap);
    py::dict out;
    out["max_imbalance"] = rep.max_imbalance;
    out["length"] = rep.length;
    return out;
}

py::dict frequencies_py(const std::string& vector, std::size_t length, unsigned bits) {
    SimplexVector x = SimplexVector::parse(vector, bits);
    SadicWordHandle h(directive_from_vector(x, 2000, bits), '1');
    FrequencyReport rep = frequency_report(h, length, x);
    py::dict out;
    std::vector<std::string> freqs;
    for (const auto& f : rep.frequencies) freqs.push_back(f.str());
    out["frequencies"] = freqs;
    out["max_deviation"] = rep.max_deviation;
    out["length"] = rep.length;
    return out;
}

}  // namespace

PYBIND11_MODULE(pyarp, m) {
    m.doc() = "Arnoux-Rauzy-Poincare continued fraction and S-adic word toolkit";

    m.def("orbit", &orbit_py, py::arg("vector"), py::arg("steps"),
          py::arg("bits") = Scalar::kDefaultBitCap,
          "Orbit of a simplex vector: list of {cell, matrix, value} per step.");
    m.def("directive", &directive_py, py::arg("vector"), py::arg("steps"),
          py::arg("bits") = Scalar::kDefaultBitCap,
          "Substitution labels along the orbit of a vector.");
    m.def("generate", &generate_py, py::arg("vector") = std::nullopt,
          py::arg("directive") = std::nullopt, py::arg("periodic") = false,
          py::arg("seed") = "1", py::arg("length"), py::arg("bits") = Scalar::kDefaultBitCap,
          py::arg("orbit_steps") = 1000, "Prefix of the generated word.");
    m.def("complexity", &complexity_py, py::arg("vector") = std::nullopt,
          py::arg("directive") = std::nullopt, py::arg("periodic") = false,
          py::arg("word") = std::nullopt, py::arg("seed") = "1", py::arg("nmax") = 20,
          py::arg("literal") = false, py::arg("bits") = Scalar::kDefaultBitCap,
          py::arg("orbit_steps") = 1000,
          "Factor complexity profile {p, s, b, bounds_ok, bispecials}.");
    m.def("brute_complexity", &brute_complexity_py, py::arg("word"), py::arg("nmax"),
          "Independent distinct-factor counts of a literal word.");
    m.def("automaton_accepts", &accepts_py, py::arg("labels"),
          "Whether a label sequence is a path of the directive automaton.");
    m.def("refinement_minimizes", &refinement_minimizes_py,
          "Whether the 12-state refinement automaton minimizes to the 7-state one.");
    m.def("apply_substitution", &apply_py, py::arg("labels"), py::arg("word"),
          "Apply the composition of the given labels to a word.");
    m.def("incidence", &incidence_py, py::arg("label"),
          "Incidence matrix of a named substitution as nested lists.");
    m.def("bispecials", &bispecials_py, py::arg("vector") = std::nullopt,
          py::arg("directive") = std::nullopt, py::arg("periodic") = false,
          py::arg("seed") = "1", py::arg("nmax") = 20, py::arg("literal") = false,
          py::arg("bits") = Scalar::kDefaultBitCap, py::arg("orbit_steps") = 1000,
          "Bispecial factors with multiplicities, ages and histories.");
    m.def("convergence", &convergence_py, py::arg("vector"), py::arg("steps"),
          py::arg("bits") = Scalar::kDefaultBitCap,
          "Cone diameters along the orbit matrix products.");
    m.def("balance", &balance_py, py::arg("vector") = std::nullopt,
          py::arg("directive") = std::nullopt, py::arg("periodic") = false,
          py::arg("seed") = "1", py::arg("length") = 10000, py::arg("n_cap") = 100,
          py::arg("bits") = Scalar::kDefaultBitCap, py::arg("orbit_steps") = 1000,
          "Per-letter sliding-window imbalance of a generated prefix.");
    m.def("letter_frequencies", &frequencies_py, py::arg("vector"), py::arg("length"),
          py::arg("bits") = Scalar::kDefaultBitCap,
          "Empirical letter frequencies of the generated word against the vector.");
}

#include <cmath>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "arp/automaton.hpp"
#include "arp/convergence.hpp"
#include "arp/genealogy.hpp"
#include "arp/run.hpp"

using nlohmann::json;
using namespace arp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

struct CommonOpts {
    InputSpec input;
    int nmax = 20;
    bool literal = false;
    std::string format = "json";
    StabilizeOptions stab;
};

void add_input_options(CLI::App* cmd, InputSpec& in) {
    cmd->add_option("--vector", in.vector_text,
                    "simplex vector, e.g. \"1,pi,sqrt(2)\" or \"3/10,1/2,1/5\"");
    cmd->add_option("--directive", in.directive_text,
                    "whitespace-separated labels a1..a3 p12..p32");
    cmd->add_flag("--periodic", in.periodic, "repeat the directive window forever");
    cmd->add_option_function<std::string>(
           "--seed",
           [&in](const std::string& s) {
               if (s.size() != 1 || s[0] < '1' || s[0] > '3')
                   throw CLI::ValidationError("--seed must be 1, 2 or 3");
               in.seed = s[0];
           },
           "seed letter (default 1)")
        ->default_str("1");
    cmd->add_option("--bits", in.bits, "precision cap for the comparison oracle")
        ->default_val(Scalar::kDefaultBitCap);
    cmd->add_option("--orbit-steps", in.orbit_steps,
                    "orbit length cap when deriving directives from vectors")
        ->default_val(1000);
}

void add_stabilize_options(CLI::App* cmd, StabilizeOptions& opt) {
    cmd->add_option("--rounds", opt.max_rounds, "deepening round cap")->default_val(20);
    cmd->add_option("--floor", opt.floor_mult, "prefix length floor multiplier")->default_val(4);
}

json vector_json(const SimplexVector& x) {
    json j = json::array();
    for (const auto& d : x.decimal(12)) j.push_back(d);
    return j;
}

json profile_json(const ComplexityProfile& pr, const BoundsReport& rep) {
    json j;
    j["p"] = pr.p;
    j["s"] = pr.s;
    j["b"] = pr.b;
    j["bounds_ok"] = rep.ok();
    json v;
    v["s_not_in_2_3"] = rep.s_violations;
    v["p_below_lower"] = rep.lower_violations;
    v["p_above_upper"] = rep.upper_violations;
    v["p_above_3n_plus_1"] = rep.upper3_violations;
    v["b_partial_sums"] = rep.bsum_violations;
    j["violations"] = v;
    return j;
}

json bispecials_json(const FactorLanguage& lang, int nmax) {
    json arr = json::array();
    for (const auto& b : lang.bispecials(nmax)) {
        json e;
        e["word"] = b.word;
        e["length"] = b.word.size();
        e["m"] = b.m;
        e["class"] = std::string(to_string(b.cls));
        e["table"] = b.table.to_string();
        arr.push_back(e);
    }
    return arr;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string decimal_string(double v, int digits = 12) {
    if (std::isinf(v)) return "inf";
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

int run_orbit(const CommonOpts& o, std::size_t steps) {
    SimplexVector x = SimplexVector::parse(*o.input.vector_text, o.input.bits);
    Orbit orb = orbit(x, steps, o.input.bits);
    json out;
    out["input"] = *o.input.vector_text;
    out["terminated_on_boundary"] = orb.hit_boundary;
    json arr = json::array();
    json labels = json::array();
    for (std::size_t i = 0; i < orb.steps.size(); ++i) {
        const auto& e = orb.steps[i];
        json row;
        row["step"] = i + 1;
        row["cell"] = e.cell.to_string();
        row["matrix"] = std::string(matrix_label(e.matrix));
        row["value"] = vector_json(e.value);
        arr.push_back(row);
        labels.push_back(std::string(matrix_label(e.matrix)));
    }
    out["matrices"] = labels;
    out["steps"] = arr;
    emit(out);
    return kExitOk;
}

int run_directive(const CommonOpts& o, std::size_t steps) {
    InputSpec in = o.input;
    in.orbit_steps = steps;
    DirectiveSequence d = resolve_directive(in);
    json out;
    out["labels"] = json::array();
    for (Sub s : d.window) out["labels"].push_back(std::string(sub_label(s)));
    out["type"] = classify_type(d).to_string();
    emit(out);
    return kExitOk;
}

int run_generate(const CommonOpts& o, std::size_t length) {
    SadicWordHandle h = resolve_handle(o.input);
    json out;
    out["word"] = h.prefix(length);
    out["seed"] = std::string(1, o.input.seed);
    out["length"] = length;
    if (seed_risk(h.directive(), o.input.seed) == SeedRisk::NonRecurrentRisk)
        out["warning"] = "seed letter conflicts with the declared tail type (non-recurrent risk)";
    emit(out);
    return kExitOk;
}

int run_complexity(const CommonOpts& o) {
    FactorLanguage lang = resolve_language(o.input, o.nmax, o.literal, o.stab);
    ComplexityProfile pr = lang.profile(o.nmax);
    BoundsReport rep = check_bounds(pr);
    if (o.format == "csv") {
        std::cout << "n,p,s,b\n";
        for (std::size_t n = 0; n < pr.p.size(); ++n)
            std::cout << n << ',' << pr.p[n] << ',' << pr.s[n] << ',' << pr.b[n] << "\n";
        return kExitOk;
    }
    json out = profile_json(pr, rep);
    out["stabilized"] = lang.stabilized();
    out["analyzed_length"] = lang.text().size();
    out["bispecials"] = bispecials_json(lang, o.nmax);
    emit(out);
    return kExitOk;
}

int run_bispecial(const CommonOpts& o) {
    if (!o.input.vector_text && !o.input.directive_text)
        throw ParseError("bispecial needs --vector or --directive (ages need the directive)");
    SadicWordHandle h = resolve_handle(o.input);
    LanguageMode mode = o.literal ? LanguageMode::Literal : LanguageMode::Stabilized;
    ShiftedLanguageCache cache(h, o.nmax, o.stab, mode);
    const FactorLanguage& lang = cache.language(0);
    json arr = json::array();
    for (const auto& b : lang.bispecials(o.nmax)) {
        BispecialRecord rec = life(b.word, cache);
        json e;
        e["word"] = b.word;
        e["length"] = b.word.size();
        e["m"] = b.m;
        e["class"] = std::string(to_string(b.cls));
        e["age"] = rec.age;
        json hist = json::array();
        for (Sub s : rec.history) hist.push_back(std::string(sub_label(s)));
        e["history"] = hist;
        json ll = json::array();
        for (const auto& [w, t] : rec.life) ll.push_back(w.size());
        e["life_lengths"] = ll;
        arr.push_back(e);
    }
    json out;
    out["bispecials"] = arr;
    emit(out);
    return kExitOk;
}

int run_genealogy_verify(const CommonOpts& o) {
    SadicWordHandle h = resolve_handle(o.input);
    LanguageMode mode = o.literal ? LanguageMode::Literal : LanguageMode::Stabilized;
    ShiftedLanguageCache cache(h, o.nmax, o.stab, mode);
    const FactorLanguage& lang = cache.language(0);

    json out;
    std::vector<std::string> table_mismatches;
    for (const auto& b : lang.bispecials(o.nmax)) {
        BispecialRecord rec = life(b.word, cache);
        HistoryClass hc = classify_history(rec.history);
        bool matched = false;
        for (const auto& pred : hc.members)
            matched |= pred.dminus == b.table.dminus() && pred.m == b.m &&
                       pred.ordinary == b.table.ordinary();
        if (!matched)
            table_mismatches.push_back("'" + b.word + "' does not match its history row " +
                                       std::to_string(hc.row));
    }
    AlternanceReport rep = alternance_report(cache, o.nmax);
    out["history_table_ok"] = table_mismatches.empty();
    out["history_table_violations"] = table_mismatches;
    out["alternance_ok"] = rep.ok();
    out["alternance_violations"] = rep.violations;
    out["bispecial_count"] = rep.bispecial_count;
    json entries = json::array();
    for (const auto& e : rep.entries) {
        json row;
        row["word"] = e.word;
        row["length"] = e.word.size();
        row["m"] = e.m;
        row["age"] = e.age;
        entries.push_back(row);
    }
    out["non_neutral"] = entries;
    emit(out);
    return table_mismatches.empty() && rep.ok() ? kExitOk : kExitViolation;
}

int run_automaton_check(const std::string& seq_text) {
    auto seq = parse_directive_labels(seq_text);
    bool ok = accepts(build_arp_automaton(), seq);
    json out;
    out["sequence"] = seq_text;
    out["accepted"] = ok;
    emit(out);
    return ok ? kExitOk : kExitViolation;
}

int run_convergence(const CommonOpts& o, std::size_t steps) {
    SimplexVector x = SimplexVector::parse(*o.input.vector_text, o.input.bits);
    Orbit orb = orbit(x, steps, o.input.bits);
    ConeProduct cp;
    // exact letter counts of the directive images via the running product
    json arr = json::array();
    for (std::size_t i = 0; i < orb.steps.size(); ++i) {
        cp.absorb(orb.steps[i].matrix);
        json row;
        row["step"] = i + 1;
        row["matrix"] = std::string(matrix_label(orb.steps[i].matrix));
        double d = cone_diameter(cp.matrix);
        row["cone_diameter"] = decimal_string(d);
        int seed_col = letter_index(o.input.seed);
        std::array<Int, 3> counts{cp.matrix(0, seed_col), cp.matrix(1, seed_col),
                                  cp.matrix(2, seed_col)};
        Int len = counts[0] + counts[1] + counts[2];
        // deviation at the image-length boundary, approximate for display
        Scalar sum = x.x[0] + x.x[1] + x.x[2];
        double s = sum.approx();
        double dev = 0;
        for (int c = 0; c < 3; ++c) {
            double emp = counts[static_cast<std::size_t>(c)].convert_to<double>() /
                         len.convert_to<double>();
            double tgt = x.x[static_cast<std::size_t>(c)].approx() / s;
            dev = std::max(dev, std::abs(emp - tgt));
        }
        row["prefix_length"] = len.str();
        row["freq_deviation"] = decimal_string(dev);
        arr.push_back(row);
    }
    json out;
    out["input"] = *o.input.vector_text;
    out["steps"] = arr;
    emit(out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arnoux-Rauzy-Poincare continued fraction and S-adic word toolkit"};
    app.require_subcommand(1);

    CommonOpts orbit_o, directive_o, generate_o, complexity_o, bispecial_o, genealogy_o,
        convergence_o;
    std::size_t orbit_steps = 5, directive_steps = 29, generate_length = 100,
                convergence_steps = 100;
    std::string automaton_seq;

    auto* c_orbit = app.add_subcommand("orbit", "orbit of a simplex vector under the map");
    add_input_options(c_orbit, orbit_o.input);
    c_orbit->add_option("--steps", orbit_steps, "number of steps")->default_val(5);

    auto* c_dir = app.add_subcommand("directive", "directive labels of a vector's orbit");
    add_input_options(c_dir, directive_o.input);
    c_dir->add_option("--steps", directive_steps, "number of labels")->default_val(29);

    auto* c_gen = app.add_subcommand("generate", "generate a word prefix");
    add_input_options(c_gen, generate_o.input);
    c_gen->add_option("--length", generate_length, "prefix length")->required();

    auto* c_cx = app.add_subcommand("complexity", "factor complexity profile");
    add_input_options(c_cx, complexity_o.input);
    c_cx->add_option("--word", complexity_o.input.word_text, "literal word over {1,2,3}");
    c_cx->add_option("--nmax", complexity_o.nmax, "profile depth")->default_val(20);
    c_cx->add_flag("--literal", complexity_o.literal,
                   "treat the full window image as a finite word");
    c_cx->add_option("--format", complexity_o.format, "json or csv")->default_val("json");
    add_stabilize_options(c_cx, complexity_o.stab);

    auto* c_bi = app.add_subcommand("bispecial", "bispecial factors with ages and histories");
    add_input_options(c_bi, bispecial_o.input);
    c_bi->add_option("--nmax", bispecial_o.nmax, "maximum factor length")->default_val(20);
    c_bi->add_flag("--literal", bispecial_o.literal, "analyze the finite window image");
    add_stabilize_options(c_bi, bispecial_o.stab);

    auto* c_ge = app.add_subcommand("genealogy", "bispecial genealogy suites");
    auto* c_gev = c_ge->add_subcommand("verify", "run the history-table and alternance checks");
    add_input_options(c_gev, genealogy_o.input);
    c_gev->add_option("--nmax", genealogy_o.nmax, "maximum factor length")->default_val(40);
    c_gev->add_flag("--literal", genealogy_o.literal, "analyze the finite window image");
    add_stabilize_options(c_gev, genealogy_o.stab);

    auto* c_au = app.add_subcommand("automaton", "directive-sequence automaton");
    auto* c_auc = c_au->add_subcommand("check", "check a label sequence");
    c_auc->add_option("sequence", automaton_seq, "labels, e.g. \"p23 p13\"")->required();

    auto* c_cv = app.add_subcommand("convergence", "cone diameters and frequency deviations");
    add_input_options(c_cv, convergence_o.input);
    c_cv->add_option("--steps", convergence_steps, "number of steps")->default_val(100);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_orbit->parsed()) {
            if (!orbit_o.input.vector_text) throw ParseError("orbit needs --vector");
            return run_orbit(orbit_o, orbit_steps);
        }
        if (c_dir->parsed()) return run_directive(directive_o, directive_steps);
        if (c_gen->parsed()) return run_generate(generate_o, generate_length);
        if (c_cx->parsed()) return run_complexity(complexity_o);
        if (c_bi->parsed()) return run_bispecial(bispecial_o);
        if (c_ge->parsed()) {
            if (!c_gev->parsed()) throw ParseError("usage: genealogy verify ...");
            return run_genealogy_verify(genealogy_o);
        }
        if (c_au->parsed()) {
            if (!c_auc->parsed()) throw ParseError("usage: automaton check <sequence>");
            return run_automaton_check(automaton_seq);
        }
        if (c_cv->parsed()) {
            if (!convergence_o.input.vector_text) throw ParseError("convergence needs --vector");
            return run_convergence(convergence_o, convergence_steps);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

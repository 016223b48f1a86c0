#include "arp/genealogy.hpp"

#include <algorithm>
#include <optional>

namespace arp {

namespace {

struct Ijk {
    char i, j, k;  // letters
};

Ijk letters_of(Sub s) {
    int k = sub_k(s);
    int j = is_ar(s) ? 0 : sub_j(s);
    if (is_ar(s)) {
        // pick i < j among the two non-k letters for determinism
        int a = k == 1 ? 2 : 1;
        int b = k == 3 ? 2 : 3;
        return {index_letter(a - 1), index_letter(b - 1), index_letter(k - 1)};
    }
    int i = 6 - j - k;
    return {index_letter(i - 1), index_letter(j - 1), index_letter(k - 1)};
}

}  // namespace

Desubstitution desubstitute(const Word& w, Sub sigma) {
    Desubstitution out;
    Substitution sub = named_substitution(sigma);
    auto [li, lj, lk] = letters_of(sigma);
    std::size_t pos = 0;

    if (is_ar(sigma)) {
        if (!w.empty() && w[0] == lk) {
            out.prepended = Word(1, lk);
            pos = 1;
            out.case_tag = 2;
        } else {
            out.case_tag = 1;
        }
    } else {
        if (!w.empty() && w[0] == lj) {
            if (w.size() == 1) {  // bare j: the prepended border letter alone
                out.prepended = Word(1, lj);
                out.case_tag = 4;
                return out;
            }
            if (w[1] != lk)
                throw NotAFactorImage("letter " + std::string(1, lj) + " must be followed by " +
                                      std::string(1, lk) + " inside images of " +
                                      std::string(sub_label(sigma)));
            out.prepended = {lj, lk};
            pos = 2;
            out.case_tag = 5;
        } else if (!w.empty() && w[0] == lk) {
            out.prepended = Word(1, lk);
            pos = 1;
            out.case_tag = 6;
        } else {
            out.case_tag = 3;
        }
    }

    // parse the remainder against the prefix code of the images, which all
    // begin with distinct letters
    while (pos < w.size()) {
        char c = w[pos];
        const Word& img = sub.image(c);
        if (w.size() - pos >= img.size() && w.compare(pos, img.size(), img) == 0) {
            out.antecedent += c;
            pos += img.size();
            continue;
        }
        // must be a proper prefix of the image ending the factor
        std::size_t remaining = w.size() - pos;
        if (remaining < img.size() && w.compare(pos, remaining, img, 0, remaining) == 0) {
            out.appended = w.substr(pos);
            pos = w.size();
            break;
        }
        throw NotAFactorImage("cannot parse '" + w + "' as a factor of " +
                              std::string(sub_label(sigma)) + "(u)");
    }
    return out;
}

Word antecedent_bispecial(const Word& w, Sub sigma) {
    if (w.empty()) throw ParseError("the empty word has no bispecial antecedent");
    auto [li, lj, lk] = letters_of(sigma);
    if (w.back() != lk)
        throw ParseError("a bispecial factor of " + std::string(sub_label(sigma)) +
                         "(u) must end with " + std::string(1, lk));
    Desubstitution d;
    try {
        d = desubstitute(w, sigma);
    } catch (const NotAFactorImage& e) {
        throw ParseError(e.what());
    }
    bool good_case = is_ar(sigma) ? d.case_tag == 2 : (d.case_tag == 5 || d.case_tag == 6);
    if (!good_case || !d.appended.empty())
        throw ParseError("'" + w + "' is not of the form k*" + std::string(sub_label(sigma)) +
                         "(v) or jk*" + std::string(sub_label(sigma)) + "(v)");
    return d.antecedent;
}

std::vector<ExtendedImage> extended_images(const Word& v, const ExtensionTable& table, Sub sigma) {
    if (!table.bispecial())
        throw InvalidTable("extended images require a bispecial extension table");
    Substitution sub = named_substitution(sigma);
    auto [li, lj, lk] = letters_of(sigma);
    std::vector<ExtendedImage> out;
    if (is_ar(sigma)) {
        ExtendedImage img;
        img.word = Word(1, lk) + sub(v);
        img.table = table;  // extension types survive Arnoux-Rauzy images unchanged
        img.bispecial = true;
        out.push_back(std::move(img));
        return out;
    }
    int ii = letter_index(li), ij = letter_index(lj), ik = letter_index(lk);
    std::uint8_t ri = table.row(ii), rj = table.row(ij), rk = table.row(ik);
    // Row projections: left letter i maps into the jk-prepended image, j and k
    // collapse onto the k-prepended one.
    ExtensionTable tk;  // E(k pi(v)) = ({j} x (Ri u Rj)) u ({k} x Rk)
    tk.set_row(ij, static_cast<std::uint8_t>(ri | rj));
    tk.set_row(ik, rk);
    ExtensionTable tjk;  // E(jk pi(v)) = ({i} x Ri) u ({k} x Rj)
    tjk.set_row(ii, ri);
    tjk.set_row(ik, rj);

    Word base = sub(v);
    out.push_back({Word(1, lk) + base, tk, tk.bispecial()});
    out.push_back({Word{lj, lk} + base, tjk, tjk.bispecial()});
    return out;
}

ExtensionTable empty_word_table(Sub sigma) {
    auto [li, lj, lk] = letters_of(sigma);
    int ii = letter_index(li), ij = letter_index(lj), ik = letter_index(lk);
    ExtensionTable t;
    // junction digrams: last letters of images are all k
    t.set(ik, ii);
    t.set(ik, ij);
    t.set(ik, ik);
    if (is_ar(sigma)) {  // interior digrams ik, jk
        t.set(ii, ik);
        t.set(ij, ik);
    } else {  // interior digrams ij, jk
        t.set(ii, ij);
        t.set(ij, ik);
    }
    return t;
}

ShiftedLanguageCache::ShiftedLanguageCache(SadicWordHandle handle, int n_max, StabilizeOptions opt,
                                           LanguageMode mode)
    : handle_(std::move(handle)), nmax_(n_max), opt_(opt), mode_(mode) {}

const FactorLanguage& ShiftedLanguageCache::language(std::size_t shift) {
    auto it = langs_.find(shift);
    if (it != langs_.end()) return it->second;
    SadicWordHandle h = handle_.shifted(shift);
    if (mode_ == LanguageMode::Literal && !h.max_length())
        throw ParseError("literal language analysis needs a bounded directive window");
    FactorLanguage lang =
        mode_ == LanguageMode::Literal
            ? FactorLanguage::from_word(h.prefix(h.max_length()->convert_to<std::size_t>()), nmax_)
            : FactorLanguage::from_handle(h, nmax_, opt_);
    return langs_.emplace(shift, std::move(lang)).first->second;
}

BispecialRecord life(const Word& w, ShiftedLanguageCache& cache) {
    BispecialRecord rec;
    rec.word = w;
    rec.table = cache.language(0).extensions(w);
    if (!rec.table.bispecial())
        throw ChainStuck("'" + w + "' is not bispecial in the generated language");
    rec.m = rec.table.multiplicity();
    rec.cls = classify_bispecial(rec.table);
    rec.life.emplace_back(w, rec.table);

    Word cur = w;
    std::size_t depth = 0;
    while (!cur.empty()) {
        Sub sigma = cache.handle().directive().at(depth);
        Word v;
        try {
            v = antecedent_bispecial(cur, sigma);
        } catch (const ParseError& e) {
            throw ChainStuck("desubstitution failed at depth " + std::to_string(depth) + ": " +
                             e.what());
        }
        ++depth;
        ExtensionTable t;
        try {
            t = cache.language(depth).extensions(v);
        } catch (const FactorNotFound& e) {
            throw ChainStuck("antecedent missing from the shifted language: " +
                             std::string(e.what()));
        }
        if (!v.empty() && !t.bispecial())
            throw ChainStuck("antecedent '" + v + "' at depth " + std::to_string(depth) +
                             " is not bispecial");
        if (v.size() >= cur.size())
            throw ChainStuck("antecedent failed to shrink at depth " + std::to_string(depth));
        rec.life.emplace_back(v, t);
        cur = std::move(v);
    }
    rec.age = depth;
    rec.history.reserve(depth + 1);
    for (std::size_t i = 0; i <= depth; ++i) rec.history.push_back(cache.handle().directive().at(i));
    return rec;
}

HistoryClass classify_history(std::span<const Sub> history) {
    if (history.empty()) throw PatternMismatch("empty history");
    std::size_t n = history.size() - 1;
    bool all_ar_before_last = true;
    for (std::size_t i = 0; i < n; ++i)
        if (!is_ar(history[i])) all_ar_before_last = false;

    if (all_ar_before_last && is_ar(history[n])) return {1, {{3, 0, true}}};
    if (all_ar_before_last && is_poincare(history[n])) return {2, {{3, 0, false}}};

    // last Poincare label strictly before the final position
    std::size_t ell = n;
    bool found = false;
    for (std::size_t i = n; i-- > 0;)
        if (is_poincare(history[i])) {
            ell = i;
            found = true;
            break;
        }
    if (!found) throw PatternMismatch("history has no Poincare label before the final one");
    for (std::size_t i = ell + 1; i < n; ++i)
        if (!is_ar(history[i]))
            throw PatternMismatch("labels between the pivot and the final one must be Arnoux-Rauzy");

    int j = sub_j(history[ell]), k = sub_k(history[ell]);
    int i = 6 - j - k;
    Sub last = history[n];
    if (is_ar(last)) {
        if (sub_k(last) == k) return {3, {{2, 0, true}}};
        return {4, {{2, 0, true}, {2, 0, true}}};
    }
    int lj = sub_j(last), lk = sub_k(last);
    if (lk == k)  // pi_jk or pi_ik again: a strong/weak pair is born
        return {6, {{2, 1, false}, {2, -1, false}}};
    if ((lj == j && lk == i) || (lj == k && lk == i) || (lj == i && lk == j) ||
        (lj == k && lk == j))
        return {5, {{2, 0, true}, {2, 0, true}}};
    throw PatternMismatch("history tail does not match any known pattern");
}

AbelianCompare compare_abelian(const Abelian& u, const Abelian& v) {
    AbelianCompare out;
    bool all_le = true, all_lt = true;
    for (std::size_t i = 0; i < 3; ++i) {
        if (u[i] > v[i]) all_le = false;
        if (u[i] >= v[i]) all_lt = false;
        out.strict[i] = u[i] < v[i];
    }
    if (all_lt)
        out.kind = AbelianOrder::StrictLess;
    else if (all_le)
        out.kind = AbelianOrder::LeqWithStrictSet;
    else
        out.kind = AbelianOrder::Incomparable;
    return out;
}

AlternanceReport alternance_report(ShiftedLanguageCache& cache, int max_len) {
    AlternanceReport rep;
    const FactorLanguage& lang = cache.language(0);
    auto bis = lang.bispecials(max_len);
    rep.bispecial_count = bis.size();

    std::map<std::size_t, std::vector<const FactorLanguage::Bispecial*>> by_age;
    std::map<std::size_t, std::vector<AlternanceEntry>> nonneutral_by_age;
    for (const auto& b : bis) {
        BispecialRecord rec = life(b.word, cache);
        by_age[rec.age].push_back(&b);
        if (b.m != 0) {
            nonneutral_by_age[rec.age].push_back({b.word, b.m, rec.age});
            rep.entries.push_back({b.word, b.m, rec.age});
        }
    }
    std::sort(rep.entries.begin(), rep.entries.end(), [](const auto& a, const auto& b) {
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        return a.word < b.word;
    });

    for (const auto& [age, group] : by_age)
        if (group.size() > 2)
            rep.violations.push_back("age " + std::to_string(age) + " has " +
                                     std::to_string(group.size()) + " bispecial factors");

    // sign alternation over the length-ordered non-neutral factors
    int expected = 1;
    for (const auto& e : rep.entries) {
        if (e.m != expected) {
            rep.violations.push_back("factor '" + e.word + "' (age " + std::to_string(e.age) +
                                     ") has multiplicity " + std::to_string(e.m) + ", expected " +
                                     std::to_string(expected));
            break;
        }
        expected = -expected;
    }

    // per-age strong/weak ordering and the cross-age ordering
    struct Pair {
        std::size_t age = 0;
        std::optional<std::size_t> strong_len, weak_len;
    };
    std::vector<Pair> pairs;
    for (const auto& [age, group] : nonneutral_by_age) {
        Pair p;
        p.age = age;
        for (const auto& e : group) {
            if (e.m > 0) p.strong_len = e.word.size();
            if (e.m < 0) p.weak_len = e.word.size();
        }
        if (p.strong_len && p.weak_len && *p.strong_len >= *p.weak_len)
            rep.violations.push_back("age " + std::to_string(age) +
                                     ": strong factor is not shorter than the weak one");
        pairs.push_back(p);
    }
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            if (pairs[a].weak_len && pairs[b].strong_len &&
                !(*pairs[a].weak_len < *pairs[b].strong_len))
                rep.violations.push_back("weak factor of age " + std::to_string(pairs[a].age) +
                                         " is not shorter than the strong factor of age " +
                                         std::to_string(pairs[b].age));
        }

    // gap inequality between consecutive complete pairs
    std::optional<std::size_t> younger_weak;
    for (const auto& p : pairs) {
        if (p.strong_len && p.weak_len) {
            long long wplus = static_cast<long long>(*p.strong_len);
            long long wminus = static_cast<long long>(*p.weak_len);
            if (younger_weak) {
                long long z = static_cast<long long>(*younger_weak);
                if (!(wplus - z > wminus - wplus))
                    rep.violations.push_back("gap inequality fails at age " +
                                             std::to_string(p.age));
            } else {
                if (!(wplus >= wminus - wplus))
                    rep.violations.push_back("initial gap inequality fails at age " +
                                             std::to_string(p.age));
            }
        }
        if (p.weak_len) younger_weak = p.weak_len;
    }
    return rep;
}

}  // namespace arp

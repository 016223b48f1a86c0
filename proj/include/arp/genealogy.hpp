#pragma once

#include <map>
#include <span>
#include <vector>

#include "arp/language.hpp"

namespace arp {

/// Unique parse of a factor of a substituted word: w = prepended . s(v) . appended.
struct Desubstitution {
    Word antecedent;
    Word prepended;  // in {e, k} for alpha_k; {e, j, jk, k} for pi_jk
    Word appended;   // proper prefix of an image
    int case_tag = 0;  // 1..2 for alpha, 3..6 for pi, by first letter
};

/// Parses w against the prefix code of sigma's images; throws NotAFactorImage
/// when w cannot occur inside sigma(u).
Desubstitution desubstitute(const Word& w, Sub sigma);

/// The antecedent of a nonempty bispecial factor: w = k.alpha_k(v), or
/// w = k.pi_jk(v) / jk.pi_jk(v). Throws ParseError when w has no such form.
Word antecedent_bispecial(const Word& w, Sub sigma);

struct ExtendedImage {
    Word word;
    ExtensionTable table;  // predicted from the antecedent's table
    bool bispecial = false;
};

/// Candidate bispecial extended images of v with predicted tables. One
/// candidate (with an unchanged table) for Arnoux-Rauzy substitutions; the
/// two candidates k.pi(v), jk.pi(v) for Poincare ones, their tables obtained
/// by projecting the rows of E(v).
std::vector<ExtendedImage> extended_images(const Word& v, const ExtensionTable& table, Sub sigma);

/// Extension table of the empty word in sigma(u), for proper u.
ExtensionTable empty_word_table(Sub sigma);

struct BispecialRecord {
    Word word;
    ExtensionTable table;
    int m = 0;
    BispecialClass cls = BispecialClass::NotBispecial;
    std::size_t age = 0;
    std::vector<Sub> history;  // labels 0..age inclusive
    std::vector<std::pair<Word, ExtensionTable>> life;  // life[age] is the empty word
};

enum class LanguageMode {
    Stabilized,  // deepen until factor sets settle (recurrent inputs)
    Literal,     // analyze the full finite image of the window as-is
};

/// Lazily built languages of the shifted words u^(m), shared by the life
/// computations of all bispecial factors of one word.
class ShiftedLanguageCache {
public:
    ShiftedLanguageCache(SadicWordHandle handle, int n_max, StabilizeOptions opt = {},
                         LanguageMode mode = LanguageMode::Stabilized);

    const SadicWordHandle& handle() const { return handle_; }
    int n_max() const { return nmax_; }
    const FactorLanguage& language(std::size_t shift);

private:
    SadicWordHandle handle_;
    int nmax_;
    StabilizeOptions opt_;
    LanguageMode mode_;
    std::map<std::size_t, FactorLanguage> langs_;
};

/// Iterated desubstitution of a bispecial factor down to the empty word, each
/// chain element re-verified against the corresponding shifted language.
/// Throws ChainStuck when a parse fails or an antecedent is not bispecial.
BispecialRecord life(const Word& w, ShiftedLanguageCache& cache);

struct HistoryPrediction {
    int dminus = 0;
    int m = 0;
    bool ordinary = false;
};

struct HistoryClass {
    int row = 0;                               // 1..6
    std::vector<HistoryPrediction> members;    // one or two bispecial factors
};

/// Classifies a history by its shape: all Arnoux-Rauzy; Arnoux-Rauzy then a
/// final Poincare; or <anything> pi_jk <Arnoux-Rauzy*> <final label>, split
/// by what the final label is relative to (j,k).
HistoryClass classify_history(std::span<const Sub> history);

enum class AbelianOrder { StrictLess, LeqWithStrictSet, Incomparable };

struct AbelianCompare {
    AbelianOrder kind = AbelianOrder::Incomparable;
    std::array<bool, 3> strict{};  // for LeqWithStrictSet: indices where <
};

AbelianCompare compare_abelian(const Abelian& u, const Abelian& v);

struct AlternanceEntry {
    Word word;
    int m = 0;
    std::size_t age = 0;
};

struct AlternanceReport {
    std::vector<AlternanceEntry> entries;  // non-neutral bispecials by length
    std::vector<std::string> violations;
    std::size_t bispecial_count = 0;       // all bispecials examined
    bool ok() const { return violations.empty(); }
};

/// Orders the non-neutral bispecial factors by length and verifies: signs
/// alternate starting +1; the strong member of an age pair is shorter than
/// the weak one; weak factors are shorter than strong factors of later ages;
/// the gap inequality between consecutive pairs; at most two bispecial
/// factors per age.
AlternanceReport alternance_report(ShiftedLanguageCache& cache, int max_len);

}  // namespace arp

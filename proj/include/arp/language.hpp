#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "arp/sadic.hpp"
#include "arp/substitution.hpp"

namespace arp {

/// Two-sided extension table of a factor: entry (a,b) set iff awb occurs.
class ExtensionTable {
public:
    void set(int a, int b) { bits_ |= static_cast<std::uint16_t>(1u << (3 * a + b)); }
    bool get(int a, int b) const { return bits_ & (1u << (3 * a + b)); }
    int card() const;
    int dminus() const;  // nonempty rows
    int dplus() const;   // nonempty columns
    int multiplicity() const { return card() - dminus() - dplus() + 1; }
    bool bispecial() const { return dminus() >= 2 && dplus() >= 2; }
    bool empty() const { return bits_ == 0; }

    /// True iff E is contained in one row plus one column meeting inside E.
    bool ordinary() const;

    std::uint8_t row(int a) const;  // bitmask of right letters for left letter a
    void set_row(int a, std::uint8_t mask);

    ExtensionTable permuted_rows(const std::array<int, 3>& perm) const;
    ExtensionTable permuted_cols(const std::array<int, 3>& perm) const;

    std::string to_string() const;  // sorted pairs, e.g. "12 23 31 32 33"
    static ExtensionTable parse(std::string_view pairs);

    friend bool operator==(const ExtensionTable&, const ExtensionTable&) = default;

private:
    std::uint16_t bits_ = 0;
};

int multiplicity(const ExtensionTable& t);  // throws InvalidTable when empty

enum class BispecialClass { Strong, Weak, NeutralOrdinary, NeutralNonOrdinary, NotBispecial };

std::string_view to_string(BispecialClass c);
BispecialClass classify_bispecial(const ExtensionTable& t);

struct ComplexityProfile {
    std::vector<long long> p, s, b;  // indices 0..N
};

struct BoundsReport {
    std::vector<int> s_violations;       // s(n) not in {2,3}, n >= 1
    std::vector<int> lower_violations;   // p(n) < 2n+1
    std::vector<int> upper_violations;   // p(n) > ceil(5n/2)+1
    std::vector<int> upper3_violations;  // p(n) > 3n+1
    std::vector<int> bsum_violations;    // partial sums of b outside {0,1}
    bool ok() const {
        return s_violations.empty() && lower_violations.empty() && upper_violations.empty() &&
               bsum_violations.empty();
    }
};

BoundsReport check_bounds(const ComplexityProfile& profile);

struct StabilizeOptions {
    int max_rounds = 20;
    int floor_mult = 4;
    std::size_t initial_length = 512;
    std::size_t hard_cap = std::size_t(1) << 26;
};

/// Indexed factor store over a finite text (either a literal word or a
/// stabilized prefix of an S-adic word). Lengths up to n_max + 2 are covered
/// so extension tables of factors up to n_max are trustworthy.
class FactorLanguage {
public:
    static FactorLanguage from_word(Word text, int n_max);
    static FactorLanguage from_handle(const SadicWordHandle& handle, int n_max,
                                      const StabilizeOptions& opt = {});

    const Word& text() const { return text_; }
    int n_max() const { return nmax_; }
    bool stabilized() const { return stabilized_; }

    long long p_count(int n) const;  // direct distinct-factor count
    std::vector<Word> factors(int n) const;
    bool contains(std::string_view w) const;

    /// Observed two-sided table; FactorNotFound when w never occurs with both
    /// neighbours present.
    ExtensionTable extensions(std::string_view w) const;
    int left_valence(std::string_view w) const;   // distinct left letters (one-sided)
    int right_valence(std::string_view w) const;  // distinct right letters (one-sided)

    struct Bispecial {
        Word word;
        ExtensionTable table;
        int m = 0;
        BispecialClass cls = BispecialClass::NotBispecial;
    };
    std::vector<Bispecial> bispecials(int max_len) const;  // ordered by (length, word)

    /// Complexity from one-sided valences and multiplicities: s(n) as the sum
    /// of (d+ - 1), b(n) as the sum of m(w), p rebuilt from p(0)=1. Internally
    /// cross-checked against direct counting; a mismatch throws logic_error.
    ComplexityProfile profile(int n) const;

private:
    Word text_;
    int nmax_ = 0;
    bool stabilized_ = false;
    std::vector<int> sa_, rank_, lcp_;
    std::vector<long long> pcount_;  // p(0..nmax_+2)

    void index();
    std::pair<int, int> interval(std::string_view w) const;  // [lo, hi) over sa
    friend ComplexityProfile complexity_profile(const FactorLanguage&, int);
};

inline ComplexityProfile complexity_profile(const FactorLanguage& lang, int n) {
    return lang.profile(n);
}

/// Independent oracle: rolling-hash distinct counting per length, finite
/// differences for s and b. No suffix structures involved.
ComplexityProfile complexity_bruteforce(const Word& text, int n);
ComplexityProfile complexity_bruteforce(const FactorLanguage& lang, int n);

}  // namespace arp

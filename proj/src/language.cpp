#include "arp/language.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_set>

namespace arp {

// --- ExtensionTable ----------------------------------------------------------

int ExtensionTable::card() const { return __builtin_popcount(bits_); }

std::uint8_t ExtensionTable::row(int a) const {
    return static_cast<std::uint8_t>((bits_ >> (3 * a)) & 0x7u);
}

void ExtensionTable::set_row(int a, std::uint8_t mask) {
    bits_ = static_cast<std::uint16_t>(bits_ & ~(0x7u << (3 * a)));
    bits_ = static_cast<std::uint16_t>(bits_ | (static_cast<std::uint16_t>(mask & 0x7u) << (3 * a)));
}

int ExtensionTable::dminus() const {
    int d = 0;
    for (int a = 0; a < 3; ++a) d += row(a) != 0;
    return d;
}

int ExtensionTable::dplus() const {
    int d = 0;
    for (int b = 0; b < 3; ++b) {
        bool any = get(0, b) || get(1, b) || get(2, b);
        d += any;
    }
    return d;
}

bool ExtensionTable::ordinary() const {
    if (empty()) return false;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (!get(a, b)) continue;
            bool contained = true;
            for (int r = 0; r < 3 && contained; ++r)
                for (int c = 0; c < 3; ++c)
                    if (get(r, c) && r != a && c != b) {
                        contained = false;
                        break;
                    }
            if (contained) return true;
        }
    return false;
}

ExtensionTable ExtensionTable::permuted_rows(const std::array<int, 3>& perm) const {
    ExtensionTable out;
    for (int a = 0; a < 3; ++a) out.set_row(perm[static_cast<std::size_t>(a)], row(a));
    return out;
}

ExtensionTable ExtensionTable::permuted_cols(const std::array<int, 3>& perm) const {
    ExtensionTable out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (get(a, b)) out.set(a, perm[static_cast<std::size_t>(b)]);
    return out;
}

std::string ExtensionTable::to_string() const {
    std::string out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (get(a, b)) {
                if (!out.empty()) out += ' ';
                out += index_letter(a);
                out += index_letter(b);
            }
    return out;
}

ExtensionTable ExtensionTable::parse(std::string_view pairs) {
    ExtensionTable t;
    std::size_t i = 0;
    while (i < pairs.size()) {
        if (std::isspace(static_cast<unsigned char>(pairs[i]))) {
            ++i;
            continue;
        }
        if (i + 1 >= pairs.size() || pairs[i] < '1' || pairs[i] > '3' || pairs[i + 1] < '1' ||
            pairs[i + 1] > '3')
            throw ParseError("extension table entries are letter pairs like 12");
        t.set(letter_index(pairs[i]), letter_index(pairs[i + 1]));
        i += 2;
    }
    return t;
}

int multiplicity(const ExtensionTable& t) {
    if (t.empty()) throw InvalidTable("multiplicity of an empty extension table");
    return t.multiplicity();
}

std::string_view to_string(BispecialClass c) {
    switch (c) {
        case BispecialClass::Strong: return "strong";
        case BispecialClass::Weak: return "weak";
        case BispecialClass::NeutralOrdinary: return "neutral-ordinary";
        case BispecialClass::NeutralNonOrdinary: return "neutral-non-ordinary";
        case BispecialClass::NotBispecial: break;
    }
    return "not-bispecial";
}

BispecialClass classify_bispecial(const ExtensionTable& t) {
    if (t.dminus() < 2 || t.dplus() < 2) return BispecialClass::NotBispecial;
    int m = t.multiplicity();
    if (m > 0) return BispecialClass::Strong;
    if (m < 0) return BispecialClass::Weak;
    return t.ordinary() ? BispecialClass::NeutralOrdinary : BispecialClass::NeutralNonOrdinary;
}

// --- suffix array ------------------------------------------------------------

namespace {

std::vector<int> build_suffix_array(const std::string& s) {
    int n = static_cast<int>(s.size());
    std::vector<int> sa(static_cast<std::size_t>(n)), rank(static_cast<std::size_t>(n)),
        tmp(static_cast<std::size_t>(n));
    std::iota(sa.begin(), sa.end(), 0);
    for (int i = 0; i < n; ++i)
        rank[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i)] - '1';
    const std::size_t buckets = static_cast<std::size_t>(std::max(n + 2, 5));
    for (int k = 1;; k *= 2) {
        auto key = [&](int i) {
            return std::pair<int, int>(rank[static_cast<std::size_t>(i)],
                                       i + k < n ? rank[static_cast<std::size_t>(i + k)] + 1 : 0);
        };
        // counting sort by second then first component
        {
            std::vector<int> cnt(buckets, 0), out(sa.size());
            for (int i = 0; i < n; ++i) ++cnt[static_cast<std::size_t>(key(i).second)];
            std::partial_sum(cnt.begin(), cnt.end(), cnt.begin());
            for (int i = n; i-- > 0;)
                out[static_cast<std::size_t>(--cnt[static_cast<std::size_t>(key(sa[static_cast<std::size_t>(i)]).second)])] =
                    sa[static_cast<std::size_t>(i)];
            sa = out;
        }
        {
            std::vector<int> cnt(buckets, 0), out(sa.size());
            for (int i = 0; i < n; ++i) ++cnt[static_cast<std::size_t>(key(i).first)];
            std::partial_sum(cnt.begin(), cnt.end(), cnt.begin());
            for (int i = n; i-- > 0;)
                out[static_cast<std::size_t>(--cnt[static_cast<std::size_t>(key(sa[static_cast<std::size_t>(i)]).first)])] =
                    sa[static_cast<std::size_t>(i)];
            sa = out;
        }
        tmp[static_cast<std::size_t>(sa[0])] = 0;
        for (int i = 1; i < n; ++i) {
            tmp[static_cast<std::size_t>(sa[static_cast<std::size_t>(i)])] =
                tmp[static_cast<std::size_t>(sa[static_cast<std::size_t>(i - 1)])] +
                (key(sa[static_cast<std::size_t>(i - 1)]) != key(sa[static_cast<std::size_t>(i)]) ? 1 : 0);
        }
        rank = tmp;
        if (rank[static_cast<std::size_t>(sa[static_cast<std::size_t>(n - 1)])] == n - 1) break;
        if (k > n) break;
    }
    return sa;
}

std::vector<int> build_lcp(const std::string& s, const std::vector<int>& sa,
                           const std::vector<int>& rank) {
    int n = static_cast<int>(s.size());
    std::vector<int> lcp(static_cast<std::size_t>(n), 0);
    int h = 0;
    for (int i = 0; i < n; ++i) {
        int r = rank[static_cast<std::size_t>(i)];
        if (r == 0) {
            h = 0;
            continue;
        }
        int j = sa[static_cast<std::size_t>(r - 1)];
        if (h) --h;
        while (i + h < n && j + h < n &&
               s[static_cast<std::size_t>(i + h)] == s[static_cast<std::size_t>(j + h)])
            ++h;
        lcp[static_cast<std::size_t>(r)] = h;
    }
    return lcp;
}

std::vector<long long> direct_counts(const std::string& text, const std::vector<int>& lcp, int k) {
    // p(n) = #{suffixes of length >= n} - #{lcp entries >= n}
    int n = static_cast<int>(text.size());
    std::vector<long long> hist(static_cast<std::size_t>(n + 2), 0);
    for (int i = 1; i < n; ++i) ++hist[static_cast<std::size_t>(lcp[static_cast<std::size_t>(i)])];
    std::vector<long long> lcp_ge(static_cast<std::size_t>(n + 2), 0);
    for (int v = n; v >= 0; --v)
        lcp_ge[static_cast<std::size_t>(v)] =
            lcp_ge[static_cast<std::size_t>(v + 1)] + hist[static_cast<std::size_t>(v)];
    std::vector<long long> p(static_cast<std::size_t>(k + 1), 0);
    p[0] = 1;
    for (int q = 1; q <= k; ++q)
        p[static_cast<std::size_t>(q)] =
            q <= n ? (n - q + 1) - lcp_ge[static_cast<std::size_t>(q)] : 0;
    return p;
}

std::vector<long long> p_vector_of(const std::string& text, int k) {
    if (text.empty()) {
        std::vector<long long> p(static_cast<std::size_t>(k + 1), 0);
        p[0] = 1;
        return p;
    }
    auto sa = build_suffix_array(text);
    std::vector<int> rank(text.size());
    for (std::size_t i = 0; i < sa.size(); ++i) rank[static_cast<std::size_t>(sa[i])] = static_cast<int>(i);
    auto lcp = build_lcp(text, sa, rank);
    return direct_counts(text, lcp, k);
}

}  // namespace

// --- FactorLanguage ----------------------------------------------------------

void FactorLanguage::index() {
    if (text_.empty()) {
        pcount_.assign(static_cast<std::size_t>(nmax_ + 3), 0);
        pcount_[0] = 1;
        return;
    }
    validate_word(text_);
    sa_ = build_suffix_array(text_);
    rank_.assign(text_.size(), 0);
    for (std::size_t i = 0; i < sa_.size(); ++i)
        rank_[static_cast<std::size_t>(sa_[i])] = static_cast<int>(i);
    lcp_ = build_lcp(text_, sa_, rank_);
    pcount_ = direct_counts(text_, lcp_, nmax_ + 2);
}

FactorLanguage FactorLanguage::from_word(Word text, int n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    FactorLanguage lang;
    lang.text_ = std::move(text);
    lang.nmax_ = n_max;
    lang.stabilized_ = false;
    lang.index();
    return lang;
}

namespace {

constexpr std::uint64_t kMod1 = (std::uint64_t(1) << 61) - 1;

std::uint64_t mulmod61(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(z & kMod1);
    std::uint64_t hi = static_cast<std::uint64_t>(z >> 61);
    std::uint64_t r = lo + hi;
    if (r >= kMod1) r -= kMod1;
    return r;
}

std::uint64_t addmod61(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = a + b;
    if (r >= kMod1) r -= kMod1;
    return r;
}

constexpr std::uint64_t kBase1 = 1000003, kBase2 = 20000000089ULL;

/// Combined double-hash values of all length-k windows of a text.
std::vector<std::uint64_t> window_hashes(const std::string& text, int k) {
    std::vector<std::uint64_t> out;
    int len = static_cast<int>(text.size());
    if (k <= 0 || len < k) return out;
    out.reserve(static_cast<std::size_t>(len - k + 1));
    std::uint64_t pw1 = 1, pw2 = 1;
    for (int t = 0; t < k; ++t) {
        pw1 = mulmod61(pw1, kBase1);
        pw2 = mulmod61(pw2, kBase2);
    }
    std::uint64_t h1 = 0, h2 = 0;
    for (int i = 0; i < len; ++i) {
        std::uint64_t c = static_cast<std::uint64_t>(text[static_cast<std::size_t>(i)]);
        h1 = addmod61(mulmod61(h1, kBase1), c);
        h2 = addmod61(mulmod61(h2, kBase2), c);
        if (i >= k) {
            std::uint64_t drop = static_cast<std::uint64_t>(text[static_cast<std::size_t>(i - k)]);
            h1 = addmod61(h1, kMod1 - mulmod61(drop, pw1));
            h2 = addmod61(h2, kMod1 - mulmod61(drop, pw2));
        }
        if (i >= k - 1) out.push_back(h1 * 0x9e3779b97f4a7c15ULL ^ h2);
    }
    return out;
}

/// Letters and digrams occurring in a word, as bitmasks.
struct Occurring {
    std::uint8_t letters = 0;     // bit c
    std::uint16_t digrams = 0;    // bit 3*a + b

    friend bool operator==(const Occurring&, const Occurring&) = default;
};

/// Letters/digrams of sigma(w) from those of w: digrams are interior to a
/// letter image or straddle a junction of an occurring digram of w.
Occurring propagate(const Substitution& s, const Occurring& inner) {
    Occurring out;
    for (int c = 0; c < 3; ++c) {
        if (!(inner.letters & (1u << c))) continue;
        const Word& img = s.images[static_cast<std::size_t>(c)];
        for (char ch : img) out.letters |= static_cast<std::uint8_t>(1u << letter_index(ch));
        for (std::size_t i = 0; i + 1 < img.size(); ++i)
            out.digrams |= static_cast<std::uint16_t>(
                1u << (3 * letter_index(img[i]) + letter_index(img[i + 1])));
    }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (!(inner.digrams & (1u << (3 * a + b)))) continue;
            const Word& ia = s.images[static_cast<std::size_t>(a)];
            const Word& ib = s.images[static_cast<std::size_t>(b)];
            out.digrams |= static_cast<std::uint16_t>(
                1u << (3 * letter_index(ia.back()) + letter_index(ib.front())));
        }
    return out;
}

/// occ[i] = letters/digrams of the shifted word u^(i), for i = 0..top, where
/// top = window size for bounded directives (u^(top) is the bare seed) or a
/// vantage deep inside the periodic tail whose data is the Kleene fixpoint
/// of the cycle rotated to that phase.
std::vector<Occurring> occurring_chain(const DirectiveSequence& d, char seed, std::size_t top) {
    Occurring base;
    base.letters = static_cast<std::uint8_t>(1u << letter_index(seed));
    std::vector<Occurring> occ(top + 1);
    if (d.bounded()) {
        occ[top] = base;  // callers pass top = window size
    } else {
        std::size_t cycle = d.tail_cycle.size();
        Occurring cur = base;
        for (int round = 0; round < 64; ++round) {
            Occurring next = cur;
            for (std::size_t t = cycle; t-- > 0;)
                next = propagate(named_substitution(d.at(top + t)), next);
            if (next == cur) break;
            cur = next;
        }
        occ[top] = cur;
    }
    for (std::size_t i = top; i-- > 0;)
        occ[i] = propagate(named_substitution(d.at(i)), occ[i + 1]);
    return occ;
}

}  // namespace

FactorLanguage FactorLanguage::from_handle(const SadicWordHandle& handle, int n_max,
                                           const StabilizeOptions& opt) {
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    const int k = n_max + 2;
    const DirectiveSequence& dir = handle.directive();
    std::size_t floor_len = static_cast<std::size_t>(opt.floor_mult) * static_cast<std::size_t>(k);

    // Exact coverage: once every occurring letter's image at depth m has at
    // least k letters, a length-k window of u = sigma_0..sigma_m(u^(m+1))
    // touches at most two letters of u^(m+1), so the factors of length <= k
    // are exactly the length-<=k factors of the depth-m images of the
    // occurring digrams of u^(m+1).
    std::size_t cycle = std::max<std::size_t>(dir.tail_cycle.size(), 1);
    std::size_t top = dir.bounded()
                          ? dir.window.size()
                          : dir.window.size() + cycle * (64 + 8 * static_cast<std::size_t>(
                                                                      std::bit_width(
                                                                          static_cast<unsigned>(k))));
    auto occ = occurring_chain(dir, handle.seed(), top);

    std::array<Int, 3> len = {1, 1, 1};
    std::ptrdiff_t cover_depth = -1;
    for (std::size_t m = 0; m + 1 <= top; ++m) {
        Substitution s = named_substitution(dir.at(m));
        std::array<Int, 3> next;
        for (int c = 0; c < 3; ++c) {
            Int acc = 0;
            for (char ch : s.images[static_cast<std::size_t>(c)])
                acc += len[static_cast<std::size_t>(letter_index(ch))];
            next[static_cast<std::size_t>(c)] = acc;
        }
        len = next;
        bool enough = true;
        for (int c = 0; c < 3; ++c) {
            if (!(occ[m + 1].letters & (1u << c))) continue;
            if (len[static_cast<std::size_t>(c)] < Int(k)) enough = false;
        }
        if (enough) {
            cover_depth = static_cast<std::ptrdiff_t>(m);
            break;
        }
    }

    if (cover_depth < 0) {
        // stalled occurring letters or a tiny window: analyze the full image
        // when it is small, otherwise use the doubling heuristic
        if (dir.bounded()) {
            auto full = handle.max_length();
            if (*full <= Int(static_cast<long long>(opt.hard_cap))) {
                FactorLanguage lang =
                    from_word(handle.prefix(full->convert_to<std::size_t>()), n_max);
                lang.stabilized_ = true;  // the whole finite word is analyzed
                return lang;
            }
            throw StabilizationFailed("window image too large without a coverage certificate");
        }
        // plain doubling heuristic, kept for stalled periodic tails
        std::size_t target = std::max(opt.initial_length, floor_len);
        std::vector<long long> prev;
        std::size_t prev_len = 0;
        for (int round = 0; round <= opt.max_rounds; ++round) {
            if (target > opt.hard_cap)
                throw StabilizationFailed(
                    "prefix exceeded the hard length cap before stabilizing");
            Word text = handle.prefix_up_to(target);
            if (text.size() <= prev_len)
                throw StabilizationFailed(
                    "directive window exhausted before factor sets stabilized (prefix length " +
                    std::to_string(text.size()) + ")");
            auto p = p_vector_of(text, k);
            if (!prev.empty() && p == prev && text.size() >= floor_len) {
                FactorLanguage lang;
                lang.text_ = std::move(text);
                lang.nmax_ = n_max;
                lang.stabilized_ = true;
                lang.index();
                return lang;
            }
            prev = std::move(p);
            prev_len = text.size();
            target = prev_len * 2;
        }
        throw StabilizationFailed("factor sets still changing after " +
                                  std::to_string(opt.max_rounds) + " deepening rounds");
    }

    // materialize the cover: depth-m images of occurring digrams (letters
    // when the inner word is still a single letter)
    std::size_t occ_idx = static_cast<std::size_t>(cover_depth) + 1;
    std::vector<Word> cover;
    if (occ[occ_idx].digrams) {
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                if (occ[occ_idx].digrams & (1u << (3 * a + b)))
                    cover.push_back(
                        handle.expand_through(Word{index_letter(a), index_letter(b)},
                                              static_cast<std::size_t>(cover_depth)));
    } else {
        for (int c = 0; c < 3; ++c)
            if (occ[occ_idx].letters & (1u << c))
                cover.push_back(handle.expand_through(Word(1, index_letter(c)),
                                                      static_cast<std::size_t>(cover_depth)));
    }

    std::size_t target =
        std::max({opt.initial_length, floor_len, static_cast<std::size_t>(2 * k)});
    std::size_t prev_len = 0;
    for (int round = 0; round <= opt.max_rounds; ++round) {
        if (target > opt.hard_cap)
            throw StabilizationFailed(
                "prefix exceeded the hard length cap before covering all factors");
        Word text = handle.prefix_up_to(target);
        if (text.size() <= prev_len)
            throw StabilizationFailed(
                "directive window exhausted before the factor coverage was complete "
                "(prefix length " +
                std::to_string(text.size()) + ")");
        prev_len = text.size();
        if (static_cast<int>(text.size()) >= k) {
            auto seen = window_hashes(text, k);
            std::sort(seen.begin(), seen.end());
            bool complete = true;
            for (const Word& c : cover) {
                for (std::uint64_t h : window_hashes(c, k)) {
                    if (!std::binary_search(seen.begin(), seen.end(), h)) {
                        complete = false;
                        break;
                    }
                }
                if (!complete) break;
            }
            if (complete && text.size() >= floor_len) {
                FactorLanguage lang;
                lang.text_ = std::move(text);
                lang.nmax_ = n_max;
                lang.stabilized_ = true;
                lang.index();
                return lang;
            }
        }
        target = prev_len * 2;
    }
    throw StabilizationFailed("factor coverage incomplete after " +
                              std::to_string(opt.max_rounds) + " deepening rounds");
}

long long FactorLanguage::p_count(int n) const {
    if (n < 0) throw std::out_of_range("negative factor length");
    if (n > nmax_ + 2) throw std::out_of_range("length beyond the indexed range");
    return pcount_[static_cast<std::size_t>(n)];
}

std::vector<Word> FactorLanguage::factors(int n) const {
    std::vector<Word> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    int len = static_cast<int>(text_.size());
    for (std::size_t i = 0; i < sa_.size(); ++i) {
        int start = sa_[i];
        if (len - start < n) continue;
        // a shorter previous suffix forces lcp < n, so this test is exact
        if (!out.empty() && lcp_[i] >= n) continue;
        out.push_back(text_.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(n)));
    }
    return out;
}

std::pair<int, int> FactorLanguage::interval(std::string_view w) const {
    auto cmp_lo = [this](int suffix, std::string_view key) {
        return std::string_view(text_).substr(static_cast<std::size_t>(suffix), key.size()) < key;
    };
    auto cmp_hi = [this](std::string_view key, int suffix) {
        return key < std::string_view(text_).substr(static_cast<std::size_t>(suffix), key.size());
    };
    auto lo = std::lower_bound(sa_.begin(), sa_.end(), w, cmp_lo);
    auto hi = std::upper_bound(sa_.begin(), sa_.end(), w, cmp_hi);
    return {static_cast<int>(lo - sa_.begin()), static_cast<int>(hi - sa_.begin())};
}

bool FactorLanguage::contains(std::string_view w) const {
    if (w.empty()) return true;
    auto [lo, hi] = interval(w);
    return lo < hi;
}

ExtensionTable FactorLanguage::extensions(std::string_view w) const {
    ExtensionTable t;
    int len = static_cast<int>(text_.size());
    if (w.empty()) {
        for (int p = 1; p < len; ++p)
            t.set(letter_index(text_[static_cast<std::size_t>(p - 1)]),
                  letter_index(text_[static_cast<std::size_t>(p)]));
        if (t.empty()) throw FactorNotFound("empty word has no interior occurrence");
        return t;
    }
    auto [lo, hi] = interval(w);
    if (lo >= hi) throw FactorNotFound("factor does not occur: " + std::string(w));
    int n = static_cast<int>(w.size());
    for (int i = lo; i < hi; ++i) {
        int pos = sa_[static_cast<std::size_t>(i)];
        if (pos > 0 && pos + n < len)
            t.set(letter_index(text_[static_cast<std::size_t>(pos - 1)]),
                  letter_index(text_[static_cast<std::size_t>(pos + n)]));
    }
    if (t.empty())
        throw FactorNotFound("factor has no occurrence with both neighbours: " + std::string(w));
    return t;
}

int FactorLanguage::left_valence(std::string_view w) const {
    int len = static_cast<int>(text_.size());
    std::array<bool, 3> seen{};
    if (w.empty()) {
        for (int p = 0; p < len; ++p) seen[static_cast<std::size_t>(letter_index(text_[static_cast<std::size_t>(p)]))] = true;
        return seen[0] + seen[1] + seen[2];
    }
    auto [lo, hi] = interval(w);
    if (lo >= hi) throw FactorNotFound("factor does not occur: " + std::string(w));
    for (int i = lo; i < hi; ++i) {
        int pos = sa_[static_cast<std::size_t>(i)];
        if (pos > 0) seen[static_cast<std::size_t>(letter_index(text_[static_cast<std::size_t>(pos - 1)]))] = true;
    }
    return seen[0] + seen[1] + seen[2];
}

int FactorLanguage::right_valence(std::string_view w) const {
    int len = static_cast<int>(text_.size());
    std::array<bool, 3> seen{};
    if (w.empty()) {
        for (int p = 0; p < len; ++p) seen[static_cast<std::size_t>(letter_index(text_[static_cast<std::size_t>(p)]))] = true;
        return seen[0] + seen[1] + seen[2];
    }
    auto [lo, hi] = interval(w);
    if (lo >= hi) throw FactorNotFound("factor does not occur: " + std::string(w));
    int n = static_cast<int>(w.size());
    for (int i = lo; i < hi; ++i) {
        int pos = sa_[static_cast<std::size_t>(i)];
        if (pos + n < len) seen[static_cast<std::size_t>(letter_index(text_[static_cast<std::size_t>(pos + n)]))] = true;
    }
    return seen[0] + seen[1] + seen[2];
}

namespace {

struct NodeStats {
    int dplus_onesided = 0;
    int dminus_onesided = 0;
    ExtensionTable table;
};

/// Enumerates branching lcp-intervals (suffix tree internal nodes) up to
/// depth cap and hands each to the sink, then reports leaf-only suffixes.
template <typename NodeFn, typename LeafFn>
void walk_intervals(const std::string& text, const std::vector<int>& sa,
                    const std::vector<int>& lcp, int depth_cap, NodeFn&& node_fn,
                    LeafFn&& leaf_fn) {
    int n = static_cast<int>(text.size());
    struct Item {
        int depth, lb;
    };
    std::vector<Item> stack{{0, 0}};
    for (int i = 1; i <= n; ++i) {
        int l = i < n ? lcp[static_cast<std::size_t>(i)] : -1;
        int lb = i - 1;
        while (!stack.empty() && stack.back().depth > l) {
            Item node = stack.back();
            stack.pop_back();
            node_fn(node.depth, node.lb, i - 1);
            lb = node.lb;
        }
        if (i < n && (stack.empty() || stack.back().depth < l)) stack.push_back({l, lb});
    }
    // leaf-only factors: full suffixes shorter than both lcp neighbours
    for (int i = 0; i < n; ++i) {
        int suffix_len = n - sa[static_cast<std::size_t>(i)];
        if (suffix_len > depth_cap) continue;
        int left = lcp[static_cast<std::size_t>(i)];
        int right = i + 1 < n ? lcp[static_cast<std::size_t>(i + 1)] : 0;
        if (left < suffix_len && right < suffix_len) leaf_fn(i, suffix_len);
    }
}

}  // namespace

std::vector<FactorLanguage::Bispecial> FactorLanguage::bispecials(int max_len) const {
    std::vector<Bispecial> out;
    if (text_.empty()) return out;
    int len = static_cast<int>(text_.size());
    auto scan = [&](int depth, int lb, int rb) {
        if (depth > max_len) return;
        ExtensionTable t;
        for (int i = lb; i <= rb; ++i) {
            int pos = sa_[static_cast<std::size_t>(i)];
            if (pos > 0 && pos + depth < len)
                t.set(letter_index(text_[static_cast<std::size_t>(pos - 1)]),
                      letter_index(text_[static_cast<std::size_t>(pos + depth)]));
        }
        if (!t.bispecial()) return;
        Bispecial b;
        b.word = text_.substr(static_cast<std::size_t>(sa_[static_cast<std::size_t>(lb)]),
                              static_cast<std::size_t>(depth));
        b.table = t;
        b.m = t.multiplicity();
        b.cls = classify_bispecial(t);
        out.push_back(std::move(b));
    };
    walk_intervals(text_, sa_, lcp_, max_len, scan, [](int, int) {});
    std::sort(out.begin(), out.end(), [](const Bispecial& a, const Bispecial& b) {
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        return a.word < b.word;
    });
    return out;
}

ComplexityProfile FactorLanguage::profile(int n) const {
    if (n < 0 || n > nmax_) throw std::out_of_range("profile depth exceeds n_max");
    if (text_.empty()) {
        ComplexityProfile pr;
        pr.p.assign(static_cast<std::size_t>(n + 1), 0);
        pr.s.assign(static_cast<std::size_t>(n + 1), 0);
        pr.b.assign(static_cast<std::size_t>(n + 1), 0);
        pr.p[0] = 1;
        pr.s[0] = -1;  // the empty word has no right extension
        pr.b[0] = 1;
        return pr;
    }
    int len = static_cast<int>(text_.size());
    int k = n + 2;  // lengths with full context support
    std::vector<long long> s(static_cast<std::size_t>(n + 2), 0);
    std::vector<long long> b(static_cast<std::size_t>(n + 1), 0);
    std::set<std::tuple<int, int, int>> counted;  // (lb, rb, depth) already in the b sum

    auto node_stats = [&](int depth, int lb, int rb) {
        NodeStats st;
        std::array<bool, 3> left{}, right{};
        for (int i = lb; i <= rb; ++i) {
            int pos = sa_[static_cast<std::size_t>(i)];
            bool has_left = pos > 0;
            bool has_right = pos + depth < len;
            if (has_left) left[static_cast<std::size_t>(letter_index(text_[static_cast<std::size_t>(pos - 1)]))] = true;
            if (has_right) right[static_cast<std::size_t>(letter_index(text_[static_cast<std::size_t>(pos + depth)]))] = true;
            if (has_left && has_right)
                st.table.set(letter_index(text_[static_cast<std::size_t>(pos - 1)]),
                             letter_index(text_[static_cast<std::size_t>(pos + depth)]));
        }
        if (depth == 0 && len > 0)  // the empty word's occurrence at the end of the text
            left[static_cast<std::size_t>(letter_index(text_[static_cast<std::size_t>(len - 1)]))] = true;
        st.dminus_onesided = left[0] + left[1] + left[2];
        st.dplus_onesided = right[0] + right[1] + right[2];
        return st;
    };

    auto on_node = [&](int depth, int lb, int rb) {
        if (depth > n + 1) return;
        NodeStats st = node_stats(depth, lb, rb);
        if (depth <= n + 1) s[static_cast<std::size_t>(depth)] += st.dplus_onesided - 1;
        if (depth <= n) {
            b[static_cast<std::size_t>(depth)] +=
                st.table.card() - st.dminus_onesided - st.dplus_onesided + 1;
            counted.insert({lb, rb, depth});
        }
    };
    auto on_leaf = [&](int sa_index, int suffix_len) {
        // factor occurring once, ending at the text end: no right extension
        if (suffix_len <= n + 1) s[static_cast<std::size_t>(suffix_len)] -= 1;
    };
    walk_intervals(text_, sa_, lcp_, n + 2, on_node, on_leaf);

    // suffix factors: the only non-branching candidates whose multiplicity
    // can be nonzero (a left class may lack a right neighbour only there)
    for (int q = 1; q <= std::min(n, len); ++q) {
        int r = rank_[static_cast<std::size_t>(len - q)];
        int lo = r, hi = r + 1;
        while (lo > 0 && lcp_[static_cast<std::size_t>(lo)] >= q) --lo;
        while (hi < len && lcp_[static_cast<std::size_t>(hi)] >= q) ++hi;
        if (counted.count({lo, hi - 1, q})) continue;
        NodeStats st = node_stats(q, lo, hi - 1);
        b[static_cast<std::size_t>(q)] +=
            st.table.card() - st.dminus_onesided - st.dplus_onesided + 1;
    }

    ComplexityProfile pr;
    pr.p.assign(static_cast<std::size_t>(n + 1), 0);
    pr.s.assign(s.begin(), s.begin() + n + 1);
    pr.b.assign(b.begin(), b.begin() + n + 1);
    pr.p[0] = 1;
    for (int q = 0; q < n; ++q)
        pr.p[static_cast<std::size_t>(q + 1)] =
            pr.p[static_cast<std::size_t>(q)] + pr.s[static_cast<std::size_t>(q)];
    // hard cross-checks: the rebuilt p must match direct counting, and the
    // multiplicity sums must be the second differences of p
    for (int q = 0; q <= n; ++q)
        if (pr.p[static_cast<std::size_t>(q)] != p_count(q))
            throw std::logic_error("profile p(" + std::to_string(q) +
                                   ") disagrees with direct counting");
    if (pr.p[static_cast<std::size_t>(n)] + pr.s[static_cast<std::size_t>(n)] != p_count(n + 1))
        throw std::logic_error("profile s(n) tail disagrees with direct counting");
    for (int q = 0; q <= n; ++q) {
        long long snext = q + 1 <= n ? pr.s[static_cast<std::size_t>(q + 1)]
                                     : s[static_cast<std::size_t>(n + 1)];
        if (snext - pr.s[static_cast<std::size_t>(q)] != pr.b[static_cast<std::size_t>(q)])
            throw std::logic_error("profile b(" + std::to_string(q) +
                                   ") disagrees with the finite differences");
    }
    return pr;
}

// --- brute force oracle -------------------------------------------------------

ComplexityProfile complexity_bruteforce(const Word& text, int n) {
    int len = static_cast<int>(text.size());
    std::vector<long long> p(static_cast<std::size_t>(n + 3), 0);
    p[0] = 1;
    std::uint64_t base1 = kBase1, base2 = kBase2;
    for (int q = 1; q <= n + 2; ++q) {
        if (q > len) break;
        std::uint64_t pw1 = 1, pw2 = 1;
        for (int t = 0; t < q; ++t) {
            pw1 = mulmod61(pw1, base1);
            pw2 = mulmod61(pw2, base2);
        }
        std::uint64_t h1 = 0, h2 = 0;
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(static_cast<std::size_t>(len));
        for (int i = 0; i < len; ++i) {
            std::uint64_t c = static_cast<std::uint64_t>(text[static_cast<std::size_t>(i)]);
            h1 = addmod61(mulmod61(h1, base1), c);
            h2 = addmod61(mulmod61(h2, base2), c);
            if (i >= q) {
                std::uint64_t drop =
                    static_cast<std::uint64_t>(text[static_cast<std::size_t>(i - q)]);
                h1 = addmod61(h1, kMod1 - mulmod61(drop, pw1));
                h2 = addmod61(h2, kMod1 - mulmod61(drop, pw2));
            }
            if (i >= q - 1) seen.insert(h1 * 0x9e3779b97f4a7c15ULL ^ h2);
        }
        p[static_cast<std::size_t>(q)] = static_cast<long long>(seen.size());
    }
    ComplexityProfile pr;
    pr.p.assign(p.begin(), p.begin() + n + 1);
    pr.s.assign(static_cast<std::size_t>(n + 1), 0);
    pr.b.assign(static_cast<std::size_t>(n + 1), 0);
    for (int q = 0; q <= n; ++q)
        pr.s[static_cast<std::size_t>(q)] =
            p[static_cast<std::size_t>(q + 1)] - p[static_cast<std::size_t>(q)];
    for (int q = 0; q <= n; ++q) {
        long long snext = p[static_cast<std::size_t>(q + 2)] - p[static_cast<std::size_t>(q + 1)];
        pr.b[static_cast<std::size_t>(q)] = snext - pr.s[static_cast<std::size_t>(q)];
    }
    return pr;
}

ComplexityProfile complexity_bruteforce(const FactorLanguage& lang, int n) {
    return complexity_bruteforce(lang.text(), n);
}

// --- bounds -------------------------------------------------------------------

BoundsReport check_bounds(const ComplexityProfile& pr) {
    BoundsReport r;
    for (std::size_t q = 1; q < pr.s.size(); ++q)
        if (pr.s[q] != 2 && pr.s[q] != 3) r.s_violations.push_back(static_cast<int>(q));
    for (std::size_t q = 0; q < pr.p.size(); ++q) {
        long long lower = 2 * static_cast<long long>(q) + 1;
        long long upper = (5 * static_cast<long long>(q) + 1) / 2 + 1;  // ceil(5q/2) + 1
        long long upper3 = 3 * static_cast<long long>(q) + 1;
        if (pr.p[q] < lower) r.lower_violations.push_back(static_cast<int>(q));
        if (pr.p[q] > upper) r.upper_violations.push_back(static_cast<int>(q));
        if (pr.p[q] > upper3) r.upper3_violations.push_back(static_cast<int>(q));
    }
    long long acc = 0;
    for (std::size_t q = 0; q < pr.b.size(); ++q) {
        acc += pr.b[q];
        if (acc != 0 && acc != 1) r.bsum_violations.push_back(static_cast<int>(q));
    }
    return r;
}

}  // namespace arp

#include "arp/sadic.hpp"

#include <algorithm>
#include <set>

namespace arp {

Sub DirectiveSequence::at(std::size_t i) const {
    if (i < window.size()) return window[i];
    if (tail_cycle.empty())
        throw InsufficientDirective("directive window of length " +
                                    std::to_string(window.size()) +
                                    " exhausted at index " + std::to_string(i));
    return tail_cycle[(i - window.size()) % tail_cycle.size()];
}

DirectiveSequence DirectiveSequence::dropped(std::size_t m) const {
    DirectiveSequence out;
    if (m <= window.size()) {
        out.window.assign(window.begin() + static_cast<std::ptrdiff_t>(m), window.end());
        out.tail_cycle = tail_cycle;
    } else {
        if (tail_cycle.empty())
            throw InsufficientDirective("cannot shift past the directive window");
        std::size_t r = (m - window.size()) % tail_cycle.size();
        for (std::size_t i = 0; i < tail_cycle.size(); ++i)
            out.tail_cycle.push_back(tail_cycle[(r + i) % tail_cycle.size()]);
    }
    return out;
}

std::string TypeResult::to_string() const {
    switch (kind) {
        case Type1: return "Type1(" + std::to_string(k) + ")";
        case Type2: return "Type2(" + std::to_string(j) + "," + std::to_string(k) + ")";
        case Type3: return "Type3";
        case Indeterminate: break;
    }
    return "Indeterminate";
}

TypeResult classify_type(const DirectiveSequence& d) {
    if (!d.tail_cycle.empty()) {
        std::set<Sub> labels(d.tail_cycle.begin(), d.tail_cycle.end());
        bool has_p = std::any_of(labels.begin(), labels.end(), is_poincare);
        if (has_p || labels.size() > 2) return {TypeResult::Type3};
        if (labels.size() == 1) return {TypeResult::Type1, sub_k(*labels.begin())};
        auto it = labels.begin();
        int a = sub_k(*it++), b = sub_k(*it);
        return {TypeResult::Type2, std::max(a, b), std::min(a, b)};
    }
    const auto& w = d.window;
    if (w.empty()) return {TypeResult::Indeterminate};
    std::ptrdiff_t last_p = -1;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (is_poincare(w[i])) last_p = static_cast<std::ptrdiff_t>(i);
    std::set<int> ar_after;
    for (std::size_t i = static_cast<std::size_t>(last_p + 1); i < w.size(); ++i)
        ar_after.insert(sub_k(w[i]));
    bool p_in_last_third =
        last_p >= 0 && 3 * (static_cast<std::size_t>(last_p) + 1) > 2 * w.size();
    if (ar_after.size() == 3 || p_in_last_third) return {TypeResult::Type3};
    return {TypeResult::Indeterminate};
}

bool weakly_primitive_window(std::span<const Sub> window) {
    if (window.empty()) return false;
    Mat3z prod = Mat3z::identity();
    for (Sub s : window) prod = prod * incidence(s).cast<Int>();
    return prod.all_positive();
}

bool is_proper(const Word& prefix) {
    std::array<bool, 3> preceded{};
    for (std::size_t i = 1; i < prefix.size(); ++i)
        preceded[static_cast<std::size_t>(letter_index(prefix[i]))] = true;
    return preceded[0] && preceded[1] && preceded[2];
}

DirectiveSequence directive_from_vector(const SimplexVector& x, std::size_t n, unsigned bits) {
    DirectiveSequence d;
    Orbit o = orbit(x, n, bits);
    d.window.reserve(o.steps.size());
    for (const auto& e : o.steps) d.window.push_back(sub_of_cell(e.cell));
    return d;
}

SeedRisk seed_risk(const DirectiveSequence& d, char seed) {
    TypeResult t = classify_type(d);
    int s = letter_index(seed) + 1;
    if (t.kind == TypeResult::Type1 && s != t.k) return SeedRisk::NonRecurrentRisk;
    if (t.kind == TypeResult::Type2 && s != t.j && s != t.k) return SeedRisk::NonRecurrentRisk;
    return SeedRisk::Ok;
}

SadicWordHandle::SadicWordHandle(DirectiveSequence directive, char seed)
    : directive_(std::move(directive)), seed_(seed) {
    if (seed < '1' || seed > '3') throw ParseError("seed letter must be 1, 2 or 3");
}

SadicWordHandle::SadicWordHandle(const SadicWordHandle& o)
    : directive_(o.directive_), seed_(o.seed_) {
    std::lock_guard lock(o.mu_);
    cache_ = o.cache_;
    depth_used_ = o.depth_used_;
}

SadicWordHandle::SadicWordHandle(SadicWordHandle&& o) noexcept
    : directive_(std::move(o.directive_)), seed_(o.seed_) {
    std::lock_guard lock(o.mu_);
    cache_ = std::move(o.cache_);
    depth_used_ = o.depth_used_;
}

SadicWordHandle& SadicWordHandle::operator=(const SadicWordHandle& o) {
    if (this == &o) return *this;
    std::scoped_lock lock(mu_, o.mu_);
    directive_ = o.directive_;
    seed_ = o.seed_;
    cache_ = o.cache_;
    depth_used_ = o.depth_used_;
    return *this;
}

SadicWordHandle& SadicWordHandle::operator=(SadicWordHandle&& o) noexcept {
    if (this == &o) return *this;
    std::scoped_lock lock(mu_, o.mu_);
    directive_ = std::move(o.directive_);
    seed_ = o.seed_;
    cache_ = std::move(o.cache_);
    depth_used_ = o.depth_used_;
    return *this;
}

std::size_t SadicWordHandle::depth_used() const {
    std::lock_guard lock(mu_);
    return depth_used_;
}

Int SadicWordHandle::image_length(std::size_t depth) const {
    // L_m(c) = |sigma_0..sigma_m(c)| = sum over letters d of sigma_m(c) of
    // L_{m-1}(d): the label at index m is the innermost one.
    std::array<Int, 3> len = {1, 1, 1};
    for (std::size_t i = 0; i <= depth; ++i) {
        Substitution s = named_substitution(directive_.at(i));
        std::array<Int, 3> next;
        for (int c = 0; c < 3; ++c) {
            Int acc = 0;
            for (char ch : s.images[static_cast<std::size_t>(c)])
                acc += len[static_cast<std::size_t>(letter_index(ch))];
            next[static_cast<std::size_t>(c)] = acc;
        }
        len = next;
    }
    return len[static_cast<std::size_t>(letter_index(seed_))];
}

std::optional<Int> SadicWordHandle::max_length() const {
    if (!directive_.bounded()) return std::nullopt;
    if (directive_.window.empty()) return Int(1);
    return image_length(directive_.window.size() - 1);
}

void SadicWordHandle::materialize(std::size_t depth, std::size_t length) const {
    // Depth-first expansion of sigma_0...sigma_depth(seed), truncated at
    // `length`. The innermost substitution sigma_depth hits the seed first;
    // a frame at level i still has sigma_i..sigma_0 to apply.
    Word out;
    out.reserve(length);
    struct Frame {
        std::ptrdiff_t level;
        char letter;
    };
    std::vector<Frame> stack{{static_cast<std::ptrdiff_t>(depth), seed_}};
    std::vector<Substitution> subs;
    subs.reserve(depth + 1);
    for (std::size_t i = 0; i <= depth; ++i) subs.push_back(named_substitution(directive_.at(i)));
    while (!stack.empty() && out.size() < length) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.level < 0) {
            out += f.letter;
            continue;
        }
        const Word& img = subs[static_cast<std::size_t>(f.level)].image(f.letter);
        for (std::size_t i = img.size(); i-- > 0;) stack.push_back({f.level - 1, img[i]});
    }
    if (out.size() > cache_.size()) {
        cache_ = std::move(out);
        depth_used_ = depth;
    }
}

Word SadicWordHandle::prefix(std::size_t length) const {
    if (length == 0) return {};
    if (length == 1) return Word(1, seed_);  // the empty composition already covers it
    std::lock_guard lock(mu_);
    if (cache_.size() >= length) return cache_.substr(0, length);
    // Search the smallest depth whose image reaches the target length,
    // maintaining the per-letter image lengths L_m(c) = |sigma_0..sigma_m(c)|
    // via L_m(c) = sum over letters d of sigma_m(c) of L_{m-1}(d).
    std::array<Int, 3> len = {1, 1, 1};
    std::array<Int, 3> snapshot = len;
    std::size_t cycle = directive_.tail_cycle.size();
    for (std::size_t m = 0;; ++m) {
        if (directive_.bounded() && m >= directive_.window.size())
            throw InsufficientDirective(
                "directive window too short for prefix of length " + std::to_string(length) +
                " (full image length " +
                len[static_cast<std::size_t>(letter_index(seed_))].str() + ")");
        Substitution s = named_substitution(directive_.at(m));
        std::array<Int, 3> next;
        for (int c = 0; c < 3; ++c) {
            Int acc = 0;
            for (char ch : s.images[static_cast<std::size_t>(c)])
                acc += len[static_cast<std::size_t>(letter_index(ch))];
            next[static_cast<std::size_t>(c)] = acc;
        }
        len = next;
        if (len[static_cast<std::size_t>(letter_index(seed_))] >= Int(length)) {
            materialize(m, length);
            return cache_.substr(0, length);
        }
        // Image lengths are monotone per letter. If the seed image did not
        // grow across one full tail cycle, the cycle maps that image to
        // itself, and the limit word is the image repeated periodically.
        if (!directive_.bounded() && m >= directive_.window.size() &&
            (m - directive_.window.size()) % cycle == cycle - 1) {
            const Int& seed_len = len[static_cast<std::size_t>(letter_index(seed_))];
            if (seed_len == snapshot[static_cast<std::size_t>(letter_index(seed_))]) {
                std::size_t unit = seed_len.convert_to<std::size_t>();
                materialize(m, unit);
                Word block = cache_.substr(0, unit);
                Word out;
                out.reserve(length + unit);
                while (out.size() < length) out += block;
                out.resize(length);
                if (out.size() > cache_.size()) {
                    cache_ = out;
                    depth_used_ = m;
                }
                return out;
            }
            snapshot = len;
        }
    }
}

Word SadicWordHandle::expand_through(const Word& word, std::size_t depth) const {
    Word out;
    struct Frame {
        std::ptrdiff_t level;
        char letter;
    };
    std::vector<Frame> stack;
    for (std::size_t i = word.size(); i-- > 0;)
        stack.push_back({static_cast<std::ptrdiff_t>(depth), word[i]});
    std::vector<Substitution> subs;
    subs.reserve(depth + 1);
    for (std::size_t i = 0; i <= depth; ++i) subs.push_back(named_substitution(directive_.at(i)));
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.level < 0) {
            out += f.letter;
            continue;
        }
        const Word& img = subs[static_cast<std::size_t>(f.level)].image(f.letter);
        for (std::size_t i = img.size(); i-- > 0;) stack.push_back({f.level - 1, img[i]});
    }
    return out;
}

Word SadicWordHandle::prefix_up_to(std::size_t length) const {
    auto cap = max_length();
    std::size_t effective = length;
    if (cap && *cap < Int(length)) effective = cap->convert_to<std::size_t>();
    return prefix(effective);
}

SadicWordHandle SadicWordHandle::shifted(std::size_t m) const {
    return SadicWordHandle(directive_.dropped(m), seed_);
}

}  // namespace arp

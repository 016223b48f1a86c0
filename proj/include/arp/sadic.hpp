#pragma once

#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "arp/simplex.hpp"
#include "arp/substitution.hpp"

namespace arp {

/// A finite window of substitution labels, optionally followed by a declared
/// periodic tail. Without a tail descriptor the sequence beyond the window is
/// unknown and generation stops with InsufficientDirective.
struct DirectiveSequence {
    std::vector<Sub> window;
    std::vector<Sub> tail_cycle;  // empty = unknown tail

    bool bounded() const { return tail_cycle.empty(); }
    Sub at(std::size_t i) const;
    DirectiveSequence dropped(std::size_t m) const;
    std::string to_string() const { return format_directive_labels(window); }
};

struct TypeResult {
    enum Kind { Type1, Type2, Type3, Indeterminate } kind;
    int k = 0;  // Type1: the letter; Type2: the two letters (j,k)
    int j = 0;
    std::string to_string() const;
};

/// Directive type per the tail: one repeated Arnoux-Rauzy label, two of them,
/// or anything else. For an unknown tail a finite-window heuristic applies:
/// Type3 when the suffix after the last Poincare label uses all three
/// Arnoux-Rauzy labels or a Poincare label occurs in the last third,
/// otherwise Indeterminate.
TypeResult classify_type(const DirectiveSequence& d);

/// True iff the product of incidence matrices over the window is positive.
bool weakly_primitive_window(std::span<const Sub> window);

/// True iff every letter occurs somewhere with a left neighbour.
bool is_proper(const Word& prefix);

/// Labels of the first N orbit cells of x (may be shorter if the orbit hits a
/// boundary).
DirectiveSequence directive_from_vector(const SimplexVector& x, std::size_t n,
                                        unsigned bits = Scalar::kDefaultBitCap);

enum class SeedRisk { Ok, NonRecurrentRisk };

/// Flags seed letters excluded by a declared periodic tail's type.
SeedRisk seed_risk(const DirectiveSequence& d, char seed);

/// Generates prefixes of the S-adic word lim sigma_0...sigma_m(seed...).
/// Because every image of a letter starts with that letter, deeper
/// compositions extend the prefix; prefix(L) materializes the first L letters
/// at the smallest depth whose image is long enough.
class SadicWordHandle {
public:
    SadicWordHandle(DirectiveSequence directive, char seed);
    SadicWordHandle(const SadicWordHandle& o);
    SadicWordHandle(SadicWordHandle&& o) noexcept;
    SadicWordHandle& operator=(const SadicWordHandle& o);
    SadicWordHandle& operator=(SadicWordHandle&& o) noexcept;

    const DirectiveSequence& directive() const { return directive_; }
    char seed() const { return seed_; }
    std::size_t depth_used() const;

    /// First L letters; throws InsufficientDirective when the window is
    /// exhausted before reaching L and no tail is declared.
    Word prefix(std::size_t length) const;

    /// Longest prefix available within the given length budget (the full
    /// image of the window for bounded directives).
    Word prefix_up_to(std::size_t length) const;

    /// Length of the full image of the first `depth+1` labels applied to the
    /// seed (exact, arbitrary precision).
    Int image_length(std::size_t depth) const;

    /// Maximum generatable length: the full window image for bounded
    /// directives, unbounded (nullopt) otherwise.
    std::optional<Int> max_length() const;

    /// Full image of an arbitrary short word under sigma_0..sigma_depth.
    Word expand_through(const Word& word, std::size_t depth) const;

    SadicWordHandle shifted(std::size_t m) const;

private:
    DirectiveSequence directive_;
    char seed_ = '1';
    // prefix cache; extensions are idempotent, guarded for concurrent readers
    mutable std::mutex mu_;
    mutable Word cache_;
    mutable std::size_t depth_used_ = 0;

    void materialize(std::size_t depth, std::size_t length) const;
};

}  // namespace arp

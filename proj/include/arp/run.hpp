#pragma once

#include <optional>
#include <string>

#include "arp/genealogy.hpp"
#include "arp/language.hpp"
#include "arp/sadic.hpp"

namespace arp {

/// One run's input specification: exactly one of vector, directive or word.
struct InputSpec {
    std::optional<std::string> vector_text;
    std::optional<std::string> directive_text;
    bool periodic = false;  // the given directive window repeats forever
    std::optional<std::string> word_text;
    char seed = '1';
    unsigned bits = Scalar::kDefaultBitCap;
    std::size_t orbit_steps = 1000;  // cap when deriving a directive from a vector

    int input_count() const {
        return (vector_text ? 1 : 0) + (directive_text ? 1 : 0) + (word_text ? 1 : 0);
    }
};

DirectiveSequence resolve_directive(const InputSpec& in);   // vector or directive input
SadicWordHandle resolve_handle(const InputSpec& in);        // vector or directive input
Word resolve_literal_word(const InputSpec& in);             // word input, or full window image

/// Literal words index as-is; handles stabilize first.
FactorLanguage resolve_language(const InputSpec& in, int n_max, bool literal,
                                const StabilizeOptions& opt = {});

}  // namespace arp

#include "arp/run.hpp"

namespace arp {

DirectiveSequence resolve_directive(const InputSpec& in) {
    if (in.input_count() != 1)
        throw ParseError("exactly one of --vector, --directive or --word must be given");
    if (in.vector_text) {
        SimplexVector x = SimplexVector::parse(*in.vector_text, in.bits);
        return directive_from_vector(x, in.orbit_steps, in.bits);
    }
    if (in.directive_text) {
        DirectiveSequence d;
        d.window = parse_directive_labels(*in.directive_text);
        if (d.window.empty()) throw ParseError("directive must contain at least one label");
        if (in.periodic) d.tail_cycle = d.window;
        return d;
    }
    throw ParseError("this command needs a vector or directive input");
}

SadicWordHandle resolve_handle(const InputSpec& in) {
    return SadicWordHandle(resolve_directive(in), in.seed);
}

Word resolve_literal_word(const InputSpec& in) {
    if (in.input_count() != 1)
        throw ParseError("exactly one of --vector, --directive or --word must be given");
    if (in.word_text) return validate_word(*in.word_text);
    SadicWordHandle h = resolve_handle(in);
    auto full = h.max_length();
    if (!full) throw ParseError("--literal needs a finite directive window");
    if (*full > Int(100'000'000))
        throw ParseError("literal image too long to materialize: " + full->str());
    return h.prefix(full->convert_to<std::size_t>());
}

FactorLanguage resolve_language(const InputSpec& in, int n_max, bool literal,
                                const StabilizeOptions& opt) {
    if (in.input_count() != 1)
        throw ParseError("exactly one of --vector, --directive or --word must be given");
    if (in.word_text || literal) return FactorLanguage::from_word(resolve_literal_word(in), n_max);
    return FactorLanguage::from_handle(resolve_handle(in), n_max, opt);
}

}  // namespace arp

#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arp/numeric.hpp"
#include "arp/simplex.hpp"

namespace arp {

/// Words are ASCII strings over '1','2','3'.
using Word = std::string;

Word validate_word(std::string_view text);  // throws ParseError on foreign letters
inline int letter_index(char c) { return c - '1'; }
inline char index_letter(int i) { return static_cast<char>('1' + i); }

using Abelian = std::array<long long, 3>;

Abelian abelianize(const Word& w);

/// The nine generator labels: three Arnoux-Rauzy, six Poincare.
enum class Sub : std::uint8_t { a1, a2, a3, p12, p13, p21, p23, p31, p32 };

constexpr std::array<Sub, 9> kAllSubs = {Sub::a1,  Sub::a2,  Sub::a3,  Sub::p12, Sub::p13,
                                         Sub::p21, Sub::p23, Sub::p31, Sub::p32};

std::string_view sub_label(Sub s);                 // "a1".."p32"
Sub parse_sub_label(std::string_view label);       // case-insensitive; throws UnknownLabel
bool is_ar(Sub s);
bool is_poincare(Sub s);
int sub_j(Sub s);  // 0 for Arnoux-Rauzy labels
int sub_k(Sub s);
Sub ar_sub(int k);
Sub p_sub(int j, int k);
MatName sub_matrix_name(Sub s);                    // incidence matrix name
Sub sub_of_cell(const PartitionCell& cell);        // throws DegenerateVector

struct Substitution {
    std::array<Word, 3> images;  // image of '1','2','3'
    std::string name;            // optional label

    const Word& image(char letter) const { return images[static_cast<std::size_t>(letter_index(letter))]; }
    Word operator()(const Word& w) const;
    friend bool operator==(const Substitution& a, const Substitution& b) {
        return a.images == b.images;
    }
};

Substitution named_substitution(Sub s);
Substitution named_substitution(std::string_view label);  // throws UnknownLabel
Substitution identity_substitution();
Substitution compose(const Substitution& outer, const Substitution& inner);
Substitution compose(std::span<const Sub> labels);  // left-to-right product
Mat3i incidence(const Substitution& s);
Mat3i incidence(Sub s);

/// Serializes as the label when named, otherwise `1>..;2>..;3>..`.
std::string serialize(const Substitution& s);
Substitution parse_substitution(std::string_view text);

std::vector<Sub> parse_directive_labels(std::string_view text);  // whitespace-separated
std::string format_directive_labels(std::span<const Sub> labels);

}  // namespace arp

#include "arp/substitution.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace arp {

Word validate_word(std::string_view text) {
    for (char c : text)
        if (c < '1' || c > '3')
            throw ParseError("word letters must be in {1,2,3}, got '" + std::string(1, c) + "'");
    return Word(text);
}

Abelian abelianize(const Word& w) {
    Abelian v{0, 0, 0};
    for (char c : w) ++v[static_cast<std::size_t>(letter_index(c))];
    return v;
}

namespace {
constexpr std::array<std::string_view, 9> kSubLabels = {"a1",  "a2",  "a3",  "p12", "p13",
                                                        "p21", "p23", "p31", "p32"};
}

std::string_view sub_label(Sub s) { return kSubLabels[static_cast<std::size_t>(s)]; }

Sub parse_sub_label(std::string_view label) {
    std::string low(label);
    std::transform(low.begin(), low.end(), low.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (std::size_t i = 0; i < kSubLabels.size(); ++i)
        if (low == kSubLabels[i]) return static_cast<Sub>(i);
    throw UnknownLabel("unknown substitution label: " + std::string(label));
}

bool is_ar(Sub s) { return s == Sub::a1 || s == Sub::a2 || s == Sub::a3; }
bool is_poincare(Sub s) { return !is_ar(s); }

int sub_j(Sub s) {
    switch (s) {
        case Sub::p12: case Sub::p13: return 1;
        case Sub::p21: case Sub::p23: return 2;
        case Sub::p31: case Sub::p32: return 3;
        default: return 0;
    }
}

int sub_k(Sub s) {
    switch (s) {
        case Sub::a1: case Sub::p21: case Sub::p31: return 1;
        case Sub::a2: case Sub::p12: case Sub::p32: return 2;
        case Sub::a3: case Sub::p13: case Sub::p23: return 3;
    }
    return 0;
}

Sub ar_sub(int k) { return static_cast<Sub>(k - 1); }

Sub p_sub(int j, int k) {
    for (Sub s : kAllSubs)
        if (is_poincare(s) && sub_j(s) == j && sub_k(s) == k) return s;
    throw UnknownLabel("no Poincare substitution p" + std::to_string(j) + std::to_string(k));
}

MatName sub_matrix_name(Sub s) {
    switch (s) {
        case Sub::a1: return MatName::A1;
        case Sub::a2: return MatName::A2;
        case Sub::a3: return MatName::A3;
        case Sub::p12: return MatName::P12;
        case Sub::p13: return MatName::P13;
        case Sub::p21: return MatName::P21;
        case Sub::p23: return MatName::P23;
        case Sub::p31: return MatName::P31;
        case Sub::p32: return MatName::P32;
    }
    throw UnknownLabel("bad substitution");
}

Sub sub_of_cell(const PartitionCell& cell) {
    switch (cell.kind) {
        case CellKind::AR: return ar_sub(cell.k);
        case CellKind::P: return p_sub(cell.j, cell.k);
        case CellKind::Degenerate: break;
    }
    throw DegenerateVector("degenerate cell has no substitution");
}

Word Substitution::operator()(const Word& w) const {
    Word out;
    std::size_t total = 0;
    for (char c : w) total += image(c).size();
    out.reserve(total);
    for (char c : w) out += image(c);
    return out;
}

Substitution named_substitution(Sub s) {
    // alpha_k : i -> ik, j -> jk, k -> k ; pi_jk : i -> ijk, j -> jk, k -> k.
    Substitution out;
    out.name = sub_label(s);
    int k = sub_k(s);
    char ck = index_letter(k - 1);
    if (is_ar(s)) {
        for (int c = 1; c <= 3; ++c) {
            Word& img = out.images[static_cast<std::size_t>(c - 1)];
            if (c == k)
                img = Word(1, ck);
            else
                img = Word{index_letter(c - 1), ck};
        }
    } else {
        int j = sub_j(s);
        int i = 6 - j - k;
        char ci = index_letter(i - 1), cj = index_letter(j - 1);
        out.images[static_cast<std::size_t>(i - 1)] = Word{ci, cj, ck};
        out.images[static_cast<std::size_t>(j - 1)] = Word{cj, ck};
        out.images[static_cast<std::size_t>(k - 1)] = Word(1, ck);
    }
    return out;
}

Substitution named_substitution(std::string_view label) {
    return named_substitution(parse_sub_label(label));
}

Substitution identity_substitution() {
    return Substitution{{Word("1"), Word("2"), Word("3")}, "id"};
}

Substitution compose(const Substitution& outer, const Substitution& inner) {
    Substitution out;
    for (int c = 0; c < 3; ++c)
        out.images[static_cast<std::size_t>(c)] = outer(inner.images[static_cast<std::size_t>(c)]);
    return out;
}

Substitution compose(std::span<const Sub> labels) {
    Substitution acc = identity_substitution();
    // Built left to right so each image gets expanded once.
    for (Sub s : labels) acc = compose(acc, named_substitution(s));
    return acc;
}

Mat3i incidence(const Substitution& s) {
    Mat3i m;
    for (int col = 0; col < 3; ++col)
        for (char c : s.images[static_cast<std::size_t>(col)])
            ++m(letter_index(c), col);
    return m;
}

Mat3i incidence(Sub s) { return named_matrix(sub_matrix_name(s)); }

std::string serialize(const Substitution& s) {
    if (!s.name.empty()) return s.name;
    std::string out;
    for (int c = 0; c < 3; ++c) {
        if (c) out += ';';
        out += index_letter(c);
        out += '>';
        out += s.images[static_cast<std::size_t>(c)];
    }
    return out;
}

Substitution parse_substitution(std::string_view text) {
    if (text.find('>') == std::string_view::npos) return named_substitution(text);
    Substitution out;
    std::array<bool, 3> seen{};
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find(';', start);
        std::string_view part = text.substr(
            start, end == std::string_view::npos ? text.size() - start : end - start);
        std::size_t gt = part.find('>');
        if (gt != 1 || part.empty() || part[0] < '1' || part[0] > '3')
            throw ParseError("substitution rule must look like 1>word");
        int idx = letter_index(part[0]);
        Word img = validate_word(part.substr(2));
        if (img.empty()) throw ParseError("substitution images must be nonempty");
        out.images[static_cast<std::size_t>(idx)] = img;
        seen[static_cast<std::size_t>(idx)] = true;
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    if (!(seen[0] && seen[1] && seen[2]))
        throw ParseError("substitution must define images of 1, 2 and 3");
    return out;
}

std::vector<Sub> parse_directive_labels(std::string_view text) {
    std::vector<Sub> out;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) out.push_back(parse_sub_label(tok));
    return out;
}

std::string format_directive_labels(std::span<const Sub> labels) {
    std::string out;
    for (Sub s : labels) {
        if (!out.empty()) out += ' ';
        out += sub_label(s);
    }
    return out;
}

}  // namespace arp

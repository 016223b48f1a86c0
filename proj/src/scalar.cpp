#include "arp/scalar.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace arp {

namespace {

/// RAII mpfr value.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

long long squarefree_split(long long n, long long& square_root_part) {
    // n = s^2 * d with d squarefree; returns d, sets square_root_part = s.
    long long s = 1, d = 1;
    for (long long p = 2; p * p <= n; ++p) {
        int k = 0;
        while (n % p == 0) { n /= p; ++k; }
        for (int t = 0; t + 1 < k; t += 2) s *= p;
        if (k % 2) d *= p;
    }
    d *= n;  // leftover prime
    square_root_part = s;
    return d;
}

}  // namespace

void Scalar::prune() {
    for (auto it = sqrt_.begin(); it != sqrt_.end();) {
        if (it->second.is_zero())
            it = sqrt_.erase(it);
        else
            ++it;
    }
}

Scalar Scalar::pi() {
    Scalar s;
    s.pi_ = 1;
    return s;
}

Scalar Scalar::sqrt(long long n) {
    if (n < 0) throw ParseError("sqrt of negative integer");
    Scalar s;
    if (n == 0) return s;
    long long root = 1;
    long long d = squarefree_split(n, root);
    if (d == 1)
        s.rat_ = root;
    else
        s.sqrt_[d] = root;
    return s;
}

Scalar Scalar::operator-() const {
    Scalar s(*this);
    s.rat_ = -s.rat_;
    s.pi_ = -s.pi_;
    for (auto& [d, c] : s.sqrt_) c = -c;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    rat_ += o.rat_;
    pi_ += o.pi_;
    for (const auto& [d, c] : o.sqrt_) sqrt_[d] += c;
    prune();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar operator*(const Rat& c, const Scalar& s) {
    Scalar out;
    out.rat_ = c * s.rat_;
    out.pi_ = c * s.pi_;
    if (!c.is_zero())
        for (const auto& [d, coef] : s.sqrt_) out.sqrt_[d] = c * coef;
    return out;
}

bool Scalar::is_zero() const { return rat_.is_zero() && pi_.is_zero() && sqrt_.empty(); }

Rat Scalar::as_rational() const {
    if (!is_rational()) throw std::domain_error("Scalar is not rational");
    return rat_;
}

namespace {

// Adds q * base to [lo, hi] where [blo, bhi] encloses base > 0.
void accumulate_term(mpfr_ptr lo, mpfr_ptr hi, const Rat& q, mpfr_srcptr blo, mpfr_srcptr bhi,
                     mpfr_prec_t prec) {
    Mpfr ql(prec), qh(prec), tl(prec), th(prec);
    mpfr_set_q(ql.get(), q.backend().data(), MPFR_RNDD);
    mpfr_set_q(qh.get(), q.backend().data(), MPFR_RNDU);
    if (q >= 0) {
        mpfr_mul(tl.get(), ql.get(), blo, MPFR_RNDD);
        mpfr_mul(th.get(), qh.get(), bhi, MPFR_RNDU);
    } else {
        mpfr_mul(tl.get(), ql.get(), bhi, MPFR_RNDD);
        mpfr_mul(th.get(), qh.get(), blo, MPFR_RNDU);
    }
    mpfr_add(lo, lo, tl.get(), MPFR_RNDD);
    mpfr_add(hi, hi, th.get(), MPFR_RNDU);
}

}  // namespace

/// Evaluates a Scalar into an enclosing interval at a given precision.
class ScalarEval {
public:
    // Returns -1 / +1 if the enclosure excludes zero, 0 if it still straddles.
    static int sign_at(const Scalar& s, mpfr_prec_t prec) {
        Mpfr lo(prec), hi(prec);
        mpfr_set_q(lo.get(), s.rat_.backend().data(), MPFR_RNDD);
        mpfr_set_q(hi.get(), s.rat_.backend().data(), MPFR_RNDU);
        if (!s.pi_.is_zero()) {
            Mpfr pl(prec), ph(prec);
            mpfr_const_pi(pl.get(), MPFR_RNDD);
            mpfr_const_pi(ph.get(), MPFR_RNDU);
            accumulate_term(lo.get(), hi.get(), s.pi_, pl.get(), ph.get(), prec);
        }
        for (const auto& [d, coef] : s.sqrt_) {
            Mpfr rl(prec), rh(prec);
            mpfr_sqrt_ui(rl.get(), static_cast<unsigned long>(d), MPFR_RNDD);
            mpfr_sqrt_ui(rh.get(), static_cast<unsigned long>(d), MPFR_RNDU);
            accumulate_term(lo.get(), hi.get(), coef, rl.get(), rh.get(), prec);
        }
        if (mpfr_sgn(lo.get()) > 0) return 1;
        if (mpfr_sgn(hi.get()) < 0) return -1;
        return 0;
    }

    static void midpoint(const Scalar& s, mpfr_ptr out) {
        mpfr_set_q(out, s.rat_.backend().data(), MPFR_RNDN);
        mpfr_prec_t prec = mpfr_get_prec(out);
        if (!s.pi_.is_zero()) {
            Mpfr p(prec), q(prec);
            mpfr_const_pi(p.get(), MPFR_RNDN);
            mpfr_set_q(q.get(), s.pi_.backend().data(), MPFR_RNDN);
            mpfr_fma(out, p.get(), q.get(), out, MPFR_RNDN);
        }
        for (const auto& [d, coef] : s.sqrt_) {
            Mpfr r(prec), q(prec);
            mpfr_sqrt_ui(r.get(), static_cast<unsigned long>(d), MPFR_RNDN);
            mpfr_set_q(q.get(), coef.backend().data(), MPFR_RNDN);
            mpfr_fma(out, r.get(), q.get(), out, MPFR_RNDN);
        }
    }
};

int Scalar::sign(unsigned bit_cap) const {
    if (is_zero()) return 0;
    if (is_rational()) return rat_ > 0 ? 1 : -1;
    // Symbolically nonzero: 1, pi and distinct squarefree roots are
    // independent over the rationals, so refinement terminates in principle.
    for (mpfr_prec_t prec = 64; prec <= static_cast<mpfr_prec_t>(bit_cap); prec *= 2) {
        if (int s = ScalarEval::sign_at(*this, prec)) return s;
    }
    throw PrecisionExhausted("sign undecided at " + std::to_string(bit_cap) + " bits: " +
                             to_string());
}

std::string Scalar::decimal(int digits) const {
    Mpfr v(512);
    ScalarEval::midpoint(*this, v.get());
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rf", digits, v.get());
    return std::string(buf.data());
}

double Scalar::approx() const {
    Mpfr v(256);
    ScalarEval::midpoint(*this, v.get());
    return mpfr_get_d(v.get(), MPFR_RNDN);
}

std::string Scalar::to_string() const {
    std::string out;
    auto append = [&out](const Rat& c, const std::string& base) {
        if (c.is_zero()) return;
        if (!out.empty()) out += c > 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        Rat a = abs(c);
        std::string cs = a.str();
        if (base.empty())
            out += cs;
        else if (a == 1)
            out += base;
        else
            out += cs + "*" + base;
    };
    append(rat_, "");
    append(pi_, "pi");
    for (const auto& [d, c] : sqrt_) append(c, "sqrt(" + std::to_string(d) + ")");
    return out.empty() ? "0" : out;
}

// --- parsing ---------------------------------------------------------------

namespace {

struct Cursor {
    std::string_view s;
    std::size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool eat_word(std::string_view w) {
        skip_ws();
        if (s.size() - i < w.size()) return false;
        for (std::size_t k = 0; k < w.size(); ++k)
            if (std::tolower(static_cast<unsigned char>(s[i + k])) != w[k]) return false;
        i += w.size();
        return true;
    }
};

Int parse_uint(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.i;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
    if (c.i == start) throw ParseError("expected digits in '" + std::string(c.s) + "'");
    return Int(std::string(c.s.substr(start, c.i - start)));
}

// number := digits [ '.' digits ] [ '/' digits ]
Rat parse_number(Cursor& c) {
    Int whole = parse_uint(c);
    Rat value(whole);
    if (c.i < c.s.size() && c.s[c.i] == '.') {
        ++c.i;
        std::size_t start = c.i;
        Int frac = parse_uint(c);
        Int scale = 1;
        for (std::size_t k = start; k < c.i; ++k) scale *= 10;
        value += Rat(frac, scale);
    }
    if (c.peek() == '/') {
        c.eat('/');
        Int den = parse_uint(c);
        if (den.is_zero()) throw ParseError("zero denominator");
        value /= Rat(den);
    }
    return value;
}

// term := number [ '*' base ] | base ;  base := 'pi' | 'sqrt' '(' uint ')'
Scalar parse_term(Cursor& c) {
    Rat coef(1);
    bool have_coef = false, need_base = false;
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
        coef = parse_number(c);
        have_coef = true;
        need_base = c.eat('*');
        if (!need_base) {
            c.skip_ws();
            bool base_follows = c.i < c.s.size() &&
                                (std::tolower(static_cast<unsigned char>(c.s[c.i])) == 'p' ||
                                 std::tolower(static_cast<unsigned char>(c.s[c.i])) == 's');
            if (!base_follows) return Scalar(coef);
        }
    }
    if (c.eat_word("pi")) return coef * Scalar::pi();
    if (c.eat_word("sqrt")) {
        if (!c.eat('(')) throw ParseError("expected '(' after sqrt");
        Int n = parse_uint(c);
        if (!c.eat(')')) throw ParseError("expected ')' after sqrt argument");
        if (n > Int(1000000000)) throw ParseError("sqrt argument too large");
        return coef * Scalar::sqrt(n.convert_to<long long>());
    }
    if (have_coef && !need_base) return Scalar(coef);
    throw ParseError("cannot parse scalar term in '" + std::string(c.s) + "'");
}

}  // namespace

Scalar Scalar::parse(std::string_view text) {
    Cursor c{text};
    Scalar value;
    bool negative = c.eat('-');
    if (!negative) c.eat('+');
    Scalar t = parse_term(c);
    value += negative ? -t : t;
    while (!c.done()) {
        if (c.eat('+'))
            value += parse_term(c);
        else if (c.eat('-'))
            value -= parse_term(c);
        else
            throw ParseError("unexpected character at '" +
                             std::string(text.substr(c.i)) + "'");
    }
    return value;
}

}  // namespace arp

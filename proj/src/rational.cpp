#include "concord/rational.hpp"

namespace concord {

std::string to_string(const BigInt& z) { return z.str(); }

std::string to_string(const Rational& q) {
    if (is_integer(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

bool valid_integer_token(std::string_view s) {
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (!valid_integer_token(num)) throw ParseError("bad rational: '" + std::string(text) + "'");
    BigInt n{std::string(num)};
    if (slash == std::string_view::npos) return Rational(n);
    std::string_view den = text.substr(slash + 1);
    bool signed_den = !den.empty() && (den[0] == '+' || den[0] == '-');
    if (!valid_integer_token(den) || signed_den)
        throw ParseError("bad rational denominator: '" + std::string(text) + "'");
    BigInt d{std::string(den)};
    if (d.is_zero()) throw ParseError("zero denominator: '" + std::string(text) + "'");
    return Rational(n, d);
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n2 = b.norm2();
    if (n2.is_zero()) throw std::domain_error("division by zero GaussianRational");
    GaussianRational t = a * b.conj();
    return {t.re / n2, t.im / n2};
}

std::string to_string(const GaussianRational& g) {
    if (g.im.is_zero()) return to_string(g.re);
    std::string s = to_string(g.re);
    if (g.im.sign() >= 0)
        s += "+" + to_string(g.im);
    else
        s += "-" + to_string(Rational(-g.im));
    s += " i";
    return s;
}

GaussianRational parse_gaussian(std::string_view text) {
    // Either "re" or "re(+|-)im i" where re and im are rational tokens.
    if (text.size() >= 2 && text.substr(text.size() - 2) == " i") {
        std::string_view body = text.substr(0, text.size() - 2);
        // Split on the last '+' or '-' that is not a leading sign and not
        // directly after '/'.
        size_t split = std::string_view::npos;
        for (size_t i = body.size(); i-- > 1;) {
            if ((body[i] == '+' || body[i] == '-') && body[i - 1] != '/') {
                split = i;
                break;
            }
        }
        if (split == std::string_view::npos)
            throw ParseError("bad gaussian rational: '" + std::string(text) + "'");
        Rational re = parse_rational(body.substr(0, split));
        Rational im = parse_rational(body.substr(split + 1));
        if (body[split] == '-') im = -im;
        return {re, im};
    }
    return {parse_rational(text)};
}

}  // namespace concord

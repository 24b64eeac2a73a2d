#include "expeq/rational.hpp"

#include <cctype>
#include <ostream>

namespace expeq {

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.str(); }
std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.str(); }

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw InvalidInput("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den.is_zero()) throw InvalidInput("zero denominator in: " + s);
        return {num, den};
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return {Integer(s), Integer(1)};
    std::string head = s.substr(0, dot);
    std::string tail = s.substr(dot + 1);
    for (char c : tail)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw InvalidInput("bad decimal literal: " + s);
    bool neg = !head.empty() && head[0] == '-';
    if (head == "-" || head == "+" || head.empty()) head += "0";
    Integer scale = Integer::pow(Integer(10), tail.size());
    Integer whole(head);
    Integer frac = tail.empty() ? Integer(0) : Integer(tail);
    Integer num = Integer::abs(whole) * scale + frac;
    if (neg || whole.sign() < 0) num = -num;
    return {num, scale};
}

Rational Rational::pow(const Rational& a, long e) {
    if (e == 0) return {1};
    bool inv = e < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
    Rational base = inv ? Rational::inverse(a) : a;
    Rational acc(1);
    Rational cur = base;
    while (k) {
        if (k & 1) acc *= cur;
        k >>= 1;
        if (k) cur *= cur;
    }
    return acc;
}

} // namespace expeq

#include "caudex/rat.hpp"

#include "caudex/errors.hpp"

#include <cctype>
#include <cstdlib>

namespace caudex {

std::string to_string(const Rat& r) {
    return r.numerator().str() + "/" + r.denominator().str();
}

static Int int_from(std::string_view text) {
    if (text.empty())
        throw Error("rat", "empty integer literal");
    size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size())
        throw Error("rat", "bad integer literal '" + std::string(text) + "'");
    for (size_t j = i; j < text.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(text[j])))
            throw Error("rat", "bad integer literal '" + std::string(text) + "'");
    return Int(std::string(text));
}

Rat rat_from_string(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Int num = int_from(text.substr(0, slash));
        Int den = int_from(text.substr(slash + 1));
        if (den == 0)
            throw Error("rat", "zero denominator in '" + std::string(text) + "'");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        return Rat(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.empty())
            return Rat(int_from(whole), 1);
        bool neg = !whole.empty() && whole[0] == '-';
        Int w = whole.empty() || whole == "-" || whole == "+" ? Int(0) : int_from(whole);
        Int f = int_from(frac);
        Int scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Int num = w * scale;
        if (neg)
            num -= f;
        else
            num += f;
        return Rat(num, scale);
    }
    return Rat(int_from(text), 1);
}

double to_double(const Rat& r) {
    return r.numerator().convert_to<double>() / r.denominator().convert_to<double>();
}

std::string to_decimal_string(const Rat& r, int digits) {
    Int num = r.numerator();
    bool neg = num < 0;
    if (neg) num = -num;
    Int den = r.denominator();
    Int whole = num / den;
    Int rem = num % den;
    std::string out = (neg ? "-" : "") + whole.str();
    if (rem == 0)
        return out;
    out += '.';
    for (int i = 0; i < digits && rem != 0; ++i) {
        rem *= 10;
        out += char('0' + (rem / den).convert_to<int>());
        rem %= den;
    }
    return out;
}

Int factorial(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Int out = 1;
    for (int i = 0; i < k; ++i) {
        out *= n - i;
        out /= i + 1;
    }
    return out;
}

} // namespace caudex

#include <syzmirror/rational.hpp>

#include <cctype>

namespace syzmirror
{

namespace
{

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    auto num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);

    auto digits = num;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        digits.remove_prefix(1);
    }
    if (!all_digits(digits) || !all_digits(den)) {
        throw RationalParseError("malformed rational '" + std::string(text) + "'");
    }
    Integer p(std::string(num.front() == '+' ? num.substr(1) : num), 10);
    Integer q(std::string(den), 10);
    if (q == 0) {
        throw RationalParseError("zero denominator in rational '" + std::string(text) + "'");
    }
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational &r)
{
    return r.get_str();
}

bool is_integer(const Rational &r)
{
    return r.get_den() == 1;
}

Rational factorial(long n)
{
    if (n < 0) {
        throw std::domain_error("factorial of a negative integer");
    }
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

} // namespace syzmirror

#include "vrptree/ratio.hpp"

#include "vrptree/errors.hpp"

#include <charconv>
#include <limits>
#include <numeric>

namespace vrpt {

namespace {

__extension__ using i128 = __int128;

std::int64_t narrow(i128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw InvalidArgument("rational overflow");
    }
    return static_cast<std::int64_t>(v);
}

i128 floor_div128(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i128 ceil_div128(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return q;
}

Ratio make(i128 num, i128 den) {
    if (den == 0) throw InvalidArgument("division by zero in rational");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 a = num < 0 ? -num : num;
    i128 b = den;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    return Ratio(narrow(num), narrow(den));
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw InvalidArgument("not a number: '" + std::string(whole) + "'");
    }
    return v;
}

Ratio parse_decimal(std::string_view s, std::string_view whole) {
    if (s.empty()) throw InvalidArgument("empty number");
    auto dot = s.find('.');
    if (dot == std::string_view::npos) return Ratio(parse_int(s, whole));
    auto ipart = s.substr(0, dot);
    auto fpart = s.substr(dot + 1);
    if (fpart.empty() || fpart.size() > 17) throw InvalidArgument("bad decimal: '" + std::string(whole) + "'");
    bool neg = !ipart.empty() && ipart[0] == '-';
    std::int64_t ip = (ipart.empty() || ipart == "-") ? 0 : parse_int(ipart, whole);
    std::int64_t fp = parse_int(fpart, whole);
    if (fp < 0) throw InvalidArgument("bad decimal: '" + std::string(whole) + "'");
    i128 den = 1;
    for (std::size_t i = 0; i < fpart.size(); ++i) den *= 10;
    i128 mag = static_cast<i128>(ip < 0 ? -ip : ip) * den + fp;
    return make(neg ? -mag : mag, den);
}

} // namespace

Ratio::Ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InvalidArgument("division by zero in rational");
    if (num == std::numeric_limits<std::int64_t>::min() || den == std::numeric_limits<std::int64_t>::min()) {
        throw InvalidArgument("rational overflow");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = g > 1 ? num / g : num;
    den_ = g > 1 ? den / g : den;
}

Ratio Ratio::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_decimal(text, text);
    return parse_decimal(text.substr(0, slash), text) / parse_decimal(text.substr(slash + 1), text);
}

std::string Ratio::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t Ratio::floor_times(std::int64_t x) const {
    return narrow(floor_div128(static_cast<i128>(num_) * x, den_));
}

std::int64_t Ratio::ceil_times(std::int64_t x) const {
    return narrow(ceil_div128(static_cast<i128>(num_) * x, den_));
}

std::int64_t Ratio::floor_div(std::int64_t x) const {
    if (num_ <= 0) throw InvalidArgument("division by non-positive rational");
    return narrow(floor_div128(static_cast<i128>(x) * den_, num_));
}

std::int64_t Ratio::ceil_div(std::int64_t x) const {
    if (num_ <= 0) throw InvalidArgument("division by non-positive rational");
    return narrow(ceil_div128(static_cast<i128>(x) * den_, num_));
}

int Ratio::compare_scaled(std::int64_t scale, std::int64_t value) const {
    i128 lhs = static_cast<i128>(num_) * scale;
    i128 rhs = static_cast<i128>(value) * den_;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

Ratio operator+(const Ratio& a, const Ratio& b) {
    return make(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                static_cast<i128>(a.den_) * b.den_);
}

Ratio operator-(const Ratio& a, const Ratio& b) {
    return make(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                static_cast<i128>(a.den_) * b.den_);
}

Ratio operator*(const Ratio& a, const Ratio& b) {
    return make(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Ratio operator/(const Ratio& a, const Ratio& b) {
    return make(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

bool operator<(const Ratio& a, const Ratio& b) {
    return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
}

} // namespace vrpt

#ifndef VRPTREE_RATIO_HPP
#define VRPTREE_RATIO_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace vrpt {

// Exact non-negative rational used for solver parameters (epsilon, delta, theta)
// and for the thresholds derived from them. All comparisons against integer
// loads are done by cross-multiplication so no floating point is involved.
class Ratio {
public:
    constexpr Ratio() = default;
    Ratio(std::int64_t num, std::int64_t den = 1);

    // Accepts "3", "0.25", "1/4", "2.5/3".
    static Ratio parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    // floor / ceil of this * x for integer x
    std::int64_t floor_times(std::int64_t x) const;
    std::int64_t ceil_times(std::int64_t x) const;

    // floor(x / this), ceil(x / this); this must be positive
    std::int64_t floor_div(std::int64_t x) const;
    std::int64_t ceil_div(std::int64_t x) const;

    // Compare this * scale against an integer value.
    int compare_scaled(std::int64_t scale, std::int64_t value) const;

    friend Ratio operator+(const Ratio& a, const Ratio& b);
    friend Ratio operator-(const Ratio& a, const Ratio& b);
    friend Ratio operator*(const Ratio& a, const Ratio& b);
    friend Ratio operator/(const Ratio& a, const Ratio& b);
    friend bool operator==(const Ratio& a, const Ratio& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator<(const Ratio& a, const Ratio& b);
    friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
    friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
    friend bool operator>=(const Ratio& a, const Ratio& b) { return !(a < b); }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

// x >= r, x < r, x <= r with integer x
inline bool at_least(std::int64_t x, const Ratio& r) { return r.compare_scaled(1, x) <= 0; }
inline bool below(std::int64_t x, const Ratio& r) { return r.compare_scaled(1, x) > 0; }
inline bool at_most(std::int64_t x, const Ratio& r) { return r.compare_scaled(1, x) >= 0; }

} // namespace vrpt

#endif

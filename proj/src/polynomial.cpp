#include "vbetti/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "vbetti/error.hpp"

namespace vbetti {

namespace checked {

std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer overflow in addition");
    return r;
}

std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer overflow in subtraction");
    return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer overflow in multiplication");
    return r;
}

} // namespace checked

IntPolynomial::IntPolynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPolynomial IntPolynomial::constant(std::int64_t c) { return IntPolynomial({c}); }

IntPolynomial IntPolynomial::monomial(std::int64_t c, std::size_t degree) {
    std::vector<std::int64_t> v(degree + 1, 0);
    v[degree] = c;
    return IntPolynomial(std::move(v));
}

void IntPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::optional<std::size_t> IntPolynomial::degree() const noexcept {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
}

bool IntPolynomial::nonnegative() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c >= 0; });
}

IntPolynomial IntPolynomial::operator-() const {
    IntPolynomial out = *this;
    for (auto& c : out.coeffs_) c = checked::sub(0, c);
    return out;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& q) {
    if (q.coeffs_.size() > coeffs_.size()) coeffs_.resize(q.coeffs_.size(), 0);
    for (std::size_t k = 0; k < q.coeffs_.size(); ++k) coeffs_[k] = checked::add(coeffs_[k], q.coeffs_[k]);
    trim();
    return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& q) {
    if (q.coeffs_.size() > coeffs_.size()) coeffs_.resize(q.coeffs_.size(), 0);
    for (std::size_t k = 0; k < q.coeffs_.size(); ++k) coeffs_[k] = checked::sub(coeffs_[k], q.coeffs_[k]);
    trim();
    return *this;
}

IntPolynomial operator*(const IntPolynomial& p, const IntPolynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<std::int64_t> out(p.coeffs_.size() + q.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < q.coeffs_.size(); ++j)
            out[i + j] = checked::add(out[i + j], checked::mul(p.coeffs_[i], q.coeffs_[j]));
    return IntPolynomial(std::move(out));
}

std::int64_t IntPolynomial::eval(std::int64_t x) const {
    std::int64_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = checked::add(checked::mul(acc, x), *it);
    return acc;
}

std::string IntPolynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const std::int64_t c = coeffs_[k];
        if (c == 0) continue;
        const bool negative = c < 0;
        // magnitude as unsigned so INT64_MIN prints correctly
        const std::uint64_t mag = negative ? std::uint64_t(0) - static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
        if (first) out += negative ? "-" : "";
        else out += negative ? " - " : " + ";
        first = false;
        if (k == 0) {
            out += std::to_string(mag);
            continue;
        }
        if (mag != 1) out += std::to_string(mag) + "*";
        out += "t";
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

namespace {

class TermParser {
public:
    explicit TermParser(std::string_view text) : s_(text) {}

    IntPolynomial run() {
        std::vector<std::int64_t> acc;
        skip_ws();
        if (at_end()) fail("empty polynomial");
        bool first = true;
        while (!at_end()) {
            bool negative = false;
            if (peek() == '+' || peek() == '-') {
                negative = peek() == '-';
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            auto [coef, degree] = term();
            if (negative) coef = checked::sub(0, coef);
            if (acc.size() <= degree) acc.resize(degree + 1, 0);
            acc[degree] = checked::add(acc[degree], coef);
            skip_ws();
        }
        return IntPolynomial(std::move(acc));
    }

private:
    std::pair<std::int64_t, std::size_t> term() {
        std::int64_t coef = 1;
        bool have_number = false;
        if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            coef = number<std::int64_t>();
            have_number = true;
            skip_ws();
            if (!at_end() && peek() == '*') {
                ++pos_;
                skip_ws();
            } else {
                return {coef, 0};
            }
        }
        if (at_end() || peek() != 't') fail(have_number ? "expected 't' after '*'" : "expected a number or 't'");
        ++pos_;
        skip_ws();
        std::size_t degree = 1;
        if (!at_end() && peek() == '^') {
            ++pos_;
            skip_ws();
            degree = number<std::size_t>();
        }
        return {coef, degree};
    }

    template <class T>
    T number() {
        T value{};
        auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), value);
        if (ec == std::errc::result_out_of_range) throw Error(ErrorCode::Overflow, "coefficient out of range", std::string(s_));
        if (ec != std::errc{}) fail("expected a number");
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        return value;
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    [[noreturn]] void fail(const char* what) const {
        throw Error(ErrorCode::ParseError, std::string("cannot parse polynomial: ") + what + " at offset " + std::to_string(pos_),
                    std::string(s_));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

IntPolynomial IntPolynomial::parse(std::string_view text) { return TermParser(text).run(); }

} // namespace vbetti

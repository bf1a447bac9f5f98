#ifndef VBETTI_POLYNOMIAL_HPP
#define VBETTI_POLYNOMIAL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vbetti {

/// Element of Z[t] with 64-bit coefficients; arithmetic throws
/// Error(Overflow) instead of wrapping. coeffs()[k] is the coefficient of
/// t^k and the last stored coefficient is never zero, so the zero
/// polynomial has no coefficients at all.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<std::int64_t> coeffs);
    static IntPolynomial constant(std::int64_t c);
    static IntPolynomial monomial(std::int64_t c, std::size_t degree);
    /// t
    static IntPolynomial t() { return monomial(1, 1); }

    const std::vector<std::int64_t>& coeffs() const noexcept { return coeffs_; }
    /// Coefficient of t^k; zero past the degree.
    std::int64_t coeff(std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : 0; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// nullopt stands for the degree of the zero polynomial (minus infinity).
    std::optional<std::size_t> degree() const noexcept;
    std::int64_t leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
    bool nonnegative() const noexcept;

    IntPolynomial operator-() const;
    IntPolynomial& operator+=(const IntPolynomial& q);
    IntPolynomial& operator-=(const IntPolynomial& q);
    friend IntPolynomial operator+(IntPolynomial p, const IntPolynomial& q) { return p += q; }
    friend IntPolynomial operator-(IntPolynomial p, const IntPolynomial& q) { return p -= q; }
    friend IntPolynomial operator*(const IntPolynomial& p, const IntPolynomial& q);

    /// Horner evaluation, overflow-checked.
    std::int64_t eval(std::int64_t x) const;

    /// Ascending-degree text such as "4 - t + 3*t^2"; "0" for zero.
    std::string to_string() const;
    /// Inverse of to_string; also accepts terms in any order and repeated
    /// degrees. Throws Error(ParseError).
    static IntPolynomial parse(std::string_view text);

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

private:
    void trim();
    std::vector<std::int64_t> coeffs_;
};

struct DegreeAndLeading {
    std::optional<std::size_t> degree;  // nullopt = minus infinity
    std::int64_t leading = 0;
    friend bool operator==(const DegreeAndLeading&, const DegreeAndLeading&) = default;
};

inline IntPolynomial add(const IntPolynomial& p, const IntPolynomial& q) { return p + q; }
inline IntPolynomial mul(const IntPolynomial& p, const IntPolynomial& q) { return p * q; }
inline std::int64_t eval(const IntPolynomial& p, std::int64_t x) { return p.eval(x); }
inline DegreeAndLeading degree_and_leading(const IntPolynomial& p) { return {p.degree(), p.leading()}; }

namespace checked {
std::int64_t add(std::int64_t a, std::int64_t b);
std::int64_t sub(std::int64_t a, std::int64_t b);
std::int64_t mul(std::int64_t a, std::int64_t b);
} // namespace checked

} // namespace vbetti

#endif

#pragma once

// Exact coefficient rings parameterised by the loop value delta.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace dtl {

using Integer = mpz_class;
using Rational = mpq_class;

/// Element of Z/p. The modulus travels with the value so that elements of
/// different prime fields are never silently combined.
struct Residue {
    std::uint64_t value = 0;
    std::uint64_t modulus = 0;

    friend bool operator==(const Residue&, const Residue&) = default;
};

/// Sparse polynomial in delta with integer coefficients.
///
/// Terms are kept sorted by exponent with no zero coefficients, so two
/// polynomials are equal exactly when their term lists are identical.
class Polynomial {
public:
    using Term = std::pair<unsigned, Integer>;

    Polynomial() = default;
    explicit Polynomial(std::vector<Term> terms);

    static Polynomial constant(const Integer& c);
    static Polynomial monomial(const Integer& c, unsigned exponent);
    static Polynomial delta() { return monomial(1, 1); }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.back().first); }
    Integer coefficient(unsigned exponent) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b);

    /// "delta^2 - 1", "2*delta + 3", "0".
    std::string to_string() const;
    /// Inverse of to_string; also accepts unsorted and repeated terms.
    static Polynomial parse(std::string_view text);

private:
    std::vector<Term> terms_;
};

using Scalar = std::variant<Integer, Rational, Residue, Polynomial>;

enum class RingKind { Integers, Rationals, PrimeField, IntegerPolynomial };

class RingMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A coefficient ring together with the value chosen for delta.
///
/// Descriptors: "Z", "Q", "Fp:<p>", "Z[delta]". Delta descriptors are an
/// integer literal or "generic"; the polynomial ring only accepts "generic"
/// because delta is the indeterminate there.
class Ring {
public:
    static Ring integers(const Integer& delta);
    static Ring rationals(const Rational& delta);
    static Ring prime_field(std::uint64_t p, const Integer& delta);
    static Ring polynomial();
    static Ring parse(std::string_view ring_descriptor, std::string_view delta_descriptor);

    RingKind kind() const { return kind_; }
    std::uint64_t modulus() const { return modulus_; }
    const Scalar& delta() const { return delta_; }
    bool is_field() const { return kind_ == RingKind::Rationals || kind_ == RingKind::PrimeField; }

    std::string descriptor() const;
    std::string delta_descriptor() const;

    Scalar zero() const;
    Scalar one() const;
    Scalar from_integer(const Integer& value) const;
    bool contains(const Scalar& a) const;

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar negate(const Scalar& a) const;
    Scalar subtract(const Scalar& a, const Scalar& b) const;
    Scalar multiply(const Scalar& a, const Scalar& b) const;
    Scalar power(const Scalar& a, unsigned exponent) const;
    Scalar delta_power(unsigned exponent) const { return power(delta_, exponent); }
    bool equal(const Scalar& a, const Scalar& b) const;
    bool is_zero(const Scalar& a) const;
    /// True when a has a multiplicative inverse in this ring.
    bool is_unit(const Scalar& a) const;

    std::string format(const Scalar& a) const;
    Scalar parse_element(std::string_view text) const;

    friend bool operator==(const Ring& a, const Ring& b);

private:
    Ring(RingKind kind, std::uint64_t modulus, Scalar delta)
        : kind_(kind), modulus_(modulus), delta_(std::move(delta)) {}

    void check(const Scalar& a) const;

    RingKind kind_;
    std::uint64_t modulus_ = 0;
    Scalar delta_;
};

/// Evaluates delta -> target.delta() and maps the integer coefficients into
/// target. The target must not be the polynomial ring.
Scalar specialize(const Polynomial& poly, const Ring& target);

bool is_prime(std::uint64_t p);

}  // namespace dtl

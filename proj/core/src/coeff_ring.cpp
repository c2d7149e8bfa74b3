#include "dtl/coeff_ring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace dtl {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t reduce(const Integer& value, std::uint64_t m) {
    Integer r = value % Integer(static_cast<unsigned long>(m));
    if (r < 0) r += static_cast<unsigned long>(m);
    return r.get_ui();
}

Integer parse_integer(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    Integer value;
    if (value.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
        throw std::invalid_argument("malformed integer literal '" + s + "'");
    return value;
}

}  // namespace

// --- Polynomial -------------------------------------------------------------

Polynomial::Polynomial(std::vector<Term> terms) {
    std::map<unsigned, Integer> merged;
    for (auto& [e, c] : terms) merged[e] += c;
    for (auto& [e, c] : merged)
        if (c != 0) terms_.emplace_back(e, c);
}

Polynomial Polynomial::constant(const Integer& c) { return monomial(c, 0); }

Polynomial Polynomial::monomial(const Integer& c, unsigned exponent) {
    Polynomial p;
    if (c != 0) p.terms_.emplace_back(exponent, c);
    return p;
}

Integer Polynomial::coefficient(unsigned exponent) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                               [](const Term& t, unsigned e) { return t.first < e; });
    if (it != terms_.end() && it->first == exponent) return it->second;
    return 0;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
        if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
            out.terms_.push_back(*i++);
        } else if (i == a.terms_.end() || j->first < i->first) {
            out.terms_.push_back(*j++);
        } else {
            Integer c = i->second + j->second;
            if (c != 0) out.terms_.emplace_back(i->first, c);
            ++i;
            ++j;
        }
    }
    return out;
}

Polynomial operator-(const Polynomial& a) {
    Polynomial out = a;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<Polynomial::Term> product;
    product.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) product.emplace_back(ea + eb, Integer(ca * cb));
    return Polynomial(std::move(product));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k)
        if (a.terms_[k].first != b.terms_[k].first || a.terms_[k].second != b.terms_[k].second)
            return false;
    return true;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Integer mag = abs(c);
        if (first) {
            if (c < 0) out << '-';
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            out << mag.get_str();
            continue;
        }
        if (mag != 1) out << mag.get_str() << '*';
        out << "delta";
        if (e != 1) out << '^' << e;
    }
    return out.str();
}

Polynomial Polynomial::parse(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty polynomial");

    std::vector<Term> terms;
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string_view term(s.data() + pos, end - pos);
        if (term.empty()) throw std::invalid_argument("malformed polynomial '" + s + "'");

        Integer coeff = 1;
        unsigned exponent = 0;
        auto at = term.find("delta");
        if (at == std::string_view::npos) {
            coeff = parse_integer(term);
        } else {
            std::string_view head = term.substr(0, at);
            std::string_view tail = term.substr(at + 5);
            if (!head.empty()) {
                if (head.back() != '*') throw std::invalid_argument("malformed term '" + std::string(term) + "'");
                coeff = parse_integer(head.substr(0, head.size() - 1));
            }
            exponent = 1;
            if (!tail.empty()) {
                if (tail.front() != '^') throw std::invalid_argument("malformed term '" + std::string(term) + "'");
                tail.remove_prefix(1);
                auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), exponent);
                if (ec != std::errc() || ptr != tail.data() + tail.size())
                    throw std::invalid_argument("malformed exponent in '" + std::string(term) + "'");
            }
        }
        if (sign < 0) coeff = -coeff;
        terms.emplace_back(exponent, coeff);
        pos = end;
    }
    return Polynomial(std::move(terms));
}

// --- Ring -------------------------------------------------------------------

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Ring Ring::integers(const Integer& delta) { return Ring(RingKind::Integers, 0, delta); }

Ring Ring::rationals(const Rational& delta) { return Ring(RingKind::Rationals, 0, delta); }

Ring Ring::prime_field(std::uint64_t p, const Integer& delta) {
    if (!is_prime(p)) throw std::invalid_argument("Fp modulus " + std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 32)) throw std::invalid_argument("Fp modulus must be below 2^32");
    return Ring(RingKind::PrimeField, p, Residue{reduce(delta, p), p});
}

Ring Ring::polynomial() { return Ring(RingKind::IntegerPolynomial, 0, Polynomial::delta()); }

Ring Ring::parse(std::string_view ring_descriptor, std::string_view delta_descriptor) {
    const bool generic = delta_descriptor == "generic";
    if (ring_descriptor == "Z[delta]") {
        if (!generic) throw std::invalid_argument("Z[delta] takes delta 'generic'");
        return polynomial();
    }
    if (generic) throw std::invalid_argument("delta 'generic' requires ring Z[delta]");
    Integer delta = parse_integer(delta_descriptor);
    if (ring_descriptor == "Z") return integers(delta);
    if (ring_descriptor == "Q") return rationals(Rational(delta));
    if (ring_descriptor.starts_with("Fp:")) {
        std::uint64_t p = 0;
        auto digits = ring_descriptor.substr(3);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
            throw std::invalid_argument("malformed ring descriptor '" + std::string(ring_descriptor) + "'");
        return prime_field(p, delta);
    }
    throw std::invalid_argument("unknown ring descriptor '" + std::string(ring_descriptor) + "'");
}

std::string Ring::descriptor() const {
    switch (kind_) {
        case RingKind::Integers: return "Z";
        case RingKind::Rationals: return "Q";
        case RingKind::PrimeField: return "Fp:" + std::to_string(modulus_);
        case RingKind::IntegerPolynomial: return "Z[delta]";
    }
    return "?";
}

std::string Ring::delta_descriptor() const {
    if (kind_ == RingKind::IntegerPolynomial) return "generic";
    return format(delta_);
}

bool operator==(const Ring& a, const Ring& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_ && a.equal(a.delta_, b.delta_);
}

Scalar Ring::zero() const { return from_integer(0); }
Scalar Ring::one() const { return from_integer(1); }

Scalar Ring::from_integer(const Integer& value) const {
    switch (kind_) {
        case RingKind::Integers: return value;
        case RingKind::Rationals: return Rational(value);
        case RingKind::PrimeField: return Residue{reduce(value, modulus_), modulus_};
        case RingKind::IntegerPolynomial: return Polynomial::constant(value);
    }
    return value;
}

bool Ring::contains(const Scalar& a) const {
    switch (kind_) {
        case RingKind::Integers: return std::holds_alternative<Integer>(a);
        case RingKind::Rationals: return std::holds_alternative<Rational>(a);
        case RingKind::PrimeField:
            return std::holds_alternative<Residue>(a) && std::get<Residue>(a).modulus == modulus_;
        case RingKind::IntegerPolynomial: return std::holds_alternative<Polynomial>(a);
    }
    return false;
}

void Ring::check(const Scalar& a) const {
    if (!contains(a)) throw RingMismatch("operand does not belong to ring " + descriptor());
}

Scalar Ring::add(const Scalar& a, const Scalar& b) const {
    check(a);
    check(b);
    switch (kind_) {
        case RingKind::Integers: return Integer(std::get<Integer>(a) + std::get<Integer>(b));
        case RingKind::Rationals: return Rational(std::get<Rational>(a) + std::get<Rational>(b));
        case RingKind::PrimeField: {
            std::uint64_t v = std::get<Residue>(a).value + std::get<Residue>(b).value;
            return Residue{v % modulus_, modulus_};
        }
        case RingKind::IntegerPolynomial: return std::get<Polynomial>(a) + std::get<Polynomial>(b);
    }
    return a;
}

Scalar Ring::negate(const Scalar& a) const {
    check(a);
    switch (kind_) {
        case RingKind::Integers: return Integer(-std::get<Integer>(a));
        case RingKind::Rationals: return Rational(-std::get<Rational>(a));
        case RingKind::PrimeField: {
            std::uint64_t v = std::get<Residue>(a).value;
            return Residue{v == 0 ? 0 : modulus_ - v, modulus_};
        }
        case RingKind::IntegerPolynomial: return -std::get<Polynomial>(a);
    }
    return a;
}

Scalar Ring::subtract(const Scalar& a, const Scalar& b) const { return add(a, negate(b)); }

Scalar Ring::multiply(const Scalar& a, const Scalar& b) const {
    check(a);
    check(b);
    switch (kind_) {
        case RingKind::Integers: return Integer(std::get<Integer>(a) * std::get<Integer>(b));
        case RingKind::Rationals: return Rational(std::get<Rational>(a) * std::get<Rational>(b));
        case RingKind::PrimeField:
            return Residue{mulmod(std::get<Residue>(a).value, std::get<Residue>(b).value, modulus_), modulus_};
        case RingKind::IntegerPolynomial: return std::get<Polynomial>(a) * std::get<Polynomial>(b);
    }
    return a;
}

Scalar Ring::power(const Scalar& a, unsigned exponent) const {
    check(a);
    if (kind_ == RingKind::IntegerPolynomial) {
        const auto& p = std::get<Polynomial>(a);
        // Fast path for the monomials that dominate diagram products.
        if (p.terms().size() == 1) {
            const auto& [e, c] = p.terms().front();
            Integer coeff;
            mpz_pow_ui(coeff.get_mpz_t(), c.get_mpz_t(), exponent);
            return Polynomial::monomial(coeff, e * exponent);
        }
    }
    Scalar result = one();
    Scalar base = a;
    while (exponent > 0) {
        if (exponent & 1u) result = multiply(result, base);
        exponent >>= 1u;
        if (exponent > 0) base = multiply(base, base);
    }
    return result;
}

bool Ring::equal(const Scalar& a, const Scalar& b) const {
    check(a);
    check(b);
    switch (kind_) {
        case RingKind::Integers: return std::get<Integer>(a) == std::get<Integer>(b);
        case RingKind::Rationals: return std::get<Rational>(a) == std::get<Rational>(b);
        case RingKind::PrimeField: return std::get<Residue>(a) == std::get<Residue>(b);
        case RingKind::IntegerPolynomial: return std::get<Polynomial>(a) == std::get<Polynomial>(b);
    }
    return false;
}

bool Ring::is_zero(const Scalar& a) const {
    check(a);
    switch (kind_) {
        case RingKind::Integers: return std::get<Integer>(a) == 0;
        case RingKind::Rationals: return std::get<Rational>(a) == 0;
        case RingKind::PrimeField: return std::get<Residue>(a).value == 0;
        case RingKind::IntegerPolynomial: return std::get<Polynomial>(a).is_zero();
    }
    return false;
}

bool Ring::is_unit(const Scalar& a) const {
    check(a);
    switch (kind_) {
        case RingKind::Integers: return abs(std::get<Integer>(a)) == 1;
        case RingKind::Rationals: return std::get<Rational>(a) != 0;
        case RingKind::PrimeField: return std::get<Residue>(a).value != 0;
        case RingKind::IntegerPolynomial: {
            const auto& t = std::get<Polynomial>(a).terms();
            return t.size() == 1 && t[0].first == 0 && abs(t[0].second) == 1;
        }
    }
    return false;
}

std::string Ring::format(const Scalar& a) const {
    check(a);
    switch (kind_) {
        case RingKind::Integers: return std::get<Integer>(a).get_str();
        case RingKind::Rationals: return std::get<Rational>(a).get_str();
        case RingKind::PrimeField: return std::to_string(std::get<Residue>(a).value);
        case RingKind::IntegerPolynomial: return std::get<Polynomial>(a).to_string();
    }
    return "?";
}

Scalar Ring::parse_element(std::string_view text) const {
    switch (kind_) {
        case RingKind::Integers: return parse_integer(text);
        case RingKind::Rationals: {
            Rational q;
            if (q.set_str(std::string(text), 10) != 0)
                throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
            q.canonicalize();
            return q;
        }
        case RingKind::PrimeField: return from_integer(parse_integer(text));
        case RingKind::IntegerPolynomial: return Polynomial::parse(text);
    }
    throw std::invalid_argument("unreachable");
}

Scalar specialize(const Polynomial& poly, const Ring& target) {
    if (target.kind() == RingKind::IntegerPolynomial)
        throw std::invalid_argument("specialize: target must be Z, Q or Fp");
    Scalar result = target.zero();
    for (const auto& [e, c] : poly.terms())
        result = target.add(result, target.multiply(target.from_integer(c), target.delta_power(e)));
    return result;
}

}  // namespace dtl

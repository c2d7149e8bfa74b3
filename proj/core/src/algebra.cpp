#include "dtl/algebra.hpp"

#include <memory>
#include <mutex>
#include <sstream>

namespace dtl {

AlgebraElement AlgebraElement::basis_element(const Ring& ring, const Diagram& d) {
    AlgebraElement x(ring, d.n());
    x.add_term(d, ring.one());
    return x;
}

Scalar AlgebraElement::coefficient(const Diagram& d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? ring_.zero() : it->second;
}

void AlgebraElement::add_term(const Diagram& d, const Scalar& c) {
    if (d.n() != n_)
        throw DiagramError(DiagramError::Kind::SizeMismatch, "diagram of height " + std::to_string(d.n()) +
                                                                 " added to element of dTL_" + std::to_string(n_));
    auto it = terms_.find(d);
    if (it == terms_.end()) {
        if (!ring_.is_zero(c)) terms_.emplace(d, c);
        return;
    }
    it->second = ring_.add(it->second, c);
    if (ring_.is_zero(it->second)) terms_.erase(it);
}

void AlgebraElement::check_compatible(const AlgebraElement& other) const {
    if (!(ring_ == other.ring_)) throw RingMismatch("algebra elements over different rings");
    if (n_ != other.n_)
        throw DiagramError(DiagramError::Kind::SizeMismatch, "elements of dTL_" + std::to_string(n_) + " and dTL_" +
                                                                 std::to_string(other.n_));
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    a.check_compatible(b);
    AlgebraElement out = a;
    for (const auto& [d, c] : b.terms_) out.add_term(d, c);
    return out;
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    a.check_compatible(b);
    AlgebraElement out = a;
    for (const auto& [d, c] : b.terms_) out.add_term(d, a.ring_.negate(c));
    return out;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return multiply_elements(a, b); }

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    if (!(a.ring_ == b.ring_) || a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    for (auto j = b.terms_.begin(); j != b.terms_.end(); ++i, ++j)
        if (!(i->first == j->first) || !a.ring_.equal(i->second, j->second)) return false;
    return true;
}

std::string AlgebraElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [d, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << ring_.format(c) << ")*" << to_text(d);
    }
    return out.str();
}

AlgebraElement multiply_elements(const AlgebraElement& x, const AlgebraElement& y) {
    x.check_compatible(y);
    const Ring& ring = x.ring();
    AlgebraElement out(ring, x.n());
    for (const auto& [dx, cx] : x.terms()) {
        for (const auto& [dy, cy] : y.terms()) {
            auto outcome = multiply_diagrams(dx, dy);
            if (outcome.is_annihilated()) continue;
            out.add_term(outcome.diagram(), ring.multiply(ring.multiply(cx, cy), ring.delta_power(outcome.loops())));
        }
    }
    return out;
}

AlgebraElement identity_element(int n, const Ring& ring) {
    AlgebraElement out(ring, n);
    for (unsigned omitted = 0; omitted < (1u << n); ++omitted) {
        Diagram::SlotArray partner;
        partner.fill(Diagram::kIsolated);
        for (int j = 0; j < n; ++j) {
            if (omitted & (1u << j)) continue;
            partner[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(2 * n - 1 - j);
            partner[static_cast<std::size_t>(2 * n - 1 - j)] = static_cast<std::uint8_t>(j);
        }
        out.add_term(Diagram::from_slots_unchecked(n, partner), ring.one());
    }
    return out;
}

Scalar augmentation(const AlgebraElement& x) { return x.coefficient(all_propagating(x.n())); }

// --- cached tables ----------------------------------------------------------

namespace {

template <class T>
const T& cached(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<T>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<T>(n);
    return *slot;
}

}  // namespace

DiagramBasis::DiagramBasis(int n) : n_(n), diagrams_(enumerate_basis(n)) {
    by_key_.reserve(diagrams_.size());
    for (std::uint32_t i = 0; i < diagrams_.size(); ++i) by_key_.emplace(diagrams_[i].key(), i);
    all_propagating_ = index(all_propagating(n));
}

const DiagramBasis& DiagramBasis::get(int n) { return cached<DiagramBasis>(n); }

std::optional<std::uint32_t> DiagramBasis::find(const Diagram& d) const {
    if (d.n() != n_) return std::nullopt;
    auto it = by_key_.find(d.key());
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
}

std::uint32_t DiagramBasis::index(const Diagram& d) const {
    auto i = find(d);
    if (!i) throw DiagramError(DiagramError::Kind::SizeMismatch, "diagram " + to_text(d) + " is not in the basis of dTL_" + std::to_string(n_));
    return *i;
}

ProductTable::ProductTable(int n) : n_(n) {
    const auto& basis = DiagramBasis::get(n);
    size_ = basis.size();
    table_.resize(size_ * size_);
    for (std::size_t a = 0; a < size_; ++a) {
        for (std::size_t b = 0; b < size_; ++b) {
            auto outcome = multiply_diagrams(basis[a], basis[b]);
            table_[a * size_ + b] = outcome.is_annihilated()
                                        ? kAnnihilated
                                        : (basis.index(outcome.diagram()) | (outcome.loops() << 24));
        }
    }
}

const ProductTable& ProductTable::get(int n) { return cached<ProductTable>(n); }

}  // namespace dtl

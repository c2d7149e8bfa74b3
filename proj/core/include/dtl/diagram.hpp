#pragma once

// Dilute Temperley-Lieb diagrams: planar partial matchings on two columns of
// n vertices, and their product by gluing.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dtl {

inline constexpr int kMaxColumnHeight = 16;

enum class Side : std::uint8_t { Left, Right };

/// A named vertex: L1..Ln on the left column, R1..Rn on the right.
struct Vertex {
    Side side = Side::Left;
    int index = 1;  // 1-based

    static Vertex left(int i) { return {Side::Left, i}; }
    static Vertex right(int i) { return {Side::Right, i}; }

    friend bool operator==(const Vertex&, const Vertex&) = default;
    /// Name order: L1 < ... < Ln < R1 < ... < Rn.
    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

std::string to_string(Vertex v);
Vertex parse_vertex(std::string_view text);

using Edge = std::pair<Vertex, Vertex>;

class DiagramError : public std::invalid_argument {
public:
    enum class Kind { OutOfRange, DuplicateVertex, SelfEdge, Unassigned, NonPlanar, SizeMismatch, Malformed };

    DiagramError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
    DiagramError(Edge first, Edge second);

    Kind kind() const { return kind_; }
    /// The two crossing edges, for NonPlanar.
    const std::optional<std::pair<Edge, Edge>>& crossing() const { return crossing_; }

private:
    Kind kind_;
    std::optional<std::pair<Edge, Edge>> crossing_;
};

/// A dilute Temperley-Lieb n-diagram.
///
/// Internally vertices are slots 0..2n-1 in the cyclic order
/// L1..Ln, Rn..R1, so planarity is a nesting condition on slot pairs.
class Diagram {
public:
    static constexpr std::uint8_t kIsolated = 0xFF;
    using SlotArray = std::array<std::uint8_t, 2 * kMaxColumnHeight>;

    /// Placeholder with n = 0; not a basis element.
    Diagram() = default;

    /// Validated construction from a slot -> partner-slot table.
    static Diagram from_slots(int n, std::span<const std::uint8_t> partner);
    /// Caller guarantees the table is a planar involution.
    static Diagram from_slots_unchecked(int n, const SlotArray& partner) { return Diagram(n, partner); }

    int n() const { return n_; }
    int slot_count() const { return 2 * n_; }
    int slot(Vertex v) const { return v.side == Side::Left ? v.index - 1 : 2 * n_ - v.index; }
    Vertex vertex(int slot) const {
        return slot < n_ ? Vertex::left(slot + 1) : Vertex::right(2 * n_ - slot);
    }
    std::uint8_t partner_slot(int slot) const { return partner_[static_cast<std::size_t>(slot)]; }
    const SlotArray& slots() const { return partner_; }

    std::optional<Vertex> partner(Vertex v) const;
    bool is_isolated(Vertex v) const { return partner_slot(slot(v)) == kIsolated; }

    /// Edges in name order, each pair ordered by name order.
    std::vector<Edge> edges() const;
    std::vector<Vertex> isolated() const;
    /// Edges as slot pairs (a < b) sorted by first slot: the canonical encoding.
    std::vector<std::pair<int, int>> slot_edges() const;

    /// Motzkin word over the slots (2 bits per slot); injective for fixed n.
    std::uint64_t key() const;

    friend bool operator==(const Diagram& a, const Diagram& b) {
        return a.n_ == b.n_ && a.partner_ == b.partner_;
    }
    /// Canonical order: by n, then lexicographically on slot_edges().
    friend std::strong_ordering operator<=>(const Diagram& a, const Diagram& b);

private:
    Diagram(int n, const SlotArray& partner) : n_(n), partner_(partner) {}

    int n_ = 0;
    SlotArray partner_{};
};

/// Returns the first crossing pair of slot edges, if any.
std::optional<std::pair<std::pair<int, int>, std::pair<int, int>>> find_crossing(
    int n, std::span<const std::uint8_t> partner);

Diagram make_diagram(int n, std::span<const Edge> edges, std::span<const Vertex> isolated);
/// Convenience overload; unlisted vertices are isolated.
Diagram make_diagram(int n, std::initializer_list<Edge> edges);

/// Text format `D<n>:(A,B)(C,D)...`; unlisted vertices are isolated.
std::string to_text(const Diagram& d);
Diagram parse_diagram(std::string_view text);

int propagating_count(const Diagram& d);

/// Every planar partial matching on the 2n slots, in canonical order.
std::vector<Diagram> enumerate_basis(int n);

/// The diagram with propagating edges j -- R_j for every j.
Diagram all_propagating(int n);
/// The diagram with no edges.
Diagram empty_diagram(int n);

class MultiplicationOutcome {
public:
    static MultiplicationOutcome annihilated() { return MultiplicationOutcome(); }
    static MultiplicationOutcome product(unsigned loops, const Diagram& d) { return MultiplicationOutcome(loops, d); }

    bool is_annihilated() const { return !diagram_.has_value(); }
    unsigned loops() const { return loops_; }
    const Diagram& diagram() const { return *diagram_; }

    friend bool operator==(const MultiplicationOutcome&, const MultiplicationOutcome&) = default;

private:
    MultiplicationOutcome() = default;
    MultiplicationOutcome(unsigned loops, const Diagram& d) : loops_(loops), diagram_(d) {}

    unsigned loops_ = 0;
    std::optional<Diagram> diagram_;
};

std::string to_string(const MultiplicationOutcome& outcome);

/// The three-column diagram d1 * d2: the right column of d1 is identified
/// with the left column of d2. Every vertex has degree at most two, so each
/// connected component is a path or a cycle.
class DoubleDiagram {
public:
    enum class Column : std::uint8_t { Left, Middle, Right };

    struct Endpoint {
        Column column;
        int index;  // 1-based
        friend bool operator==(const Endpoint&, const Endpoint&) = default;
    };

    struct Component {
        enum class Kind { Through, Floating, Loop };
        Kind kind;
        std::optional<Endpoint> start;  // unset for loops
        std::optional<Endpoint> end;
        int edge_count;
    };

    DoubleDiagram(const Diagram& first, const Diagram& second);

    int n() const { return n_; }
    /// Every component carrying at least one edge. Through components have
    /// both ends in the outer columns; Floating ones end in the middle.
    std::vector<Component> components() const;
    MultiplicationOutcome resolve() const;

private:
    static constexpr std::uint8_t kNone = 0xFF;

    template <class Sink>
    bool walk(Sink&& sink, unsigned& loops, Diagram::SlotArray& result) const;

    int n_;
    std::array<std::uint8_t, 3 * kMaxColumnHeight> via_first_{};
    std::array<std::uint8_t, 3 * kMaxColumnHeight> via_second_{};
};

/// Product of two basis diagrams.
MultiplicationOutcome multiply_diagrams(const Diagram& first, const Diagram& second);

}  // namespace dtl

template <>
struct std::hash<dtl::Diagram> {
    std::size_t operator()(const dtl::Diagram& d) const noexcept {
        return std::hash<std::uint64_t>{}(d.key() * 31 + static_cast<std::uint64_t>(d.n()));
    }
};

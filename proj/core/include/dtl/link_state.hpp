#pragma once

// Link states (half diagrams), splices, and the sesqui-diagram obtained by
// gluing a right link state onto the left column of a diagram.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dtl/diagram.hpp"

namespace dtl {

class LinkStateError : public std::invalid_argument {
public:
    enum class Kind { Malformed, CrossingCups, EnclosedDefect, InvalidSplice };

    LinkStateError(Kind kind, const std::string& what, std::optional<int> vertex = std::nullopt)
        : std::invalid_argument(what), kind_(kind), vertex_(vertex) {}

    Kind kind() const { return kind_; }
    /// For InvalidSplice: the vertex that blocks the splice.
    std::optional<int> vertex() const { return vertex_; }

private:
    Kind kind_;
    std::optional<int> vertex_;
};

/// One column of n vertices, each a defect, isolated, or half of a cup.
/// Cups never cross and never enclose a defect. Vertices are 1-based.
class LinkState {
public:
    enum class Kind : std::uint8_t { Defect, Isolated, Cup };

    static LinkState all_defects(int n);
    static LinkState all_isolated(int n);
    /// "D" defect, "O" isolated, matched parentheses for cups; e.g. "DO()DO".
    static LinkState parse(std::string_view text);

    int n() const { return static_cast<int>(state_.size()); }
    Kind kind(int v) const;
    std::optional<int> cup_partner(int v) const;
    bool is_defect(int v) const { return kind(v) == Kind::Defect; }
    bool is_isolated(int v) const { return kind(v) == Kind::Isolated; }
    std::vector<int> defects() const;
    int defect_count() const;

    std::string to_string() const;

    friend bool operator==(const LinkState&, const LinkState&) = default;
    friend auto operator<=>(const LinkState& a, const LinkState& b) { return a.to_string() <=> b.to_string(); }

private:
    static constexpr std::int8_t kDefect = -1;
    static constexpr std::int8_t kIsolated = -2;

    explicit LinkState(std::vector<std::int8_t> state);
    void validate() const;

    friend LinkState right_link_state(const Diagram& d);
    friend LinkState left_link_state(const Diagram& d);
    friend LinkState splice(const LinkState& p, int i, int k);
    friend std::vector<LinkState> enumerate_link_states(int n);

    std::vector<std::int8_t> state_;  // 0-based cup partner, or a sentinel
};

LinkState right_link_state(const Diagram& d);
LinkState left_link_state(const Diagram& d);

/// All valid link states on n vertices, sorted by their text form.
std::vector<LinkState> enumerate_link_states(int n);

/// Replaces the defects at i < k by a cup; requires no defect strictly between.
LinkState splice(const LinkState& p, int i, int k);

/// Smallest set containing p and closed under valid splices, sorted.
std::vector<LinkState> splice_closure(const LinkState& p);

/// The sesqui-diagram (p, d): p's column is identified with the left column
/// of d. Glued vertices are j' and the right column is overline j.
class SesquiDiagram {
public:
    /// A non-propagating edge in the glued column, from p or from d.
    struct GluedEdge {
        enum class Origin : std::uint8_t { LinkState, Diagram };
        Origin origin;
        int a;  // a < b, 1-based
        int b;
        friend bool operator==(const GluedEdge&, const GluedEdge&) = default;
        friend auto operator<=>(const GluedEdge&, const GluedEdge&) = default;
    };

    struct DefectPath {
        int start;                       // the defect j of p
        bool reaches_right;              // path ends on the right column
        int end;                         // index of the final vertex
        std::vector<GluedEdge> glued_edges;  // glued-column edges traversed
    };

    SesquiDiagram(LinkState p, Diagram d);

    const LinkState& link_state() const { return p_; }
    const Diagram& diagram() const { return d_; }

    /// Every non-propagating edge of the glued column.
    std::vector<GluedEdge> glued_edges() const;
    /// Follows the edges starting at j' for a defect j of p.
    DefectPath trace_from_defect(int j) const;

private:
    LinkState p_;
    Diagram d_;
};

}  // namespace dtl

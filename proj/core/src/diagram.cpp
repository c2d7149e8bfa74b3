#include "dtl/diagram.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace dtl {

namespace {

void check_height(int n) {
    if (n < 1 || n > kMaxColumnHeight)
        throw DiagramError(DiagramError::Kind::OutOfRange,
                           "column height " + std::to_string(n) + " outside 1.." + std::to_string(kMaxColumnHeight));
}

std::string edge_text(const Edge& e) { return "(" + to_string(e.first) + "," + to_string(e.second) + ")"; }

Vertex slot_vertex(int n, int slot) { return slot < n ? Vertex::left(slot + 1) : Vertex::right(2 * n - slot); }

Edge ordered_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

}  // namespace

std::string to_string(Vertex v) { return (v.side == Side::Left ? "L" : "R") + std::to_string(v.index); }

Vertex parse_vertex(std::string_view text) {
    if (text.size() < 2 || (text[0] != 'L' && text[0] != 'R'))
        throw DiagramError(DiagramError::Kind::Malformed, "malformed vertex '" + std::string(text) + "'");
    int index = 0;
    auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), index);
    if (ec != std::errc() || ptr != text.data() + text.size() || index < 1)
        throw DiagramError(DiagramError::Kind::Malformed, "malformed vertex '" + std::string(text) + "'");
    return {text[0] == 'L' ? Side::Left : Side::Right, index};
}

DiagramError::DiagramError(Edge first, Edge second)
    : std::invalid_argument("edges " + edge_text(first) + " and " + edge_text(second) + " cross"),
      kind_(Kind::NonPlanar),
      crossing_(std::make_pair(first, second)) {}

// --- Diagram ----------------------------------------------------------------

std::optional<std::pair<std::pair<int, int>, std::pair<int, int>>> find_crossing(
    int n, std::span<const std::uint8_t> partner) {
    std::array<int, 2 * kMaxColumnHeight> stack{};
    int top = 0;
    for (int s = 0; s < 2 * n; ++s) {
        int p = partner[static_cast<std::size_t>(s)];
        if (p == Diagram::kIsolated) continue;
        if (p > s) {
            stack[static_cast<std::size_t>(top++)] = s;
        } else if (top == 0 || stack[static_cast<std::size_t>(top - 1)] != p) {
            int inner = stack[static_cast<std::size_t>(top - 1)];
            return std::make_pair(std::make_pair(p, s), std::make_pair(inner, int(partner[static_cast<std::size_t>(inner)])));
        } else {
            --top;
        }
    }
    return std::nullopt;
}

Diagram Diagram::from_slots(int n, std::span<const std::uint8_t> partner) {
    check_height(n);
    if (partner.size() < static_cast<std::size_t>(2 * n))
        throw DiagramError(DiagramError::Kind::Malformed, "partner table too short");
    SlotArray table;
    table.fill(kIsolated);
    for (int s = 0; s < 2 * n; ++s) {
        int p = partner[static_cast<std::size_t>(s)];
        if (p == kIsolated) continue;
        if (p == s) throw DiagramError(DiagramError::Kind::SelfEdge, "vertex " + to_string(slot_vertex(n, s)) + " joined to itself");
        if (p >= 2 * n || partner[static_cast<std::size_t>(p)] != s)
            throw DiagramError(DiagramError::Kind::Malformed, "partner table is not an involution");
        table[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(p);
    }
    if (auto crossing = find_crossing(n, partner)) {
        auto as_edge = [n](std::pair<int, int> e) {
            return ordered_edge(slot_vertex(n, e.first), slot_vertex(n, e.second));
        };
        throw DiagramError(as_edge(crossing->first), as_edge(crossing->second));
    }
    return Diagram(n, table);
}

std::optional<Vertex> Diagram::partner(Vertex v) const {
    auto p = partner_slot(slot(v));
    if (p == kIsolated) return std::nullopt;
    return vertex(p);
}

std::vector<Edge> Diagram::edges() const {
    std::vector<Edge> out;
    for (int s = 0; s < 2 * n_; ++s) {
        int p = partner_slot(s);
        if (p != kIsolated && p > s) out.push_back(ordered_edge(vertex(s), vertex(p)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Vertex> Diagram::isolated() const {
    std::vector<Vertex> out;
    for (int s = 0; s < 2 * n_; ++s)
        if (partner_slot(s) == kIsolated) out.push_back(vertex(s));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<int, int>> Diagram::slot_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int s = 0; s < 2 * n_; ++s) {
        int p = partner_slot(s);
        if (p != kIsolated && p > s) out.emplace_back(s, p);
    }
    return out;
}

std::uint64_t Diagram::key() const {
    std::uint64_t word = 0;
    for (int s = 0; s < 2 * n_; ++s) {
        int p = partner_slot(s);
        std::uint64_t code = p == kIsolated ? 0 : (p > s ? 1 : 2);
        word |= code << (2 * s);
    }
    return word;
}

std::strong_ordering operator<=>(const Diagram& a, const Diagram& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    // Walk both sorted slot-edge lists in step without allocating.
    int sa = 0, sb = 0;
    const int m = 2 * a.n_;
    auto next = [m](const Diagram& d, int& s) {
        while (s < m) {
            int p = d.partner_[static_cast<std::size_t>(s)];
            if (p != Diagram::kIsolated && p > s) return s;
            ++s;
        }
        return m;
    };
    while (true) {
        int ea = next(a, sa), eb = next(b, sb);
        if (ea == m || eb == m) return (ea == m) == (eb == m) ? std::strong_ordering::equal
                                       : (ea == m ? std::strong_ordering::less : std::strong_ordering::greater);
        if (auto c = ea <=> eb; c != 0) return c;
        if (auto c = a.partner_[static_cast<std::size_t>(ea)] <=> b.partner_[static_cast<std::size_t>(eb)]; c != 0)
            return c;
        ++sa;
        ++sb;
    }
}

Diagram make_diagram(int n, std::span<const Edge> edges, std::span<const Vertex> isolated) {
    check_height(n);
    std::array<int, 2 * kMaxColumnHeight> seen{};
    std::array<std::uint8_t, 2 * kMaxColumnHeight> partner{};
    partner.fill(Diagram::kIsolated);
    auto slot_of = [n](Vertex v) {
        if (v.index < 1 || v.index > n)
            throw DiagramError(DiagramError::Kind::OutOfRange, "vertex " + to_string(v) + " outside column of height " + std::to_string(n));
        return v.side == Side::Left ? v.index - 1 : 2 * n - v.index;
    };
    auto mark = [&](Vertex v) {
        int s = slot_of(v);
        if (seen[static_cast<std::size_t>(s)]++)
            throw DiagramError(DiagramError::Kind::DuplicateVertex, "vertex " + to_string(v) + " listed twice");
        return s;
    };
    for (const auto& [a, b] : edges) {
        if (a == b) throw DiagramError(DiagramError::Kind::SelfEdge, "vertex " + to_string(a) + " joined to itself");
        int sa = mark(a), sb = mark(b);
        partner[static_cast<std::size_t>(sa)] = static_cast<std::uint8_t>(sb);
        partner[static_cast<std::size_t>(sb)] = static_cast<std::uint8_t>(sa);
    }
    for (Vertex v : isolated) mark(v);
    for (int s = 0; s < 2 * n; ++s)
        if (!seen[static_cast<std::size_t>(s)])
            throw DiagramError(DiagramError::Kind::Unassigned, "vertex " + to_string(slot_vertex(n, s)) + " is neither matched nor isolated");
    return Diagram::from_slots(n, std::span<const std::uint8_t>(partner.data(), static_cast<std::size_t>(2 * n)));
}

Diagram make_diagram(int n, std::initializer_list<Edge> edges) {
    check_height(n);
    std::vector<bool> used(static_cast<std::size_t>(2 * n));
    for (const auto& [a, b] : edges)
        for (Vertex v : {a, b})
            if (v.index >= 1 && v.index <= n) used[static_cast<std::size_t>(v.side == Side::Left ? v.index - 1 : n + v.index - 1)] = true;
    std::vector<Vertex> isolated;
    for (int i = 1; i <= n; ++i) {
        if (!used[static_cast<std::size_t>(i - 1)]) isolated.push_back(Vertex::left(i));
        if (!used[static_cast<std::size_t>(n + i - 1)]) isolated.push_back(Vertex::right(i));
    }
    std::vector<Edge> list(edges);
    return make_diagram(n, list, isolated);
}

std::string to_text(const Diagram& d) {
    std::string out = "D" + std::to_string(d.n()) + ":";
    for (const auto& e : d.edges()) out += edge_text(e);
    return out;
}

Diagram parse_diagram(std::string_view text) {
    auto fail = [&](const std::string& why) {
        return DiagramError(DiagramError::Kind::Malformed, "malformed diagram '" + std::string(text) + "': " + why);
    };
    if (text.size() < 3 || text[0] != 'D') throw fail("expected D<n>:");
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw fail("missing ':'");
    int n = 0;
    auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + colon, n);
    if (ec != std::errc() || ptr != text.data() + colon) throw fail("bad column height");
    check_height(n);

    std::vector<Edge> edges;
    std::size_t pos = colon + 1;
    while (pos < text.size()) {
        if (text[pos] != '(') throw fail("expected '('");
        auto comma = text.find(',', pos);
        auto close = text.find(')', pos);
        if (comma == std::string_view::npos || close == std::string_view::npos || comma > close) throw fail("bad pair");
        edges.emplace_back(parse_vertex(text.substr(pos + 1, comma - pos - 1)),
                           parse_vertex(text.substr(comma + 1, close - comma - 1)));
        pos = close + 1;
    }
    std::vector<bool> used(static_cast<std::size_t>(2 * n));
    for (const auto& [a, b] : edges)
        for (Vertex v : {a, b})
            if (v.index >= 1 && v.index <= n) used[static_cast<std::size_t>(v.side == Side::Left ? v.index - 1 : n + v.index - 1)] = true;
    std::vector<Vertex> isolated;
    for (int i = 1; i <= n; ++i) {
        if (!used[static_cast<std::size_t>(i - 1)]) isolated.push_back(Vertex::left(i));
        if (!used[static_cast<std::size_t>(n + i - 1)]) isolated.push_back(Vertex::right(i));
    }
    return make_diagram(n, edges, isolated);
}

int propagating_count(const Diagram& d) {
    int count = 0;
    for (int s = 0; s < d.n(); ++s) {
        int p = d.partner_slot(s);
        if (p != Diagram::kIsolated && p >= d.n()) ++count;
    }
    return count;
}

std::vector<Diagram> enumerate_basis(int n) {
    check_height(n);
    std::vector<Diagram> out;
    Diagram::SlotArray partner;
    partner.fill(Diagram::kIsolated);
    std::array<int, 2 * kMaxColumnHeight> stack{};
    const int m = 2 * n;

    // Motzkin words: each slot is isolated, opens an edge, or closes the
    // innermost open edge.
    auto recurse = [&](auto&& self, int s, int depth) -> void {
        if (depth > m - s) return;
        if (s == m) {
            out.push_back(Diagram::from_slots_unchecked(n, partner));
            return;
        }
        partner[static_cast<std::size_t>(s)] = Diagram::kIsolated;
        self(self, s + 1, depth);
        stack[static_cast<std::size_t>(depth)] = s;
        self(self, s + 1, depth + 1);
        if (depth > 0) {
            int open = stack[static_cast<std::size_t>(depth - 1)];
            partner[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(open);
            partner[static_cast<std::size_t>(open)] = static_cast<std::uint8_t>(s);
            self(self, s + 1, depth - 1);
            partner[static_cast<std::size_t>(open)] = Diagram::kIsolated;
            stack[static_cast<std::size_t>(depth - 1)] = open;
        }
        partner[static_cast<std::size_t>(s)] = Diagram::kIsolated;
    };
    recurse(recurse, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

Diagram all_propagating(int n) {
    check_height(n);
    Diagram::SlotArray partner;
    partner.fill(Diagram::kIsolated);
    for (int i = 0; i < n; ++i) {
        partner[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(2 * n - 1 - i);
        partner[static_cast<std::size_t>(2 * n - 1 - i)] = static_cast<std::uint8_t>(i);
    }
    return Diagram::from_slots_unchecked(n, partner);
}

Diagram empty_diagram(int n) {
    check_height(n);
    Diagram::SlotArray partner;
    partner.fill(Diagram::kIsolated);
    return Diagram::from_slots_unchecked(n, partner);
}

std::string to_string(const MultiplicationOutcome& outcome) {
    if (outcome.is_annihilated()) return "0";
    return "delta^" + std::to_string(outcome.loops()) + " * " + to_text(outcome.diagram());
}

// --- DoubleDiagram ----------------------------------------------------------
//
// Vertex ids: left column 0..n-1, middle column n..2n-1, right column
// 2n..3n-1. via_first_ holds the edge contributed by the first factor,
// via_second_ the edge contributed by the second.

DoubleDiagram::DoubleDiagram(const Diagram& first, const Diagram& second) : n_(first.n()) {
    if (first.n() != second.n())
        throw DiagramError(DiagramError::Kind::SizeMismatch, "cannot multiply diagrams of heights " +
                                                                 std::to_string(first.n()) + " and " + std::to_string(second.n()));
    via_first_.fill(kNone);
    via_second_.fill(kNone);
    const int n = n_;
    // A slot of the first factor: left i -> id i, right R_k -> middle n+k-1.
    auto first_id = [n](int slot) { return slot < n ? slot : n + (2 * n - slot) - 1; };
    // A slot of the second factor: left L_k -> middle n+k-1, right R_k -> 2n+k-1.
    auto second_id = [n](int slot) { return slot < n ? n + slot : 2 * n + (2 * n - slot) - 1; };
    for (int s = 0; s < 2 * n; ++s) {
        int p = first.partner_slot(s);
        if (p != Diagram::kIsolated) via_first_[static_cast<std::size_t>(first_id(s))] = static_cast<std::uint8_t>(first_id(p));
        p = second.partner_slot(s);
        if (p != Diagram::kIsolated) via_second_[static_cast<std::size_t>(second_id(s))] = static_cast<std::uint8_t>(second_id(p));
    }
}

template <class Sink>
bool DoubleDiagram::walk(Sink&& sink, unsigned& loops, Diagram::SlotArray& result) const {
    const int n = n_;
    const auto& first = via_first_;
    const auto& second = via_second_;
    auto column = [n](int id) {
        return id < n ? Column::Left : (id < 2 * n ? Column::Middle : Column::Right);
    };
    auto endpoint = [&](int id) {
        return Endpoint{column(id), id < n ? id + 1 : (id < 2 * n ? id - n + 1 : id - 2 * n + 1)};
    };
    // Result slot for an outer vertex id.
    auto result_slot = [n](int id) { return id < n ? id : 2 * n - (id - 2 * n) - 1; };

    std::uint64_t seen = 0;
    auto mark = [&seen](int id) { seen |= std::uint64_t{1} << id; };
    auto marked = [&seen](int id) { return (seen >> id) & 1u; };
    bool bad = false;
    result.fill(Diagram::kIsolated);
    loops = 0;

    // Components reaching an outer column.
    for (int id = 0; id < 3 * n; ++id) {
        if (column(id) == Column::Middle || marked(id)) continue;
        mark(id);
        bool use_first = column(id) == Column::Left;
        int cur = id;
        int edges = 0;
        if ((use_first ? first : second)[static_cast<std::size_t>(cur)] == kNone) continue;
        while (true) {
            cur = (use_first ? first : second)[static_cast<std::size_t>(cur)];
            ++edges;
            mark(cur);
            if (column(cur) != Column::Middle) break;
            use_first = !use_first;
            if ((use_first ? first : second)[static_cast<std::size_t>(cur)] == kNone) break;
        }
        if (column(cur) == Column::Middle) {
            bad = true;
            sink(Component{Component::Kind::Floating, endpoint(id), endpoint(cur), edges});
        } else {
            int a = result_slot(id), b = result_slot(cur);
            result[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(b);
            result[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(a);
            sink(Component{Component::Kind::Through, endpoint(id), endpoint(cur), edges});
        }
    }
    // Paths confined to the middle column: start from their degree-one ends.
    for (int id = n; id < 2 * n; ++id) {
        if (marked(id)) continue;
        bool has_first = first[static_cast<std::size_t>(id)] != kNone;
        bool has_second = second[static_cast<std::size_t>(id)] != kNone;
        if (has_first == has_second) continue;
        mark(id);
        bool use_first = has_first;
        int cur = id;
        int edges = 0;
        while (true) {
            cur = (use_first ? first : second)[static_cast<std::size_t>(cur)];
            ++edges;
            mark(cur);
            use_first = !use_first;
            if ((use_first ? first : second)[static_cast<std::size_t>(cur)] == kNone) break;
        }
        bad = true;
        sink(Component{Component::Kind::Floating, endpoint(id), endpoint(cur), edges});
    }
    // What is left with edges lies on closed loops.
    for (int id = n; id < 2 * n; ++id) {
        if (marked(id) || first[static_cast<std::size_t>(id)] == kNone) continue;
        int cur = id;
        bool use_first = true;
        int edges = 0;
        do {
            mark(cur);
            cur = (use_first ? first : second)[static_cast<std::size_t>(cur)];
            use_first = !use_first;
            ++edges;
        } while (cur != id);
        ++loops;
        sink(Component{Component::Kind::Loop, std::nullopt, std::nullopt, edges});
    }
    return !bad;
}

std::vector<DoubleDiagram::Component> DoubleDiagram::components() const {
    std::vector<Component> out;
    unsigned loops = 0;
    Diagram::SlotArray result;
    walk([&out](Component c) { out.push_back(c); }, loops, result);
    return out;
}

MultiplicationOutcome DoubleDiagram::resolve() const {
    unsigned loops = 0;
    Diagram::SlotArray result;
    if (!walk([](const Component&) {}, loops, result)) return MultiplicationOutcome::annihilated();
    return MultiplicationOutcome::product(loops, Diagram::from_slots_unchecked(n_, result));
}

MultiplicationOutcome multiply_diagrams(const Diagram& first, const Diagram& second) {
    return DoubleDiagram(first, second).resolve();
}

}  // namespace dtl

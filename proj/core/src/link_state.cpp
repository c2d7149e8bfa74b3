#include "dtl/link_state.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace dtl {

LinkState::LinkState(std::vector<std::int8_t> state) : state_(std::move(state)) { validate(); }

void LinkState::validate() const {
    const int n = this->n();
    if (n < 1 || n > kMaxColumnHeight) throw LinkStateError(LinkStateError::Kind::Malformed, "link state height out of range");
    for (int v = 0; v < n; ++v) {
        int p = state_[static_cast<std::size_t>(v)];
        if (p >= 0 && (p >= n || p == v || state_[static_cast<std::size_t>(p)] != v))
            throw LinkStateError(LinkStateError::Kind::Malformed, "cup table is not a fixed-point-free involution");
    }
    for (int v = 0; v < n; ++v) {
        int p = state_[static_cast<std::size_t>(v)];
        if (p <= v) continue;
        for (int w = v + 1; w < p; ++w) {
            int q = state_[static_cast<std::size_t>(w)];
            if (q == kDefect)
                throw LinkStateError(LinkStateError::Kind::EnclosedDefect,
                                     "cup (" + std::to_string(v + 1) + "," + std::to_string(p + 1) + ") encloses defect " +
                                         std::to_string(w + 1));
            if (q >= 0 && (q < v || q > p))
                throw LinkStateError(LinkStateError::Kind::CrossingCups, "cups cross");
        }
    }
}

LinkState LinkState::all_defects(int n) { return LinkState(std::vector<std::int8_t>(static_cast<std::size_t>(n), kDefect)); }

LinkState LinkState::all_isolated(int n) {
    return LinkState(std::vector<std::int8_t>(static_cast<std::size_t>(n), kIsolated));
}

LinkState LinkState::parse(std::string_view text) {
    std::vector<std::int8_t> state(text.size(), kIsolated);
    std::vector<int> open;
    for (std::size_t v = 0; v < text.size(); ++v) {
        switch (text[v]) {
            case 'D': state[v] = kDefect; break;
            case 'O': state[v] = kIsolated; break;
            case '(': open.push_back(static_cast<int>(v)); break;
            case ')': {
                if (open.empty())
                    throw LinkStateError(LinkStateError::Kind::Malformed, "unbalanced ')' in '" + std::string(text) + "'");
                int a = open.back();
                open.pop_back();
                state[static_cast<std::size_t>(a)] = static_cast<std::int8_t>(v);
                state[v] = static_cast<std::int8_t>(a);
                break;
            }
            default:
                throw LinkStateError(LinkStateError::Kind::Malformed, "unexpected character in link state '" + std::string(text) + "'");
        }
    }
    if (!open.empty()) throw LinkStateError(LinkStateError::Kind::Malformed, "unbalanced '(' in '" + std::string(text) + "'");
    return LinkState(std::move(state));
}

LinkState::Kind LinkState::kind(int v) const {
    int s = state_.at(static_cast<std::size_t>(v - 1));
    return s == kDefect ? Kind::Defect : (s == kIsolated ? Kind::Isolated : Kind::Cup);
}

std::optional<int> LinkState::cup_partner(int v) const {
    int s = state_.at(static_cast<std::size_t>(v - 1));
    if (s < 0) return std::nullopt;
    return s + 1;
}

std::vector<int> LinkState::defects() const {
    std::vector<int> out;
    for (int v = 1; v <= n(); ++v)
        if (is_defect(v)) out.push_back(v);
    return out;
}

int LinkState::defect_count() const {
    return static_cast<int>(std::count(state_.begin(), state_.end(), kDefect));
}

std::string LinkState::to_string() const {
    std::string out;
    for (int v = 0; v < n(); ++v) {
        int s = state_[static_cast<std::size_t>(v)];
        out.push_back(s == kDefect ? 'D' : s == kIsolated ? 'O' : (s > v ? '(' : ')'));
    }
    return out;
}

LinkState right_link_state(const Diagram& d) {
    const int n = d.n();
    std::vector<std::int8_t> state(static_cast<std::size_t>(n), LinkState::kIsolated);
    for (int j = 1; j <= n; ++j) {
        int p = d.partner_slot(2 * n - j);
        if (p == Diagram::kIsolated) continue;
        state[static_cast<std::size_t>(j - 1)] = p < n ? LinkState::kDefect : static_cast<std::int8_t>(2 * n - p - 1);
    }
    return LinkState(std::move(state));
}

LinkState left_link_state(const Diagram& d) {
    const int n = d.n();
    std::vector<std::int8_t> state(static_cast<std::size_t>(n), LinkState::kIsolated);
    for (int i = 0; i < n; ++i) {
        int p = d.partner_slot(i);
        if (p == Diagram::kIsolated) continue;
        state[static_cast<std::size_t>(i)] = p >= n ? LinkState::kDefect : static_cast<std::int8_t>(p);
    }
    return LinkState(std::move(state));
}

std::vector<LinkState> enumerate_link_states(int n) {
    if (n < 1 || n > kMaxColumnHeight) throw LinkStateError(LinkStateError::Kind::Malformed, "link state height out of range");
    std::vector<LinkState> out;
    std::vector<std::int8_t> state(static_cast<std::size_t>(n), LinkState::kIsolated);
    std::vector<int> open;
    auto recurse = [&](auto&& self, int v) -> void {
        if (static_cast<int>(open.size()) > n - v) return;
        if (v == n) {
            out.push_back(LinkState(state));
            return;
        }
        state[static_cast<std::size_t>(v)] = LinkState::kIsolated;
        self(self, v + 1);
        if (open.empty()) {
            state[static_cast<std::size_t>(v)] = LinkState::kDefect;
            self(self, v + 1);
        }
        open.push_back(v);
        self(self, v + 1);
        open.pop_back();
        if (!open.empty()) {
            int a = open.back();
            open.pop_back();
            state[static_cast<std::size_t>(a)] = static_cast<std::int8_t>(v);
            state[static_cast<std::size_t>(v)] = static_cast<std::int8_t>(a);
            self(self, v + 1);
            state[static_cast<std::size_t>(a)] = LinkState::kIsolated;
            open.push_back(a);
        }
        state[static_cast<std::size_t>(v)] = LinkState::kIsolated;
    };
    recurse(recurse, 0);
    std::sort(out.begin(), out.end());
    return out;
}

LinkState splice(const LinkState& p, int i, int k) {
    auto invalid = [](const std::string& why, int vertex) {
        return LinkStateError(LinkStateError::Kind::InvalidSplice, why, vertex);
    };
    if (i < 1 || k > p.n() || i >= k)
        throw invalid("splice needs 1 <= i < k <= n, got (" + std::to_string(i) + "," + std::to_string(k) + ")", i);
    if (!p.is_defect(i)) throw invalid("vertex " + std::to_string(i) + " is not a defect", i);
    if (!p.is_defect(k)) throw invalid("vertex " + std::to_string(k) + " is not a defect", k);
    for (int j = i + 1; j < k; ++j)
        if (p.is_defect(j)) throw invalid("defect at vertex " + std::to_string(j) + " lies between the spliced defects", j);
    auto state = p.state_;
    state[static_cast<std::size_t>(i - 1)] = static_cast<std::int8_t>(k - 1);
    state[static_cast<std::size_t>(k - 1)] = static_cast<std::int8_t>(i - 1);
    return LinkState(std::move(state));
}

std::vector<LinkState> splice_closure(const LinkState& p) {
    std::set<LinkState> seen{p};
    std::deque<LinkState> queue{p};
    while (!queue.empty()) {
        LinkState q = queue.front();
        queue.pop_front();
        auto defects = q.defects();
        // Two defects can be spliced exactly when no defect lies between them.
        for (std::size_t t = 0; t + 1 < defects.size(); ++t) {
            LinkState next = splice(q, defects[t], defects[t + 1]);
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return {seen.begin(), seen.end()};
}

// --- SesquiDiagram ----------------------------------------------------------

SesquiDiagram::SesquiDiagram(LinkState p, Diagram d) : p_(std::move(p)), d_(d) {
    if (p_.n() != d_.n())
        throw DiagramError(DiagramError::Kind::SizeMismatch, "link state and diagram heights differ");
}

std::vector<SesquiDiagram::GluedEdge> SesquiDiagram::glued_edges() const {
    std::vector<GluedEdge> out;
    for (int v = 1; v <= p_.n(); ++v) {
        if (auto w = p_.cup_partner(v); w && *w > v) out.push_back({GluedEdge::Origin::LinkState, v, *w});
        if (auto w = d_.partner(Vertex::left(v)); w && w->side == Side::Left && w->index > v)
            out.push_back({GluedEdge::Origin::Diagram, v, w->index});
    }
    std::sort(out.begin(), out.end());
    return out;
}

SesquiDiagram::DefectPath SesquiDiagram::trace_from_defect(int j) const {
    if (!p_.is_defect(j))
        throw LinkStateError(LinkStateError::Kind::Malformed, "vertex " + std::to_string(j) + " is not a defect of the link state");
    DefectPath path{j, false, j, {}};
    int cur = j;
    // At j' the link-state edge is the hanging defect, so leave through d.
    bool via_diagram = true;
    while (true) {
        if (via_diagram) {
            auto next = d_.partner(Vertex::left(cur));
            if (!next) break;
            if (next->side == Side::Right) {
                path.reaches_right = true;
                path.end = next->index;
                return path;
            }
            path.glued_edges.push_back({GluedEdge::Origin::Diagram, std::min(cur, next->index), std::max(cur, next->index)});
            cur = next->index;
        } else {
            auto next = p_.cup_partner(cur);
            if (!next) break;
            path.glued_edges.push_back({GluedEdge::Origin::LinkState, std::min(cur, *next), std::max(cur, *next)});
            cur = *next;
        }
        via_diagram = !via_diagram;
    }
    path.end = cur;
    return path;
}

}  // namespace dtl

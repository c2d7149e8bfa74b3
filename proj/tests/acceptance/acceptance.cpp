// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails or runs past its time budget.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "cli/verify.hpp"
#include "dtl/algebra.hpp"
#include "dtl/bar_complex.hpp"
#include "dtl/classical_tl.hpp"
#include "dtl/idempotents.hpp"
#include "dtl/ideals.hpp"
#include "dtl/mayer_vietoris.hpp"
#include "oracles.hpp"

using namespace dtl;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    // Records the first few failures; later ones only flip the verdict.
    void expect(bool condition, const std::string& what) {
        if (condition) return;
        if (ok || failures < 3) detail << (failures ? "; " : "") << what;
        ok = false;
        ++failures;
    }

private:
    int failures = 0;
};

const Ring& zdelta() {
    static const Ring ring = Ring::polynomial();
    return ring;
}

AlgebraElement basis(const Diagram& d) { return AlgebraElement::basis_element(zdelta(), d); }

std::vector<long> betti(const HomologyResult& h, int top) {
    std::vector<long> out;
    for (int p = 0; p <= top; ++p) out.push_back(static_cast<long>(h.at(p).rank) + static_cast<long>(h.at(p).torsion.size()));
    return out;
}

std::string tag(int n, const Ring& ring) { return "n=" + std::to_string(n) + " " + ring.descriptor() + " delta=" + ring.delta_descriptor(); }

std::vector<Ring> rings_with_deltas(const std::vector<std::string>& descriptors, const std::vector<long>& deltas) {
    std::vector<Ring> out;
    for (const auto& r : descriptors)
        for (long d : deltas) out.push_back(Ring::parse(r, std::to_string(d)));
    return out;
}

const Cover& cover(int n) {
    static std::map<int, Cover> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_cover(n)).first;
    return it->second;
}

void basis_counts(Outcome& out) {
    const long expected[] = {2, 9, 51, 323, 2188};
    auto motzkin = testing::motzkin_numbers(11);
    for (int n = 1; n <= 5; ++n) {
        auto b = enumerate_basis(n);
        out.expect(static_cast<long>(b.size()) == expected[n - 1], "n=" + std::to_string(n) + " size " + std::to_string(b.size()));
        out.expect(static_cast<long>(b.size()) == motzkin[static_cast<std::size_t>(2 * n)], "Motzkin mismatch at n=" + std::to_string(n));
        auto oracle = testing::brute_force_matchings(n);
        std::set<std::vector<std::pair<int, int>>> ours;
        for (const auto& d : b) ours.insert(testing::chords_of(d));
        out.expect(ours == oracle, "brute-force matchings differ at n=" + std::to_string(n));
    }
    out.detail << "sizes 2, 9, 51, 323, 2188";
}

void algebra_axioms(Outcome& out) {
    std::size_t triples = 0;
    const auto& b2 = DiagramBasis::get(2).diagrams();
    for (const auto& x : b2)
        for (const auto& y : b2)
            for (const auto& z : b2) {
                out.expect((basis(x) * basis(y)) * basis(z) == basis(x) * (basis(y) * basis(z)), "associativity at n=2");
                ++triples;
            }
    std::mt19937_64 rng(20240101);
    for (int n = 3; n <= 4; ++n) {
        const auto& b = DiagramBasis::get(n);
        std::uniform_int_distribution<std::size_t> pick(0, b.size() - 1);
        for (int t = 0; t < 10000; ++t) {
            auto x = basis(b[pick(rng)]), y = basis(b[pick(rng)]), z = basis(b[pick(rng)]);
            out.expect((x * y) * z == x * (y * z), "associativity at n=" + std::to_string(n));
            ++triples;
        }
    }
    for (int n = 1; n <= 4; ++n) {
        auto one = identity_element(n, zdelta());
        out.expect(one * one == one, "identity not idempotent at n=" + std::to_string(n));
        for (const auto& d : DiagramBasis::get(n).diagrams())
            out.expect(one * basis(d) == basis(d) && basis(d) * one == basis(d), "identity not a unit at n=" + std::to_string(n));
    }
    out.detail << triples << " triples";
}

void worked_examples(Outcome& out) {
    auto D = [](const char* text) { return parse_diagram(text); };
    const Diagram u = D("D2:(L1,L2)(R1,R2)");
    out.expect(multiply_diagrams(D("D2:(L1,R1)(L2,R2)"), D("D2:(L1,R1)")).is_annihilated(), "first annihilation");
    out.expect(multiply_diagrams(u, D("D2:(R1,R2)")).is_annihilated(), "second annihilation");
    auto product = multiply_diagrams(D("D2:(L2,R1)"), D("D2:(L1,R2)"));
    out.expect(!product.is_annihilated() && product.loops() == 0 && product.diagram() == D("D2:(L2,R2)"), "diagram product");
    auto loop = multiply_diagrams(u, u);
    out.expect(to_string(loop) == "delta^1 * D2:(L1,L2)(R1,R2)", "loop product gave " + to_string(loop));

    auto one = identity_element(2, zdelta());
    AlgebraElement expected(zdelta(), 2);
    for (const char* t : {"D2:(L1,R1)(L2,R2)", "D2:(L1,R1)", "D2:(L2,R2)", "D2:"}) expected.add_term(D(t), zdelta().one());
    out.expect(one == expected, "identity of dTL_2 is not the four-term sum");
    out.detail << "4 composites, 4-term identity";
}

void cover_and_intersections(Outcome& out) {
    for (int n = 1; n <= 5; ++n) {
        const std::string at = " at n=" + std::to_string(n);
        std::vector<IdealBasis> ks, ls;
        std::set<Diagram> united;
        std::size_t k_total = 0;
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::set<int> S;
            for (int j = 0; j < n; ++j)
                if (mask & (1u << j)) S.insert(j + 1);
            ks.push_back(ideal_K(n, S));
            k_total += ks.back().size();
        }
        for (int i = 1; i < n; ++i) ls.push_back(ideal_L(n, i));
        std::set<Diagram> k_union;
        for (const auto& K : ks) k_union.insert(K.diagrams().begin(), K.diagrams().end());
        out.expect(k_union.size() == k_total, "K ideals overlap" + at);
        united = k_union;
        for (const auto& L : ls) united.insert(L.diagrams().begin(), L.diagrams().end());
        auto I = augmentation_ideal_basis(n);
        out.expect(united == std::set<Diagram>(I.diagrams().begin(), I.diagrams().end()), "union is not I" + at);
        for (const auto& K : ks)
            for (const auto& L : ls) out.expect(intersect({K, L}).empty(), K.label() + " meets " + L.label() + at);
        for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
            std::vector<IdealBasis> parts;
            for (int i = 0; i < n - 1; ++i)
                if (mask & (1u << i)) parts.push_back(ls[static_cast<std::size_t>(i)]);
            const bool consecutive = (mask & (mask >> 1)) != 0;
            out.expect(intersect(parts).empty() == consecutive, "L intersection emptiness" + at);
        }
    }
    out.detail << "n <= 5";
}

void idempotent_properties(Outcome& out) {
    std::size_t states = 0, pairs = 0;
    for (int n = 1; n <= 5; ++n) {
        for (const auto& p : enumerate_link_states(n)) {
            if (p.defect_count() == 0) continue;
            ++states;
            const std::string at = " for " + p.to_string();
            Diagram e;
            try {
                e = find_idempotent(p);
            } catch (const std::exception& ex) {
                out.expect(false, "no idempotent" + at + ": " + ex.what());
                continue;
            }
            out.expect(check_conditions(p, e).all(), "conditions fail" + at);
            const auto J = ideal_J(p);
            const auto E = basis(e);
            for (const auto& y : J.diagrams()) out.expect(basis(y) * E == basis(y), "y e != y" + at);
            out.expect(E * E == E, "e not idempotent" + at);
        }
    }
    for (int n = 1; n <= 4; ++n)
        for (const auto& p : enumerate_link_states(n)) {
            if (p.defect_count() == 0) continue;
            const auto J = ideal_J(p);
            for (const auto& e : DiagramBasis::get(n).diagrams()) {
                if (!check_conditions(p, e).all()) continue;
                ++pairs;
                out.expect(verify_unit(J, e), "conditions without unit for " + p.to_string() + ", " + to_text(e));
            }
        }
    out.detail << states << " link states, " << pairs << " (p, e) pairs meeting the conditions";
}

void principality(Outcome& out) {
    std::size_t certified = 0;
    for (int n = 1; n <= 5; ++n) {
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::set<int> S;
            for (int j = 0; j < n; ++j)
                if (mask & (1u << j)) S.insert(j + 1);
            auto K = ideal_K(n, S);
            // With S everything, the link state is all isolated and e is empty.
            auto q = k_link_state(n, S);
            auto cert = assert_idempotent_generator(K, q.defect_count() > 0 ? find_idempotent(q) : empty_diagram(n));
            out.expect(cert.passed(), K.label() + ": " + cert.failure());
            ++certified;
        }
        for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
            if (mask & (mask >> 1)) continue;
            std::set<int> U;
            std::vector<IdealBasis> parts;
            for (int i = 0; i < n - 1; ++i)
                if (mask & (1u << i)) U.insert(i + 1), parts.push_back(ideal_L(n, i + 1));
            auto J = intersect(parts);
            auto p = l_link_state(n, U);
            if (p.defect_count() == 0) continue;  // the cup module, below
            auto cert = assert_idempotent_generator(J, find_idempotent(p));
            out.expect(cert.passed(), J.label() + ": " + cert.failure());
            ++certified;
        }
    }
    for (int n : {2, 4, 6}) {
        auto cert = certify_cup_module(n);
        out.expect(cert.passed(), "Cup(" + std::to_string(n) + "): " + cert.failure());
        ++certified;
    }
    out.detail << certified << " ideals certified";
}

void mv_complex(Outcome& out) {
    std::size_t runs = 0;
    const auto rings = rings_with_deltas({"Z", "Fp:2", "Fp:3", "Fp:5", "Q"}, {0, 1, -1, 2});
    for (int n = 1; n <= 5; ++n) {
        auto mv = build_mv_complex(cover(n), zdelta());
        out.expect(!mv.complex.d2_violation(), "d^2 != 0 at n=" + std::to_string(n));
        for (const auto& ring : rings) {
            auto h = verify_acyclic(mv.complex, ring);
            out.expect(h.vanishes() && h.degrees.count(-1), "homology at " + tag(n, ring));
            ++runs;
        }
    }
    out.detail << runs << " acyclicity checks";
}

void trivial_module_functors(Outcome& out) {
    std::size_t runs = 0;
    for (int n = 1; n <= 5; ++n)
        for (const auto& ring : rings_with_deltas({"Z", "Fp:2", "Fp:5"}, {0, 1, -1, 2})) {
            auto mv = build_mv_complex(cover(n), ring);
            auto tor = tensor_trivial(mv.resolution());
            auto ext = hom_trivial(mv.resolution());
            for (const auto* h : {&tor.homology, &ext.homology}) {
                bool ok = h->at(0).rank == 1 && h->at(0).torsion.empty();
                for (const auto& [p, d] : h->degrees)
                    if (p != 0) ok = ok && d.is_zero();
                out.expect(ok, (h == &tor.homology ? "Tor at " : "Ext at ") + tag(n, ring));
            }
            ++runs;
        }
    out.detail << runs << " (n, ring, delta) tuples";
}

void bar_agreement(Outcome& out) {
    std::size_t runs = 0;
    for (auto [n, top] : {std::pair{2, 4}, std::pair{3, 2}})
        for (const auto& ring : rings_with_deltas({"Q", "Fp:2"}, {0, 1, -1})) {
            auto mv = build_mv_complex(cover(n), ring);
            auto tor = tensor_trivial(mv.resolution()).homology;
            auto bar = bar_tor(n, ring, top);
            bool same = true;
            for (int p = 0; p <= top; ++p) same = same && bar.at(p) == tor.at(p);
            out.expect(same, "bar and MV differ at " + tag(n, ring));
            ++runs;
        }
    out.detail << runs << " comparisons";
}

void tl_contrast(Outcome& out) {
    const Ring F2 = Ring::prime_field(2, 0);
    auto tl = betti(tl_bar_tor(2, F2, 4), 4);
    auto dilute = betti(bar_tor(2, F2, 4), 4);
    auto show = [](const std::vector<long>& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + ")";
    };
    out.expect(tl == std::vector<long>{1, 1, 1, 1, 1}, "TL_2 gave " + show(tl));
    out.expect(dilute == std::vector<long>{1, 0, 0, 0, 0}, "dTL_2 gave " + show(dilute));
    out.detail << "TL_2 " << show(tl) << ", dTL_2 " << show(dilute);
}

void odd_shape_flag(Outcome& out) {
    cli::RunConfig config;
    config.n_min = config.n_max = 5;
    config.rings = {"Fp:2"};
    config.deltas = {1};
    config.max_bar_degree = 1;
    auto report = cli::run_verify_theorem(config);
    const cli::CheckRecord* shape = nullptr;
    for (const auto& r : report.records)
        if (r.name == "display_shape") shape = &r;
    out.expect(shape != nullptr, "no display_shape record");
    if (!shape) return;
    const auto& payload = shape->payload;
    out.expect(payload.value("generic_top", 0) == 2, "generic top is not 2");
    out.expect(payload.contains("note"), "note missing from the record");
    out.expect(!report.notes.empty(), "note missing from the report");
    auto mv = build_mv_complex(cover(5), zdelta());
    out.expect(mv.complex.rank(2) > 0, "degree 2 term is zero");
    out.detail << "degree 2 rank " << mv.complex.rank(2);
}

struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"basis counts", 10, basis_counts},
        {"algebra axioms", 120, algebra_axioms},
        {"worked examples", 60, worked_examples},
        {"cover and intersections", 60, cover_and_intersections},
        {"idempotent properties", 600, idempotent_properties},
        {"principality certificates", 600, principality},
        {"Mayer-Vietoris complex", 600, mv_complex},
        {"Tor and Ext of the trivial module", 600, trivial_module_functors},
        {"bar complex agreement", 300, bar_agreement},
        {"classical contrast", 60, tl_contrast},
        {"odd-n shape flag", 60, odd_shape_flag},
    };
    const auto suite_start = std::chrono::steady_clock::now();
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(out);
        } catch (const std::exception& e) {
            out.expect(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.budget_seconds) out.expect(false, "over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget");
        failed += !out.ok;
        std::cout << (out.ok ? "PASS" : "FAIL") << " [" << std::setw(2) << i + 1 << "] " << c.name << " (" << std::fixed
                  << std::setprecision(2) << seconds << " s): " << out.detail.str() << std::endl;
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
    std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size() << " criteria passed in " << std::fixed
              << std::setprecision(1) << total << " s" << std::endl;
    return failed ? 1 : 0;
}

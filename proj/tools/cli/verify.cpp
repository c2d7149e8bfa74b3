#include "verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "dtl/algebra.hpp"
#include "dtl/bar_complex.hpp"
#include "dtl/classical_tl.hpp"
#include "dtl/mayer_vietoris.hpp"
#include "json_io.hpp"

#ifndef DTL_VERSION
#define DTL_VERSION "0.0.0"
#endif

namespace dtl::cli {

std::string tool_version() { return DTL_VERSION; }

bool Report::passed() const {
    return std::none_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.verdict == "fail"; });
}

nlohmann::json Report::to_json() const {
    auto sorted = records;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
    json checks = json::array();
    for (const auto& r : sorted)
        checks.push_back({{"name", r.name},
                          {"parameters", r.parameters},
                          {"verdict", r.verdict},
                          {"payload", r.payload},
                          {"wall_time_ms", r.wall_time_ms}});
    return {{"schema_version", kSchemaVersion},
            {"tool_version", tool_version},
            {"config", config.to_json()},
            {"passed", passed()},
            {"notes", notes},
            {"checks", checks}};
}

Report Report::from_json(const nlohmann::json& j) {
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw std::invalid_argument("unsupported report schema version");
    Report r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.config = RunConfig::from_json(j.at("config"));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    for (const auto& c : j.at("checks"))
        r.records.push_back({c.at("name").get<std::string>(), c.at("parameters"), c.at("verdict").get<std::string>(),
                             c.at("payload"), c.at("wall_time_ms").get<double>()});
    return r;
}

namespace {

// Collects records from any thread.
class Recorder {
public:
    explicit Recorder(Report& report) : report_(report) {}

    // Runs body, which fills the payload and returns the verdict. Exceptions
    // become failures carrying the message.
    template <class Body>
    void check(const std::string& name, json parameters, Body&& body) {
        CheckRecord rec{name, std::move(parameters), "fail", json::object(), 0};
        auto start = std::chrono::steady_clock::now();
        try {
            rec.verdict = body(rec.payload);
        } catch (const std::exception& e) {
            rec.verdict = "fail";
            rec.payload["error"] = e.what();
        }
        rec.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        std::lock_guard lock(mutex_);
        report_.records.push_back(std::move(rec));
    }

    void note(const std::string& text) {
        std::lock_guard lock(mutex_);
        report_.notes.push_back(text);
    }

private:
    Report& report_;
    std::mutex mutex_;
};

std::string verdict(bool ok) { return ok ? "pass" : "fail"; }

json ring_parameters(int n, const Ring& ring) {
    return {{"n", n}, {"ring", ring.descriptor()}, {"delta", ring.delta_descriptor()}};
}

// Largest degree <= wanted whose bar complex stays inside the size guard.
int bar_degree_within_guard(int n, int wanted) {
    const std::size_t dim = DiagramBasis::get(n).size() - 1;
    for (int p = wanted; p >= 1; --p) {
        long double cols = 1;
        for (int i = 0; i <= p; ++i) cols *= static_cast<long double>(dim);
        if (cols * std::max(1, p) <= static_cast<long double>(kBarEntryLimit)) return p;
    }
    return 0;
}

// Runs the tasks on up to `workers` threads, largest first as given.
void run_pool(std::vector<std::function<void()>>& tasks, int workers) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) tasks[i]();
    };
    const auto count = std::min<std::size_t>(tasks.size(), static_cast<std::size_t>(std::max(1, workers)));
    std::vector<std::thread> threads;
    for (std::size_t t = 1; t < count; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
}

struct PerN {
    int n = 0;
    std::optional<Cover> cover;
    std::optional<MVComplex> symbolic;
};

void check_n(Recorder& rec, const RunConfig& config, PerN& state) {
    const int n = state.n;
    const json np = {{"n", n}};

    rec.check("associativity_sample", np, [&](json& out) {
        // Seeded per n so the sample does not depend on scheduling.
        std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(n));
        const auto& basis = DiagramBasis::get(n);
        std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
        const Ring R = Ring::polynomial();
        int failures = 0;
        const int trials = 200;
        for (int t = 0; t < trials; ++t) {
            auto a = AlgebraElement::basis_element(R, basis[pick(rng)]);
            auto b = AlgebraElement::basis_element(R, basis[pick(rng)]);
            auto c = AlgebraElement::basis_element(R, basis[pick(rng)]);
            if (!((a * b) * c == a * (b * c))) ++failures;
        }
        out = {{"trials", trials}, {"failures", failures}, {"seed", config.seed}};
        return verdict(failures == 0);
    });

    rec.check("cover", np, [&](json& out) {
        state.cover = build_cover(n);
        json certs = json::array();
        for (const auto& x : state.cover->intersections)
            certs.push_back({{"ideal", x.basis.label()},
                             {"size", x.basis.size()},
                             {"kind", x.certificate.kind == IntersectionCertificate::Kind::Idempotent ? "idempotent" : "cup_isomorphism"},
                             {"generator", to_text(x.certificate.generator)},
                             {"passed", x.certificate.passed}});
        bool complete = cover_is_complete(*state.cover);
        out = {{"width", state.cover->width()}, {"complete", complete}, {"intersections", certs}};
        return verdict(complete);
    });
    if (!state.cover) return;

    state.symbolic = build_mv_complex(*state.cover, Ring::polynomial());
    const auto& symbolic = *state.symbolic;
    rec.check("d2_zero", np, [&](json& out) {
        auto bad = symbolic.complex.d2_violation();
        out = complex_json(symbolic.complex, false);
        if (bad) out["violation_degree"] = *bad;
        return verdict(!bad);
    });
    rec.check("display_shape", np, [&](json& out) {
        auto shape = check_display_shape(symbolic);
        out = {{"displayed_top", shape.displayed_top}, {"generic_top", shape.generic_top}, {"mismatches", shape.mismatches}};
        if (shape.note) {
            out["note"] = *shape.note;
            rec.note(*shape.note);
        }
        return verdict(shape.mismatches.empty());
    });
    if (config.dump_matrices) {
        std::filesystem::create_directories(config.output_dir);
        std::ofstream(std::filesystem::path(config.output_dir) / ("mv_n" + std::to_string(n) + ".json"))
            << complex_json(symbolic.complex, true).dump(1) << "\n";
    }
}

void check_ring(Recorder& rec, const RunConfig& config, const PerN& state, const Ring& ring) {
    const int n = state.n;
    const json rp = ring_parameters(n, ring);
    rec.check("acyclic", rp, [&](json& out) {
        auto h = verify_acyclic(state.symbolic->complex, ring);
        out = {{"homology", homology_json(h)}};
        return verdict(h.vanishes());
    });
    auto mv = build_mv_complex(*state.cover, ring);
    std::optional<FunctorResult> tor, ext;
    rec.check("tor_functor", rp, [&](json& out) {
        tor = tensor_trivial(mv.resolution());
        out = {{"tor", homology_json(tor->homology)}, {"lattice_route", tor->lattice_route}};
        return verdict(tor->homology.concentrated_in(0));
    });
    rec.check("ext_functor", rp, [&](json& out) {
        ext = hom_trivial(mv.resolution());
        out = {{"ext", homology_json(ext->homology)}, {"lattice_route", ext->lattice_route}};
        return verdict(ext->homology.concentrated_in(0));
    });
    rec.check("functor_cross_check", rp, [&](json& out) {
        if (!tor || !ext) throw std::runtime_error("functor results missing");
        auto issues = functor_cross_check(mv, *state.cover, *tor, *ext);
        out = {{"issues", issues}};
        return verdict(issues.empty());
    });
    rec.check("bar_agreement", rp, [&](json& out) {
        const int top = bar_degree_within_guard(n, config.max_bar_degree);
        out["max_degree"] = top;
        if (top < 1) {
            out["reason"] = "bar complex exceeds the size guard in degree 1";
            return std::string("skipped");
        }
        if (ring.kind() == RingKind::Integers && n > 2) {
            out["reason"] = "integral bar complexes are only run for n <= 2";
            return std::string("skipped");
        }
        if (!tor) throw std::runtime_error("functor results missing");
        auto bar = bar_tor(n, ring, top);
        out["bar"] = homology_json(bar);
        bool same = true;
        for (int p = 0; p <= top; ++p) same = same && bar.at(p) == tor->homology.at(p);
        return verdict(same);
    });
}

// The classical contrast lives at n = 2.
void check_contrast(Recorder& rec, const RunConfig& config, const Ring& ring) {
    rec.check("tl_contrast", ring_parameters(2, ring), [&](json& out) {
        const int top = config.max_bar_degree;
        auto tl = tl_bar_tor(2, ring, top);
        auto dilute = bar_tor(2, ring, top);
        out = {{"max_degree", top}, {"tl", homology_json(tl)}, {"dtl", homology_json(dilute)}};
        bool dilute_vanishes = true, tl_nonzero = true;
        for (int p = 1; p <= top; ++p) {
            dilute_vanishes = dilute_vanishes && dilute.at(p).is_zero();
            tl_nonzero = tl_nonzero && !tl.at(p).is_zero();
        }
        out["tl_nonzero_in_positive_degrees"] = tl_nonzero;
        // At delta = 0 the classical algebra must not vanish.
        bool ok = dilute_vanishes && (!ring.is_zero(ring.delta()) || tl_nonzero);
        return verdict(ok);
    });
}

}  // namespace

Report run_verify_theorem(const RunConfig& config) {
    config.validate();
    Report report;
    report.tool_version = tool_version();
    report.config = config;
    Recorder rec(report);
    const auto specs = config.specializations();
    const int workers = config.jobs > 0 ? config.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    // Covers and symbolic complexes first, then every (n, ring) tuple.
    std::vector<PerN> states;
    for (int n = config.n_max; n >= config.n_min; --n) states.push_back({n, {}, {}});
    std::vector<std::function<void()>> tasks;
    for (auto& state : states) tasks.push_back([&] { check_n(rec, config, state); });
    run_pool(tasks, workers);

    tasks.clear();
    for (const auto& state : states) {
        if (!state.symbolic) continue;
        for (const auto& ring : specs) tasks.push_back([&] { check_ring(rec, config, state, ring); });
    }
    for (const auto& ring : specs) tasks.push_back([&] { check_contrast(rec, config, ring); });
    run_pool(tasks, workers);

    std::sort(report.notes.begin(), report.notes.end());
    std::stable_sort(report.records.begin(), report.records.end(),
                     [](const CheckRecord& a, const CheckRecord& b) { return a.key() < b.key(); });
    return report;
}

std::string write_report(const Report& report) {
    std::filesystem::create_directories(report.config.output_dir);
    auto path = std::filesystem::path(report.config.output_dir) / "report.json";
    std::ofstream(path) << report.to_json().dump(2) << "\n";
    return path.string();
}

}  // namespace dtl::cli

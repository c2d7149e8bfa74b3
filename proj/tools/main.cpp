#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "cli/config.hpp"
#include "cli/json_io.hpp"
#include "cli/verify.hpp"
#include "dtl/algebra.hpp"
#include "dtl/bar_complex.hpp"
#include "dtl/classical_tl.hpp"
#include "dtl/ideals.hpp"
#include "dtl/smith.hpp"

using namespace dtl;
using namespace dtl::cli;

namespace {

// Bad input from the user; reported with exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

Ring ring_from(const std::string& ring, const std::string& delta) {
    try {
        return Ring::parse(normalize_ring(ring), delta);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

Diagram diagram_arg(const std::string& text, int n) {
    Diagram d;
    try {
        d = parse_diagram(text);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    if (d.n() != n) throw UsageError(text + " has n = " + std::to_string(d.n()) + ", expected " + std::to_string(n));
    return d;
}

LinkState link_state_arg(const std::string& text, int n) {
    LinkState p = LinkState::all_defects(1);
    try {
        p = LinkState::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    if (p.n() != n) throw UsageError("link state " + text + " has n = " + std::to_string(p.n()));
    return p;
}

Ring specialized_ring(const std::string& ring, const std::string& delta) {
    Ring r = ring_from(ring, delta);
    if (r.kind() == RingKind::IntegerPolynomial) throw UsageError("this command needs a specialized delta");
    return r;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

std::set<int> parse_set(const std::string& text) {
    std::set<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.insert(std::stoi(item));
        } catch (const std::exception&) {
            throw UsageError("bad subset element '" + item + "'");
        }
    }
    return out;
}

json ideal_json(const IdealBasis& J, bool count_only) {
    json out = {{"label", J.label()}, {"n", J.n()}, {"size", J.size()}};
    if (!count_only) {
        json members = json::array();
        for (const auto& d : J.diagrams()) members.push_back(to_text(d));
        out["members"] = members;
    }
    return out;
}

std::string betti_cell(const DegreeHomology& h) {
    std::string s = std::to_string(h.rank);
    for (const auto& t : h.torsion) s += " +Z/" + t.get_str();
    return s;
}

int run(int argc, char** argv) {
    CLI::App app{"Dilute Temperley-Lieb algebras: diagrams, ideals, resolutions and homology"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);

    int n = 2;
    std::string ring_text = "Z", delta_text = "0";
    int max_degree = 2;
    auto add_n = [&](CLI::App* cmd) { cmd->add_option("--n", n, "Number of vertices per column")->required()->check(CLI::Range(1, 16)); };
    auto add_ring = [&](CLI::App* cmd) {
        cmd->add_option("--ring", ring_text, "Z, Q, Fp:<p> (or F2, F_3), Z[delta]")->capture_default_str();
        cmd->add_option("--delta", delta_text, "Integer value of delta, or 'generic' for Z[delta]")->capture_default_str();
    };

    // basis
    bool count = false;
    auto* basis = app.add_subcommand("basis", "List the diagram basis in canonical order");
    add_n(basis);
    basis->add_flag("--count", count, "Print only the number of diagrams");
    basis->callback([&] {
        const auto& b = DiagramBasis::get(n);
        if (count) std::cout << b.size() << "\n";
        else
            for (const auto& d : b.diagrams()) std::cout << to_text(d) << "\n";
    });

    // multiply
    std::string left, right;
    auto* multiply = app.add_subcommand("multiply", "Multiply two basis diagrams");
    add_n(multiply);
    multiply->add_option("first", left, "Diagram text, e.g. D2:(L1,L2)(R1,R2)")->required();
    multiply->add_option("second", right, "Diagram text")->required();
    multiply->callback([&] { std::cout << to_string(multiply_diagrams(diagram_arg(left, n), diagram_arg(right, n))) << "\n"; });

    // link-state
    std::string diagram_text, state_text;
    auto* link = app.add_subcommand("link-state", "Link states of a diagram, or all link states");
    add_n(link);
    link->add_option("--diagram", diagram_text, "Report the left and right link states of this diagram");
    link->add_option("--parse", state_text, "Validate and describe a link state");
    link->callback([&] {
        if (!diagram_text.empty()) {
            auto d = diagram_arg(diagram_text, n);
            print({{"diagram", to_text(d)}, {"left", link_state_json(left_link_state(d))}, {"right", link_state_json(right_link_state(d))}});
        } else if (!state_text.empty()) {
            print(link_state_json(link_state_arg(state_text, n)));
        } else {
            json all = json::array();
            for (const auto& p : enumerate_link_states(n)) all.push_back(p.to_string());
            print({{"n", n}, {"count", all.size()}, {"link_states", all}});
        }
    });

    // ideal
    std::string kind, subset_text;
    int index = 1;
    bool ideal_count = false;
    auto* ideal = app.add_subcommand("ideal", "Basis of one of the left ideals J_p, K_S, L_i, Cup(n), I");
    add_n(ideal);
    ideal->add_option("--kind", kind, "J, K, L, cup or I")->required()->check(CLI::IsMember({"J", "K", "L", "cup", "I"}));
    ideal->add_option("--link-state", state_text, "Link state p for J");
    ideal->add_option("--set", subset_text, "Comma separated S for K, e.g. 1,3");
    ideal->add_option("--index", index, "i for L");
    ideal->add_flag("--count", ideal_count, "Omit the member list");
    ideal->callback([&] {
        auto build = [&]() -> IdealBasis {
            if (kind == "J") return ideal_J(link_state_arg(state_text, n));
            if (kind == "K") return ideal_K(n, parse_set(subset_text));
            if (kind == "L") return ideal_L(n, index);
            if (kind == "cup") return cup_module(n);
            return augmentation_ideal_basis(n);
        };
        try {
            print(ideal_json(build(), ideal_count));
        } catch (const UsageError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    });

    // idempotent
    auto* idem = app.add_subcommand("idempotent", "Find and certify the idempotent generator of J_p");
    add_n(idem);
    idem->add_option("--link-state", state_text, "Right link state p with at least one defect")->required();
    idem->callback([&] {
        auto p = link_state_arg(state_text, n);
        if (p.defect_count() == 0) throw UsageError("link state " + p.to_string() + " has no defect");
        auto cert = certify_link_state(p);
        auto out = certificate_json(cert);
        out["ideal_size"] = ideal_J(p).size();
        print(out);
        if (!cert.conditions.all() || !cert.unit_verified) throw std::runtime_error("certificate failed");
    });

    // mv
    std::string emit;
    bool mv_failed = false;
    auto* mv = app.add_subcommand("mv", "Mayer-Vietoris complex, acyclicity and the functor-applied resolution");
    add_n(mv);
    add_ring(mv);
    mv->add_option("--emit-matrices", emit, "Write boundary matrices (over Z[delta]) to this JSON file");
    mv->callback([&] {
        auto ring = specialized_ring(ring_text, delta_text);
        auto cover = build_cover(n);
        auto symbolic = build_mv_complex(cover, Ring::polynomial());
        auto h = verify_acyclic(symbolic.complex, ring);
        auto complex = build_mv_complex(cover, ring);
        auto tor = tensor_trivial(complex.resolution());
        auto ext = hom_trivial(complex.resolution());
        auto shape = check_display_shape(symbolic);
        json out = complex_json(complex.complex, false);
        out["d2_zero"] = !symbolic.complex.d2_violation();
        out["acyclic"] = h.vanishes();
        out["homology"] = homology_json(h);
        out["tor"] = homology_json(tor.homology);
        out["ext"] = homology_json(ext.homology);
        out["functor_issues"] = functor_cross_check(complex, cover, tor, ext);
        out["displayed_top"] = shape.displayed_top;
        out["generic_top"] = shape.generic_top;
        out["shape_mismatches"] = shape.mismatches;
        if (shape.note) out["note"] = *shape.note;
        print(out);
        if (!emit.empty()) std::ofstream(emit) << complex_json(symbolic.complex, true).dump(1) << "\n";
        mv_failed = !h.vanishes() || !tor.homology.concentrated_in(0) || !ext.homology.concentrated_in(0) ||
                    !out["functor_issues"].empty() || !shape.mismatches.empty() || !out["d2_zero"].get<bool>();
    });

    // homology
    std::string input;
    auto* homology = app.add_subcommand("homology", "Homology of a chain complex given as JSON");
    homology->add_option("--in", input, "{ring, delta, ranks: {p: r}, boundaries: {p: matrix}}")->required();
    auto* o_target_ring = homology->add_option("--ring", ring_text, "Specialize a Z[delta] complex into this ring");
    homology->add_option("--delta", delta_text, "Value of delta for --ring");
    homology->callback([&] {
        auto j = read_json_file(input);
        try {
            auto ring = ring_from(j.value("ring", "Z"), j.value("delta", "0"));
            ChainComplex c(ring);
            for (const auto& [p, r] : j.at("ranks").items()) c.set_term(std::stoi(p), r.get<std::size_t>());
            if (j.contains("boundaries"))
                for (const auto& [p, m] : j.at("boundaries").items()) c.set_boundary(std::stoi(p), matrix_from_json(m, ring));
            if (ring.kind() == RingKind::IntegerPolynomial) {
                if (!o_target_ring->count()) throw UsageError("the complex is over Z[delta]; pass --ring and --delta");
                c = c.specialize_to(specialized_ring(ring_text, delta_text));
            } else if (o_target_ring->count() && !(ring_from(ring_text, delta_text) == ring)) {
                throw UsageError("--ring only specializes complexes over Z[delta]");
            }
            print(homology_json(complex_homology(c)));
        } catch (const D2NotZero& e) {
            throw UsageError(std::string("input is not a complex: ") + e.what());
        } catch (const json::exception& e) {
            throw UsageError(e.what());
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    });

    // bar-tor
    auto* bar = app.add_subcommand("bar-tor", "Tor from the reduced bar complex");
    add_n(bar);
    add_ring(bar);
    bar->add_option("--max-degree", max_degree, "Highest degree computed")->check(CLI::NonNegativeNumber)->capture_default_str();
    bar->callback([&] {
        auto ring = specialized_ring(ring_text, delta_text);
        try {
            print(homology_json(bar_tor(n, ring, max_degree)));
        } catch (const SizeGuardExceeded& e) {
            throw UsageError(e.what());
        }
    });

    // snf
    auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
    snf->add_option("--in", input, "Matrix JSON {rows, cols, entries: [[i, j, c], ...]}")->required();
    snf->callback([&] {
        SparseMatrix m(Ring::integers(0), 0, 0);
        try {
            m = matrix_from_json(read_json_file(input), Ring::integers(0));
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
        json factors = json::array();
        for (const auto& f : smith_normal_form(m)) factors.push_back(f.get_str());
        print({{"rows", m.rows()}, {"cols", m.cols()}, {"invariant_factors", factors}, {"rank", factors.size()}});
    });

    // tl-compare
    bool as_json = false;
    auto* tl = app.add_subcommand("tl-compare", "Tor of TL_n against dTL_n from their bar complexes");
    add_n(tl);
    add_ring(tl);
    tl->add_option("--max-degree", max_degree, "Highest degree computed")->check(CLI::NonNegativeNumber)->capture_default_str();
    tl->add_flag("--json", as_json, "Emit JSON instead of a table");
    tl->callback([&] {
        auto ring = specialized_ring(ring_text, delta_text);
        HomologyResult a, b;
        try {
            a = tl_bar_tor(n, ring, max_degree);
            b = bar_tor(n, ring, max_degree);
        } catch (const SizeGuardExceeded& e) {
            throw UsageError(e.what());
        }
        if (as_json) {
            print({{"n", n}, {"ring", ring.descriptor()}, {"delta", ring.delta_descriptor()}, {"tl", homology_json(a)}, {"dtl", homology_json(b)}});
            return;
        }
        std::cout << "n=" << n << " ring=" << ring.descriptor() << " delta=" << ring.delta_descriptor() << "\n";
        std::cout << std::left << std::setw(8) << "degree" << std::setw(16) << "Tor TL" << "Tor dTL\n";
        for (int p = 0; p <= max_degree; ++p)
            std::cout << std::setw(8) << p << std::setw(16) << betti_cell(a.at(p)) << betti_cell(b.at(p)) << "\n";
    });

    // verify
    RunConfig config;
    std::string config_path;
    int n_min = 0, n_max = 0, bar_degree = -1;
    std::vector<std::string> rings;
    std::vector<long> deltas;
    std::string output_dir;
    bool dump = false;
    std::uint64_t seed = 0;
    int jobs = 0;
    bool report_failed = false;
    auto* verify = app.add_subcommand("verify", "Run every verification check and write a JSON report");
    verify->add_option("--config", config_path, "key = value configuration file");
    auto* o_nmin = verify->add_option("--n-min", n_min, "Smallest n");
    auto* o_nmax = verify->add_option("--n-max", n_max, "Largest n");
    auto* o_rings = verify->add_option("--rings", rings, "Ring descriptors")->delimiter(',');
    auto* o_deltas = verify->add_option("--deltas", deltas, "Delta values")->delimiter(',');
    auto* o_bar = verify->add_option("--max-bar-degree", bar_degree, "Highest bar degree");
    auto* o_out = verify->add_option("--output-dir", output_dir, "Report directory (env DTL_OUTPUT_DIR)");
    auto* o_dump = verify->add_flag("--dump-matrices", dump, "Write MV boundary matrices next to the report");
    auto* o_seed = verify->add_option("--seed", seed, "Seed for the sampled checks");
    auto* o_jobs = verify->add_option("--jobs", jobs, "Worker threads, 0 for all hardware threads");
    verify->callback([&] {
        try {
            if (!config_path.empty()) apply_config_file(config, config_path);
            if (const char* env = std::getenv("DTL_OUTPUT_DIR"); env && *env) config.output_dir = env;
            if (o_nmin->count()) config.n_min = n_min;
            if (o_nmax->count()) config.n_max = n_max;
            if (o_rings->count()) config.rings = rings;
            if (o_deltas->count()) config.deltas = deltas;
            if (o_bar->count()) config.max_bar_degree = bar_degree;
            if (o_out->count()) config.output_dir = output_dir;
            if (o_dump->count()) config.dump_matrices = dump;
            if (o_seed->count()) config.seed = seed;
            if (o_jobs->count()) config.jobs = jobs;
            config.validate();
        } catch (const ConfigError& e) {
            throw UsageError(e.what());
        }
        auto report = run_verify_theorem(config);
        auto path = write_report(report);
        std::size_t passed = 0, failed = 0, skipped = 0;
        for (const auto& r : report.records) {
            if (r.verdict == "pass") ++passed;
            else if (r.verdict == "fail") ++failed;
            else ++skipped;
            if (r.verdict == "fail") std::cout << "FAIL " << r.key() << "\n";
        }
        for (const auto& note : report.notes) std::cout << "note: " << note << "\n";
        std::cout << passed << " passed, " << failed << " failed, " << skipped << " skipped; report: " << path << "\n";
        report_failed = !report.passed();
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DiagramError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    }
    return mv_failed || report_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }

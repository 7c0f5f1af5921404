// engine.hpp
// Command dispatch shared by the CLI and the acceptance suite.  Each command
// runs a bundle of checks/computations on a fixture and returns a Report.
// Unmet preconditions (no weights, singular Pi, failed spanning hypothesis,
// non-null modular class) render as "skip" entries with the reason; "fail"
// is reserved for conclusive negative verification results.
#pragma once

#include "alab/dorfman.hpp"
#include "alab/duality.hpp"
#include "alab/fixture.hpp"
#include "alab/leibniz_cohomology.hpp"
#include "alab/report.hpp"

#include <chrono>
#include <functional>

namespace alab {

struct RunOptions {
    std::optional<long> max_stratum;
    std::optional<int> degree_bound;
    SampleLevel level = SampleLevel::Linear;
};

namespace detail {

class CheckRunner {
public:
    explicit CheckRunner(Report& rep) : rep_(rep) {}

    /// Runs fn, timing it; precondition errors become "skip" entries.
    void run(const std::string& name, const std::function<std::vector<CheckOutcome>()>& fn) {
        auto t0 = std::chrono::steady_clock::now();
        try {
            for (CheckOutcome& o : fn()) push(std::move(o), t0);
        } catch (const NotWeightHomogeneous& e) {
            skip(name, e.what(), t0);
        } catch (const NotRegular& e) {
            skip(name, e.what(), t0);
        } catch (const SpanningHypothesisFails& e) {
            skip(name, e.what(), t0);
        } catch (const SingularPoint& e) {
            skip(name, e.what(), t0);
        } catch (const ModularClassNotNull& e) {
            skip(name, e.what(), t0);
        } catch (const Error& e) {
            CheckOutcome o{name};
            o.fail(e.what());
            push(std::move(o), t0);
        }
    }

private:
    long elapsed(const std::chrono::steady_clock::time_point& t0) const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
    void push(CheckOutcome o, const std::chrono::steady_clock::time_point& t0) {
        rep_.checks.push_back(CheckResult::from(o, elapsed(t0)));
    }
    void skip(const std::string& name, const std::string& why,
              const std::chrono::steady_clock::time_point& t0) {
        CheckOutcome o{name};
        o.skip(why);
        push(std::move(o), t0);
    }

    Report& rep_;
};

inline std::vector<std::vector<Rat>> sample_points(int p) {
    std::vector<std::vector<Rat>> pts;
    pts.emplace_back(size_t(p), Rat(0));
    pts.emplace_back(size_t(p), Rat(1));
    std::vector<Rat> cycle{Rat(1, 2), Rat(-1, 3), Rat(2, 5), Rat(-3, 2), Rat(7, 4)};
    std::vector<Rat> mixed;
    for (int i = 0; i < p; ++i) mixed.push_back(cycle[size_t(i) % cycle.size()]);
    pts.push_back(mixed);
    return pts;
}

inline json betti_to_json(const BettiTable& t) {
    json arr = json::array();
    for (auto& [key, dim] : t.dims) {
        json e;
        e["stratum"] = key.first;
        e["degree"] = key.second;
        e["dim"] = dim;
        arr.push_back(e);
    }
    return arr;
}

inline long pick_stratum(const Fixture& fx, const RunOptions& opt) {
    return opt.max_stratum.value_or(fx.max_stratum);
}
inline int pick_bound(const Fixture& fx, const RunOptions& opt) {
    return opt.degree_bound.value_or(fx.degree_bound);
}

inline const NambuStructure& need_nambu(const Fixture& fx) {
    if (!fx.nambu) throw ValidationError("fixture declares no Nambu structure");
    return *fx.nambu;
}
inline const OrientationForm& need_orientation(const Fixture& fx) {
    if (!fx.orientation) throw ValidationError("fixture declares no orientation form");
    return *fx.orientation;
}

} // namespace detail

inline Report run_axioms(const Fixture& fx, const RunOptions&) {
    Report rep{"axioms", fx.name};
    if (!fx.algebroid) {
        detail::CheckRunner(rep).run("lie_axioms", []() -> std::vector<CheckOutcome> {
            throw ValidationError("dorfman fixture has no Lie algebroid presentation");
        });
        return rep;
    }
    detail::CheckRunner runner(rep);
    runner.run("lie_axioms", [&]() {
        AxiomReport ax = fx.algebroid->check_lie_axioms();
        CheckOutcome jacobi{"jacobi"};
        CheckOutcome anchor{"anchor_morphism"};
        CheckOutcome leib{"bracket_leibniz_rule"};
        jacobi.pass = ax.jacobi_ok;
        anchor.pass = ax.anchor_morphism_ok;
        leib.pass = ax.leibniz_rule_ok;
        for (const std::string& w : ax.counterexamples) {
            if (w.rfind("jacobi", 0) == 0) jacobi.witnesses.push_back(w);
            else if (w.rfind("anchor", 0) == 0) anchor.witnesses.push_back(w);
            else leib.witnesses.push_back(w);
        }
        return std::vector<CheckOutcome>{jacobi, anchor, leib};
    });
    rep.computations["spanning_hypothesis"] = fx.algebroid->spanning_hypothesis();
    return rep;
}

inline Report run_nambu(const Fixture& fx, const RunOptions& opt) {
    Report rep{"nambu", fx.name};
    detail::CheckRunner runner(rep);
    runner.run("nambu_condition", [&]() {
        const NambuStructure& N = detail::need_nambu(fx);
        return std::vector<CheckOutcome>{
            check_nambu_condition(N, N.default_samples(opt.level))};
    });
    runner.run("fundamental_identity", [&]() {
        return std::vector<CheckOutcome>{
            check_fundamental_identity(detail::need_nambu(fx), detail::pick_bound(fx, opt))};
    });
    runner.run("regularity", [&]() {
        const NambuStructure& N = detail::need_nambu(fx);
        auto pts = detail::sample_points(fx.ctx->ncoords());
        auto table = regularity_report(N, pts);
        CheckOutcome plucker{"plucker_decomposability"};
        json reg = json::array();
        for (const auto& e : table) {
            plucker.count();
            json pe;
            json coords = json::array();
            for (const Rat& c : e.point) coords.push_back(to_string(c));
            pe["point"] = coords;
            pe["regular"] = e.regular;
            pe["decomposable"] = e.decomposable;
            reg.push_back(pe);
            // a regular point of a Nambu structure must be decomposable
            if (e.regular && !e.decomposable) {
                std::string at;
                for (const Rat& c : e.point) at += to_string(c) + " ";
                plucker.fail("regular but not decomposable at ( " + at + ")");
            }
        }
        rep.computations["regularity"] = reg;
        // distribution dimensions at the regular sample points
        json ddim = json::array();
        for (const auto& e : table)
            if (e.regular) ddim.push_back(long(distribution_D(N, e.point).size()));
        rep.computations["distribution_dims"] = ddim;
        return std::vector<CheckOutcome>{plucker};
    });
    return rep;
}

inline Report run_leibniz(const Fixture& fx, const RunOptions& opt) {
    Report rep{"leibniz", fx.name};
    detail::CheckRunner runner(rep);
    if (fx.kind == "dorfman") {
        runner.run("dorfman", [&]() { return check_dorfman_axioms(fx.ctx, opt.level); });
        return rep;
    }
    runner.run("leibniz_axioms", [&]() {
        const NambuStructure& N = detail::need_nambu(fx);
        LeibnizAlgebroidView view(N);
        return std::vector<CheckOutcome>{
            check_leibniz_axioms(view, N.default_samples(opt.level))};
    });
    runner.run("morphism", [&]() {
        const NambuStructure& N = detail::need_nambu(fx);
        return std::vector<CheckOutcome>{check_morphism(N, N.default_samples(opt.level))};
    });
    if (fx.ctx->ncoords() == 0 && fx.algebroid) {
        // over a point the bracket table is a Leibniz algebra; compute its
        // cohomology with the trivial representation
        runner.run("leibniz_cohomology", [&]() {
            const LieAlgebroid& A = *fx.algebroid;
            size_t d = size_t(A.rank());
            std::vector<std::vector<std::vector<Rat>>> table(
                d, std::vector<std::vector<Rat>>(d, std::vector<Rat>(d, Rat(0))));
            for (size_t i = 0; i < d; ++i)
                for (size_t jj = 0; jj < d; ++jj)
                    for (size_t k = 0; k < d; ++k) {
                        const ScalarExpr& c = A.structure(int(i), int(jj), int(k));
                        if (!c.is_zero()) table[i][jj][k] = c.rational_value();
                    }
            auto res = leibniz_cohomology(LeibnizAlgebraInput::trivial_rep(d, table), 3);
            rep.computations["leibniz_cohomology"] = detail::betti_to_json(res.table);
            CheckOutcome d2{"leibniz_d_squared_zero"};
            d2.pass = res.d_squared_zero;
            d2.count();
            return std::vector<CheckOutcome>{d2};
        });
    }
    return rep;
}

inline Report run_modular(const Fixture& fx, const RunOptions& opt) {
    Report rep{"modular", fx.name};
    detail::CheckRunner runner(rep);
    runner.run("modular_multisection", [&]() {
        const NambuStructure& N = detail::need_nambu(fx);
        ModularData md = modular_multisection(N, detail::need_orientation(fx));
        rep.computations["modular_multisection"] = md.m_tilde.to_string();
        CheckOutcome defining{"modular_defining_relation"};
        defining.count(); // re-verified inside modular_multisection
        std::vector<CheckOutcome> outs{defining};
        outs.push_back(check_cocycle(md, N, N.default_samples(opt.level)));
        return outs;
    });
    runner.run("lemma_3_3", [&]() {
        const NambuStructure& N = detail::need_nambu(fx);
        return std::vector<CheckOutcome>{check_lemma33(N, N.default_samples(opt.level))};
    });
    runner.run("eq_3_5", [&]() {
        const NambuStructure& N = detail::need_nambu(fx);
        return std::vector<CheckOutcome>{check_eq_crucial(N, N.default_samples(opt.level))};
    });
    if (fx.twist) {
        runner.run("orientation_change", [&]() {
            return std::vector<CheckOutcome>{check_orientation_change(
                detail::need_nambu(fx), detail::need_orientation(fx), *fx.twist)};
        });
    }
    return rep;
}

inline Report run_nullity(const Fixture& fx, const RunOptions& opt) {
    Report rep{"nullity", fx.name};
    detail::CheckRunner runner(rep);
    runner.run("nullity", [&]() {
        const NambuStructure& N = detail::need_nambu(fx);
        ModularData md = modular_multisection(N, detail::need_orientation(fx));
        NullityResult res = solve_nullity(md, N, detail::pick_bound(fx, opt),
                                          fx.ctx->ngens() > 0);
        CheckOutcome search{"nullity_search"};
        search.count();
        if (res.potential) {
            rep.computations["potential"] = res.potential->to_string();
            search.witnesses.push_back("g = " + res.potential->to_string() +
                                       "; verified Mtilde = (-1)^(n-1) Pi_1(d_A g)");
        } else {
            rep.computations["potential"] = nullptr;
            search.witnesses.push_back(res.message);
        }
        return std::vector<CheckOutcome>{search};
    });
    return rep;
}

inline Report run_cohomology(const Fixture& fx, const RunOptions& opt) {
    Report rep{"cohomology", fx.name};
    detail::CheckRunner runner(rep);
    runner.run("nambu_cochain_complex", [&]() {
        const NambuStructure& N = detail::need_nambu(fx);
        ComplexFamily fam = build_nambu_cochain_complex(N, detail::pick_stratum(fx, opt));
        BettiTable table = betti(fam);
        rep.computations["nambu_cohomology"] = detail::betti_to_json(table);
        json totals = json::array();
        for (int k = 0; k <= N.order(); ++k) totals.push_back(table.total(k));
        rep.computations["nambu_cohomology_totals"] = totals;
        CheckOutcome built{"cochain_complex_exactness"};
        built.count();
        built.witnesses.push_back("composition-zero and quotient well-definedness verified");
        return std::vector<CheckOutcome>{built};
    });
    runner.run("restriction_iso", [&]() {
        return check_restriction_iso(detail::need_nambu(fx), opt.level);
    });
    return rep;
}

inline Report run_homology(const Fixture& fx, const RunOptions& opt) {
    Report rep{"homology", fx.name};
    detail::CheckRunner runner(rep);
    runner.run("canonical_chain_complex", [&]() {
        const NambuStructure& N = detail::need_nambu(fx);
        long s = detail::pick_stratum(fx, opt);
        ComplexFamily fam =
            build_canonical_chain_complex(N, detail::need_orientation(fx), -s, N.order());
        BettiTable table = betti(fam);
        rep.computations["canonical_homology"] = detail::betti_to_json(table);
        CheckOutcome built{"chain_complex_exactness"};
        built.count();
        built.witnesses.push_back("V^k image/annihilator agreement and closure verified");
        return std::vector<CheckOutcome>{built};
    });
    runner.run("pi_subcomplex", [&]() {
        const NambuStructure& N = detail::need_nambu(fx);
        const OrientationForm& nu = detail::need_orientation(fx);
        ModularData md = modular_multisection(N, nu);
        std::vector<CheckOutcome> outs;
        outs.push_back(check_pi_subcomplex_formula(N, nu, md, opt.level));
        MembershipResult mem = check_pi_subcomplex_membership(N, md, detail::pick_bound(fx, opt));
        rep.computations["modular_in_image_pi1"] = mem.in_image;
        outs.push_back(mem.outcome);
        return outs;
    });
    runner.run("orientation_independence", [&]() {
        const NambuStructure& N = detail::need_nambu(fx);
        Poly g = fx.twist ? *fx.twist : Poly(fx.ctx->ncoords());
        auto oi = check_homology_orientation_independence(
            N, detail::need_orientation(fx), g, detail::pick_stratum(fx, opt), opt.level);
        return std::vector<CheckOutcome>{oi.intertwining, oi.betti_equal};
    });
    return rep;
}

inline Report run_duality(const Fixture& fx, const RunOptions& opt) {
    Report rep{"duality", fx.name};
    detail::CheckRunner runner(rep);
    runner.run("duality", [&]() {
        const NambuStructure& N = detail::need_nambu(fx);
        const OrientationForm& nu = detail::need_orientation(fx);
        ModularData md = modular_multisection(N, nu);
        NullityResult res =
            solve_nullity(md, N, detail::pick_bound(fx, opt), fx.ctx->ngens() > 0);
        if (!res.potential)
            throw ModularClassNotNull("duality theorem requires a null modular class: " +
                                      res.message);
        rep.computations["potential"] = res.potential->to_string();
        DualityReport dr =
            duality_check(N, nu, *res.potential, detail::pick_stratum(fx, opt), opt.level);
        if (!dr.cochain_betti.dims.empty())
            rep.computations["nambu_cohomology"] = detail::betti_to_json(dr.cochain_betti);
        if (!dr.chain_betti.dims.empty())
            rep.computations["canonical_homology"] = detail::betti_to_json(dr.chain_betti);
        return std::vector<CheckOutcome>{dr.chain_map, dr.dimensions, dr.injectivity};
    });
    return rep;
}

inline Report run_command(const Fixture& fx, const std::string& command, const RunOptions& opt) {
    if (command == "axioms") return run_axioms(fx, opt);
    if (command == "nambu") return run_nambu(fx, opt);
    if (command == "leibniz") return run_leibniz(fx, opt);
    if (command == "modular") return run_modular(fx, opt);
    if (command == "nullity") return run_nullity(fx, opt);
    if (command == "cohomology") return run_cohomology(fx, opt);
    if (command == "homology") return run_homology(fx, opt);
    if (command == "duality") return run_duality(fx, opt);
    if (command == "all") {
        Report all{"all", fx.name};
        for (const char* sub : {"axioms", "nambu", "leibniz", "modular", "nullity",
                                "cohomology", "homology", "duality"}) {
            if (fx.kind == "dorfman" && std::string(sub) != "leibniz") continue;
            Report r = run_command(fx, sub, opt);
            for (auto& c : r.checks) {
                c.name = std::string(sub) + "/" + c.name;
                all.checks.push_back(c);
            }
            for (auto& [key, value] : r.computations.items())
                all.computations[key] = value;
        }
        return all;
    }
    throw ValidationError("unknown command: " + command);
}

} // namespace alab

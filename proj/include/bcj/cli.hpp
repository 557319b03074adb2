#ifndef BCJ_CLI_HPP
#define BCJ_CLI_HPP

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "bcj/json_io.hpp"
#include "bcj/selftest.hpp"

namespace bcj::cli {

namespace detail {

inline IntSymplecticSubgroup parse_int_subgroup(const std::string& text, const GenusContext& ctx) {
    std::vector<IntVector> vecs;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string part =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (part.find_first_not_of(" \t") != std::string::npos)
            vecs.push_back(parse_int_vector(part, ctx));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (vecs.empty() || vecs.size() % 2 != 0)
        throw ParseError("subgroup needs an even number of basis vectors: " + text);
    std::vector<IntSymplecticPair> pairs;
    for (std::size_t i = 0; i < vecs.size(); i += 2) pairs.emplace_back(vecs[i], vecs[i + 1]);
    return IntSymplecticSubgroup(std::move(pairs));
}

inline CycleSystem parse_cycle_system(const std::string& text, const GenusContext& ctx) {
    std::vector<IntSymplecticSubgroup> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t semi = text.find(';', start);
        std::string part =
            text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
        if (part.find_first_not_of(" \t") != std::string::npos)
            parts.push_back(parse_int_subgroup(part, ctx));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return CycleSystem(ctx, std::move(parts));
}

inline json classification_to_json(const PartitionTree& t, const Classification& cls) {
    json edges = json::array();
    for (int e = 0; e < t.k(); ++e) {
        const EdgeClass& ec = cls.edges[static_cast<std::size_t>(e)];
        json je{{"index", e},
                {"endpoints", {t.edges[static_cast<std::size_t>(e)].first,
                               t.edges[static_cast<std::size_t>(e)].second}},
                {"curve_genus", curve_genus(t, e)},
                {"outermost", ec.outermost},
                {"grouping", ec.grouping}};
        if (ec.outermost) je["cap"] = ec.cap_vertex;
        if (ec.grouping) {
            je["cap_base"] = ec.cb_vertex;
            je["groups"] = ec.grouped_edges;
        }
        edges.push_back(je);
    }
    return json{{"tree", canonical_tree_string(t)}, {"simple", cls.simple}, {"edges", edges}};
}

inline json sigma_wedge_to_json(const SigmaWedge& sw) {
    GenusContext ctx(sw.g);
    B2PrimeBasis basis(ctx);
    json terms = json::array();
    for (const auto& term : sw.w.terms) {
        json jt = json::array();
        for (std::uint16_t idx : term) {
            BoolPoly p(ctx.g);
            p.monos = {basis.monos[idx]};
            jt.push_back(format_poly(p));
        }
        terms.push_back(jt);
    }
    return json{{"k", sw.w.k},
                {"ambient_dim", sw.w.ambient_dim},
                {"zero", sw.w.is_zero()},
                {"terms", terms}};
}

} // namespace detail

// Subcommand front end; exit 0 on ok, 1 on domain error, 2 on usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"mod-2 invariant calculus for abelian cycles of separating twists"};
    app.require_subcommand(1);
    unsigned threads = default_thread_count();
    app.add_option("--threads", threads, "worker threads for long enumerations");

    int g = 0;
    std::string subspace_text, mode_text = "closed";
    auto* sigma_cmd = app.add_subcommand("sigma", "sigma value of a symplectic subspace");
    sigma_cmd->add_option("--g", g, "ambient genus")->required();
    sigma_cmd->add_option("--subspace", subspace_text, "generators, e.g. \"a1,b1\"")->required();
    sigma_cmd->add_option("--mode", mode_text, "closed|boundary")
        ->check(CLI::IsMember({"closed", "boundary"}));

    bool count_only = false;
    auto* enum_cmd = app.add_subcommand("enumerate", "2-dimensional symplectic subspaces");
    enum_cmd->add_option("--g", g, "ambient genus")->required();
    enum_cmd->add_flag("--count-only", count_only, "print only the count");

    std::string pair1_text, pair2_text, cert_path;
    auto* decide_cmd = app.add_subcommand("decide-equal", "decide equality of two genus-1 cycles");
    decide_cmd->add_option("--g", g, "ambient genus")->required();
    decide_cmd->add_option("--pair1", pair1_text, "first system \"x1,y1;x2,y2\"")->required();
    decide_cmd->add_option("--pair2", pair2_text, "second system")->required();
    decide_cmd->add_option("--cert", cert_path, "write the certificate JSON here");

    std::string verify_path;
    auto* verify_cmd = app.add_subcommand("verify-cert", "replay a certificate's hypotheses");
    verify_cmd->add_option("file", verify_path, "certificate JSON file")->required();

    std::string tree_text;
    bool opt_sigma_k = false, opt_vanishes = false, opt_reduce = false, opt_classify = false;
    auto* tree_cmd = app.add_subcommand("tree", "admissible partition tree computations");
    tree_cmd->add_option("--g", g, "ambient genus")->required();
    tree_cmd->add_option("--tree", tree_text, "tree text, e.g. \"0(1)(1)(2)\"")->required();
    tree_cmd->add_flag("--sigma-k", opt_sigma_k, "wedge invariant of the tree");
    tree_cmd->add_flag("--vanishes", opt_vanishes, "vanishing criterion (k < g)");
    tree_cmd->add_flag("--reduce", opt_reduce, "genus-1 reduction");
    tree_cmd->add_flag("--classify", opt_classify, "edge taxonomy");

    auto* dim_cmd = app.add_subcommand("dim-bounds", "dimension bounds report");
    dim_cmd->add_option("--g", g, "ambient genus")->required();

    int census_k = 0;
    auto* census_cmd = app.add_subcommand("census", "admissible tree census as CSV");
    census_cmd->add_option("--g", g, "ambient genus")->required();
    census_cmd->add_option("--k", census_k, "number of curves")->required();

    std::string level = "quick";
    std::uint64_t seed = 20240915;
    auto* selftest_cmd = app.add_subcommand("selftest", "run the property suites");
    selftest_cmd->add_option("--level", level, "quick|full")
        ->check(CLI::IsMember({"quick", "full"}));
    selftest_cmd->add_option("--seed", seed, "seed for randomized suites");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (sigma_cmd->parsed()) {
            GenusContext ctx(g);
            SigmaMode mode = mode_text == "closed" ? SigmaMode::closed : SigmaMode::boundary;
            Gf2Subspace s = parse_gf2_subspace(subspace_text, ctx);
            out << format_poly(sigma_of_subspace(s, ctx, mode).poly) << "\n";
        } else if (enum_cmd->parsed()) {
            GenusContext ctx(g);
            if (count_only) {
                std::uint64_t n = 0;
                enumerate_symplectic_2subspaces(ctx, [&](std::uint32_t, std::uint32_t) { ++n; });
                out << n << "\n";
            } else {
                enumerate_symplectic_2subspaces(ctx, [&](std::uint32_t u, std::uint32_t v) {
                    out << format_gf2_subspace(pair_subspace(u, v, ctx).space) << "\n";
                });
            }
        } else if (decide_cmd->parsed()) {
            GenusContext ctx(g);
            CycleSystem p = detail::parse_cycle_system(pair1_text, ctx);
            CycleSystem q = detail::parse_cycle_system(pair2_text, ctx);
            DecideVerdict verdict = decide_equal_genus1(p, q);
            json payload;
            switch (verdict.kind) {
                case DecideVerdict::Kind::Equal: payload["verdict"] = "equal"; break;
                case DecideVerdict::Kind::DistinctBySigma: payload["verdict"] = "distinct-by-sigma"; break;
                case DecideVerdict::Kind::Inconclusive: payload["verdict"] = "inconclusive"; break;
            }
            if (!verdict.notes.empty()) payload["notes"] = verdict.notes;
            if (verdict.certificate) {
                payload["steps"] = verdict.certificate->steps.size();
                if (!cert_path.empty()) {
                    write_certificate(*verdict.certificate, cert_path);
                    payload["certificate"] = cert_path;
                }
            }
            out << payload.dump() << "\n";
        } else if (verify_cmd->parsed()) {
            Certificate cert = read_certificate(verify_path);
            VerifyResult res = verify_certificate(cert);
            json payload{{"ok", res.ok}, {"diagnostics", res.diagnostics}};
            out << payload.dump() << "\n";
        } else if (tree_cmd->parsed()) {
            PartitionTree t = parse_tree(tree_text, g);
            auto bad = validate_tree(t);
            if (!bad.empty()) {
                json payload{{"valid", false}, {"violations", bad}};
                out << payload.dump() << "\n";
                return 1;
            }
            json payload{{"valid", true}};
            if (opt_classify) payload = detail::classification_to_json(t, classify(t));
            if (opt_sigma_k) payload = detail::sigma_wedge_to_json(tree_sigma_k(t, realize_splitting(t)));
            if (opt_vanishes) payload = json{{"vanishes", vanishes_main3(t)}};
            if (opt_reduce) {
                json systems = json::array();
                auto reduced = reduce_to_genus1(t);
                for (const CycleSystem& sys : reduced) {
                    json parts = json::array();
                    for (const auto& part : sys.parts) {
                        json vecs = json::array();
                        for (const auto& v : part.basis_vectors()) vecs.push_back(format_int_vector(v));
                        parts.push_back(vecs);
                    }
                    systems.push_back(parts);
                }
                payload = json{{"count", reduced.size()}, {"systems", systems}};
            }
            out << payload.dump() << "\n";
        } else if (dim_cmd->parsed()) {
            out << dim_report_to_json(dim_bounds(g, threads)).dump() << "\n";
        } else if (census_cmd->parsed()) {
            out << "tree,k,has_genus0,sigma_k_zero\n";
            for (const CensusRow& row : census(g, census_k))
                out << row.tree << "," << row.k << "," << (row.has_genus0 ? 1 : 0) << ","
                    << (row.sigma_k_zero ? 1 : 0) << "\n";
        } else if (selftest_cmd->parsed()) {
            bool ok = run_selftest(level == "full", seed, threads, out);
            return ok ? 0 : 1;
        }
    } catch (const DomainError& e) {
        json payload{{"status", "error"}, {"diagnostics", {e.what()}}};
        err << payload.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        json payload{{"status", "error"}, {"diagnostics", {e.what()}}};
        err << payload.dump() << "\n";
        return 1;
    }
    return 0;
}

} // namespace bcj::cli

#endif

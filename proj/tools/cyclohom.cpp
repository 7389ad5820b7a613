#include "chom/bicomplex.hpp"
#include "chom/scenarios.hpp"
#include "chom/specfile.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

using namespace chom;
using nlohmann::json;

namespace {

struct GlobalOpts {
    int max_degree = 6;
    int window = 3;
    long long budget = kDefaultTensorBudget;
    uint64_t seed = 17;
    std::string format = "text";

    RunOptions run() const {
        RunOptions r;
        r.max_degree = max_degree;
        r.window = window;
        r.budget = budget;
        r.seed = seed;
        return r;
    }
};

int emit(const ScenarioReport& rep, const GlobalOpts& g) {
    if (g.format == "json")
        std::cout << rep.to_json().dump(2) << "\n";
    else
        std::cout << rep.to_text();
    return rep.pass() ? 0 : 1;
}

int emit_all(const std::vector<ScenarioReport>& reps, const GlobalOpts& g) {
    bool ok = true;
    if (g.format == "json") {
        json arr = json::array();
        for (const auto& r : reps) {
            arr.push_back(r.to_json());
            ok = ok && r.pass();
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& r : reps) {
            std::cout << r.to_text() << "\n";
            ok = ok && r.pass();
        }
    }
    return ok ? 0 : 1;
}

Algebra load_algebra(const std::string& file) {
    ParsedInput in = parse_spec_file(file);
    if (in.kind != ParsedInput::Kind::Algebra)
        throw std::invalid_argument(file + ": expected an algebra file");
    return in.algebra;
}

Subspace pick_ideal(const ParsedInput& in, const std::string& name) {
    auto it = in.ideals.find(name);
    if (it == in.ideals.end())
        throw std::invalid_argument("no ideal named \"" + name + "\" in the input (have " +
                                    std::to_string(in.ideals.size()) + ")");
    return it->second;
}

std::string dims_line(const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += " ";
        s += std::to_string(v[i]);
    }
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cyclic homology of finite-dimensional rational algebras"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--max-degree", g.max_degree, "truncation degree D (default 6)");
    app.add_option("--window", g.window, "tower stabilization window (default 3)");
    app.add_option("--budget", g.budget, "tensor basis budget per degree");
    app.add_option("--seed", g.seed, "seed for randomized suites");
    app.add_option("--format", g.format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string file, ideal_name = "rad", values, partition_str, mode;
    int arg_k = 0, random_count = 0;

    auto* hh_cmd = app.add_subcommand("hh", "Hochschild module and HH dimensions");
    hh_cmd->add_option("file", file)->required();

    auto* hc_cmd = app.add_subcommand("hc", "cyclic homology dimensions and S ranks");
    hc_cmd->add_option("file", file)->required();

    auto* hp_cmd = app.add_subcommand("hp", "periodic homology via the S-tower");
    hp_cmd->add_option("file", file)->required();

    auto* sbi_cmd = app.add_subcommand("sbi", "the SBI long exact sequence report");
    sbi_cmd->add_option("file", file)->required();

    auto* dec_cmd = app.add_subcommand("decompose",
                                       "weight/partition/filtration decompositions");
    dec_cmd->add_option("mode", mode, "weights|partition|filtration")->required();
    dec_cmd->add_option("file", file)->required();
    dec_cmd->add_option("--ideal", ideal_name, "ideal name for filtration (default rad)");
    dec_cmd->add_option("-P,--partition", partition_str, "parts, e.g. 2,1");
    dec_cmd->add_option("--max-k", arg_k, "largest weight to report (default D+1)");

    auto* gap_cmd = app.add_subcommand("gapset", "gap set A_f of a {0,1,2}-valued function");
    gap_cmd->add_option("values", values, "comma-separated values, e.g. 2,0,1")->required();

    auto* part_cmd = app.add_subcommand("partitions", "partitions of k by descending norm");
    part_cmd->add_option("k", arg_k)->required();

    auto* check_cmd = app.add_subcommand("check", "scenario verifications");
    check_cmd->require_subcommand(1);
    auto* nil_cmd = check_cmd->add_subcommand("nilpotent", "HP invariance under a nilpotent ideal");
    nil_cmd->add_option("file", file)->required();
    nil_cmd->add_option("--ideal", ideal_name);
    auto* mv_cmd = check_cmd->add_subcommand("mv", "HP Mayer-Vietoris for a split square");
    mv_cmd->add_option("file", file)->required();
    auto* free_cmd = check_cmd->add_subcommand("free", "HP vanishing on free cyclic modules");
    free_cmd->add_option("file", file, "simplicial module file");
    free_cmd->add_option("--random", random_count, "run N seeded random modules instead");

    auto* suite_cmd = app.add_subcommand("suite", "the bundled lemma corpus");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*hh_cmd) {
            Algebra a = load_algebra(file);
            HochschildModule h = hh(a, g.max_degree, g.budget);
            CyclicHomology eng(h.mod);
            std::vector<int> dims, hhd;
            for (int q = 0; q <= g.max_degree; ++q)
                dims.push_back(h.mod.dim(q));
            for (int n = 0; n <= eng.max_certified(); ++n)
                hhd.push_back(eng.hh_dim(n));
            if (g.format == "json") {
                json j{{"algebra", a.name},
                       {"max_degree", g.max_degree},
                       {"module_dims", dims},
                       {"hh_dims", hhd},
                       {"certified_max_degree", eng.max_certified()},
                       {"cyclic_identities", validate_cyclic(h.mod).ok}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "HH(" << (a.name.empty() ? "algebra" : a.name) << "), D = "
                          << g.max_degree << "\n";
                std::cout << "  module dims (q = 0.." << g.max_degree
                          << "): " << dims_line(dims) << "\n";
                std::cout << "  HH dims (n = 0.." << eng.max_certified()
                          << "): " << dims_line(hhd) << "\n";
            }
            return 0;
        }
        if (*hc_cmd) {
            Algebra a = load_algebra(file);
            HochschildModule h = hh(a, g.max_degree, g.budget);
            CyclicHomology eng(h.mod);
            std::vector<int> hcd, sr;
            for (int n = 0; n <= eng.max_certified(); ++n) {
                hcd.push_back(eng.hc_dim(n));
                sr.push_back(n >= 2 ? rank_of(eng.s_matrix(n)) : 0);
            }
            if (g.format == "json") {
                json j{{"algebra", a.name},
                       {"hc_dims", hcd},
                       {"s_ranks", sr},
                       {"certified_max_degree", eng.max_certified()}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "HC(" << (a.name.empty() ? "algebra" : a.name)
                          << "), certified degrees 0.." << eng.max_certified() << "\n";
                std::cout << "  HC dims: " << dims_line(hcd) << "\n";
                std::cout << "  S ranks: " << dims_line(sr) << "\n";
            }
            return 0;
        }
        if (*hp_cmd) {
            Algebra a = load_algebra(file);
            return emit(report_hp(a, g.run()), g);
        }
        if (*sbi_cmd) {
            Algebra a = load_algebra(file);
            HochschildModule h = hh(a, g.max_degree, g.budget);
            SBIReport rep = sbi(h.mod);
            if (g.format == "json") {
                json nodes = json::array();
                for (const auto& nd : rep.nodes)
                    nodes.push_back(json{{"degree", nd.degree},
                                         {"node", nd.node},
                                         {"composite_zero", nd.composite_zero},
                                         {"rank_exact", nd.rank_exact}});
                json j{{"algebra", a.name},
                       {"hh_dims", rep.hh_dims},
                       {"hc_dims", rep.hc_dims},
                       {"hc_minus_dims", rep.hcm_dims},
                       {"hc_minus_min_degree", rep.hcm_min},
                       {"nodes", nodes},
                       {"all_exact", rep.all_exact}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "SBI(" << (a.name.empty() ? "algebra" : a.name)
                          << "), certified degrees 0.." << rep.max_degree << "\n";
                std::cout << "  HH dims: " << dims_line(rep.hh_dims) << "\n";
                std::cout << "  HC dims: " << dims_line(rep.hc_dims) << "\n";
                std::cout << "  HC- dims (n = " << rep.hcm_min << ".." << rep.hcm_max
                          << "): " << dims_line(rep.hcm_dims) << "\n";
                for (const auto& nd : rep.nodes)
                    std::cout << "  " << (nd.composite_zero && nd.rank_exact ? "[PASS]" : "[FAIL]")
                              << " exact at " << nd.node << " degree " << nd.degree << "\n";
                std::cout << "  result: " << (rep.all_exact ? "PASS" : "FAIL") << "\n";
            }
            return rep.all_exact ? 0 : 1;
        }
        if (*dec_cmd) {
            ParsedInput in = parse_spec_file(file);
            if (mode == "weights") {
                if (in.kind != ParsedInput::Kind::SquareZero)
                    throw std::invalid_argument("weights needs a square-zero file");
                WeightDecomposition wd =
                    weight_decompose(in.algebra, in.bimodule, g.max_degree, g.budget);
                int kmax = arg_k > 0 ? arg_k : g.max_degree + 1;
                bool ok = true;
                json out = json::array();
                for (const auto& ws : wd.pieces) {
                    if (ws.k > kmax)
                        break;
                    std::vector<int> dims;
                    for (int q = 0; q <= g.max_degree; ++q)
                        dims.push_back(ws.H.dim(q));
                    bool good = ws.retract.map_is_cyclic && ws.retract.composite_is_scalar;
                    ok = ok && good;
                    if (g.format == "json")
                        out.push_back(json{{"k", ws.k},
                                           {"dims", dims},
                                           {"retract_scalar", ws.retract.scalar},
                                           {"retract_ok", good}});
                    else
                        std::cout << "  H(" << ws.k << ") dims " << dims_line(dims)
                                  << "  retract " << (good ? "= " : "!= ") << ws.k
                                  << "*id\n";
                }
                if (g.format == "json")
                    std::cout << out.dump(2) << "\n";
                return ok ? 0 : 1;
            }
            if (mode == "partition") {
                if (in.kind != ParsedInput::Kind::System)
                    throw std::invalid_argument("partition needs a system file");
                Partition P;
                for (size_t pos = 0; pos < partition_str.size();) {
                    size_t next = partition_str.find(',', pos);
                    P.parts.push_back(std::stoi(partition_str.substr(pos, next - pos)));
                    if (next == std::string::npos)
                        break;
                    pos = next + 1;
                }
                if (P.parts.empty())
                    throw std::invalid_argument("--partition is required, e.g. -P 2,1");
                PartitionSystem sys =
                    partition_system(in.algebra, in.bimodules, g.max_degree, g.budget);
                PartitionSummand ps = partition_decompose(sys, P);
                std::vector<int> dims;
                for (int q = 0; q <= g.max_degree; ++q)
                    dims.push_back(ps.H.dim(q));
                bool good = ps.retract.map_is_cyclic && ps.retract.composite_is_scalar;
                if (g.format == "json")
                    std::cout << json{{"partition", P.str()},
                                      {"dims", dims},
                                      {"retract_scalar", ps.retract.scalar},
                                      {"retract_ok", good}}
                                     .dump(2)
                              << "\n";
                else
                    std::cout << "  H" << P.str() << " dims " << dims_line(dims)
                              << "  retract " << (good ? "= " : "!= ") << P.length()
                              << "*id\n";
                return good ? 0 : 1;
            }
            if (mode == "filtration") {
                if (in.kind != ParsedInput::Kind::Algebra)
                    throw std::invalid_argument("filtration needs an algebra file");
                Subspace sub = pick_ideal(in, ideal_name);
                Ideal id{&in.algebra, sub};
                IdealFiltration filt =
                    ideal_filtration(in.algebra, id, g.max_degree, g.budget);
                json out = json::array();
                for (int k = 0; k <= filt.kmax; ++k) {
                    auto ds = filt.dims(k);
                    if (g.format == "json")
                        out.push_back(json{{"k", k}, {"dims", ds}});
                    else
                        std::cout << "  F^" << k << " dims " << dims_line(ds) << "\n";
                }
                if (g.format == "json")
                    std::cout << out.dump(2) << "\n";
                return 0;
            }
            throw std::invalid_argument("unknown decompose mode \"" + mode + "\"");
        }
        if (*gap_cmd) {
            std::vector<int> f;
            for (size_t pos = 0; pos < values.size();) {
                size_t next = values.find(',', pos);
                f.push_back(std::stoi(values.substr(pos, next - pos)));
                if (next == std::string::npos)
                    break;
                pos = next + 1;
            }
            auto a = gap_set(f);
            if (g.format == "json") {
                std::cout << json{{"values", f}, {"gap_set", std::vector<int>(a.begin(), a.end())}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "A_f = {";
                bool first = true;
                for (int x : a) {
                    if (!first)
                        std::cout << ",";
                    std::cout << x;
                    first = false;
                }
                std::cout << "}\n";
            }
            return 0;
        }
        if (*part_cmd) {
            auto ps = partitions(arg_k);
            if (g.format == "json") {
                json out = json::array();
                for (const auto& p : ps)
                    out.push_back(json{{"parts", p.parts}, {"norm", p.norm().get_str()}});
                std::cout << out.dump(2) << "\n";
            } else {
                for (const auto& p : ps)
                    std::cout << p.str() << "  norm " << p.norm().get_str() << "\n";
            }
            return 0;
        }
        if (*nil_cmd) {
            ParsedInput in = parse_spec_file(file);
            if (in.kind != ParsedInput::Kind::Algebra)
                throw std::invalid_argument("check nilpotent needs an algebra file");
            Subspace sub = pick_ideal(in, ideal_name);
            Ideal id{&in.algebra, sub};
            return emit(check_nilpotent_invariance(in.algebra, id, g.run()), g);
        }
        if (*mv_cmd) {
            ParsedInput in = parse_spec_file(file);
            if (in.kind != ParsedInput::Kind::Square)
                throw std::invalid_argument("check mv needs a square file");
            return emit(check_mayer_vietoris(in.square, g.run()), g);
        }
        if (*free_cmd) {
            if (random_count > 0)
                return emit(check_free_vanishing_suite(random_count, g.run()), g);
            if (file.empty())
                throw std::invalid_argument("check free needs a file or --random N");
            ParsedInput in = parse_spec_file(file);
            if (in.kind != ParsedInput::Kind::Simplicial)
                throw std::invalid_argument("check free needs a simplicial module file");
            return emit(check_free_vanishing(in.simplicial, g.run(), in.name), g);
        }
        if (*suite_cmd) {
            // the full bundled corpus; scenario depths are chosen so that
            // every tower stabilizes at the suite's window
            std::vector<ScenarioReport> reps;
            reps.push_back(run_lemma_suite(g.run()));

            RunOptions sopt = g.run();
            sopt.window = std::min(sopt.window, 1);
            {
                auto [a, sub] = truncated_polynomial(2);
                Ideal id{&a, sub};
                reps.push_back(check_nilpotent_invariance(a, id, sopt));
            }
            {
                auto [a, sub] = truncated_polynomial(3);
                Ideal id{&a, sub};
                reps.push_back(check_nilpotent_invariance(a, id, sopt));
            }
            {
                auto [qe, se] = truncated_polynomial(2);
                auto [qd, sd] = truncated_polynomial(2);
                (void)se;
                (void)sd;
                SparseMatrix f(1, 2);
                f.set(0, 0, Rat(1));
                SplitSquare sq = split_square(qe, qd, rationals(), f, f);
                reps.push_back(check_mayer_vietoris(sq, sopt));
            }
            {
                RunOptions fopt = sopt;
                fopt.max_degree = std::min(fopt.max_degree, 5);
                reps.push_back(check_free_vanishing_suite(5, fopt));
            }
            return emit_all(reps, g);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

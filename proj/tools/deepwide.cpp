// Command-line front end: membership decisions, witness production and
// conversion, game solving, monotonization with audit, homomorphism
// counting, quantum-graph algebra, formula evaluation, gadget pairs and
// the equivalence deciders.
//
// Exit codes: 0 success / positive verdict, 1 negative verdict, 2 error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "deepwide/canonical.hpp"
#include "deepwide/cfi.hpp"
#include "deepwide/decomp.hpp"
#include "deepwide/equiv.hpp"
#include "deepwide/game.hpp"
#include "deepwide/hom.hpp"
#include "deepwide/homlogic.hpp"
#include "deepwide/oracle.hpp"
#include "deepwide/pretree.hpp"
#include "deepwide/quantum.hpp"
#include "json.hpp"

using namespace deepwide;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << f.rdbuf();
    return out.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

Variant parse_variant(const std::string& name) {
    if (name == "CR") return Variant::CR;
    if (name == "monCR") return Variant::MonCR;
    if (name == "eCR") return Variant::ECR;
    if (name == "moneCR") return Variant::MonECR;
    throw std::runtime_error("unknown game variant: " + name);
}

std::vector<Rational> parse_rationals(const std::string& csv) {
    std::vector<Rational> out;
    std::istringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(Rational::parse(item));
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{
        "decompositions, games and homomorphism equivalences for graphs of bounded width and depth"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "machine-readable output where available");
    app.fallthrough();

    // ---- membership ----
    auto* mem = app.add_subcommand("membership", "decide class membership via the game");
    std::string memGraph, memWitness;
    int memK = 1, memQ = 1;
    mem->add_option("--graph", memGraph)->required();
    mem->add_option("-k", memK)->required();
    mem->add_option("-q", memQ)->required();
    mem->add_option("--witness", memWitness, "write the construction-tree witness here");

    // ---- decompose ----
    auto* dec = app.add_subcommand("decompose", "produce a witness of the requested kind");
    std::string decGraph, decKind = "td", decOut, decDot;
    int decK = 1, decQ = 1;
    dec->add_option("--graph", decGraph)->required();
    dec->add_option("-k", decK)->required();
    dec->add_option("-q", decQ)->required();
    dec->add_option("--kind", decKind)->check(CLI::IsMember({"td", "pfc", "ct"}));
    dec->add_option("--out", decOut);
    dec->add_option("--dot", decDot);

    // ---- convert ----
    auto* conv = app.add_subcommand("convert", "convert between witness kinds");
    std::string convGraph, convFrom, convTo, convIn, convOut;
    int convK = 1, convQ = 1;
    conv->add_option("--graph", convGraph)->required();
    conv->add_option("--from", convFrom)->required()->check(CLI::IsMember({"td", "pfc", "ct"}));
    conv->add_option("--to", convTo)->required()->check(CLI::IsMember({"td", "pfc", "ct"}));
    conv->add_option("--in", convIn)->required();
    conv->add_option("--out", convOut);
    conv->add_option("-k", convK)->required();
    conv->add_option("-q", convQ)->required();

    // ---- game ----
    auto* game = app.add_subcommand("game", "solve or verify pursuit games");
    game->require_subcommand(1);
    auto* gameSolve = game->add_subcommand("solve", "exact winner");
    std::string gsGraph, gsVariant = "CR", gsStrategy;
    int gsK = 1, gsQ = 1;
    bool gsLoops = false;
    gameSolve->add_option("--graph", gsGraph)->required();
    gameSolve->add_option("--cops,-k", gsK)->required();
    gameSolve->add_option("--rounds,-q", gsQ)->required();
    gameSolve->add_option("--variant", gsVariant);
    gameSolve->add_flag("--loops", gsLoops, "play on the graph with all self-loops added");
    gameSolve->add_option("--strategy", gsStrategy, "write the winning cop strategy here");
    auto* gameVerify = game->add_subcommand("verify", "exhaustive playout of a strategy");
    std::string gvGraph, gvStrategy;
    gameVerify->add_option("--graph", gvGraph)->required();
    gameVerify->add_option("--strategy", gvStrategy)->required();
    bool gvLoops = false;
    gameVerify->add_flag("--loops", gvLoops);

    // ---- monotonize ----
    auto* mono = app.add_subcommand("monotonize", "strategy tree plus cleanup, with audit");
    std::string moGraph, moAudit, moOut, moPtd, moDot;
    int moK = 1, moQ = 1;
    mono->add_option("--graph", moGraph)->required();
    mono->add_option("-k", moK)->required();
    mono->add_option("-q", moQ)->required();
    mono->add_option("--audit", moAudit, "step records as JSON lines");
    mono->add_option("--out", moOut, "resulting tree-decomposition");
    mono->add_option("--ptd", moPtd, "resulting exact pre-tree-decomposition");
    mono->add_option("--dot", moDot, "the strategy tree, exact edges solid");

    // ---- hom ----
    auto* hom = app.add_subcommand("hom", "homomorphism counting");
    std::string homFrom, homTo, homAlgo = "parallel";
    hom->add_option("-f,--from", homFrom)->required();
    hom->add_option("-g,--to", homTo)->required();
    hom->add_option("--algorithm", homAlgo)->check(CLI::IsMember({"serial", "parallel", "dp"}));

    // ---- qg ----
    auto* qg = app.add_subcommand("qg", "quantum-graph algebra");
    qg->require_subcommand(1);
    auto* qgProd = qg->add_subcommand("product");
    std::string qpA, qpB, qpOut;
    qgProd->add_option("-a", qpA)->required();
    qgProd->add_option("-b", qpB)->required();
    qgProd->add_option("--out", qpOut);
    auto* qgInt = qg->add_subcommand("interpolate");
    std::string qiIn, qiPlus, qiMinus, qiOut;
    qgInt->add_option("--in", qiIn)->required();
    qgInt->add_option("--plus", qiPlus)->required();
    qgInt->add_option("--minus", qiMinus)->required();
    qgInt->add_option("--out", qiOut);
    auto* qgFrom = qg->add_subcommand("from-formula");
    std::string qfFormula, qfOut;
    int qfN = 1, qfK = 1, qfQ = 1;
    bool qfGuarded = false;
    qgFrom->add_option("--formula", qfFormula)->required();
    qgFrom->add_option("-n", qfN)->required();
    qgFrom->add_option("-k", qfK)->required();
    qgFrom->add_option("-q", qfQ)->required();
    qgFrom->add_flag("--guarded", qfGuarded);
    qgFrom->add_option("--out", qfOut);
    auto* qgHom = qg->add_subcommand("hom");
    std::string qhIn, qhGraph;
    qgHom->add_option("--in", qhIn)->required();
    qgHom->add_option("-g", qhGraph)->required();

    // ---- formula ----
    auto* form = app.add_subcommand("formula", "counting-logic formulas");
    form->require_subcommand(1);
    auto* formEval = form->add_subcommand("eval");
    std::string feGraph, feFormula;
    formEval->add_option("--graph", feGraph)->required();
    formEval->add_option("--formula", feFormula)->required();
    auto* formFrom = form->add_subcommand("from-ct");
    std::string ffCt;
    long long ffM = 1;
    int ffCap = 8;
    bool ffGuarded = false;
    formFrom->add_option("--ct", ffCt)->required();
    formFrom->add_option("-m", ffM)->required();
    formFrom->add_option("--cap", ffCap, "largest witness count a target can offer");
    formFrom->add_flag("--guarded", ffGuarded);

    // ---- cfi ----
    auto* cfiCmd = app.add_subcommand("cfi", "gadget graphs over a connected base");
    std::string cfGraph, cfTwist, cfOut, cfDot;
    bool cfPair = false;
    cfiCmd->add_option("--graph", cfGraph)->required();
    cfiCmd->add_option("--twist", cfTwist, "comma-separated twist vertices");
    cfiCmd->add_flag("--pair", cfPair, "emit both halves of the pair");
    cfiCmd->add_option("--out", cfOut);
    cfiCmd->add_option("--dot", cfDot);

    // ---- equiv ----
    auto* eq = app.add_subcommand("equiv", "equivalence deciders");
    eq->require_subcommand(1);
    auto* eqPebble = eq->add_subcommand("pebble");
    std::string epG, epH;
    int epK = 1, epQ = 1;
    eqPebble->add_option("-g", epG)->required();
    eqPebble->add_option("-x", epH, "second graph")->required();
    eqPebble->add_option("-k", epK)->required();
    eqPebble->add_option("-q", epQ)->required();
    auto* eqHom = eq->add_subcommand("hom");
    std::string ehG, ehH, ehFamily = "tkq";
    int ehK = 1, ehQ = 1, ehMax = 4;
    eqHom->add_option("-g", ehG)->required();
    eqHom->add_option("-x", ehH, "second graph")->required();
    eqHom->add_option("--family", ehFamily)->check(CLI::IsMember({"tkq", "gekq", "twtd"}));
    eqHom->add_option("-k", ehK)->required();
    eqHom->add_option("-q", ehQ)->required();
    eqHom->add_option("--max-n", ehMax);
    auto* eqGc = eq->add_subcommand("gc");
    std::string egG, egH;
    int egK = 1, egQ = 1, egMax = 3;
    eqGc->add_option("-g", egG)->required();
    eqGc->add_option("-x", egH, "second graph")->required();
    eqGc->add_option("-k", egK)->required();
    eqGc->add_option("-q", egQ)->required();
    eqGc->add_option("--max-n", egMax);

    // ---- grid-bounds ----
    auto* gb = app.add_subcommand("grid-bounds", "round bounds on grids, with playout");
    int gbH = 4, gbL = 9;
    bool gbVerify = false;
    gb->add_option("--height", gbH)->required();
    gb->add_option("--length", gbL)->required();
    gb->add_flag("--verify", gbVerify, "build and play out the sweep strategy");

    // ---- separate ----
    auto* sep = app.add_subcommand("separate", "instance-level separation report");
    int sepK = 2, sepQ = 3, sepCap = 12;
    sep->add_option("-k", sepK)->required();
    sep->add_option("-q", sepQ)->required();
    sep->add_option("--pebble-cap", sepCap);

    CLI11_PARSE(app, argc, argv);

    if (*mem) {
        auto g = read_graph_file(memGraph);
        auto res = membership(g, memK, memQ);
        if (json) {
            nlohmann::json j;
            j["in"] = res.in;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << (res.in ? "in" : "out") << "\n";
        }
        if (res.in && !memWitness.empty()) spill(memWitness, res.witness->to_json());
        return res.in ? 0 : 1;
    }

    if (*dec) {
        auto g = read_graph_file(decGraph);
        auto res = membership(g, decK, decQ);
        if (!res.in) {
            std::cout << "out\n";
            return 1;
        }
        std::string payload, dot;
        if (decKind == "ct") {
            payload = res.witness->to_json();
        } else {
            auto td = ct_to_td(*res.witness);
            if (decKind == "td") {
                payload = td.to_json();
                dot = td.to_dot();
            } else {
                auto pfc = td_to_pfc(g, make_nice(g, td), decK);
                payload = pfc.to_json();
            }
        }
        if (!decOut.empty())
            spill(decOut, payload);
        else
            std::cout << payload << "\n";
        if (!decDot.empty() && !dot.empty()) spill(decDot, dot);
        return 0;
    }

    if (*conv) {
        auto g = read_graph_file(convGraph);
        TreeDecomposition td;
        if (convFrom == "td") {
            td = TreeDecomposition::from_json(slurp(convIn));
        } else if (convFrom == "pfc") {
            td = pfc_to_td(g, PebbleForestCover::from_json(slurp(convIn)));
        } else {
            td = ct_to_td(ConstructionTree::from_json(slurp(convIn)));
        }
        auto check = validate_td(g, td);
        if (!check.ok) throw std::runtime_error("input witness invalid: " + check.error);
        std::string payload;
        if (convTo == "td")
            payload = td.to_json();
        else if (convTo == "pfc")
            payload = td_to_pfc(g, make_nice(g, td), convK).to_json();
        else
            payload = td_to_ct(g, td, convK, convQ).to_json();
        if (!convOut.empty())
            spill(convOut, payload);
        else
            std::cout << payload << "\n";
        return 0;
    }

    if (*gameSolve) {
        auto g = read_graph_file(gsGraph);
        if (gsLoops) g = with_loops(g);
        auto res = solve(g, gsK, gsQ, parse_variant(gsVariant));
        std::cout << (res.cop_wins ? "Cop wins" : "Robber wins") << "\n";
        if (res.cop_wins && !gsStrategy.empty()) spill(gsStrategy, res.strategy->to_json());
        return res.cop_wins ? 0 : 1;
    }

    if (*gameVerify) {
        auto g = read_graph_file(gvGraph);
        if (gvLoops) g = with_loops(g);
        auto sigma = CopStrategy::from_json(slurp(gvStrategy));
        auto check = verify_strategy(g, sigma, sigma.k, sigma.q, sigma.variant);
        if (check.ok) {
            std::cout << "ok: wins within " << check.max_rounds_used << " rounds\n";
            return 0;
        }
        std::cout << "failed: " << check.error << "\n";
        for (auto& line : check.losing_line) std::cout << "  " << line << "\n";
        return 1;
    }

    if (*mono) {
        auto g = read_graph_file(moGraph);
        auto gl = g.has_loop() ? g : with_loops(g);
        auto res = solve(gl, moK, moQ, Variant::ECR);
        if (!res.cop_wins) {
            std::cout << "Robber wins: nothing to monotonize\n";
            return 1;
        }
        auto st = strategy_tree(gl, *res.strategy);
        ExactifyAudit audit;
        auto exact = exactify(st, &audit);
        std::cout << "strategy tree: width " << ptd_width(st) << " depth " << ptd_depth(st)
                  << "; exact: width " << ptd_width(exact) << " depth " << ptd_depth(exact)
                  << "\n";
        if (!moAudit.empty()) spill(moAudit, audit.to_jsonl());
        if (!moPtd.empty()) spill(moPtd, exact.to_json());
        if (!moDot.empty()) spill(moDot, st.to_dot());
        if (!moOut.empty()) spill(moOut, exact_ptd_to_td(exact).to_json());
        return 0;
    }

    if (*hom) {
        auto f = read_graph_file(homFrom), g = read_graph_file(homTo);
        long long count = homAlgo == "serial" ? hom_count_serial(f, g)
                          : homAlgo == "dp"   ? hom_count_dp(f, g)
                                              : hom_count(f, g);
        std::cout << count << "\n";
        return 0;
    }

    if (*qgProd) {
        auto a = QuantumGraph::from_json(slurp(qpA)), b = QuantumGraph::from_json(slurp(qpB));
        auto out = qg_product(a, b);
        if (!qpOut.empty())
            spill(qpOut, out.to_json());
        else
            std::cout << out.to_json() << "\n";
        return 0;
    }
    if (*qgInt) {
        auto in = QuantumGraph::from_json(slurp(qiIn));
        auto out = interpolate(in, parse_rationals(qiPlus), parse_rationals(qiMinus));
        if (!qiOut.empty())
            spill(qiOut, out.to_json());
        else
            std::cout << out.to_json() << "\n";
        return 0;
    }
    if (*qgFrom) {
        FormulaArena arena;
        int phi = arena.parse(qfFormula);
        auto out = qfGuarded ? qg_from_guarded_formula(arena, phi, qfN, qfK, qfQ)
                             : qg_from_formula(arena, phi, qfN, qfK, qfQ);
        if (!qfOut.empty())
            spill(qfOut, out.to_json());
        else
            std::cout << out.to_json() << "\n";
        return 0;
    }
    if (*qgHom) {
        auto in = QuantumGraph::from_json(slurp(qhIn));
        std::cout << hom_count_quantum(in, read_graph_file(qhGraph)).str() << "\n";
        return 0;
    }

    if (*formEval) {
        FormulaArena arena;
        int phi = arena.parse(feFormula);
        bool holds = arena.evaluate(read_graph_file(feGraph), phi);
        std::cout << (holds ? "true" : "false") << "\n";
        return holds ? 0 : 1;
    }
    if (*formFrom) {
        FormulaArena arena;
        auto ct = ConstructionTree::from_json(slurp(ffCt));
        int phi = ffGuarded ? guarded_formula_from_ct(arena, ct, ffM, ffCap)
                            : formula_from_ct(arena, ct, ffM, ffCap);
        std::cout << arena.print(phi) << "\n";
        std::cerr << "qr " << arena.qr(phi) << (arena.is_guarded(phi) ? ", guarded" : "") << "\n";
        return 0;
    }

    if (*cfiCmd) {
        auto g = read_graph_file(cfGraph);
        if (cfPair) {
            auto [g0, g1] = cfi_pair(g);
            std::ostringstream out;
            write_graph_text(g0, out);
            out << "---\n";
            write_graph_text(g1, out);
            if (!cfOut.empty())
                spill(cfOut, out.str());
            else
                std::cout << out.str();
            return 0;
        }
        std::uint64_t twist = 0;
        std::istringstream ss(cfTwist);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) twist |= bit(std::stoi(item));
        auto gadget = cfi(g, twist);
        std::ostringstream out;
        write_graph_text(gadget.graph, out);
        if (!cfOut.empty())
            spill(cfOut, out.str());
        else
            std::cout << out.str();
        if (!cfDot.empty()) spill(cfDot, graph_to_dot(gadget.graph, "cfi"));
        return 0;
    }

    if (*eqPebble) {
        auto g = read_graph_file(epG), h = read_graph_file(epH);
        auto winner = bijective_pebble_game(g, h, epK, epQ);
        std::cout << (winner == PebbleWinner::Duplicator ? "Duplicator wins" : "Spoiler wins")
                  << "\n";
        return winner == PebbleWinner::Duplicator ? 0 : 1;
    }
    if (*eqHom) {
        auto g = read_graph_file(ehG), h = read_graph_file(ehH);
        FamilyKind kind = ehFamily == "tkq"    ? FamilyKind::Tkq
                          : ehFamily == "gekq" ? FamilyKind::GEkq
                                               : FamilyKind::TwTd;
        auto family = enumerate_family(kind, ehK, ehQ, ehMax);
        auto res = hom_indistinguishable(g, h, family);
        if (res.indistinguishable) {
            std::cout << "indistinguishable up to " << ehMax << " vertices ("
                      << family.members.size() << " members)\n";
            return 0;
        }
        std::cout << "distinguished: counts " << res.count_g << " vs " << res.count_h << "\n";
        write_graph_text(*res.counterexample, std::cout);
        return 1;
    }
    if (*eqGc) {
        auto g = read_graph_file(egG), h = read_graph_file(egH);
        auto res = gc_equivalent(g, h, egK, egQ, egMax);
        if (!res.refuted) {
            std::cout << "equivalent up to size " << res.bound << "\n";
            return 0;
        }
        std::cout << "refuted\n";
        if (res.witness) write_graph_text(*res.witness, std::cout);
        return 1;
    }

    if (*gb) {
        int h = gbH, l = gbL;
        long long lower = (long long)h * (l - h + 2) / 4;
        long long upper = (long long)l * h / 4 + h + 1;
        std::cout << "robber holds " << h + 1 << " cops for " << lower
                  << " rounds; the sweep wins within " << upper << "\n";
        if (gbVerify) {
            auto sigma = grid_cop_strategy(h, l);
            auto check = verify_strategy(grid(h, l), sigma, h + 1, (int)upper, Variant::CR);
            if (!check.ok) {
                std::cout << "playout failed: " << check.error << "\n";
                return 1;
            }
            std::cout << "playout ok within " << check.max_rounds_used << " rounds\n";
        }
        return 0;
    }

    if (*sep) {
        auto report = separation_experiment(sepK, sepQ, sepCap);
        if (json) {
            std::cout << report.to_json() << "\n";
        } else if (!report.witness_found) {
            std::cout << report.note << "\n";
        } else {
            std::cout << "witness: path on " << report.witness.num_vertices() << " vertices\n"
                      << "robber wins the " << sepK << "-cop " << sepQ << "-round game: "
                      << (report.robber_wins ? "yes" : "no") << "\n"
                      << "treewidth " << report.treewidth << ", treedepth " << report.treedepth
                      << "\n";
            if (report.pebble_checked)
                std::cout << "duplicator survives " << sepQ << " rounds on the gadget pair: "
                          << (report.duplicator_wins ? "yes" : "no") << "\n";
            std::cout << "gadget hom counts: " << report.hom_g0 << " vs " << report.hom_g1
                      << "\n";
        }
        return report.witness_found ? 0 : 1;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

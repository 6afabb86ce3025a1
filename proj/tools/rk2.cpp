// Command-line front end: element I/O, transforms, group actions, pairings
// and the verification suites.  All data is interchanged as JSON with
// symbolic (never floating-point) scalars.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rk2/json_io.hpp"
#include "rk2/verify.hpp"

using namespace rk2;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open input file " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    return j;
}

void write_json_out(const json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot open output file " + path);
    out << j.dump(2) << "\n";
}

GammaElement parse_gamma_arg(const std::string& s) {
    return gamma_from_json(json::parse(s));
}

int print_report(const Report& rep, bool as_json) {
    if (as_json) {
        std::cout << rep.to_json().dump(2) << "\n";
    } else {
        for (const auto& c : rep.checks) {
            std::cout << (c.passed ? "[pass] " : "[FAIL] ") << c.name << "\n";
            if (!c.passed && !c.witness.is_null())
                std::cout << "       witness: " << c.witness.dump() << "\n";
        }
        std::cout << (rep.all_passed() ? "all checks passed" : "FAILURES present") << "\n";
    }
    return rep.all_passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact harmonic analysis on the rank-2 value group"};
    app.require_subcommand(1);

    // verify ----------------------------------------------------------------
    std::string suite = "all";
    std::uint64_t seed = 1;
    int size = 0;
    bool as_json = false;
    auto* verify = app.add_subcommand("verify", "run a named invariant suite");
    verify->add_option("--suite", suite, "suite name or 'all'");
    verify->add_option("--seed", seed, "generator seed");
    verify->add_option("--size", size, "number of randomized cases");
    verify->add_flag("--json", as_json, "emit the report as JSON");

    // fourier ---------------------------------------------------------------
    std::string gamma_arg = "[0,1]", in_path, in2_path, out_path;
    auto* fourier = app.add_subcommand("fourier", "transform an element file");
    fourier->add_option("--gamma", gamma_arg, "transform parameter [g1,g2]");
    fourier->add_option("--in", in_path, "input element JSON")->required();
    fourier->add_option("--out", out_path, "output file (default stdout)");

    // pair ------------------------------------------------------------------
    auto* pair = app.add_subcommand("pair", "pair a function file with a distribution file");
    pair->add_option("--in", in_path, "rank-2 function JSON")->required();
    pair->add_option("--in2", in2_path, "rank-2 distribution JSON")->required();
    pair->add_flag("--json", as_json, "emit the value as JSON");

    // heis ------------------------------------------------------------------
    std::string heis_op = "mul", repr = "quad", xarg, yarg, alpha_arg;
    auto* heis = app.add_subcommand("heis", "group operations");
    heis->add_option("op", heis_op, "mul | act | iso")->required();
    heis->add_option("--repr", repr, "quad | tilde");
    heis->add_option("--x", xarg, "first element");
    heis->add_option("--y", yarg, "second element");
    heis->add_option("--alpha", alpha_arg, "base point for iso output (default [0,\"-inf\"])");
    heis->add_option("--in", in_path, "element file (for act)");
    heis->add_option("--out", out_path, "output file");

    // act -------------------------------------------------------------------
    std::string gquad = "[0,0,0,0]";
    auto* act = app.add_subcommand("act", "apply a group element to an element file");
    act->add_option("--g", gquad, "quadruple [a,b,c,m]");
    act->add_option("--in", in_path, "element file")->required();
    act->add_option("--out", out_path, "output file (default stdout)");

    // oracle ----------------------------------------------------------------
    int oracle_p = 2, oracle_M = 3;
    std::string oracle_suite = "all";
    auto* oracle = app.add_subcommand("oracle", "finite local-field model checks");
    oracle->add_option("--p", oracle_p, "residue characteristic (prime)");
    oracle->add_option("--M", oracle_M, "window radius");
    oracle->add_option("--suite", oracle_suite, "'all' or a check-name substring");
    oracle->add_flag("--json", as_json, "emit the report as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) return print_report(run_suite(suite, seed, size), as_json);

        if (*oracle) {
            Report rep = oracle_checks(oracle_p, oracle_M);
            if (oracle_suite != "all") {
                Report filtered{rep.suite, {}};
                for (auto& c : rep.checks)
                    if (c.name.find(oracle_suite) != std::string::npos)
                        filtered.checks.push_back(c);
                rep = filtered;
            }
            return print_report(rep, true);
        }

        if (*fourier) {
            GammaElement g = parse_gamma_arg(gamma_arg);
            json in = read_json_file(in_path);
            std::string schema = in.value("schema", "");
            json out;
            if (schema == "rank2fn")
                out = to_json(fourier_rank2_fn(rank2fn_from_json(in), g));
            else if (schema == "rank2dist")
                out = to_json(fourier_rank2_dist(rank2dist_from_json(in), g));
            else
                throw SchemaError("input schema must be rank2fn or rank2dist");
            write_json_out(out, out_path);
            return 0;
        }

        if (*pair) {
            RankTwoFunction q = rank2fn_from_json(read_json_file(in_path));
            RankTwoDistribution s = rank2dist_from_json(read_json_file(in2_path));
            Scalar v = pair_rank2(q, s);
            if (as_json)
                std::cout << to_json(v).dump(2) << "\n";
            else
                std::cout << v.to_string() << "\n";
            return 0;
        }

        if (*heis) {
            if (heis_op == "mul") {
                if (repr == "quad") {
                    HeisQuad x = quad_from_json(json::parse(xarg));
                    HeisQuad y = quad_from_json(json::parse(yarg));
                    write_json_out(to_json(quad_mul(x, y)), out_path);
                } else if (repr == "tilde") {
                    HeisTilde x = tilde_from_json(json::parse(xarg));
                    HeisTilde y = tilde_from_json(json::parse(yarg));
                    write_json_out(to_json(tilde_mul(x, y)), out_path);
                } else {
                    throw SchemaError("repr must be quad or tilde");
                }
                return 0;
            }
            if (heis_op == "iso") {
                if (xarg.empty()) throw SchemaError("iso requires --x");
                json xj = json::parse(xarg);
                if (xj.is_array()) {
                    HeisQuad q = quad_from_json(xj);
                    if (q.m != 0)
                        throw SchemaError("iso maps triples; use quadruples with m = 0");
                    HeisTilde t = heis_iso(q.a, q.b, q.c);
                    if (!alpha_arg.empty())
                        t = lambda_transport(t, breve_from_json(json::parse(alpha_arg)));
                    write_json_out(to_json(t), out_path);
                } else {
                    HeisTriple t = heis_iso_inv(tilde_from_json(xj));
                    write_json_out(json::array({t.a, t.b, t.c}), out_path);
                }
                return 0;
            }
            if (heis_op == "act") {
                if (xarg.empty()) throw SchemaError("act requires --x with a quadruple");
                gquad = xarg;
                // fall through to the shared action path below
            } else {
                throw SchemaError("unknown heis operation: " + heis_op);
            }
        }

        if (*act || (*heis && heis_op == "act")) {
            HeisQuad q = quad_from_json(json::parse(gquad));
            json in = read_json_file(in_path);
            std::string schema = in.value("schema", "");
            HeisExt g0 = ext_from_quad(q);
            json out;
            if (schema == "rank2fn") {
                RankTwoFunction x = rank2fn_from_json(in);
                HeisExt g{lambda_transport(g0.f, x.alpha()), g0.m};
                out = to_json(act_ext(g, x));
            } else if (schema == "rank2dist") {
                RankTwoDistribution x = rank2dist_from_json(in);
                HeisExt g{lambda_transport(g0.f, x.alpha()), g0.m};
                out = to_json(act_ext(g, x));
            } else {
                throw SchemaError("input schema must be rank2fn or rank2dist");
            }
            write_json_out(out, out_path);
            return 0;
        }
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const MismatchError& e) {
        std::cerr << "mismatch: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

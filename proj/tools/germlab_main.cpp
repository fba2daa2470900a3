// germlab: exact Kloosterman-type orbital integrals and Shalika germs over
// F_p((t)), with all values in Q(zeta_{4p}). Every subcommand prints a JSON
// document (or CSV for `sweep`) on stdout; reruns are byte-identical.
//
// Exit codes: 0 ok, 2 precondition violation, 3 stabilization failure,
// 4 enumeration budget exceeded.

#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "germlab/characters.hpp"
#include "germlab/germs.hpp"
#include "germlab/integrate.hpp"
#include "germlab/orbital.hpp"
#include "germlab/symbols.hpp"

using namespace germlab;
using ordered_json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string subcommand;
    int p = 7;
    int r = 2;
    int m = 1;
    int va = 3;
    std::vector<int> ua = {1};
    int radius = 2;
    std::string mode = "dp";
    long long budget = 0; // 0: use GERMLAB_BUDGET or the built-in default
    bool pretty = false;
};

ordered_json value_json(const ExactValue& v) {
    ordered_json j;
    j["p"] = v.prime();
    j["basis"] = "zeta_" + std::to_string(4 * v.prime()) + "_power";
    std::vector<std::string> coeffs;
    for (int k = 0; k < v.dim(); ++k) coeffs.push_back(v.coeff(k).to_string());
    j["coeffs"] = coeffs;
    return j;
}

void print_value(const RunConfig& cfg, const ExactValue& v) {
    if (cfg.pretty) {
        std::cout << v.to_pretty() << "\n";
        return;
    }
    ordered_json j;
    j["value"] = value_json(v);
    std::cout << j.dump() << "\n";
}

void print_pair(const RunConfig& cfg, const char* lname, const ExactValue& l, const char* rname,
                const ExactValue& r, bool equal) {
    if (cfg.pretty) {
        std::cout << lname << " = " << l.to_pretty() << "\n"
                  << rname << " = " << r.to_pretty() << "\n"
                  << "equal = " << (equal ? "true" : "false") << "\n";
        return;
    }
    ordered_json j;
    j[lname] = value_json(l);
    j[rname] = value_json(r);
    j["equal"] = equal;
    std::cout << j.dump() << "\n";
}

LaurentSeries scaling_from(const RunConfig& cfg) {
    if (cfg.va < 1) throw PreconditionError("va must be >= 1");
    int prec = 3 * cfg.va + cfg.m + 10;
    LaurentSeries unit = LaurentSeries::from_coeffs(cfg.p, 0, cfg.ua, prec);
    if (unit.is_zero() || unit.valuation() != 0)
        throw PreconditionError("ua must define a unit (nonzero constant coefficient)");
    return unit.shift(cfg.va);
}

GermParams germ_params(const RunConfig& cfg) {
    return GermParams(cfg.p, cfg.r, cfg.m, scaling_from(cfg));
}

long long budget_of(const RunConfig& cfg) {
    return cfg.budget > 0 ? cfg.budget : enumeration_budget();
}

EvalMode mode_of(const RunConfig& cfg) {
    if (cfg.mode == "dp") return EvalMode::dp;
    if (cfg.mode == "naive") return EvalMode::naive;
    throw PreconditionError("mode must be dp or naive");
}

MatrixLF base_matrix(const std::string& name, int p, int r) {
    if (name == "wg") return MatrixLF::antidiag_ones(p, r);
    if (name == "id") return MatrixLF::identity(p, r);
    throw PreconditionError("base must be wg or id");
}

OrbitLabel orbit_from(const RunConfig& cfg, const std::string& comp_str,
                      const std::string& torus_str) {
    std::vector<int> parts;
    {
        std::istringstream is(comp_str);
        std::string tok;
        while (std::getline(is, tok, ',')) parts.push_back(std::stoi(tok));
    }
    std::vector<LaurentSeries> torus;
    {
        std::istringstream is(torus_str);
        std::string tok;
        while (std::getline(is, tok, '|')) torus.push_back(LaurentSeries::decode(cfg.p, tok));
    }
    return OrbitLabel(Composition(parts), torus);
}

// the acceptance grid as a CSV table: one row per identity per grid point
int run_sweep(const RunConfig& cfg) {
    std::cout << "p,r,m,va,unit,check,ok\n";
    bool all_ok = true;
    for (int p : {7, 11, 13}) {
        std::vector<int> units = {1, first_nonresidue(p).value};
        for (int r : {2, 3, 4, 5}) {
            for (int va : {3, 4}) {
                for (int unit : units) {
                    RunConfig g = cfg;
                    g.p = p;
                    g.r = r;
                    g.va = va;
                    g.ua = {unit};
                    GermParams gp = germ_params(g);
                    auto emit = [&](const char* check, bool ok) {
                        all_ok = all_ok && ok;
                        std::cout << p << "," << r << "," << g.m << "," << va << "," << unit
                                  << "," << check << "," << (ok ? 1 : 0) << "\n";
                    };
                    if (r <= 3 && r % p != 0)
                        emit("j_closed", eval_J(gp, EvalMode::dp) == closed_J(gp));
                    if (p > 2 * r + 1) {
                        emit("i_closed", eval_I(gp, EvalMode::dp) == closed_I(gp));
                        emit("ratio", eval_I(gp, EvalMode::dp) == ratio_prop(gp));
                        emit("germ_lk", germ_L(gp) == germ_L_via_K(gp));
                    }
                }
            }
        }
    }
    return all_ok ? 0 : 1;
}

int run(const RunConfig& cfg, CLI::App& app) {
    const std::string& cmd = cfg.subcommand;
    if (cmd == "j-sum" || cmd == "i-sum") {
        GermParams gp = germ_params(cfg);
        ExactValue v = cmd == "j-sum" ? eval_J(gp, mode_of(cfg), budget_of(cfg))
                                      : eval_I(gp, mode_of(cfg), budget_of(cfg));
        print_value(cfg, v);
    } else if (cmd == "closed-j") {
        print_value(cfg, closed_J(germ_params(cfg)));
    } else if (cmd == "closed-i") {
        print_value(cfg, closed_I(germ_params(cfg)));
    } else if (cmd == "germ-k") {
        print_value(cfg, germ_K(germ_params(cfg)));
    } else if (cmd == "germ-l") {
        print_value(cfg, germ_L(germ_params(cfg)));
    } else if (cmd == "ratio-check") {
        GermParams gp = germ_params(cfg);
        ExactValue lhs = eval_I(gp, EvalMode::dp);
        ExactValue rhs = ratio_prop(gp);
        print_pair(cfg, "lhs", lhs, "rhs", rhs, lhs == rhs);
    } else if (cmd == "identities") {
        int r_max = app.get_option("--r-max")->as<int>();
        bool ok = true;
        for (int r = 1; r <= r_max; ++r) ok = ok && bracket_identities(r);
        for (int r = 2; r <= std::min(r_max, 200); ++r) ok = ok && count_c2(r) == count_c2_direct(r);
        ordered_json j;
        j["ok"] = ok;
        std::cout << j.dump() << "\n";
        return ok ? 0 : 1;
    } else if (cmd == "diag-quadratic") {
        int ell = app.get_option("--ell")->as<int>();
        auto [t, d] = diagonalize_quadratic(ell, cfg.p);
        auto a = quadratic_form_matrix(ell, cfg.p);
        bool ok = true;
        for (int i = 0; i < ell; ++i)
            for (int j = 0; j < ell; ++j) {
                ResidueElem s(0, cfg.p);
                for (int k = 0; k < ell; ++k)
                    for (int l = 0; l < ell; ++l)
                        s = s + t[k][i] * a[k][l] * t[l][j];
                ResidueElem want = i == j ? d[i] : ResidueElem(0, cfg.p);
                ok = ok && s == want;
            }
        ordered_json j;
        std::vector<std::string> diag;
        for (const auto& e : d) diag.push_back(std::to_string(e.value));
        std::vector<std::vector<std::string>> tm;
        for (const auto& row : t) {
            tm.emplace_back();
            for (const auto& e : row) tm.back().push_back(std::to_string(e.value));
        }
        j["d"] = diag;
        j["t"] = tm;
        j["ok"] = ok;
        std::cout << j.dump() << "\n";
        return ok ? 0 : 1;
    } else if (cmd == "hilbert") {
        auto a = LaurentSeries::decode(cfg.p, app.get_option("--a")->as<std::string>());
        auto b = LaurentSeries::decode(cfg.p, app.get_option("--b")->as<std::string>());
        ordered_json j;
        j["value"] = hilbert(a, b);
        std::cout << j.dump() << "\n";
    } else if (cmd == "weil") {
        auto a = LaurentSeries::decode(cfg.p, app.get_option("--a")->as<std::string>());
        print_value(cfg, weil_gamma(a));
    } else if (cmd == "orbital-i" || cmd == "orbital-j") {
        OrbitLabel o = orbit_from(cfg, app.get_option("--comp")->as<std::string>(),
                                  app.get_option("--torus")->as<std::string>());
        bool c1 = app.get_option("--c1-scale")->as<bool>();
        bool sym = app.get_option("--symmetric")->as<bool>();
        ExactValue scale =
            c1 ? ExactValue::from_rational(
                     cfg.p, Rational::int_pow(cfg.p, cfg.m * static_cast<int>(count_c1_exponent(
                                                         o.rank()))))
               : ExactValue::one(cfg.p);
        CongruenceFunction f(base_matrix(app.get_option("--base")->as<std::string>(), cfg.p,
                                         o.rank()),
                             cfg.m, scale, sym);
        ExactValue v = cmd == "orbital-i" ? orbital_I(o, f, cfg.radius, budget_of(cfg))
                                          : orbital_J(o, f, cfg.radius, budget_of(cfg));
        print_value(cfg, v);
    } else if (cmd == "unit-lemma") {
        int z = app.get_option("--z")->as<int>();
        print_value(cfg, unit_sym_test(cfg.r, LaurentSeries::from_int(cfg.p, z, 30), cfg.m));
    } else if (cmd == "decomp-check") {
        int count = app.get_option("--count")->as<int>();
        unsigned seed = app.get_option("--seed")->as<unsigned>();
        std::mt19937_64 gen(seed);
        auto rnd = [&](int lo, int hi) {
            return static_cast<int>(lo + gen() % static_cast<unsigned>(hi - lo + 1));
        };
        int passes = 0;
        for (int i = 0; i < count; ++i) {
            std::vector<int> cs(4);
            for (auto& c : cs) c = rnd(0, cfg.p - 1);
            cs[0] = rnd(1, cfg.p - 1);
            LaurentSeries t1 = LaurentSeries::from_coeffs(cfg.p, rnd(-1, 1), cs, rnd(-1, 1) + 8);
            for (auto& c : cs) c = rnd(0, cfg.p - 1);
            cs[0] = rnd(1, cfg.p - 1);
            LaurentSeries t2 = LaurentSeries::from_coeffs(cfg.p, rnd(-1, 1), cs, rnd(-1, 1) + 8);
            MatrixLF base(cfg.p, 2);
            bool swap = rnd(0, 1) == 1;
            base.set(0, swap ? 1 : 0, LaurentSeries::from_int(cfg.p, rnd(1, cfg.p - 1), 30));
            base.set(1, swap ? 0 : 1, LaurentSeries::from_int(cfg.p, rnd(1, cfg.p - 1), 30));
            CongruenceFunction f(base, cfg.m, ExactValue::one(cfg.p), false);
            if (check_decomposition_J(t1, t2, f).equal && check_decomposition_I(t1, t2, f).equal)
                ++passes;
        }
        ordered_json j;
        j["count"] = count;
        j["passes"] = passes;
        j["ok"] = passes == count;
        std::cout << j.dump() << "\n";
        return passes == count ? 0 : 1;
    } else if (cmd == "expansion-check") {
        std::string fb = app.get_option("--f-base")->as<std::string>();
        std::string beta_enc = app.get_option("--beta")->as<std::string>();
        LaurentSeries beta = beta_enc.empty() ? LaurentSeries::from_int(cfg.p, 1, 40)
                                              : LaurentSeries::decode(cfg.p, beta_enc);
        CongruenceFunction f(base_matrix(fb, cfg.p, 2), cfg.m, ExactValue::one(cfg.p), false);
        ExpansionReport rep = germ_expansion_check(beta, f, cfg.m, cfg.va);
        print_pair(cfg, "lhs", rep.lhs, "rhs", rep.rhs, rep.equal);
        return 0;
    } else if (cmd == "sweep") {
        return run_sweep(cfg);
    } else {
        throw PreconditionError("unknown subcommand");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Kloosterman orbital integrals and Shalika germs over F_p((t))"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string ua_str = "1";
    std::string comp = "1,1", torus, a_enc, b_enc, base = "wg", f_base = "wg", beta;
    int r_max = 200, ell = 2, z = 1, count = 20;
    unsigned seed = 1;

    auto add_common = [&](CLI::App* sub, bool needs_germ) {
        sub->add_option("--p", cfg.p, "odd prime (residue field size)")->required();
        sub->add_option("--m", cfg.m, "congruence level")->capture_default_str();
        sub->add_flag("--pretty", cfg.pretty, "human-readable value output");
        sub->add_option("--budget", cfg.budget, "enumeration budget override");
        if (needs_germ) {
            sub->add_option("--r", cfg.r, "rank")->capture_default_str();
            sub->add_option("--va", cfg.va, "valuation of the scaling element a")->capture_default_str();
            sub->add_option("--ua", ua_str, "unit part of a, comma-separated coefficients")->capture_default_str();
        }
    };

    std::vector<std::string> germ_cmds = {"j-sum",  "i-sum",  "closed-j",   "closed-i",
                                          "germ-k", "germ-l", "ratio-check"};
    for (const auto& name : germ_cmds) {
        auto* sub = app.add_subcommand(name);
        add_common(sub, true);
        if (name == "j-sum" || name == "i-sum")
            sub->add_option("--mode", cfg.mode, "naive or dp")->capture_default_str();
    }
    {
        auto* sub = app.add_subcommand("identities");
        sub->add_option("--r-max", r_max, "check the bracket identities up to this rank")->capture_default_str();
    }
    {
        auto* sub = app.add_subcommand("diag-quadratic");
        sub->add_option("--p", cfg.p, "odd prime")->required();
        sub->add_option("--ell", ell, "number of variables")->capture_default_str();
    }
    {
        auto* sub = app.add_subcommand("hilbert");
        sub->add_option("--p", cfg.p, "odd prime")->required();
        sub->add_option("--a", a_enc, "first argument, v=..;c=..;N=.. encoding")->required();
        sub->add_option("--b", b_enc, "second argument")->required();
    }
    {
        auto* sub = app.add_subcommand("weil");
        sub->add_option("--p", cfg.p, "odd prime")->required();
        sub->add_option("--a", a_enc, "argument, v=..;c=..;N=.. encoding")->required();
        sub->add_flag("--pretty", cfg.pretty);
    }
    for (const std::string name : {"orbital-i", "orbital-j"}) {
        auto* sub = app.add_subcommand(name);
        add_common(sub, false);
        sub->add_option("--comp", comp, "composition of r, e.g. 2,1")->capture_default_str();
        sub->add_option("--torus", torus, "torus values, |-separated encodings")->required();
        sub->add_option("--base", base, "support base point: wg or id")->capture_default_str();
        sub->add_flag("--c1-scale", "scale by vol(t^m O)^{-floor(r^2/4)}");
        sub->add_flag("--symmetric", "restrict the support to symmetric matrices");
        sub->add_option("--radius", cfg.radius, "coordinate window radius")->capture_default_str();
    }
    {
        auto* sub = app.add_subcommand("unit-lemma");
        add_common(sub, false);
        sub->add_option("--r", cfg.r, "rank")->capture_default_str();
        sub->add_option("--z", z, "r-th root of unity (as a residue)")->capture_default_str();
    }
    {
        auto* sub = app.add_subcommand("decomp-check");
        add_common(sub, false);
        sub->add_option("--count", count, "number of random functions")->capture_default_str();
        sub->add_option("--seed", seed, "random seed")->capture_default_str();
    }
    {
        auto* sub = app.add_subcommand("expansion-check");
        add_common(sub, false);
        sub->add_option("--va", cfg.va, "valuation of the scaling element")->capture_default_str();
        sub->add_option("--f-base", f_base, "support base point: wg or id")->capture_default_str();
        sub->add_option("--beta", beta, "unit beta as an encoding (default 1)");
    }
    {
        auto* sub = app.add_subcommand("sweep");
        sub->add_option("--m", cfg.m, "congruence level")->capture_default_str();
    }

    CLI11_PARSE(app, argc, argv);

    CLI::App* sub = app.get_subcommands().front();
    cfg.subcommand = sub->get_name();
    {
        std::istringstream is(ua_str);
        std::string tok;
        cfg.ua.clear();
        while (std::getline(is, tok, ',')) cfg.ua.push_back(std::stoi(tok));
        if (cfg.ua.empty()) cfg.ua = {1};
    }

    try {
        return run(cfg, *sub);
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violation: " << e.what() << "\n";
        return 2;
    } catch (const PrecisionError& e) {
        std::cerr << "precision: " << e.what() << "\n";
        return 2;
    } catch (const StabilizationError& e) {
        std::cerr << "stabilization failure: " << e.what() << "\n";
        return 3;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 4;
    } catch (const std::overflow_error& e) {
        std::cerr << "overflow: " << e.what() << "\n";
        return 2;
    }
}

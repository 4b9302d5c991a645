#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "phi3/bell.hpp"
#include "phi3/correlators.hpp"
#include "phi3/gamma_tower.hpp"
#include "phi3/inteq.hpp"
#include "phi3/schwinger.hpp"
#include "phi3/series_check.hpp"
#include "phi3/spectral.hpp"

using json = nlohmann::ordered_json;
using namespace phi3;

namespace {

// ---------------------------------------------------------------------------
// small formatting/parsing helpers

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json cplx_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

// parse "a", "a+bi", "a-bi", "bi", "i", "-i"
double parse_double(const std::string& v) {
    try {
        std::size_t pos = 0;
        const double r = std::stod(v, &pos);
        if (pos != v.size()) throw input_error("bad numeric literal: " + v);
        return r;
    } catch (const input_error&) {
        throw;
    } catch (const std::exception&) {
        throw input_error("bad numeric literal: " + v);
    }
}

cplx parse_complex(const std::string& s) {
    if (s.empty()) throw input_error("empty complex literal");
    std::string t = s;
    auto parse_real = [](const std::string& v) { return parse_double(v); };
    if (t.back() == 'i' || t.back() == 'j') {
        t.pop_back();
        for (std::size_t k = t.size(); k-- > 1;) {
            if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
                const std::string re = t.substr(0, k);
                std::string im = t.substr(k);
                if (im == "+") im = "1";
                if (im == "-") im = "-1";
                return {parse_real(re), parse_real(im)};
            }
        }
        if (t.empty() || t == "+") return {0.0, 1.0};
        if (t == "-") return {0.0, -1.0};
        return {0.0, parse_real(t)};
    }
    return {parse_real(t), 0.0};
}

struct ModelOptions {
    std::optional<double> lambda;
    std::optional<std::string> lambda2_str;
    std::string eigen = "linear";
    double xi = 1e8;
    int grid_n = 2000;
    double radius = 0.01;
    double mu2 = 1.0;
    int tower_cap = kTowerMaxB;

    void attach(CLI::App* cmd) {
        auto* l = cmd->add_option("--lambda", lambda, "coupling (real)");
        auto* l2 = cmd->add_option("--lambda2", lambda2_str,
                                   "squared coupling, complex 'a+bi' accepted");
        l->excludes(l2);
        l2->excludes(l);
        cmd->add_option("--eigen", eigen, "eigenvalue profile: linear | quadratic")
            ->check(CLI::IsMember({"linear", "quadratic"}));
        cmd->add_option("--xi", xi, "integral-equation cutoff Xi");
        cmd->add_option("--grid-n", grid_n, "integral-equation grid size");
        cmd->add_option("--radius", radius, "series extraction radius in lambda^2");
        cmd->add_option("--mu2", mu2, "squared mass scale");
        cmd->add_option("--tower-cap", tower_cap, "jet-order cap on boundary components");
    }

    EigenvalueFunction profile() const {
        if (eigen == "linear") return EigenvalueFunction::linear();
        return EigenvalueFunction::custom(
            [](double x) { return x * x + x; }, [](double x) { return 2.0 * x + 1.0; },
            [](double y) { return 0.5 * (std::sqrt(1.0 + 4.0 * y) - 1.0); });
    }

    Coupling coupling() const {
        if (lambda) return solve_coupling(cplx(*lambda), profile());
        if (lambda2_str) return solve_c(parse_complex(*lambda2_str), profile());
        return solve_c(cplx(0), profile());
    }
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot open output file: " + path);
    out << text;
}

std::vector<std::vector<double>> parse_boundaries(const std::string& s) {
    std::vector<std::vector<double>> out;
    std::string cur;
    std::vector<double> b;
    auto flush_num = [&] {
        if (cur.empty()) throw input_error("boundary syntax: empty entry");
        b.push_back(parse_double(cur));
        cur.clear();
    };
    for (char ch : s) {
        if (ch == ',') {
            flush_num();
        } else if (ch == '|') {
            flush_num();
            out.push_back(std::move(b));
            b.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    flush_num();
    out.push_back(std::move(b));
    return out;
}

// ---------------------------------------------------------------------------
// verify suites

struct CheckRow {
    std::string name;
    bool ok;
    std::string observed, expected;
    double tolerance;
};

json report_json(const std::string& suite, const std::vector<CheckRow>& rows) {
    json checks = json::array();
    bool all = true;
    for (const auto& r : rows) {
        all = all && r.ok;
        checks.push_back(json{{"name", r.name},
                              {"status", r.ok ? "pass" : "fail"},
                              {"observed", r.observed},
                              {"expected", r.expected},
                              {"tolerance", r.tolerance}});
    }
    return json{{"suite", suite}, {"passed", all}, {"checks", checks}};
}

std::vector<CheckRow> suite_bell(int max_n) {
    std::vector<CheckRow> rows;
    const int vals[] = {0, 1, -1, 2, 3};
    bool ok = true;
    std::string offender = "none";
    for (int n = 1; n <= max_n; ++n)
        for (int k = 0; k < n; ++k)
            for (int a : vals)
                for (int bb : vals)
                    if (!verify_bell_identity_1(n, k, Rational(a), Rational(bb))) {
                        ok = false;
                        offender = "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                   " alpha=" + std::to_string(a) + " beta=" + std::to_string(bb);
                    }
    rows.push_back({"bell_identity_sweep_n<=" + std::to_string(max_n), ok, offender,
                    "exact equality for all parameters", 0.0});
    return rows;
}

std::vector<CheckRow> suite_conjecture(int max_l, int max_n) {
    std::vector<CheckRow> rows;
    bool ok = true;
    std::string offender = "none";
    long cases = 0;
    for (int l = 0; l <= max_l; ++l)
        for (int n0 = 0; n0 <= max_n; ++n0)
            for (int n1 = 0; n1 <= max_n; ++n1)
                for (int n2 = 0; n2 <= max_n; ++n2)
                    for (int n3 = 0; n3 <= max_n; ++n3) {
                        if (n0 + n1 + n2 + n3 == 0) continue;
                        std::vector<int> counts{n0, n1, n2, n3};
                        ++cases;
                        if (!verify_conjecture(l, counts)) {
                            ok = false;
                            offender = "l=" + std::to_string(l) + " n=(" + std::to_string(n0) +
                                       "," + std::to_string(n1) + "," + std::to_string(n2) + "," +
                                       std::to_string(n3) + ")";
                        }
                    }
    rows.push_back({"conjecture_sweep_" + std::to_string(cases) + "_cases", ok, offender,
                    "exact polynomial equality", 0.0});
    bool fok = true;
    std::string foff = "none";
    for (int m = 0; m <= 4; ++m)
        for (int n2 = 0; n2 <= 3; ++n2)
            for (int n3 = 0; n3 <= 3; ++n3)
                for (int n4 = 0; n4 <= 3; ++n4) {
                    std::vector<int> counts{n2, n3, n4};
                    if (!verify_footnote_identity(m, counts)) {
                        fok = false;
                        foff = "m=" + std::to_string(m) + " n=(" + std::to_string(n2) + "," +
                               std::to_string(n3) + "," + std::to_string(n4) + ")";
                    }
                }
    rows.push_back({"footnote_identity_sweep", fok, foff, "exact rational equality", 0.0});
    return rows;
}

std::vector<CheckRow> suite_gamma(int max_b) {
    std::vector<CheckRow> rows;
    bool ok = true;
    std::string offender = "none";
    try {
        for (int B = 3; B <= max_b; ++B) {
            auto t = gamma_recursive(B);
            for (int M = 0; M <= B - 3; ++M) {
                auto [g, pw] = gamma_closed(B, M, t.arity);
                if (!(g == t.poly(M)) || pw != t.rho0_power()) {
                    ok = false;
                    offender = "B=" + std::to_string(B) + " M=" + std::to_string(M);
                }
            }
        }
    } catch (const internal_error& err) {
        ok = false;
        offender = err.what();
    }
    rows.push_back({"gamma_recursive_equals_closed_B<=" + std::to_string(max_b), ok, offender,
                    "exact MPoly equality + companion relation", 0.0});
    return rows;
}

std::vector<CheckRow> suite_inteq(const ModelOptions& mo) {
    std::vector<CheckRow> rows;
    const double lam = mo.lambda.value_or(0.3);
    auto g = inteq::Grid::geometric(mo.xi, mo.grid_n);
    auto m = inteq::cutoff_model(cplx(lam), mo.xi, mo.profile());
    std::vector<cplx> Wn(std::size_t(g.size()));
    for (int j = 0; j < g.size(); ++j) Wn[std::size_t(j)] = m.W(g.nodes[std::size_t(j)]);
    auto rep = inteq::residual_w(m.lambda2, m.e, g, Wn, m.W(1.0));
    rows.push_back({"closed_form_residual_sup", rep.sup < 1e-6, fmt(rep.sup), "< 1e-6", 1e-6});

    auto sol = inteq::solve_W_inteq(m.lambda2, m.e, g);
    double sup = 0.0;
    for (int j = 0; j < g.size(); ++j)
        sup = std::max(sup, std::abs(sol.Wn[std::size_t(j)] - Wn[std::size_t(j)]));
    rows.push_back({"solver_agrees_with_closed_form", sup < 1e-5, fmt(sup), "< 1e-5", 1e-5});
    return rows;
}

std::vector<CheckRow> suite_series(const ModelOptions&) {
    std::vector<CheckRow> rows;
    const double L = std::log(2.0);
    for (double x : {0.5, 1.0, 2.0}) {
        auto s = extract_G1(x, 2);
        const double d = 2 * x + 1;
        const double c1 = std::log(x + 1.0) / d;
        const double c3 = L * L / d - L * L / (d * d * d);
        const double c5 =
            L * L / d + (2 * L * L * L - L * L) / (d * d * d) - 2 * L * L * L / std::pow(d, 5);
        rows.push_back({"G1_order1_x=" + fmt(x), std::abs(s.coefficients[0] - c1) < 1e-7,
                        fmt(s.coefficients[0].real()), fmt(c1), 1e-7});
        rows.push_back({"G1_order3_x=" + fmt(x), std::abs(s.coefficients[1] - c3) < 1e-7,
                        fmt(s.coefficients[1].real()), fmt(c3), 1e-7});
        rows.push_back({"G1_order5_x=" + fmt(x), std::abs(s.coefficients[2] - c5) < 1e-7,
                        fmt(s.coefficients[2].real()), fmt(c5), 1e-7});
    }
    rows.push_back({"two_point_order2_(1,2)", check_order2_twopoint(1.0, 2.0), "", "< 1e-7", 1e-7});
    rows.push_back(
        {"two_point_order2_(0.5,3)", check_order2_twopoint(0.5, 3.0), "", "< 1e-7", 1e-7});
    return rows;
}

std::vector<CheckRow> suite_schwinger(const ModelOptions& mo) {
    std::vector<CheckRow> rows;
    const double lam = mo.lambda.value_or(0.3);
    auto cp = solve_coupling(cplx(lam));
    auto rep = positivity_check(cp, mo.mu2);
    rows.push_back({"real_coupling_Im_S2_negative",
                    rep.imaginary_part_sign == ImagSign::negative, fmt(rep.value.imag()),
                    "< 0", 0.0});
    rows.push_back({"real_coupling_verdict",
                    rep.verdict == StieltjesVerdict::stieltjes_violated,
                    rep.verdict == StieltjesVerdict::stieltjes_violated ? "stieltjes_violated"
                                                                        : "inconclusive",
                    "stieltjes_violated", 0.0});
    auto im = solve_c(parse_complex(mo.lambda2_str.value_or("-0.04")));
    auto rep2 = positivity_check(im, mo.mu2);
    const double sc = std::sqrt(im.c.real());
    const double err = std::abs(rep2.branch_points[0] - mo.mu2 * cplx(-1.0, sc));
    rows.push_back({"imaginary_coupling_branch_points", err < 1e-8, fmt(err), "< 1e-8", 1e-8});
    rows.push_back({"imaginary_coupling_verdict",
                    rep2.verdict == StieltjesVerdict::stieltjes_violated,
                    rep2.verdict == StieltjesVerdict::stieltjes_violated ? "stieltjes_violated"
                                                                         : "inconclusive",
                    "stieltjes_violated", 0.0});
    return rows;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar correlation functions of the cubic matrix model"};
    app.require_subcommand(1);
    const char* env_cfg = std::getenv("PHI3_CONFIG");
    app.set_config("--config", env_cfg ? env_cfg : "", "TOML-style config file");

    ModelOptions mo;
    std::string out_path, format = "json";

    auto* solve = app.add_subcommand("solve", "solve the normalisation for c and rho0");
    solve->configurable();
    solve->fallthrough();
    mo.attach(solve);
    solve->add_option("-o,--out", out_path, "output path (default stdout)");

    auto* eval = app.add_subcommand("eval", "evaluate correlators for a boundary spec");
    eval->configurable();
    eval->fallthrough();
    mo.attach(eval);
    std::string boundaries;
    bool big_x = false;
    eval->add_option("--boundaries", boundaries, "e.g. \"x1,x2|x3\" (x-space)")->required();
    eval->add_flag("--big-X", big_x, "interpret the entries as X-space arguments");
    eval->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    eval->add_option("-o,--out", out_path, "output path (default stdout)");

    auto* table = app.add_subcommand("table", "tabulate a correlator over a range (CSV)");
    table->configurable();
    table->fallthrough();
    mo.attach(table);
    std::string target = "W";
    double from = 1.0, to = 100.0;
    int steps = 100;
    table->add_option("--target", target, "W | G1 | S2")->check(CLI::IsMember({"W", "G1", "S2"}));
    table->add_option("--from", from, "range start");
    table->add_option("--to", to, "range end");
    table->add_option("--steps", steps, "number of rows");
    table->add_option("-o,--out", out_path, "output path (default stdout)");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->configurable();
    verify->fallthrough();
    mo.attach(verify);
    std::string suite = "all";
    int max_b = 9, max_l = 4, max_n = 8;
    verify->add_option("--suite", suite,
                       "bell | conjecture | gamma | inteq | series | schwinger | all")
        ->check(CLI::IsMember({"bell", "conjecture", "gamma", "inteq", "series", "schwinger",
                               "all"}));
    verify->add_option("--max-b", max_b, "gamma tower depth");
    verify->add_option("--max-l", max_l, "conjecture l bound");
    verify->add_option("--max-n", max_n, "bell sweep n bound / conjecture count bound");
    verify->add_option("-o,--out", out_path, "output path (default stdout)");

    auto* schw = app.add_subcommand("schwinger", "2-point Schwinger diagnostics");
    schw->configurable();
    schw->fallthrough();
    mo.attach(schw);
    std::string scan, scan_out;
    schw->add_option("--scan", scan, "complex rectangle 're0:re1:n,im0:im1:m' for a CSV scan");
    schw->add_option("--scan-out", scan_out, "CSV path for the scan");
    schw->add_option("-o,--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);

        if (*solve) {
            auto cp = mo.coupling();
            auto [lc, cc] = critical_point(mo.profile());
            json j{{"lambda2", cplx_json(cp.lambda2)},
                   {"c", cplx_json(cp.c)},
                   {"rho0", cplx_json(cp.rho0)},
                   {"critical", json{{"lambda_c", lc}, {"c_c", cc}}},
                   {"residual", std::abs(normalization_residual(cp))}};
            emit(j.dump(2) + "\n", out_path);
        } else if (*eval) {
            auto cp = mo.coupling();
            auto bs = parse_boundaries(boundaries);
            BoundarySpec spec;
            for (const auto& b : bs) {
                std::vector<cplx> Xs;
                for (double v : b) {
                    if (big_x) {
                        Xs.emplace_back(v);
                    } else {
                        if (v < 0) throw input_error("eval: x-space arguments must be >= 0");
                        Xs.emplace_back(X_of_x(v, cp.e));
                    }
                }
                spec.boundaries.push_back(std::move(Xs));
            }
            auto val = G_multi_boundary(cp, spec, mo.tower_cap);
            if (format == "csv") {
                std::string text = "spec,value_re,value_im,provenance\n";
                text += "\"" + boundaries + "\"," + fmt(val.value.real()) + "," +
                        fmt(val.value.imag()) + "," + provenance_name(val.provenance) + "\n";
                emit(text, out_path);
            } else {
                json j{{"spec", boundaries},
                       {"value", cplx_json(val.value)},
                       {"provenance", provenance_name(val.provenance)}};
                emit(j.dump(2) + "\n", out_path);
            }
        } else if (*table) {
            if (!(steps >= 1) || !(to > from))
                throw input_error("table: need to > from, steps >= 1");
            auto cp = mo.coupling();
            std::string text = "arg,re,im\n";
            for (int i = 0; i < steps; ++i) {
                const double a = from + (to - from) * i / std::max(1, steps - 1);
                cplx v;
                if (target == "W") v = W(cp, a);
                else if (target == "G1") v = G1(cp, a);
                else v = S2_hat(cp, mo.mu2, a);
                text += fmt(a) + "," + fmt(v.real()) + "," + fmt(v.imag()) + "\n";
            }
            emit(text, out_path);
        } else if (*verify) {
            std::vector<CheckRow> rows;
            auto add = [&](std::vector<CheckRow> r) {
                rows.insert(rows.end(), r.begin(), r.end());
            };
            if (suite == "bell" || suite == "all") add(suite_bell(std::min(max_n, 8)));
            if (suite == "conjecture" || suite == "all")
                add(suite_conjecture(max_l, std::min(max_n, 3)));
            if (suite == "gamma" || suite == "all") add(suite_gamma(max_b));
            if (suite == "inteq" || suite == "all") add(suite_inteq(mo));
            if (suite == "series" || suite == "all") add(suite_series(mo));
            if (suite == "schwinger" || suite == "all") add(suite_schwinger(mo));
            json j = report_json(suite, rows);
            emit(j.dump(2) + "\n", out_path);
            for (const auto& r : rows)
                if (!r.ok) return 1;
        } else if (*schw) {
            auto cp = mo.coupling();
            auto rep = positivity_check(cp, mo.mu2);
            json bps = json::array();
            for (cplx b : rep.branch_points) bps.push_back(cplx_json(b));
            json j{{"lambda", cplx_json(cp.lambda)},
                   {"c", cplx_json(cp.c)},
                   {"mu2", mo.mu2},
                   {"test_point", cplx_json(rep.test_point)},
                   {"S2_value", cplx_json(rep.value)},
                   {"imaginary_part_sign",
                    rep.imaginary_part_sign == ImagSign::negative ? "negative" : "nonnegative"},
                   {"verdict", rep.verdict == StieltjesVerdict::stieltjes_violated
                                   ? "stieltjes_violated"
                                   : "inconclusive_by_triviality"},
                   {"branch_points", bps}};
            emit(j.dump(2) + "\n", out_path);
            if (!scan.empty()) {
                double re0, re1, im0, im1;
                int nn, mm;
                if (std::sscanf(scan.c_str(), "%lf:%lf:%d,%lf:%lf:%d", &re0, &re1, &nn, &im0,
                                &im1, &mm) != 6 ||
                    nn < 1 || mm < 1)
                    throw input_error("schwinger --scan: expected 're0:re1:n,im0:im1:m'");
                std::string text = "p2_re,p2_im,S2_re,S2_im\n";
                for (int a = 0; a < nn; ++a)
                    for (int b = 0; b < mm; ++b) {
                        const double re = re0 + (re1 - re0) * a / std::max(1, nn - 1);
                        const double im = im0 + (im1 - im0) * b / std::max(1, mm - 1);
                        cplx v;
                        try {
                            v = S2_hat(cp, mo.mu2, cplx(re, im));
                        } catch (const domain_error&) {
                            v = cplx(std::nan(""), std::nan(""));
                        }
                        text += fmt(re) + "," + fmt(im) + "," + fmt(v.real()) + "," +
                                fmt(v.imag()) + "\n";
                    }
                emit(text, scan_out.empty() ? out_path : scan_out);
            }
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const convergence_error& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return 3;
    } catch (const quadrature_error& e) {
        std::cerr << "quadrature error: " << e.what() << "\n";
        return 3;
    } catch (const singular_error& e) {
        std::cerr << "singularity: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "germcalc/diagnostics.hpp"
#include "germcalc/germ.hpp"
#include "germcalc/homological.hpp"
#include "germcalc/textio.hpp"
#include "germcalc/univar.hpp"
#include "germcalc/verify.hpp"

using namespace germcalc;
using nlohmann::json;

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  1  a verification or identity check failed\n"
    "  2  parse or usage error\n"
    "  3  invalid germ specification\n"
    "  4  out-of-range order or index\n"
    "  5  series domain error (non-unit, not divisible, not unipotent, ...)\n"
    "  6  internal invariant breach (always a bug, please report)\n";

struct CommonOpts {
    std::string spec_path;
    std::string spec_inline;
    int order = 10;
    bool order_set = false;
    std::string format = "text";
};

int max_order_cap() {
    if (const char* env = std::getenv("GERM_MAX_ORDER")) {
        try {
            return std::stoi(env);
        } catch (...) {
            throw ParseError("GERM_MAX_ORDER is not an integer");
        }
    }
    return 64;
}

json load_spec_doc(const CommonOpts& opts) {
    std::string text;
    if (!opts.spec_inline.empty()) {
        text = opts.spec_inline;
    } else if (!opts.spec_path.empty()) {
        std::ifstream in(opts.spec_path);
        if (!in) throw ParseError("cannot open spec file '" + opts.spec_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        throw ParseError("no input: pass --spec FILE or --spec-json JSON");
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
}

int resolve_order(const CommonOpts& opts, const json& doc) {
    int order = opts.order;
    if (!opts.order_set && doc.is_object() && doc.contains("order")) {
        if (!doc["order"].is_number_integer())
            throw ParseError("field 'order' must be an integer");
        order = doc["order"].get<int>();
    }
    int cap = max_order_cap();
    if (order < 2) throw OutOfRangeError("order must be >= 2");
    if (order > cap)
        throw OutOfRangeError("order " + std::to_string(order) + " exceeds GERM_MAX_ORDER (" +
                              std::to_string(cap) + ")");
    return order;
}

GermSpec load_germ_spec(const CommonOpts& opts) {
    json doc = load_spec_doc(opts);
    return germ_spec_from_json(doc, resolve_order(opts, doc));
}

void require_format(const CommonOpts& opts, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (opts.format == a) return;
    throw ParseError("format '" + opts.format + "' is not available for this command");
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_spec = true) {
    if (with_spec) {
        cmd->add_option("--spec", opts.spec_path, "Path to a JSON spec file");
        cmd->add_option("--spec-json", opts.spec_inline, "Inline JSON spec");
    }
    auto* order_opt =
        cmd->add_option("--order", opts.order, "Truncation order (default 10, or the spec's)");
    order_opt->each([&opts](const std::string&) { opts.order_set = true; });
    cmd->add_option("--format", opts.format, "Output format: text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
}

// --- subcommand bodies ------------------------------------------------------

int run_log(const CommonOpts& opts, bool reduced) {
    require_format(opts, {"text", "json"});
    GermSpec spec = load_germ_spec(opts);
    VectorField2<Rat> field = reduced ? l_field(spec) : log_diffeo(build_phi(spec));
    const char* name = reduced ? "lfield" : "log";
    if (opts.format == "json") {
        emit({{"command", name},
              {"order", field.order()},
              {"x", series_to_json(field.x_comp)},
              {"y", series_to_json(field.y_comp)}});
    } else {
        std::cout << name << ".x = " << render_series(field.x_comp) << "\n";
        std::cout << name << ".y = " << render_series(field.y_comp) << "\n";
    }
    return 0;
}

int run_first_integral(const CommonOpts& opts) {
    require_format(opts, {"text", "json"});
    GermSpec spec = load_germ_spec(opts);
    Series2<Rat> f = first_integral(spec);
    if (opts.format == "json")
        emit({{"command", "first-integral"}, {"order", f.order()}, {"f", series_to_json(f)}});
    else
        std::cout << "f = " << render_series(f) << "\n";
    return 0;
}

int run_transport(const CommonOpts& opts) {
    require_format(opts, {"text", "json"});
    GermSpec spec = load_germ_spec(opts);
    TransportMap tr = transport(spec);
    if (opts.format == "json")
        emit({{"command", "transport"}, {"order", tr.order()}, {"a", series_to_json(tr.a)}});
    else
        std::cout << "a = " << render_series(tr.a) << "\n";
    return 0;
}

int run_param_family(const CommonOpts& opts) {
    require_format(opts, {"text", "json"});
    GermSpec spec = load_germ_spec(opts);
    ParamFirstIntegral pfi = parametric_first_integral(spec); // asserts the degree bound
    if (opts.format == "json") {
        json entries = json::array();
        for (int d = 1; d <= pfi.order() - 1; ++d)
            for (int j = d; j >= 0; --j) {
                const LambdaPoly& e = pfi.entry(j, d - j);
                if (e.is_zero()) continue;
                json c = json::array();
                for (int i = 0; i <= e.degree(); ++i) c.push_back(rat_to_string(e.coeff(i)));
                entries.push_back({{"xk", j}, {"yk", d - j}, {"f", c}});
            }
        emit({{"command", "param-family"},
              {"order", pfi.order()},
              {"degree_bound", "ok"},
              {"entries", entries},
              {"f", series_to_json(pfi.f)}});
    } else {
        std::cout << "f = " << render_series(pfi.f) << "\n";
        std::cout << "degree bound deg f[j,k] <= j+k: ok\n";
    }
    return 0;
}

struct HomologicalInput {
    Series2<Rat> w;
    Series2<Rat> delta;
    int order;
};

HomologicalInput load_homological(const CommonOpts& opts) {
    json doc = load_spec_doc(opts);
    if (!doc.is_object() || !doc.contains("w") || !doc.contains("delta"))
        throw ParseError("expected an object with fields 'w', 'delta' (and optionally 'order')");
    int order = resolve_order(opts, doc);
    // Delta may have a nonzero constant term here; only w must be a unit.
    return {series2_from_json_rat(doc["w"], order), series2_from_json_rat(doc["delta"], order),
            order};
}

int run_homological(const CommonOpts& opts) {
    require_format(opts, {"text", "json"});
    HomologicalInput in = load_homological(opts);
    Phi0Context ctx = make_phi0_context(in.w, in.order);
    HomologicalSolution sol = solve_difference(ctx, in.delta);
    Series1<Rat> via_difference = restrict_diag(sol.epsilon) - restrict_y0(sol.epsilon);
    Series1<Rat> via_differential = solve_differential(ctx, in.delta);
    bool equal = via_difference == via_differential;
    if (opts.format == "json") {
        emit({{"command", "homological"},
              {"order", in.order},
              {"epsilon", series_to_json(sol.epsilon)},
              {"residual_order", sol.residual_order},
              {"iterations", sol.iterations},
              {"s_w_difference", series_to_json(via_difference)},
              {"s_w_differential", series_to_json(via_differential)},
              {"routes_equal", equal}});
    } else {
        std::cout << "epsilon = " << render_series(sol.epsilon) << "\n";
        std::cout << "S_w (difference route)   = " << render_series(via_difference) << "\n";
        std::cout << "S_w (differential route) = " << render_series(via_differential) << "\n";
        std::cout << "routes equal: " << (equal ? "yes" : "NO") << "\n";
    }
    if (!equal)
        throw InvariantBreachError("difference and differential routes disagree");
    return 0;
}

int run_izs_check(const CommonOpts& opts) {
    require_format(opts, {"text", "json"});
    HomologicalInput in = load_homological(opts);
    Phi0Context ctx = make_phi0_context(in.w, in.order);
    Series1<Rat> out = check_izs(ctx, in.delta);
    bool zero = out.is_zero();
    if (opts.format == "json")
        emit({{"command", "izs-check"},
              {"order", in.order},
              {"value", series_to_json(out)},
              {"zero", zero}});
    else
        std::cout << "S_w(L[y(y-x)Delta]) = " << render_series(out)
                  << (zero ? "  (zero, as expected)" : "  (NONZERO)") << "\n";
    return zero ? 0 : 1;
}

int run_dv(const CommonOpts& opts, int j_coeff, bool j_set) {
    require_format(opts, {"text", "json"});
    json doc = load_spec_doc(opts);
    if (!doc.is_object() || !doc.contains("v") || !doc.contains("h"))
        throw ParseError("expected an object with fields 'v', 'h' (and optionally 'order')");
    int order = resolve_order(opts, doc);
    Series2<Rat> v = series2_from_json_rat(doc["v"], order);
    Series2<Rat> h = series2_from_json_rat(doc["h"], order);
    if (j_set) {
        Rat c = d_v_coeff(v, j_coeff, h);
        if (opts.format == "json")
            emit({{"command", "dv"}, {"j", j_coeff}, {"coefficient", rat_to_string(c)}});
        else
            std::cout << "D_v^" << j_coeff << "(h) = " << rat_to_string(c) << "\n";
        return 0;
    }
    Series1<Rat> out = d_v(v, h);
    if (opts.format == "json")
        emit({{"command", "dv"}, {"order", out.order()}, {"result", series_to_json(out)}});
    else
        std::cout << "D_v(h) = " << render_series(out) << "\n";
    return 0;
}

int run_hilbert(const CommonOpts& opts, int k_single, bool k_set, const std::string& k_range,
                int max_k) {
    int lo = 1, hi = 0;
    if (k_set && !k_range.empty()) throw ParseError("pass either --k or --k-range, not both");
    if (k_set) {
        lo = hi = k_single;
    } else if (!k_range.empty()) {
        auto colon = k_range.find(':');
        if (colon == std::string::npos) throw ParseError("--k-range expects LO:HI");
        try {
            lo = std::stoi(k_range.substr(0, colon));
            hi = std::stoi(k_range.substr(colon + 1));
        } catch (...) {
            throw ParseError("--k-range expects integers LO:HI");
        }
        if (lo > hi) throw ParseError("--k-range expects LO <= HI");
    } else {
        throw ParseError("pass --k K or --k-range LO:HI");
    }
    std::vector<HilbertReport> reports;
    for (int k = lo; k <= hi; ++k) reports.push_back(hilbert_inverse_norm(k, max_k));
    if (opts.format == "csv") {
        bool header = true;
        for (const auto& rep : reports) {
            std::cout << to_csv(rep, header);
            header = false;
        }
        return 0;
    }
    if (opts.format == "json") {
        json out = {{"command", "hilbert"}};
        json arr = json::array();
        for (const auto& rep : reports) arr.push_back(to_json(rep));
        out["reports"] = arr;
        if (lo == hi) {
            json inv = json::array();
            for (const auto& row : invert_exact(hilbert_matrix(lo))) {
                json jrow = json::array();
                for (const auto& v : row) jrow.push_back(rat_to_string(v));
                inv.push_back(jrow);
            }
            out["inverse"] = inv;
        }
        emit(out);
        return 0;
    }
    for (const auto& rep : reports)
        std::cout << "k=" << rep.k << "  |Hilb^-1|_2=" << format_double(rep.inverse_spectral_norm)
                  << "  prediction=" << format_double(rep.asymptotic_prediction)
                  << "  ratio=" << format_double(rep.ratio) << "\n";
    return 0;
}

json growth_record(const GrowthReport& rep) { return to_json(rep); }

void print_growth_text(const GrowthReport& rep) {
    std::cout << "degree  max|coeff|  root-test  windowed\n";
    for (const auto& p : rep.points)
        std::cout << p.degree << "  " << format_double(p.max_abs_coeff) << "  "
                  << format_double(p.root_test) << "  " << format_double(p.windowed_root_test)
                  << "\n";
    std::cout << "trend: " << rep.trend << "\n";
}

int run_growth(const CommonOpts& opts, const std::string& target, const std::string& restrict_s,
               const std::string& component, int window, const std::string& lambdas_csv) {
    Restriction restriction = Restriction::None;
    if (restrict_s == "x0") restriction = Restriction::X0;
    else if (restrict_s == "diag") restriction = Restriction::Diagonal;
    else if (restrict_s != "none") throw ParseError("--restrict expects none|x0|diag");

    GermSpec spec = load_germ_spec(opts);

    std::vector<Rat> lambdas;
    if (!lambdas_csv.empty()) {
        std::stringstream ss(lambdas_csv);
        std::string item;
        while (std::getline(ss, item, ',')) lambdas.push_back(rat_from_string(item));
        if (target != "transport")
            throw ParseError("--lambdas is only meaningful with --target transport");
    }

    auto report_for = [&](const GermSpec& s) -> GrowthReport {
        if (target == "generator") {
            auto field = log_diffeo(build_phi(s));
            const Series2<Rat>& comp = component == "x" ? field.x_comp : field.y_comp;
            return growth_report(comp, restriction, window);
        }
        if (target == "transport") {
            return growth_report(transport(s).a, window);
        }
        if (target == "what" || target == "what-series") {
            if (restriction == Restriction::X0)
                return growth_report(w_hat_x0(restrict_x0(s.w), s.order), window);
            auto ctx = make_phi0_context(s.w, s.order);
            return growth_report(ctx.w_hat, restriction, window);
        }
        throw ParseError("--target expects generator|transport|what");
    };

    if (lambdas.empty()) {
        GrowthReport rep = report_for(spec);
        if (opts.format == "json") {
            emit({{"command", "growth"}, {"target", target}, {"report", growth_record(rep)}});
        } else if (opts.format == "csv") {
            std::cout << to_csv(rep);
        } else {
            print_growth_text(rep);
        }
        return 0;
    }

    // One record per lambda, in input order: the transport growth of the
    // lambda-scaled member.
    std::vector<std::pair<Rat, GrowthReport>> records;
    for (const Rat& lam : lambdas) {
        GermSpec scaled(spec.delta.scaled(lam), spec.w, spec.order);
        records.push_back({lam, report_for(scaled)});
    }
    if (opts.format == "json") {
        json arr = json::array();
        for (const auto& [lam, rep] : records)
            arr.push_back({{"lambda", rat_to_string(lam)}, {"report", growth_record(rep)}});
        emit({{"command", "growth"}, {"target", target}, {"records", arr}});
    } else if (opts.format == "csv") {
        std::cout << "lambda,degree,max_abs_coeff,root_test,windowed_root_test\n";
        for (const auto& [lam, rep] : records)
            for (const auto& p : rep.points)
                std::cout << rat_to_string(lam) << ',' << p.degree << ','
                          << format_double(p.max_abs_coeff) << ',' << format_double(p.root_test)
                          << ',' << format_double(p.windowed_root_test) << "\n";
    } else {
        for (const auto& [lam, rep] : records) {
            std::cout << "== lambda = " << rat_to_string(lam) << " ==\n";
            print_growth_text(rep);
        }
    }
    return 0;
}

int run_verify(const CommonOpts& opts, std::uint64_t seed) {
    require_format(opts, {"text", "json"});
    int cap = max_order_cap();
    if (opts.order < 2 || opts.order > cap) throw OutOfRangeError("order out of range");
    VerifyReport rep = run_verification({opts.order, seed});
    if (opts.format == "json") {
        json suites = json::array();
        for (const auto& s : rep.suites)
            suites.push_back({{"name", s.name}, {"passed", s.passed}, {"detail", s.detail}});
        emit({{"command", "verify"},
              {"order", rep.options.order},
              {"seed", rep.options.seed},
              {"suites", suites},
              {"all_passed", rep.all_passed}});
    } else {
        std::cout << format_report(rep);
    }
    return rep.all_passed ? 0 : 1;
}

void failure_record(const std::string& type, const std::string& message) {
    json rec = {{"error", {{"type", type}, {"message", message}}}};
    std::cerr << rec.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"germcalc: exact formal-conjugacy invariants of the plane diffeomorphism "
                 "family (x + y(y-x)D, y + y(y-x)w)"};
    app.footer(kExitCodeHelp);
    app.require_subcommand(1);

    CommonOpts log_o, lfield_o, fi_o, tr_o, pf_o, hom_o, izs_o, dv_o, hil_o, gr_o, ver_o;

    auto* c_log = app.add_subcommand("log", "Infinitesimal generator of the family member");
    add_common(c_log, log_o);
    auto* c_lf = app.add_subcommand("lfield", "Generator divided by y(y-x)");
    add_common(c_lf, lfield_o);
    auto* c_fi = app.add_subcommand("first-integral",
                                    "First integral f with f(x,0) = x");
    add_common(c_fi, fi_o);
    auto* c_tr = app.add_subcommand("transport", "Transport map from y = 0 to y = x");
    add_common(c_tr, tr_o);
    auto* c_pf = app.add_subcommand(
        "param-family", "Lambda-family first integral with its degree-bound assertion");
    add_common(c_pf, pf_o);

    auto* c_hom = app.add_subcommand(
        "homological", "Solve eps - eps o phi_{0,w} = y(y-x) Delta and S_w by both routes");
    add_common(c_hom, hom_o);
    auto* c_izs = app.add_subcommand("izs-check",
                                     "Annihilation identity S_w(L[y(y-x)Delta]) = 0");
    add_common(c_izs, izs_o);

    auto* c_dv = app.add_subcommand("dv", "Functional D_v(h) from {\"v\":..., \"h\":...}");
    add_common(c_dv, dv_o);
    int dv_j = 0;
    auto* dv_j_opt = c_dv->add_option("--j", dv_j, "Only the coefficient of x^j");

    auto* c_hil = app.add_subcommand("hilbert", "Hilbert inverse spectral norms vs asymptotics");
    add_common(c_hil, hil_o, /*with_spec=*/false);
    int hil_k = 1, hil_max = 14;
    std::string hil_range;
    auto* hil_k_opt = c_hil->add_option("--k", hil_k, "Single antidiagonal size");
    c_hil->add_option("--k-range", hil_range, "Range LO:HI");
    c_hil->add_option("--max-k", hil_max, "Cap on k (default 14)");

    auto* c_gr = app.add_subcommand("growth", "Coefficient-growth (divergence evidence) report");
    add_common(c_gr, gr_o);
    std::string gr_target = "what", gr_restrict = "none", gr_component = "y", gr_lambdas;
    int gr_window = 5;
    c_gr->add_option("--target", gr_target, "generator|transport|what (default what)");
    c_gr->add_option("--restrict", gr_restrict, "none|x0|diag (default none)");
    c_gr->add_option("--component", gr_component, "x|y for --target generator (default y)")
        ->check(CLI::IsMember({"x", "y"}));
    c_gr->add_option("--window", gr_window, "Root-test window width (default 5)")
        ->check(CLI::PositiveNumber);
    c_gr->add_option("--lambdas", gr_lambdas,
                     "Comma-separated rational lambda samples (per-lambda transport reports)");

    auto* c_ver = app.add_subcommand("verify", "Run every invariant suite");
    add_common(c_ver, ver_o, /*with_spec=*/false);
    std::uint64_t seed = 42;
    c_ver->add_option("--seed", seed, "Sampler seed (default 42)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        failure_record("ParseError", e.what());
        return 2;
    }

    try {
        if (c_log->parsed()) return run_log(log_o, false);
        if (c_lf->parsed()) return run_log(lfield_o, true);
        if (c_fi->parsed()) return run_first_integral(fi_o);
        if (c_tr->parsed()) return run_transport(tr_o);
        if (c_pf->parsed()) return run_param_family(pf_o);
        if (c_hom->parsed()) return run_homological(hom_o);
        if (c_izs->parsed()) return run_izs_check(izs_o);
        if (c_dv->parsed()) return run_dv(dv_o, dv_j, dv_j_opt->count() > 0);
        if (c_hil->parsed())
            return run_hilbert(hil_o, hil_k, hil_k_opt->count() > 0, hil_range, hil_max);
        if (c_gr->parsed())
            return run_growth(gr_o, gr_target, gr_restrict, gr_component, gr_window, gr_lambdas);
        if (c_ver->parsed()) return run_verify(ver_o, seed);
    } catch (const ParseError& e) {
        failure_record("ParseError", e.what());
        return 2;
    } catch (const InvalidSpecError& e) {
        failure_record("InvalidSpec", e.what());
        return 3;
    } catch (const OutOfRangeError& e) {
        failure_record("OutOfRange", e.what());
        return 4;
    } catch (const InvariantBreachError& e) {
        failure_record("InvariantBreach", e.what());
        return 6;
    } catch (const Error& e) {
        failure_record("DomainError", e.what());
        return 5;
    }
    return 2;
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

#include "germcalc/diagnostics.hpp"
#include "germcalc/germ.hpp"
#include "germcalc/homological.hpp"
#include "germcalc/textio.hpp"
#include "germcalc/univar.hpp"
#include "germcalc/verify.hpp"

namespace py = pybind11;
using namespace germcalc;

namespace {

// Series travel as term lists [(xk, yk, "p/q"), ...]; univariate series as
// dense coefficient-string lists. Rationals stay strings end to end.
using Terms = std::vector<std::tuple<int, int, std::string>>;
using Coeffs = std::vector<std::string>;

Series2<Rat> series_from_terms(const Terms& terms, int order) {
    Series2<Rat> s(order);
    for (const auto& [xk, yk, c] : terms) {
        if (xk < 0 || yk < 0) throw ParseError("negative exponent in term");
        if (xk + yk > order) continue;
        s.at(xk, yk) += rat_from_string(c);
    }
    return s;
}

Terms terms_from_series(const Series2<Rat>& s) {
    Terms out;
    for (int d = 0; d <= s.order(); ++d)
        for (int xk = d; xk >= 0; --xk) {
            const Rat& v = s.coeff(xk, d - xk);
            if (!rat_is_zero(v)) out.emplace_back(xk, d - xk, rat_to_string(v));
        }
    return out;
}

Coeffs coeffs_from_series(const Series1<Rat>& s) {
    Coeffs out;
    for (int k = 0; k <= s.order(); ++k) out.push_back(rat_to_string(s.coeff(k)));
    return out;
}

Series1<Rat> series1_from_coeffs(const Coeffs& coeffs, int order) {
    Series1<Rat> s(order);
    for (int k = 0; k <= order && k < static_cast<int>(coeffs.size()); ++k)
        s.set(k, rat_from_string(coeffs[static_cast<std::size_t>(k)]));
    return s;
}

GermSpec spec_of(const Terms& delta, const Terms& w, int order) {
    return GermSpec(series_from_terms(delta, order), series_from_terms(w, order), order);
}

py::dict field_dict(const VectorField2<Rat>& f) {
    py::dict out;
    out["x"] = terms_from_series(f.x_comp);
    out["y"] = terms_from_series(f.y_comp);
    out["order"] = f.order();
    return out;
}

py::dict growth_dict(const GrowthReport& rep) {
    py::dict out;
    out["window"] = rep.window;
    out["trend"] = rep.trend;
    py::list pts;
    for (const auto& p : rep.points) {
        py::dict d;
        d["degree"] = p.degree;
        d["max_abs_coeff"] = p.max_abs_coeff;
        d["root_test"] = p.root_test;
        d["windowed_root_test"] = p.windowed_root_test;
        pts.append(d);
    }
    out["points"] = pts;
    return out;
}

Restriction restriction_of(const std::string& s) {
    if (s == "none") return Restriction::None;
    if (s == "x0") return Restriction::X0;
    if (s == "diag") return Restriction::Diagonal;
    throw ParseError("restrict expects none|x0|diag");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact formal-conjugacy invariants of the plane diffeomorphism family "
              "(x + y(y-x)D, y + y(y-x)w). Series are term lists [(xk, yk, 'p/q'), ...]; "
              "univariate series are dense lists of rational strings.";

    // Translators run latest-registered first: the base class goes first so
    // the specific exceptions are actually reachable.
    py::register_exception<Error>(m, "GermError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "GermParseError", PyExc_ValueError);
    py::register_exception<InvalidSpecError>(m, "InvalidSpecError", PyExc_ValueError);
    py::register_exception<OutOfRangeError>(m, "GermOutOfRangeError", PyExc_IndexError);

    m.def("log_phi", [](const Terms& delta, const Terms& w, int order) {
        return field_dict(log_diffeo(build_phi(spec_of(delta, w, order))));
    }, py::arg("delta"), py::arg("w"), py::arg("order"),
       "Infinitesimal generator of the family member, as term lists.");

    m.def("l_field", [](const Terms& delta, const Terms& w, int order) {
        return field_dict(l_field(spec_of(delta, w, order)));
    }, py::arg("delta"), py::arg("w"), py::arg("order"),
       "Generator divided by y(y-x).");

    m.def("first_integral", [](const Terms& delta, const Terms& w, int order) {
        return terms_from_series(first_integral(spec_of(delta, w, order)));
    }, py::arg("delta"), py::arg("w"), py::arg("order"),
       "First integral f with f(x,0) = x.");

    m.def("transport", [](const Terms& delta, const Terms& w, int order) {
        return coeffs_from_series(transport(spec_of(delta, w, order)).a);
    }, py::arg("delta"), py::arg("w"), py::arg("order"),
       "Transport map coordinate a(x) with Tr(x,0) = (a(x), a(x)).");

    m.def("param_family", [](const Terms& delta, const Terms& w, int order) {
        ParamFirstIntegral pfi = parametric_first_integral(spec_of(delta, w, order));
        std::vector<std::tuple<int, int, Coeffs>> entries;
        for (int d = 1; d <= pfi.order() - 1; ++d)
            for (int j = d; j >= 0; --j) {
                const LambdaPoly& e = pfi.entry(j, d - j);
                if (e.is_zero()) continue;
                Coeffs c;
                for (int i = 0; i <= e.degree(); ++i) c.push_back(rat_to_string(e.coeff(i)));
                entries.emplace_back(j, d - j, c);
            }
        return entries;
    }, py::arg("delta"), py::arg("w"), py::arg("order"),
       "Table entries (j, k, f_{j,k} lambda-coefficients); asserts the degree bound.");

    m.def("epsilon_from_family", [](const Terms& delta, const Terms& w, int order) {
        return terms_from_series(
            epsilon_from_family(parametric_first_integral(spec_of(delta, w, order))));
    }, py::arg("delta"), py::arg("w"), py::arg("order"));

    m.def("s_w_difference", [](const Terms& w, const Terms& delta, int order) {
        return coeffs_from_series(s_w(series_from_terms(w, order),
                                      series_from_terms(delta, order)));
    }, py::arg("w"), py::arg("delta"), py::arg("order"),
       "S_w(Delta) through the difference equation.");

    m.def("s_w_differential", [](const Terms& w, const Terms& delta, int order) {
        return coeffs_from_series(solve_differential(series_from_terms(w, order),
                                                     series_from_terms(delta, order)));
    }, py::arg("w"), py::arg("delta"), py::arg("order"),
       "S_w(Delta) through the differential equation.");

    m.def("check_izs", [](const Terms& w, const Terms& delta, int order) {
        return coeffs_from_series(check_izs(series_from_terms(w, order),
                                            series_from_terms(delta, order)));
    }, py::arg("w"), py::arg("delta"), py::arg("order"),
       "S_w(L[y(y-x)Delta]); identically zero.");

    m.def("d_v", [](const Terms& v, const Terms& h, int order) {
        return coeffs_from_series(d_v(series_from_terms(v, order),
                                      series_from_terms(h, order)));
    }, py::arg("v"), py::arg("h"), py::arg("order"));

    m.def("d_v_coeff", [](const Terms& v, int j, const Terms& h, int order) {
        return rat_to_string(d_v_coeff(series_from_terms(v, order), j,
                                       series_from_terms(h, order)));
    }, py::arg("v"), py::arg("j"), py::arg("h"), py::arg("order"));

    m.def("hilbert_report", [](int k, int max_k) {
        HilbertReport rep = hilbert_inverse_norm(k, max_k);
        py::dict out;
        out["k"] = rep.k;
        out["inverse_spectral_norm"] = rep.inverse_spectral_norm;
        out["asymptotic_prediction"] = rep.asymptotic_prediction;
        out["ratio"] = rep.ratio;
        return out;
    }, py::arg("k"), py::arg("max_k") = 14);

    m.def("hilbert_inverse", [](int k) {
        std::vector<Coeffs> out;
        for (const auto& row : invert_exact(hilbert_matrix(k))) {
            Coeffs r;
            for (const auto& v : row) r.push_back(rat_to_string(v));
            out.push_back(r);
        }
        return out;
    }, py::arg("k"), "Exact inverse of the (k+1) x (k+1) Hilbert matrix.");

    m.def("reconstruct_antidiagonal", [](const Coeffs& samples, int k) {
        std::vector<Rat> s;
        for (const auto& v : samples) s.push_back(rat_from_string(v));
        Coeffs out;
        for (const auto& v : reconstruct_antidiagonal(s, k)) out.push_back(rat_to_string(v));
        return out;
    }, py::arg("samples"), py::arg("k"));

    m.def("growth", [](const Terms& delta, const Terms& w, int order, const std::string& target,
                       const std::string& restrict_s, const std::string& component, int window) {
        GermSpec spec = spec_of(delta, w, order);
        Restriction restriction = restriction_of(restrict_s);
        if (target == "generator") {
            auto field = log_diffeo(build_phi(spec));
            return growth_dict(growth_report(
                component == "x" ? field.x_comp : field.y_comp, restriction, window));
        }
        if (target == "transport")
            return growth_dict(growth_report(transport(spec).a, window));
        if (target == "what") {
            if (restriction == Restriction::X0)
                return growth_dict(
                    growth_report(w_hat_x0(restrict_x0(spec.w), spec.order), window));
            auto ctx = make_phi0_context(spec.w, spec.order);
            return growth_dict(growth_report(ctx.w_hat, restriction, window));
        }
        throw ParseError("target expects generator|transport|what");
    }, py::arg("delta"), py::arg("w"), py::arg("order"), py::arg("target") = "what",
       py::arg("restrict") = "none", py::arg("component") = "y", py::arg("window") = 5);

    m.def("w_hat_x0", [](const Coeffs& w_on_axis, int order) {
        return coeffs_from_series(w_hat_x0(series1_from_coeffs(w_on_axis, order), order));
    }, py::arg("w_on_axis"), py::arg("order"),
       "w_hat(0, y) through the one-variable fast path.");

    m.def("verify", [](int order, std::uint64_t seed) {
        VerifyReport rep = run_verification({order, seed});
        py::dict out;
        out["all_passed"] = rep.all_passed;
        out["text"] = format_report(rep);
        py::list suites;
        for (const auto& s : rep.suites) {
            py::dict d;
            d["name"] = s.name;
            d["passed"] = s.passed;
            d["detail"] = s.detail;
            suites.append(d);
        }
        out["suites"] = suites;
        return out;
    }, py::arg("order") = 10, py::arg("seed") = 42);

    m.def("render_series", [](const Terms& terms, int order) {
        return render_series(series_from_terms(terms, order));
    }, py::arg("terms"), py::arg("order"), "Canonical text rendering.");

    m.def("parse_series", [](const std::string& text, int order) {
        auto lowered = lower_to_rat(parse_series2_text(text, order));
        if (!lowered) throw ParseError("series has lambda-polynomial coefficients");
        return terms_from_series(*lowered);
    }, py::arg("text"), py::arg("order"), "Parse the canonical text rendering.");

#ifdef GERMCALC_VERSION
    m.attr("__version__") = GERMCALC_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}

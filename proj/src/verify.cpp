#include "germcalc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "germcalc/diagnostics.hpp"
#include "germcalc/germ.hpp"
#include "germcalc/homological.hpp"
#include "germcalc/sampling.hpp"
#include "germcalc/textio.hpp"
#include "germcalc/univar.hpp"

namespace germcalc {

namespace {

std::string at_order(int samples, int order) {
    return std::to_string(samples) + " samples at order " + std::to_string(order);
}

bool suite_core_ring_axioms(SeriesSampler& gen, int n, std::string& detail) {
    detail = at_order(6, n);
    for (int i = 0; i < 6; ++i) {
        auto a = gen.series2(n), b = gen.series2(n), c = gen.series2(n);
        if (!((a + b) * c == a * c + b * c)) return false;
        if (!(a * b == b * a)) return false;
        if (!((a * b) * c == a * (b * c))) return false;
    }
    return true;
}

bool suite_core_unit_inverse(SeriesSampler& gen, int n, std::string& detail) {
    detail = at_order(6, n);
    for (int i = 0; i < 6; ++i) {
        auto u = gen.unit_series2(n);
        if (!(u * invert_unit(u) == Series2<Rat>::constant(Rat(1), n))) return false;
    }
    return true;
}

bool suite_core_ideal_division(SeriesSampler& gen, int n, std::string& detail) {
    detail = at_order(6, n);
    auto q = fixed_lines_poly(n);
    for (int i = 0; i < 6; ++i) {
        auto b = gen.series2(n - 2);
        if (!(divide_ideal(mul_trunc(q, b, n), q) == b)) return false;
    }
    return true;
}

bool suite_core_reversion(SeriesSampler& gen, int n, std::string& detail) {
    detail = at_order(6, n);
    for (int i = 0; i < 6; ++i) {
        Series1<Rat> f = gen.series1(n);
        f.set(0, Rat(0));
        f.set(1, gen.small_rat(false));
        auto g = revert1(f);
        if (!(compose1(f, g) == Series1<Rat>::variable(n))) return false;
        if (!(compose1(g, f) == Series1<Rat>::variable(n))) return false;
    }
    return true;
}

bool suite_core_composition_associativity(SeriesSampler& gen, int n, std::string& detail) {
    detail = at_order(3, n);
    for (int i = 0; i < 3; ++i) {
        auto mk = [&] {
            auto s = gen.series2(n);
            s.at(0, 0) = Rat(0);
            return s;
        };
        auto px = mk(), py = mk(), qx = mk(), qy = mk();
        auto g = gen.series2(n);
        if (!(compose2(compose2(g, px, py), qx, qy) ==
              compose2(g, compose2(px, qx, qy), compose2(py, qx, qy))))
            return false;
    }
    return true;
}

bool suite_core_valuation_additivity(SeriesSampler& gen, int n, std::string& detail) {
    int checked = 0;
    for (int i = 0; i < 24 && checked < 6; ++i) {
        auto a = gen.series2(n), b = gen.series2(n);
        auto va = krull_valuation(a), vb = krull_valuation(b);
        if (!va || !vb || *va + *vb > n) continue;
        auto vab = krull_valuation(a * b);
        if (!vab || *vab != *va + *vb) return false;
        ++checked;
    }
    detail = at_order(checked, n);
    return checked > 0;
}

bool suite_diffeo_exp_log_round_trip(SeriesSampler& gen, int n, std::string& detail) {
    detail = at_order(5, n);
    for (int i = 0; i < 5; ++i) {
        auto phi = build_phi(gen.germ_spec(n));
        auto back = exp_diffeo(log_diffeo(phi));
        if (!(back.x_image == phi.x_image && back.y_image == phi.y_image)) return false;
    }
    return true;
}

bool suite_diffeo_log_exp_round_trip(SeriesSampler& gen, int n, std::string& detail) {
    detail = at_order(5, n);
    for (int i = 0; i < 5; ++i) {
        auto field = gen.nilpotent_field(n);
        auto back = log_diffeo(exp_diffeo(field));
        if (!(back.x_comp == field.x_comp && back.y_comp == field.y_comp)) return false;
    }
    return true;
}

bool suite_diffeo_derivation_law(SeriesSampler& gen, int n, std::string& detail) {
    detail = at_order(3, n);
    for (int i = 0; i < 3; ++i) {
        auto field = log_diffeo(build_phi(gen.germ_spec(n)));
        auto g1 = gen.series2(n), g2 = gen.series2(n);
        auto lhs = apply_field(field, g1 * g2);
        auto rhs = g1 * apply_field(field, g2) + g2 * apply_field(field, g1);
        if (!agrees_to_order(lhs, rhs, n - 1)) return false;
    }
    return true;
}

bool suite_diffeo_first_integral_criterion(SeriesSampler& gen, int n, std::string& detail) {
    detail = at_order(5, n);
    GermSpec spec(Series2<Rat>::zero(n), gen.unit_series2(n, 2), n);
    auto phi = build_phi(spec);
    auto field = log_diffeo(phi);
    auto x = Series2<Rat>::variable_x(n);
    if (!apply_field(field, x).is_zero()) return false;
    if (!(compose2(x, phi.x_image, phi.y_image) == x)) return false;
    for (int i = 0; i < 5; ++i) {
        auto f = gen.series2(n);
        bool annihilated = apply_field(field, f).is_zero();
        bool invariant = compose2(f, phi.x_image, phi.y_image) == f;
        if (annihilated != invariant) return false;
    }
    return true;
}

bool suite_diffeo_flow_semigroup(SeriesSampler& gen, int n, std::string& detail) {
    detail = at_order(3, n);
    for (int i = 0; i < 3; ++i) {
        auto field = gen.nilpotent_field(n);
        auto g = gen.series2(n);
        auto flow = flow_poly_t(field, g);
        if (!(eval_lambda(flow, Rat(1)) == exp_apply(field, g))) return false;
        const std::pair<Rat, Rat> times[] = {{rat(1, 2), rat(1, 3)}, {Rat(2), Rat(-1)}};
        for (const auto& [s, t] : times) {
            auto lhs = eval_lambda(flow, s + t);
            auto rhs = exp_apply(field.scaled(s), exp_apply(field.scaled(t), g));
            if (!(lhs == rhs)) return false;
        }
    }
    return true;
}

bool suite_germ_generator_structure(SeriesSampler& gen, int n, std::string& detail) {
    detail = at_order(5, n);
    auto q = fixed_lines_poly(n);
    for (int i = 0; i < 5; ++i) {
        GermSpec spec = gen.germ_spec(n);
        auto field = log_diffeo(build_phi(spec));
        Series2<Rat> lx(n), ly(n);
        try {
            lx = divide_ideal(field.x_comp, q);
            ly = divide_ideal(field.y_comp, q);
        } catch (const NotDivisibleError&) {
            return false;
        }
        if (!(lx.coeff(0, 0) == Rat(0))) return false;
        if (!(ly.coeff(0, 0) == spec.w.coeff(0, 0))) return false;
    }
    // Delta = 0: the x-component vanishes identically.
    GermSpec spec0(Series2<Rat>::zero(n), gen.unit_series2(n, 2), n);
    return log_diffeo(build_phi(spec0)).x_comp.is_zero();
}

bool suite_germ_first_integral(SeriesSampler& gen, int n, std::string& detail) {
    detail = at_order(3, n);
    for (int i = 0; i < 3; ++i) {
        GermSpec spec = gen.germ_spec(n);
        auto f = first_integral(spec);
        if (!(restrict_y0(f) == Series1<Rat>::variable(n))) return false;
        if (!apply_field(l_field(spec), f).is_zero()) return false;
        auto phi = build_phi(spec);
        if (!(compose2(f, phi.x_image, phi.y_image) == f)) return false;
    }
    return true;
}

bool suite_germ_transport(SeriesSampler& gen, int n, std::string& detail) {
    detail = at_order(3, n);
    for (int i = 0; i < 3; ++i) {
        GermSpec spec = gen.germ_spec(n);
        auto tr = transport(spec);
        if (!(tr.a.coeff(1) == Rat(1))) return false;
        auto f = first_integral(spec);
        if (!(compose1(restrict_diag(f), tr.a) == restrict_y0(f))) return false;
    }
    GermSpec spec0(Series2<Rat>::zero(n), gen.unit_series2(n, 2), n);
    return transport(spec0).a == Series1<Rat>::variable(n);
}

bool suite_germ_lambda_degree_bound(SeriesSampler& gen, int n, std::string& detail) {
    int order = std::min(n, 8);
    detail = at_order(2, order);
    for (int i = 0; i < 2; ++i) {
        GermSpec spec = gen.germ_spec(order);
        ParamFirstIntegral pfi = parametric_first_integral(spec); // ctor asserts the bound
        for (const Rat& lam : {Rat(1), rat(-1, 2)}) {
            GermSpec scaled(spec.delta.scaled(lam), spec.w, order);
            if (!(pfi.specialize(lam) == first_integral(scaled))) return false;
        }
    }
    return true;
}

bool suite_germ_rescaling_relation(SeriesSampler& gen, int n, std::string& detail) {
    int order = std::min(n, 8);
    detail = at_order(2, order);
    for (const Rat& lam : {Rat(2), rat(-1, 3)}) {
        GermSpec spec = gen.germ_spec(order);
        GermSpec inv_scaled(spec.delta.scaled(Rat(1) / lam), spec.w, order);
        auto lhs = scale_vars(first_integral(inv_scaled), lam);
        GermSpec conj(scale_vars(spec.delta, lam), scale_vars(spec.w, lam).scaled(lam), order);
        auto rhs = first_integral(conj).scaled(lam);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

bool suite_germ_fixed_set_jacobian(SeriesSampler& gen, int n, std::string& detail) {
    detail = at_order(3, n);
    for (int i = 0; i < 3; ++i) {
        GermSpec spec = gen.germ_spec(n);
        auto phi = build_phi(spec);
        if (!fix_set_check(phi).fixes_both_lines) return false;
        auto [j0, jd] = jacobian_restrictions(phi);
        if (!(j0.coeff(0) == Rat(1) && jd.coeff(0) == Rat(1))) return false;
        if (!(j0.coeff(1) == -spec.w.coeff(0, 0))) return false;
        if (!(jd.coeff(1) == spec.w.coeff(0, 0))) return false;
    }
    Series2<Rat> sy(n);
    sy.at(0, 1) = Rat(1);
    sy.at(0, 2) = Rat(1);
    auto res = fix_set_check(Diffeo2<Rat>(Series2<Rat>::variable_x(n), sy));
    return !res.fixes_both_lines && res.witness_xk == 0 && res.witness_yk == 2;
}

bool suite_homological_residual(SeriesSampler& gen, int n, std::string& detail) {
    int order = std::min(n, 8);
    detail = at_order(3, order);
    for (int i = 0; i < 3; ++i) {
        auto ctx = make_phi0_context(gen.unit_series2(order, 3), order);
        auto delta = gen.series2(order);
        auto sol = solve_difference(ctx, delta);
        if (!germcalc::homological_residual(ctx, sol.epsilon, delta).is_zero()) return false;
        if (sol.iterations > order + 1) return false;
    }
    return true;
}

bool suite_homological_route_equivalence(SeriesSampler& gen, int n, std::string& detail) {
    int order = std::min(n, 8);
    detail = at_order(3, order);
    for (int i = 0; i < 3; ++i) {
        auto ctx = make_phi0_context(gen.unit_series2(order, 3), order);
        auto delta = gen.series2(order);
        if (!(s_w(ctx, delta) == solve_differential(ctx, delta))) return false;
    }
    return true;
}

bool suite_homological_annihilation(SeriesSampler& gen, int n, std::string& detail) {
    int order = std::min(n, 8);
    detail = at_order(3, order);
    for (int i = 0; i < 3; ++i) {
        auto ctx = make_phi0_context(gen.unit_series2(order, 3), order);
        if (!check_izs(ctx, gen.series2(order)).is_zero()) return false;
    }
    return true;
}

bool suite_homological_well_definedness(SeriesSampler& gen, int n, std::string& detail) {
    int order = std::min(n, 8);
    detail = at_order(3, order);
    for (int i = 0; i < 3; ++i) {
        auto ctx = make_phi0_context(gen.unit_series2(order, 3), order);
        auto delta = gen.series2(order);
        auto sol = solve_difference(ctx, delta);
        auto base = restrict_diag(sol.epsilon) - restrict_y0(sol.epsilon);
        auto perturbed = sol.epsilon + embed_x(gen.series1(order), order);
        if (!germcalc::homological_residual(ctx, perturbed, delta).is_zero()) return false;
        if (!(restrict_diag(perturbed) - restrict_y0(perturbed) == base)) return false;
    }
    return true;
}

bool suite_homological_family_epsilon(SeriesSampler& gen, int n, std::string& detail) {
    int order = std::min(n, 8);
    detail = at_order(2, order);
    for (int i = 0; i < 2; ++i) {
        GermSpec spec = gen.germ_spec(order);
        auto eps = epsilon_from_family(parametric_first_integral(spec));
        auto ctx = make_phi0_context(spec.w, order);
        if (!germcalc::homological_residual(ctx, eps, spec.delta).is_zero()) return false;
        auto via_family = restrict_diag(eps) - restrict_y0(eps);
        if (!(via_family == s_w(ctx, spec.delta))) return false;
    }
    return true;
}

bool suite_diagnostics_dv_agreement(SeriesSampler& gen, int n, std::string& detail) {
    detail = at_order(5, n);
    for (int i = 0; i < 5; ++i) {
        auto v = gen.series2(n), h = gen.series2(n);
        auto series = d_v(v, h);
        for (int j = 1; j <= n; ++j)
            if (!(series.coeff(j) == d_v_coeff(v, j, h))) return false;
    }
    return true;
}

bool suite_diagnostics_hilbert_reconstruction(SeriesSampler& gen, int n, std::string& detail) {
    int order = std::max(n, 9);
    detail = "antidiagonals k <= 4 at order " + std::to_string(order);
    auto v = gen.series2(order, 4);
    for (int k = 0; k <= 4; ++k) {
        std::vector<Rat> samples;
        for (int r = 1; r <= k + 1; ++r)
            samples.push_back(
                d_v_coeff(v, k + r, Series2<Rat>::monomial(0, r - 1, Rat(1), order)));
        auto got = reconstruct_antidiagonal(samples, k);
        for (int b = 0; b <= k; ++b)
            if (!(got[static_cast<std::size_t>(b)] == v.coeff(k - b, b))) return false;
    }
    return true;
}

bool suite_diagnostics_hilbert_exactness(SeriesSampler&, int, std::string& detail) {
    detail = "k <= 10 exact inverse";
    for (int k = 0; k <= 10; ++k) {
        auto h = hilbert_matrix(k);
        auto inv = invert_exact(h);
        std::size_t m = h.size();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                Rat acc(0);
                for (std::size_t l = 0; l < m; ++l) acc += h[i][l] * inv[l][j];
                if (!(acc == Rat(i == j ? 1 : 0))) return false;
            }
    }
    return true;
}

bool suite_diagnostics_norm_bracket(SeriesSampler&, int, std::string& detail) {
    detail = "k in {1, 4, 12}";
    auto r1 = hilbert_inverse_norm(1);
    if (std::abs(r1.inverse_spectral_norm - (8.0 + 2.0 * std::sqrt(13.0))) > 1e-9) return false;
    auto r4 = hilbert_inverse_norm(4);
    auto r12 = hilbert_inverse_norm(12);
    if (!(r4.ratio > 0.5 && r4.ratio < 2.0)) return false;
    if (!(r12.ratio > 0.5 && r12.ratio < 2.0)) return false;
    return std::abs(r12.ratio - 1.0) < std::abs(r4.ratio - 1.0);
}

bool suite_diagnostics_divergence_evidence(SeriesSampler&, int, std::string& detail) {
    detail = "w = 1 on x = 0 to order 24";
    auto wh = w_hat_x0(Series1<Rat>::constant(Rat(1), 24), 24);
    if (!(wh.coeff(0) == Rat(1) && wh.coeff(1) == Rat(-1) && wh.coeff(2) == rat(3, 2)))
        return false;
    auto rep = growth_report(wh);
    for (int m = 10; m + rep.window <= 24; m += rep.window)
        if (!(rep.points[static_cast<std::size_t>(m - 1)].windowed_root_test <
              rep.points[static_cast<std::size_t>(m + rep.window - 1)].windowed_root_test))
            return false;
    return rep.trend != "geometric-bounded";
}

bool suite_cli_text_round_trip(SeriesSampler& gen, int n, std::string& detail) {
    detail = at_order(6, n);
    for (int i = 0; i < 6; ++i) {
        auto s = gen.series2(n);
        auto back = lower_to_rat(parse_series2_text(render_series(s), n));
        if (!back || !(*back == s)) return false;
    }
    return true;
}

} // namespace

VerifyReport run_verification(const VerifyOptions& options) {
    if (options.order < 2) throw OutOfRangeError("verification order must be >= 2");
    using Suite = std::function<bool(SeriesSampler&, int, std::string&)>;
    const std::pair<const char*, Suite> suites[] = {
        {"core-ring-axioms", suite_core_ring_axioms},
        {"core-unit-inverse", suite_core_unit_inverse},
        {"core-ideal-division", suite_core_ideal_division},
        {"core-reversion", suite_core_reversion},
        {"core-composition-associativity", suite_core_composition_associativity},
        {"core-valuation-additivity", suite_core_valuation_additivity},
        {"diffeo-exp-log-round-trip", suite_diffeo_exp_log_round_trip},
        {"diffeo-log-exp-round-trip", suite_diffeo_log_exp_round_trip},
        {"diffeo-derivation-law", suite_diffeo_derivation_law},
        {"diffeo-first-integral-criterion", suite_diffeo_first_integral_criterion},
        {"diffeo-flow-semigroup", suite_diffeo_flow_semigroup},
        {"germ-generator-structure", suite_germ_generator_structure},
        {"germ-first-integral", suite_germ_first_integral},
        {"germ-transport", suite_germ_transport},
        {"germ-lambda-degree-bound", suite_germ_lambda_degree_bound},
        {"germ-rescaling-relation", suite_germ_rescaling_relation},
        {"germ-fixed-set-jacobian", suite_germ_fixed_set_jacobian},
        {"homological-residual", suite_homological_residual},
        {"homological-route-equivalence", suite_homological_route_equivalence},
        {"homological-annihilation", suite_homological_annihilation},
        {"homological-well-definedness", suite_homological_well_definedness},
        {"homological-family-epsilon", suite_homological_family_epsilon},
        {"diagnostics-dv-agreement", suite_diagnostics_dv_agreement},
        {"diagnostics-hilbert-reconstruction", suite_diagnostics_hilbert_reconstruction},
        {"diagnostics-hilbert-exactness", suite_diagnostics_hilbert_exactness},
        {"diagnostics-norm-bracket", suite_diagnostics_norm_bracket},
        {"diagnostics-divergence-evidence", suite_diagnostics_divergence_evidence},
        {"cli-text-round-trip", suite_cli_text_round_trip},
    };
    VerifyReport report;
    report.options = options;
    report.all_passed = true;
    std::uint64_t salt = 0;
    for (const auto& [name, suite] : suites) {
        SeriesSampler gen(options.seed * 1000003ULL + salt++);
        SuiteResult res;
        res.name = name;
        try {
            res.passed = suite(gen, options.order, res.detail);
        } catch (const Error& e) {
            res.passed = false;
            res.detail = e.what();
        }
        report.all_passed = report.all_passed && res.passed;
        report.suites.push_back(std::move(res));
    }
    return report;
}

std::string format_report(const VerifyReport& report) {
    std::ostringstream os;
    os << "verification at order " << report.options.order << ", seed " << report.options.seed
       << "\n";
    for (const auto& s : report.suites)
        os << (s.passed ? "[PASS] " : "[FAIL] ") << s.name << " (" << s.detail << ")\n";
    os << (report.all_passed ? "all suites passed" : "SUITE FAILURES PRESENT") << "\n";
    return os.str();
}

} // namespace germcalc

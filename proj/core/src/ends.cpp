#include "forge/ends.hpp"

#include <cmath>

namespace forge {

const char* surface_class_name(SurfaceClass c) {
    switch (c) {
        case SurfaceClass::ImproperAffine: return "improper-affine";
        case SurfaceClass::Maxface: return "maxface";
        case SurfaceClass::Cmc1Elliptic: return "cmc1-elliptic";
        case SurfaceClass::Cmc1Parabolic: return "cmc1-parabolic";
        case SurfaceClass::FlatFront: return "flat-front";
        case SurfaceClass::FlatS3: return "flat-s3";
    }
    return "?";
}

namespace {

void classify_into(EndReport& rep, const std::string& name, const ExprPtr& e,
                   const ClassifyOptions& opt) {
    try {
        rep.pole_orders[name] = classify_singularity(e, opt);
    } catch (const Error&) {
        rep.pole_orders[name] = SingularityVerdict{};
    }
}

SingularCurve extract_box(const std::function<double(cplx)>& ind, double r0,
                          double hole, int grid_n) {
    ExtractOptions eo;
    eo.grid_n = grid_n;
    eo.puncture_radius = hole;
    return singular_set_extract(
        [&ind](double x, double y) { return ind(cplx{x, y}); }, -r0, r0, -r0,
        r0, eo);
}

}  // namespace

EndReport end_report(const SurfaceModel& model, const EndConfig& cfg) {
    EndReport rep;
    rep.cls = model.cls;
    double r0 = cfg.r0;
    double r_check = cfg.r_check > 0 ? cfg.r_check : 0.2 * r0;
    double hole = 0.1 * r_check;
    LengthOptions lo = cfg.length;

    switch (model.cls) {
        case SurfaceClass::ImproperAffine: {
            if (!model.affine) throw ConfigError("missing affine data", 0, 0);
            build_improper_affine(*model.affine);  // validation only
            AffineMetrics met = improper_affine_metrics(*model.affine);
            rep.weak_metric_name = "dtau2";
            rep.weak = radial_divergence_test(met.dtau2, cfg.n_rays, r0, lo);
            rep.first = radial_divergence_test(met.ds2, cfg.n_rays, r0, lo);
            classify_into(rep, "G_prime", differentiate(model.affine->G),
                          cfg.classify);
            rep.singular_curve =
                extract_box(met.singular_indicator, r0, hole, cfg.grid_n);
            break;
        }
        case SurfaceClass::Maxface: {
            if (!model.maxface) throw ConfigError("missing maxface data", 0, 0);
            MaxfaceSurface surf = build_maxface(*model.maxface);
            rep.weak_metric_name = "dsigma2";
            if (!model.maxface->g || !model.maxface->omega_core)
                throw ConfigError("maxface end analysis needs the (g, omega) pair",
                                  0, 0);
            ConformalMetric sigma = maxface_sigma_metric(model.maxface->g,
                                                         model.maxface->omega_core);
            rep.weak = radial_divergence_test(sigma, cfg.n_rays, r0, lo);
            ExprPtr g = model.maxface->g;
            DirDensity ds2 = [surf](cplx z, cplx dir) {
                double dx = dir.real(), dy = dir.imag();
                return surf.induced_E(z) * dx * dx +
                       2.0 * surf.induced_F(z) * dx * dy +
                       surf.induced_G(z) * dy * dy;
            };
            rep.first = radial_divergence_test(ds2, cfg.n_rays, r0, lo);
            classify_into(rep, "omega", model.maxface->omega_core, cfg.classify);
            classify_into(rep, "g", g, cfg.classify);
            rep.singular_curve = extract_box(
                [g](cplx z) { return std::abs(eval(g, z)) - 1.0; }, r0, hole,
                cfg.grid_n);
            break;
        }
        case SurfaceClass::Cmc1Elliptic: {
            if (!model.cmc1) throw ConfigError("missing cmc1 data", 0, 0);
            Cmc1Bundle b = cmc1_metric_bundle(*model.cmc1);
            rep.weak_metric_name = "ds_hat2";
            rep.weak = radial_divergence_test(b.ds_hat2, cfg.n_rays, r0, lo);
            rep.first = radial_divergence_test(b.ds2, cfg.n_rays, r0, lo);
            rep.fitted_constants["identity_residual"] = b.identity_residual;
            classify_into(rep, "omega", model.cmc1->omega_core, cfg.classify);
            classify_into(rep, "Q", b.Q_core, cfg.classify);
            ExprPtr g = model.cmc1->g;
            rep.singular_curve = extract_box(
                [g](cplx z) { return std::abs(eval(g, z)) - 1.0; }, r0, hole,
                cfg.grid_n);
            break;
        }
        case SurfaceClass::Cmc1Parabolic: {
            if (!model.parabolic_h)
                throw ConfigError("missing parabolic h", 0, 0);
            ParabolicModel pm =
                cmc1_parabolic_model(model.parabolic_h, model.parabolic_epsilon);
            // Hopf coefficient from the lift: Q = S(g_hat)/2 since the
            // hyperbolic Gauss map here is z and S(z) = 0.
            ExprPtr Q = mul(constant(cplx{0.5, 0.0}), schwarzian(pm.g_hat));
            Cmc1Data d;
            d.g = pm.g;
            d.omega_core = div(Q, pm.g_prime);
            d.G_hyp = model.parabolic_G_hyp ? model.parabolic_G_hyp : var_z();
            d.Q_core = Q;
            Cmc1Bundle b = cmc1_metric_bundle(d);
            rep.weak_metric_name = "ds_hat2";
            rep.weak = radial_divergence_test(b.ds_hat2, cfg.n_rays, r0, lo);
            rep.first = radial_divergence_test(b.ds2, cfg.n_rays, r0, lo);
            rep.fitted_constants["identity_residual"] = b.identity_residual;
            rep.fitted_constants["c1"] = pm.c1.empty() ? 0.0 : pm.c1.back();
            rep.fitted_constants["c2"] = pm.c2.empty() ? 0.0 : pm.c2.back();
            rep.fitted_constants["c1_stable"] = pm.c1_stable ? 1.0 : 0.0;
            rep.fitted_constants["c2_stable"] = pm.c2_stable ? 1.0 : 0.0;
            rep.fitted_constants["abs_g_deep"] = pm.abs_g_at_deepest;
            classify_into(rep, "Q", Q, cfg.classify);
            ExprPtr g = pm.g;
            rep.singular_curve = extract_box(
                [g](cplx z) { return std::abs(eval(g, z)) - 1.0; }, r0, hole,
                cfg.grid_n);
            rep.evidence_note =
                "parabolic constants are sup/inf bounds over nested ranges";
            break;
        }
        case SurfaceClass::FlatFront: {
            if (!model.flat_front)
                throw ConfigError("missing flat front data", 0, 0);
            FlatFrontMetrics met = flat_front_metrics(*model.flat_front);
            rep.weak_metric_name = "dtau2";
            rep.weak = radial_divergence_test(met.dtau2, cfg.n_rays, r0, lo);
            rep.first = radial_divergence_test(met.ds2, cfg.n_rays, r0, lo);
            rep.fitted_constants["mu_effective"] = met.effective.mu;
            rep.fitted_constants["nu_effective"] = met.effective.nu;
            rep.fitted_constants["roles_exchanged"] =
                met.roles_exchanged ? 1.0 : 0.0;
            classify_into(rep, "omega_hat", met.effective.omega_hat,
                          cfg.classify);
            rep.singular_curve =
                extract_box(met.singular_indicator, r0, hole, cfg.grid_n);
            break;
        }
        case SurfaceClass::FlatS3: {
            if (!model.flat_s3) throw ConfigError("missing flat-s3 data", 0, 0);
            double a = cfg.rect_half;
            FlatS3Forms forms =
                flat_s3_forms(*model.flat_s3, -a, a, -a, a, cfg.grid_n / 4);
            // The front lives on all of R^2; probe the asymptotic direction
            // u = -v, where the counterexample shrinks.
            PathSpec anti;
            anti.kind = PathSpec::Kind::Segment;
            anti.p0 = {0.0, 0.0};
            anti.dir = {1.0, -1.0};  // coordinate speed sqrt(2)
            rep.weak_metric_name = "tau2";
            rep.weak = path_length(forms.tau2, anti, lo).verdict;
            rep.first = path_length(forms.I, anti, lo).verdict;
            FlatS3Data d = *model.flat_s3;
            ExtractOptions eo;
            eo.grid_n = cfg.grid_n;
            rep.singular_curve = singular_set_extract(
                [d](double u, double v) { return std::sin(d.omega(u, v)); },
                -a, a, -a, a, eo);
            rep.end_punctured_type = false;
            rep.exempt_from_equivalence = true;
            rep.end_id = "u=-v, t->inf";
            rep.evidence_note =
                "plane domain; divergence probed along the asymptotic direction";
            break;
        }
    }

    if (model.cls != SurfaceClass::FlatS3)
        rep.end_punctured_type = model.end_punctured_type;
    rep.weakly_complete = rep.weak.divergent;
    rep.singular_compact = singular_set_compact(rep.singular_curve, r_check);
    rep.complete = rep.first.divergent && rep.singular_compact;
    return rep;
}

ConsistencyResult theorem_consistency(const EndReport& r) {
    ConsistencyResult out;
    if (r.complete && !(r.weakly_complete && r.singular_compact)) {
        out.explanation =
            "complete but missing weak completeness or compact singular set";
        return out;
    }
    if (!r.exempt_from_equivalence && r.weakly_complete && r.singular_compact &&
        r.end_punctured_type && !r.complete) {
        out.explanation =
            "weakly complete puncture-type end with compact singular set "
            "should be complete";
        return out;
    }
    out.pass = true;
    out.explanation = r.exempt_from_equivalence
                          ? "forward implication holds; converse not applicable "
                            "on a plane domain"
                          : "both implications hold on the computed verdicts";
    return out;
}

PicardReport picard_premise_check(const ExprPtr& g, const ClassifyOptions& opt) {
    PicardReport rep;
    try {
        rep.classifier = classify_singularity(g, opt);
    } catch (const Error&) {
        rep.classifier = SingularityVerdict{};
    }
    double r = std::pow(2.0, -opt.j_max);
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < opt.angular_samples; ++i) {
        double th = -M_PI + 2.0 * M_PI * (i + 0.5) / opt.angular_samples;
        try {
            double a = std::abs(eval(g, std::polar(r, th)));
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        } catch (const DomainError&) {
        }
    }
    rep.min_abs = lo;
    rep.max_abs = hi;
    switch (rep.classifier.kind) {
        case SingularityVerdict::Kind::Removable:
            rep.premise_holds = true;
            rep.growth = "bounded";
            break;
        case SingularityVerdict::Kind::Pole:
            rep.premise_holds = true;
            rep.growth = "pole-bounded";
            break;
        default:
            rep.premise_holds = false;
            rep.growth = "superpolynomial";
            break;
    }
    return rep;
}

}  // namespace forge

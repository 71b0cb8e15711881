#include "forge/surfaces.hpp"

#include <algorithm>
#include <cmath>

#include "forge/quadrature.hpp"

namespace forge {

namespace {

cplx complex_integrate(const std::function<cplx(double)>& f, double a, double b,
                       double tol) {
    double re = integrate([&](double t) { return f(t).real(); }, a, b, tol);
    double im = integrate([&](double t) { return f(t).imag(); }, a, b, tol);
    return {re, im};
}

// Annulus sample grid (radii geometric, angles uniform off the slit).
std::vector<cplx> annulus_grid(double r_inner, double r_outer, int n) {
    std::vector<cplx> pts;
    pts.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        double r = r_inner * std::pow(r_outer / r_inner, (i + 0.5) / n);
        for (int j = 0; j < n; ++j) {
            double theta = -M_PI + 2.0 * M_PI * (j + 0.5) / n;
            pts.push_back(std::polar(r, theta));
        }
    }
    return pts;
}

cplx principal_pow(cplx z, double mu) {
    if (mu == 0.0) return {1.0, 0.0};
    return std::exp(mu * std::log(z));
}

}  // namespace

// ---------------------------------------------------------------------------
// Improper affine maps

cplx AffineSurface::integral_FdG(cplx z) const {
    const cplx z0 = data.z0;
    double r0 = std::abs(z0), r1 = std::abs(z);
    double a0 = std::arg(z0), a1 = std::arg(z);
    double darg = std::remainder(a1 - a0, 2.0 * M_PI);
    auto fg = [&](cplx w) { return forge::eval(data.F, w) * forge::eval(dG, w); };
    // radial leg: |z0| -> |z| at angle a0
    cplx leg1 = complex_integrate(
        [&](double t) {
            double r = r0 + t * (r1 - r0);
            cplx w = std::polar(r, a0);
            return fg(w) * std::polar(1.0, a0) * (r1 - r0);
        },
        0.0, 1.0, 1e-12);
    // arc leg: angle a0 -> a0 + darg at radius |z|
    cplx leg2 = complex_integrate(
        [&](double t) {
            double ang = a0 + t * darg;
            cplx w = std::polar(r1, ang);
            return fg(w) * cplx{0, 1} * w * darg;
        },
        0.0, 1.0, 1e-12);
    return leg1 + leg2;
}

std::array<double, 3> AffineSurface::eval(cplx z) const {
    cplx Fv = forge::eval(data.F, z);
    cplx Gv = forge::eval(data.G, z);
    cplx first = Gv + std::conj(Fv);
    double height = 0.5 * (std::norm(Gv) - std::norm(Fv)) +
                    (Gv * Fv - 2.0 * integral_FdG(z)).real();
    return {first.real(), first.imag(), height};
}

AffineSurface build_improper_affine(const ImproperAffineData& d,
                                    const AffineValidation& v) {
    AffineSurface s;
    s.data = d;
    s.dF = differentiate(d.F);
    s.dG = differentiate(d.G);

    // condition (i): Re-period of F dG around the puncture
    cplx period = loop_period(mul(d.F, s.dG), v.probe_radius);
    s.re_period = period.real();
    if (std::abs(s.re_period) > v.period_tol)
        throw ExactnessViolation("Re(F dG) is not exact: Re-period = " +
                                     std::to_string(s.re_period),
                                 s.re_period);

    // condition (ii): |dF|^2 + |dG|^2 positive on the probe grid
    for (cplx z : annulus_grid(v.r_inner, v.r_outer, v.grid_n)) {
        double q = std::norm(eval(s.dF, z)) + std::norm(eval(s.dG, z));
        if (q <= 1e-14)
            throw DegenerateData("|dF|^2 + |dG|^2 vanishes near z = " +
                                 std::to_string(z.real()) + "+" +
                                 std::to_string(z.imag()) + "i");
    }

    // path independence of the Re part: radial+arc vs arc+radial
    {
        cplx zt = std::polar(v.r_outer * 0.8, 2.0);
        cplx via_radial_arc = s.integral_FdG(zt);
        double r0 = std::abs(d.z0), r1 = std::abs(zt);
        double a0 = std::arg(d.z0), a1 = std::arg(zt);
        double darg = std::remainder(a1 - a0, 2.0 * M_PI);
        auto fg = [&](cplx w) { return forge::eval(d.F, w) * forge::eval(s.dG, w); };
        cplx arc = complex_integrate(
            [&](double t) {
                double ang = a0 + t * darg;
                cplx w = std::polar(r0, ang);
                return fg(w) * cplx{0, 1} * w * darg;
            },
            0.0, 1.0, 1e-12);
        cplx radial = complex_integrate(
            [&](double t) {
                double r = r0 + t * (r1 - r0);
                cplx w = std::polar(r, a1);
                return fg(w) * std::polar(1.0, a1) * (r1 - r0);
            },
            0.0, 1.0, 1e-12);
        double mismatch =
            std::abs((arc + radial).real() - via_radial_arc.real());
        if (mismatch > 1e-9 * (1.0 + std::abs(via_radial_arc)))
            throw QuadratureFailure("Re int F dG is path dependent: " +
                                    std::to_string(mismatch));
    }
    return s;
}

AffineMetrics improper_affine_metrics(const ImproperAffineData& d) {
    AffineMetrics m;
    ExprPtr dF = differentiate(d.F);
    ExprPtr dG = differentiate(d.G);
    ExprPtr F = d.F, G = d.G;

    m.ds2 = [dF, dG](cplx z, cplx dir) {
        cplx a = eval(dG, z) * dir + std::conj(eval(dF, z) * dir);
        return std::norm(a);
    };
    AbsOneForm tF{0.0, 0, mul(constant({std::sqrt(2.0), 0}), dF)};
    AbsOneForm tG{0.0, 0, mul(constant({std::sqrt(2.0), 0}), dG)};
    m.dtau2.terms = {tF, tG};
    m.nu_horizontal = [F, G](cplx z) { return std::conj(eval(F, z)) - eval(G, z); };
    m.singular_indicator = [dF, dG](cplx z) {
        double a = std::abs(eval(dF, z));
        double b = std::abs(eval(dG, z));
        if (b == 0.0) return a == 0.0 ? 0.0 : 1e300;
        return a / b - 1.0;
    };
    return m;
}

// ---------------------------------------------------------------------------
// Maxfaces

std::array<double, 3> lorentz_projection(const std::array<cplx, 3>& zeta) {
    return {(-cplx{0, 1} * zeta[2]).real(), zeta[0].real(), zeta[1].real()};
}

std::array<double, 3> MaxfaceSurface::eval(cplx z) const {
    return lorentz_projection({forge::eval(data.F1, z), forge::eval(data.F2, z),
                               forge::eval(data.F3, z)});
}

namespace {

struct LorentzDerivs {
    // derivative of the projected map: columns f_u, f_v in R^3_1
    std::array<double, 3> fu, fv;
};

LorentzDerivs maxface_derivs(const MaxfaceSurface& s, cplx z) {
    std::array<cplx, 3> a = {-cplx{0, 1} * eval(s.dF3, z), eval(s.dF1, z),
                             eval(s.dF2, z)};
    LorentzDerivs d;
    for (int i = 0; i < 3; ++i) {
        d.fu[i] = a[i].real();
        d.fv[i] = -a[i].imag();
    }
    return d;
}

double lorentz_dot(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace

double MaxfaceSurface::induced_E(cplx z) const {
    auto d = maxface_derivs(*this, z);
    return lorentz_dot(d.fu, d.fu);
}
double MaxfaceSurface::induced_F(cplx z) const {
    auto d = maxface_derivs(*this, z);
    return lorentz_dot(d.fu, d.fv);
}
double MaxfaceSurface::induced_G(cplx z) const {
    auto d = maxface_derivs(*this, z);
    return lorentz_dot(d.fv, d.fv);
}

MaxfaceSurface build_maxface(const MaxfaceData& d, const MaxfaceValidation& v) {
    MaxfaceSurface s;
    s.data = d;
    s.dF1 = differentiate(d.F1);
    s.dF2 = differentiate(d.F2);
    s.dF3 = differentiate(d.F3);

    double worst = 0.0;
    cplx worst_z;
    for (cplx z : annulus_grid(v.r_inner, v.r_outer, v.grid_n)) {
        cplx a = eval(s.dF1, z), b = eval(s.dF2, z), c = eval(s.dF3, z);
        double scale = std::norm(a) + std::norm(b) + std::norm(c);
        double res = std::abs(a * a + b * b + c * c);
        double rel = res / std::max(scale, 1e-300);
        if (rel > worst) {
            worst = rel;
            worst_z = z;
        }
    }
    if (worst > v.nullity_tol)
        throw NullityViolation("nullity residual " + std::to_string(worst) +
                               " at z = " + std::to_string(worst_z.real()) + "+" +
                               std::to_string(worst_z.imag()) + "i");

    if (v.require_spacelike) {
        // With null data the induced form is (1-|g|^2)^2 |omega|^2 / 4, which
        // is nonnegative for every |g|; positivity alone cannot certify the
        // domain. Demand |g| < 1 on the probe annulus instead: that keeps the
        // normal in one hyperboloid component and the annulus clear of the
        // singular set |g| = 1.
        if (d.g) {
            for (cplx z : annulus_grid(v.r_inner, v.r_outer, v.grid_n)) {
                double w = std::abs(forge::eval(d.g, z));
                if (w >= 1.0 - 1e-9)
                    throw NotSpacelike("|g| = " + std::to_string(w) +
                                       " >= 1 at z = " + std::to_string(z.real()) +
                                       "+" + std::to_string(z.imag()) + "i");
            }
        } else {
            for (cplx z : annulus_grid(v.r_inner, v.r_outer, v.grid_n)) {
                double E = s.induced_E(z), G = s.induced_G(z);
                double euclid = std::norm(eval(s.dF1, z)) +
                                std::norm(eval(s.dF2, z)) +
                                std::norm(eval(s.dF3, z)) + 1e-300;
                if (E + G < 1e-9 * euclid)
                    throw NotSpacelike("induced form degenerates at z = " +
                                       std::to_string(z.real()) + "+" +
                                       std::to_string(z.imag()) + "i");
            }
        }
    }

    MaxfaceSurface* raw = nullptr;
    auto self = std::make_shared<MaxfaceSurface>(s);
    (void)raw;
    s.induced.E = [self](double u, double v2) { return self->induced_E({u, v2}); };
    s.induced.F = [self](double u, double v2) { return self->induced_F({u, v2}); };
    s.induced.G = [self](double u, double v2) { return self->induced_G({u, v2}); };
    return s;
}

ConformalMetric maxface_sigma_metric(const ExprPtr& g, const ExprPtr& omega_core) {
    // (1+|g|^2)^2 |w|^2 = |w|^2 + 2|g w|^2 + |g^2 w|^2
    ConformalMetric m;
    m.terms.push_back({0.0, 0, omega_core});
    m.terms.push_back({0.0, 0, mul(constant({std::sqrt(2.0), 0}), mul(g, omega_core))});
    m.terms.push_back({0.0, 0, mul(ipow(g, 2), omega_core)});
    return m;
}

// ---------------------------------------------------------------------------
// CMC-1 metric bundle

Cmc1Bundle cmc1_metric_bundle(const Cmc1Data& d, double r_inner, double r_outer,
                              int grid_n) {
    cplx cv;
    if (!d.g || is_constant(d.g, &cv))
        throw DegenerateGaussMap("secondary Gauss map g is constant");
    if (!d.G_hyp || is_constant(d.G_hyp, &cv))
        throw DegenerateGaussMap("hyperbolic Gauss map G is constant");

    Cmc1Bundle b;
    ExprPtr g = d.g;
    ExprPtr g1 = differentiate(d.g);
    ExprPtr G = d.G_hyp;
    ExprPtr G1 = differentiate(d.G_hyp);
    b.Q_core = d.Q_core ? d.Q_core
                        : mul(d.omega_core ? d.omega_core
                                           : throw DegenerateGaussMap(
                                                 "need omega or Q for CMC-1 data"),
                              g1);
    ExprPtr q_over_dg = div(b.Q_core, g1);
    ExprPtr q_over_dG = div(b.Q_core, G1);

    auto one_minus = [g](cplx z) {
        double w = std::norm(eval(g, z));
        double t = 1.0 - w;
        return t * t;
    };
    auto one_plus_g = [g](cplx z) {
        double w = std::norm(eval(g, z));
        return (1.0 + w) * (1.0 + w);
    };
    auto one_plus_G = [G](cplx z) {
        double w = std::norm(eval(G, z));
        return (1.0 + w) * (1.0 + w);
    };
    auto inv_one_minus_sq = [g](cplx z) {
        double w = std::norm(eval(g, z));
        double t = 1.0 - w;
        if (t == 0.0) return 1e300;
        return 1.0 / (t * t);
    };

    b.ds2.terms = {{0.0, 0, q_over_dg}};
    b.ds2.factor = one_minus;
    b.ds_hat2.terms = {{0.0, 0, d.omega_core ? d.omega_core : q_over_dg}};
    b.ds_hat2.factor = one_plus_g;
    b.ds_sharp2.terms = {{0.0, 0, q_over_dG}};
    b.ds_sharp2.factor = one_plus_G;
    b.dsigma2.terms = {{0.0, 0, mul(constant({2, 0}), g1)}};
    b.dsigma2.factor = inv_one_minus_sq;

    // pointwise identity ds^2 * dsigma^2 = 4|Q|^2
    double worst = 0.0;
    for (cplx z : annulus_grid(r_inner, r_outer, grid_n)) {
        try {
            double lhs = b.ds2.density(z) * b.dsigma2.density(z);
            double q = std::abs(eval(b.Q_core, z));
            double rhs = 4.0 * q * q;
            double rel = std::abs(lhs - rhs) / std::max(rhs, 1e-300);
            worst = std::max(worst, rel);
        } catch (const DomainError&) {
        }
    }
    b.identity_residual = worst;
    return b;
}

ParabolicModel cmc1_parabolic_model(const ExprPtr& h, int epsilon,
                                    double stability_factor) {
    ParabolicModel m;
    ExprPtr i_const = constant({0, 1});
    ExprPtr eps = constant({static_cast<double>(epsilon), 0});
    ExprPtr z = var_z();
    ExprPtr hat = mul(i_const, add(h, mul(eps, loge(z))));
    m.g_hat = hat;
    m.g = div(sub(hat, i_const), add(hat, i_const));
    m.g_prime = differentiate(m.g);
    m.g_prime_closed_form =
        div(mul(constant({2, 0}), add(mul(z, differentiate(h)), eps)),
            mul(z, ipow(add(add(h, mul(eps, loge(z))), constant({1, 0})), 2)));

    // symbolic derivative vs the closed form at scattered samples
    double worst = 0.0;
    for (int i = 0; i < 6; ++i) {
        double r = std::pow(10.0, -1.0 - 0.6 * i);
        for (double theta : {-2.5, -1.2, 0.3, 1.7, 2.9}) {
            cplx zz = std::polar(r, theta);
            cplx a = eval(m.g_prime, zz);
            cplx b = eval(m.g_prime_closed_form, zz);
            worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-300));
        }
    }
    m.closed_form_residual = worst;

    // fitted constants on nested ranges [10^-k, 1e-2]
    m.fit_cutoffs = {4, 6, 8};
    const std::vector<double> angles = {0.0, 0.9, -0.9, 1.8, -1.8, 2.7, -2.7};
    for (int k : m.fit_cutoffs) {
        double c1 = 0.0, c2 = 1e300;
        int per_decade = 24;
        int n = (k - 2) * per_decade;
        for (int i = 0; i <= n; ++i) {
            double lr = -2.0 - (k - 2.0) * i / n;  // log10 r in [-k, -2]
            double r = std::pow(10.0, lr);
            for (double theta : angles) {
                cplx zz = std::polar(r, theta);
                cplx lg = std::log(zz);
                double al = std::abs(lg);
                double gp = std::abs(eval(m.g_prime, zz));
                c1 = std::max(c1, gp * r * al * al);
                double one_m = std::abs(1.0 - std::norm(eval(m.g, zz)));
                c2 = std::min(c2, one_m * al);
            }
        }
        m.c1.push_back(c1);
        m.c2.push_back(c2);
    }
    auto stable = [&](const std::vector<double>& v) {
        double lo = *std::min_element(v.begin(), v.end());
        double hi = *std::max_element(v.begin(), v.end());
        return lo > 0 && hi / lo <= stability_factor;
    };
    m.c1_stable = stable(m.c1);
    m.c2_stable = stable(m.c2);
    m.abs_g_at_deepest = std::abs(eval(m.g, cplx{1e-8, 0.0}));
    return m;
}

std::function<cplx(cplx)> hopf_schwarzian_residual(const ExprPtr& g,
                                                   const ExprPtr& G_hyp,
                                                   const ExprPtr& Q_core) {
    ExprPtr Sg = schwarzian(g);
    ExprPtr SG = schwarzian(G_hyp);
    return [Sg, SG, Q_core](cplx z) {
        cplx q = Q_core ? eval(Q_core, z) : cplx{0, 0};
        return 2.0 * q - eval(Sg, z) + eval(SG, z);
    };
}

// ---------------------------------------------------------------------------
// Flat fronts

FlatFrontMetrics flat_front_metrics(const FlatFrontData& d, double r_inner,
                                    double r_outer, int grid_n) {
    if (d.mu < 0 || d.mu >= 1 || d.nu < 0 || d.nu >= 1)
        throw DegenerateData("flat front exponents must lie in [0,1)");

    FlatFrontMetrics m;
    double mu = d.mu, nu = d.nu;
    ExprPtr w_hat = d.omega_hat, r_hat = d.rho_hat;

    m.rho_abs = [nu, r_hat](cplx z) {
        return std::pow(std::abs(z), nu) * std::abs(eval(r_hat, z));
    };
    m.singular_indicator = [m_rho = m.rho_abs](cplx z) { return m_rho(z) - 1.0; };

    // median |rho| on the probe grid decides whether roles are exchanged
    std::vector<double> vals;
    int on_singular = 0;
    auto grid = annulus_grid(r_inner, r_outer, grid_n);
    for (cplx z : grid) {
        double v = m.rho_abs(z);
        vals.push_back(v);
        if (std::abs(v - 1.0) < 1e-8) ++on_singular;
    }
    if (on_singular > static_cast<int>(grid.size()) / 5)
        throw SingularOnDomain("|rho| = 1 on a large part of the probe grid");
    std::nth_element(vals.begin(), vals.begin() + vals.size() / 2, vals.end());
    double median = vals[vals.size() / 2];

    m.roles_exchanged = median > 1.0;
    if (!m.roles_exchanged) {
        m.effective = d;
    } else {
        // new omega = theta = z^{mu+nu} w_hat rho_hat dz, new rho = 1/rho
        double mu_sum = mu + nu;
        int int_part = static_cast<int>(std::floor(mu_sum));
        FlatFrontData e;
        e.mu = mu_sum - int_part;
        e.omega_hat = mul(ipow(var_z(), int_part), mul(w_hat, r_hat));
        if (nu == 0.0) {
            e.nu = 0.0;
            e.rho_hat = recip(r_hat);
        } else {
            e.nu = 1.0 - nu;
            e.rho_hat = recip(mul(var_z(), r_hat));
        }
        m.effective = e;
    }

    m.dtau2.terms = {{mu, 0, w_hat}, {mu + nu, 0, mul(w_hat, r_hat)}};

    m.ds2 = [mu, nu, w_hat, r_hat](cplx z, cplx dir) {
        cplx wc = principal_pow(z, mu) * eval(w_hat, z);
        cplx tc = principal_pow(z, mu + nu) * eval(w_hat, z) * eval(r_hat, z);
        cplx a = wc * dir + std::conj(tc * dir);
        return std::norm(a);
    };
    return m;
}

}  // namespace forge

#include "forge/metric.hpp"

#include <cmath>

#include "forge/quadrature.hpp"

namespace forge {

double AbsOneForm::magnitude(cplx z) const {
    double m = 1.0;
    if (mu != 0.0) m *= std::pow(std::abs(z), mu);
    if (log_power > 0) m *= std::pow(std::abs(std::log(z)), log_power);
    if (core) m *= std::abs(eval(core, z));
    return m;
}

double ConformalMetric::density(cplx z) const {
    double d = 0.0;
    for (const auto& t : terms) {
        double m = t.magnitude(z);
        d += m * m;
    }
    if (factor) d *= factor(z);
    return d;
}

const char* growth_model_name(GrowthModel m) {
    switch (m) {
        case GrowthModel::Bounded: return "bounded";
        case GrowthModel::LogPower: return "log";
        case GrowthModel::Power: return "power";
        case GrowthModel::Superpolynomial: return "superpolynomial";
        case GrowthModel::Undetermined: return "undetermined";
    }
    return "?";
}

namespace {

PathLengthResult to_result(DivergenceVerdict v) {
    PathLengthResult r;
    r.divergent = v.divergent;
    r.value = v.finite_value;
    r.error_estimate = v.error_estimate;
    r.verdict = std::move(v);
    return r;
}

double polyline_length(const std::function<double(cplx, cplx)>& density,
                       const std::vector<cplx>& pts, double tol) {
    double total = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        cplx a = pts[i], b = pts[i + 1];
        cplx d = b - a;
        double len = std::abs(d);
        if (len == 0.0) continue;
        cplx dir = d / len;
        total += integrate(
            [&](double t) {
                cplx z = a + t * d;
                return std::sqrt(std::max(0.0, density(z, dir))) * len;
            },
            0.0, 1.0, tol / pts.size());
    }
    return total;
}

// Truncation schedule T_k = 2^k for improper endpoints at t = +inf.
DivergenceVerdict segment_partial_lengths(const std::function<double(double)>& lambda,
                                          const LengthOptions& opt) {
    DivergenceVerdict v;
    v.note = "parameter T; epsilon column stores 1/T";
    std::vector<double> L, d;
    double prev_t = 0.0, cum = 0.0;
    int n_steps = 11;  // T up to 1024
    for (int k = 0; k < n_steps; ++k) {
        double t = std::pow(2.0, k);
        double rough = 0.0;
        for (int i = 0; i < 32; ++i)
            rough += lambda(prev_t + (t - prev_t) * (i + 0.5) / 32) * (t - prev_t) / 32;
        double seg_tol = std::max(opt.tol * 0.02, 1e-12 * std::abs(rough));
        double inc = integrate(lambda, prev_t, t, seg_tol);
        cum += inc;
        d.push_back(inc);
        L.push_back(cum);
        v.table.push_back({0.0, 1.0 / t, cum});
        prev_t = t;
    }
    size_t n = d.size();
    bool nondec = true;
    for (size_t k = n - 3; k < n; ++k) {
        if (d[k] < d[k - 1] * (1.0 - 1e-6)) nondec = false;
        if (d[k] <= opt.divergence_floor) nondec = false;
    }
    if (nondec) {
        v.divergent = true;
        // fit log L vs log T over the tail
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int cnt = 0;
        for (size_t k = n - 5; k < n; ++k) {
            double x = std::log(std::pow(2.0, static_cast<double>(k)));
            double y = std::log(L[k]);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++cnt;
        }
        double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
        v.model = GrowthModel::Power;
        v.power_exponent = slope;  // L ~ T^slope
    } else {
        v.divergent = false;
        v.model = GrowthModel::Bounded;
        double q = d[n - 2] > 0 ? d[n - 1] / d[n - 2] : 0.0;
        double tail = (q > 0 && q < 1) ? d[n - 1] * q / (1 - q) : 0.0;
        v.finite_value = L[n - 1] + tail;
        v.error_estimate = std::max(opt.tol, std::abs(tail) * q);
    }
    return v;
}

}  // namespace

DivergenceVerdict radial_partial_lengths(const std::function<double(double)>& lambda,
                                         double r0, const LengthOptions& opt) {
    DivergenceVerdict v;
    std::vector<double> L, d, eps;
    double cum = 0.0;
    // Degeneracy probe on the outermost segment.
    {
        int zeros = 0;
        for (int i = 0; i < 32; ++i) {
            double r = r0 * (0.1 + 0.9 * (i + 0.5) / 32);
            if (lambda(r) == 0.0) ++zeros;
        }
        if (zeros > 28)
            throw MetricDegenerate("metric density vanishes along the path");
    }
    for (int k = 1; k <= opt.k_max; ++k) {
        double hi = r0 * std::pow(10.0, -(k - 1));
        double lo = r0 * std::pow(10.0, -k);
        // integrate in s = log r to regularize log-type divergences
        auto f = [&](double s) {
            double r = std::exp(s);
            return lambda(r) * r;
        };
        double a = std::log(lo), b = std::log(hi);
        double rough = 0.0;
        for (int i = 0; i < 32; ++i) rough += f(a + (b - a) * (i + 0.5) / 32) * (b - a) / 32;
        double inc;
        if (!std::isfinite(rough) || rough > 1e50) {
            // beyond refinement; the rough value already settles divergence
            inc = rough;
        } else {
            double seg_tol = std::max(opt.tol * 0.02, 1e-12 * std::abs(rough));
            inc = integrate(f, a, b, seg_tol);
        }
        cum += inc;
        d.push_back(inc);
        L.push_back(cum);
        eps.push_back(lo);
        v.table.push_back({0.0, lo, cum});
    }
    size_t n = d.size();
    bool divergent = true;
    for (size_t k = n - 3; k < n; ++k) {
        if (d[k] < d[k - 1] * (1.0 - 1e-6)) divergent = false;
        if (d[k] <= opt.divergence_floor) divergent = false;
    }
    v.divergent = divergent;
    if (!divergent) {
        v.model = GrowthModel::Bounded;
        double q = d[n - 2] > 0 ? d[n - 1] / d[n - 2] : 0.0;
        double tail = (q > 0 && q < 1) ? d[n - 1] * q / (1 - q) : 0.0;
        v.finite_value = L[n - 1] + tail;
        v.error_estimate = std::max(opt.tol, std::abs(tail) * q);
        return v;
    }
    // Growth model from tail increments.
    std::vector<double> q;
    for (size_t k = n - 4; k + 1 <= n - 1; ++k)
        if (d[k] > 0) q.push_back(d[k + 1] / d[k]);
    double qmin = q[0], qmax = q[0], qmean = 0;
    for (double x : q) {
        qmin = std::min(qmin, x);
        qmax = std::max(qmax, x);
        qmean += x;
    }
    qmean /= q.size();
    if (qmax < 2.0) {
        // log-type: L = C * ln(1/eps)^p + const. Fitting increments kills the
        // constant, so the pure power case is recovered exactly: with
        // x_k = ln(1/eps_k), the ratio d_k/d_{k-1} = (x_k^p - x_{k-1}^p) /
        // (x_{k-1}^p - x_{k-2}^p) is monotone in p; solve by bisection.
        v.model = GrowthModel::LogPower;
        double x1 = std::log(1.0 / eps[n - 3]);
        double x2 = std::log(1.0 / eps[n - 2]);
        double x3 = std::log(1.0 / eps[n - 1]);
        double ratio = d[n - 1] / d[n - 2];
        auto ratio_at = [&](double p) {
            return (std::pow(x3, p) - std::pow(x2, p)) /
                   (std::pow(x2, p) - std::pow(x1, p));
        };
        double lo = 0.05, hi = 30.0;
        if (ratio_at(lo) <= ratio && ratio <= ratio_at(hi)) {
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                (ratio_at(mid) < ratio ? lo : hi) = mid;
            }
            double p = 0.5 * (lo + hi);
            v.log_power = p;
            v.log_coeff = d[n - 1] / (std::pow(x3, p) - std::pow(x2, p));
        }
    } else if (qmax / qmin < 1.25) {
        v.model = GrowthModel::Power;
        v.power_exponent = std::log10(qmean);
    } else {
        v.model = GrowthModel::Superpolynomial;
    }
    return v;
}

PathLengthResult path_length(const ConformalMetric& m, const PathSpec& path,
                             const LengthOptions& opt) {
    switch (path.kind) {
        case PathSpec::Kind::RadialRay: {
            cplx dir = std::polar(1.0, path.theta0);
            auto lambda = [&](double r) {
                return std::sqrt(std::max(0.0, m.density(r * dir)));
            };
            return to_result(radial_partial_lengths(lambda, path.r0, opt));
        }
        case PathSpec::Kind::Samples: {
            PathLengthResult r;
            r.value = polyline_length(
                [&](cplx z, cplx) { return m.density(z); }, path.samples, opt.tol);
            r.error_estimate = opt.tol;
            r.verdict.model = GrowthModel::Bounded;
            r.verdict.finite_value = r.value;
            return r;
        }
        case PathSpec::Kind::Segment: {
            double speed = std::hypot(path.dir[0], path.dir[1]);
            auto lambda = [&](double t) {
                cplx z{path.p0[0] + t * path.dir[0], path.p0[1] + t * path.dir[1]};
                return std::sqrt(std::max(0.0, m.density(z))) * speed;
            };
            if (std::isinf(path.t_end))
                return to_result(segment_partial_lengths(lambda, opt));
            PathLengthResult r;
            r.value = integrate(lambda, 0.0, path.t_end, opt.tol);
            r.error_estimate = opt.tol;
            r.verdict.model = GrowthModel::Bounded;
            r.verdict.finite_value = r.value;
            return r;
        }
    }
    throw Error("bad path kind");
}

PathLengthResult path_length(const RiemannMetric2& m, const PathSpec& path,
                             const LengthOptions& opt) {
    if (path.kind != PathSpec::Kind::Segment)
        throw Error("RiemannMetric2 paths must be (u,v) segments");
    double du = path.dir[0], dv = path.dir[1];
    auto lambda = [&](double t) {
        double u = path.p0[0] + t * du, v = path.p0[1] + t * dv;
        double q = m.E(u, v) * du * du + 2.0 * m.F(u, v) * du * dv + m.G(u, v) * dv * dv;
        if (q < -1e-12) throw MetricDegenerate("indefinite metric along path");
        return std::sqrt(std::max(0.0, q));
    };
    if (std::isinf(path.t_end)) return to_result(segment_partial_lengths(lambda, opt));
    PathLengthResult r;
    r.value = integrate(lambda, 0.0, path.t_end, opt.tol);
    r.error_estimate = opt.tol;
    r.verdict.model = GrowthModel::Bounded;
    r.verdict.finite_value = r.value;
    return r;
}

PathLengthResult path_length(const DirDensity& density, const PathSpec& path,
                             const LengthOptions& opt) {
    switch (path.kind) {
        case PathSpec::Kind::RadialRay: {
            cplx dir = std::polar(1.0, path.theta0);
            cplx toward = -dir;  // oriented toward the puncture
            auto lambda = [&](double r) {
                return std::sqrt(std::max(0.0, density(r * dir, toward)));
            };
            return to_result(radial_partial_lengths(lambda, path.r0, opt));
        }
        case PathSpec::Kind::Samples: {
            PathLengthResult r;
            r.value = polyline_length(density, path.samples, opt.tol);
            r.error_estimate = opt.tol;
            r.verdict.model = GrowthModel::Bounded;
            r.verdict.finite_value = r.value;
            return r;
        }
        default:
            throw Error("unsupported path kind for directional density");
    }
}

namespace {

GrowthModel weaker(GrowthModel a, GrowthModel b) {
    auto rank = [](GrowthModel m) {
        switch (m) {
            case GrowthModel::Bounded: return 0;
            case GrowthModel::LogPower: return 1;
            case GrowthModel::Power: return 2;
            case GrowthModel::Superpolynomial: return 3;
            case GrowthModel::Undetermined: return 4;
        }
        return 4;
    };
    return rank(a) <= rank(b) ? a : b;
}

DivergenceVerdict aggregate_rays(const std::function<double(double, double)>& lambda_at,
                                 int n_rays, double r0, const LengthOptions& opt) {
    DivergenceVerdict agg;
    agg.divergent = true;
    bool first = true;
    for (int i = 0; i < n_rays; ++i) {
        double theta = -M_PI + 2.0 * M_PI * (i + 0.5) / n_rays;  // avoid the slit
        auto lambda = [&](double r) { return lambda_at(r, theta); };
        DivergenceVerdict v = radial_partial_lengths(lambda, r0, opt);
        for (auto row : v.table) {
            row.ray_angle = theta;
            agg.table.push_back(row);
        }
        agg.divergent = agg.divergent && v.divergent;
        if (first || weaker(v.model, agg.model) == v.model) {
            agg.model = v.model;
            agg.log_power = v.log_power;
            agg.log_coeff = v.log_coeff;
            agg.power_exponent = v.power_exponent;
            agg.finite_value = v.finite_value;
            agg.error_estimate = v.error_estimate;
            first = false;
        }
    }
    return agg;
}

}  // namespace

DivergenceVerdict radial_divergence_test(const ConformalMetric& m, int n_rays,
                                         double r0, const LengthOptions& opt) {
    return aggregate_rays(
        [&](double r, double theta) {
            return std::sqrt(std::max(0.0, m.density(std::polar(r, theta))));
        },
        n_rays, r0, opt);
}

DivergenceVerdict radial_divergence_test(const DirDensity& density, int n_rays,
                                         double r0, const LengthOptions& opt) {
    return aggregate_rays(
        [&](double r, double theta) {
            cplx dir = std::polar(1.0, theta);
            return std::sqrt(std::max(0.0, density(r * dir, -dir)));
        },
        n_rays, r0, opt);
}

WeightedProbeResult weighted_divergence_test(const AbsOneForm& w, int n, int n_rays,
                                             double r0, double spiral_kappa,
                                             const LengthOptions& opt) {
    WeightedProbeResult out;
    out.label = "evidence, not proof";
    // The tracked argument perturbs |log z| by O(theta^2 / log^2 r); go deeper
    // than the default schedule so the log-power fit sees the clean tail.
    LengthOptions deep = opt;
    deep.k_max = std::max(opt.k_max, 14);

    // |w(z)| * |log z|^n with the argument tracked along the path (the form
    // lives on the universal cover; paths fix the branch).
    auto weighted_mag = [&](double r, double arg_tracked) {
        cplx z = std::polar(r, std::remainder(arg_tracked, 2.0 * M_PI));
        double base = w.magnitude(z);
        double lg = std::hypot(std::log(r), arg_tracked);
        return base * std::pow(lg, n);
    };

    out.rays = aggregate_rays(
        [&](double r, double theta) { return weighted_mag(r, theta); },
        n_rays, r0, deep);

    // Logarithmic spirals z(r) = r e^{i(theta0 + kappa log r)}.
    {
        DivergenceVerdict agg;
        agg.divergent = true;
        bool first = true;
        double stretch = std::sqrt(1.0 + spiral_kappa * spiral_kappa);
        for (int i = 0; i < std::max(1, n_rays / 2); ++i) {
            double theta0 = 2.0 * M_PI * i / std::max(1, n_rays / 2);
            auto lambda = [&](double r) {
                double arg = theta0 + spiral_kappa * std::log(r);
                return weighted_mag(r, arg) * stretch;
            };
            DivergenceVerdict v = radial_partial_lengths(lambda, r0, deep);
            for (auto row : v.table) {
                row.ray_angle = theta0;
                agg.table.push_back(row);
            }
            agg.divergent = agg.divergent && v.divergent;
            if (first || weaker(v.model, agg.model) == v.model) {
                agg.model = v.model;
                agg.log_power = v.log_power;
                agg.log_coeff = v.log_coeff;
                agg.power_exponent = v.power_exponent;
                first = false;
            }
        }
        out.spirals = agg;
    }
    out.divergent = out.rays.divergent && out.spirals.divergent;
    return out;
}

}  // namespace forge

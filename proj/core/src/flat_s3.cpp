#include "forge/flat_s3.hpp"

#include <cmath>

namespace forge {

FlatS3Data flat_s3_counterexample() {
    FlatS3Data d;
    auto prof = [](double t) { return std::asin(0.5 * std::exp(-t * t)); };
    auto dprof = [](double t) {
        double e = 0.5 * std::exp(-t * t);
        return -2.0 * t * e / std::sqrt(1.0 - e * e);
    };
    d.phi = prof;
    d.psi = prof;
    d.dphi = dprof;
    d.dpsi = dprof;
    return d;
}

FlatS3Data flat_s3_constant(double omega0) {
    FlatS3Data d;
    d.phi = [omega0](double) { return 0.5 * omega0; };
    d.psi = [omega0](double) { return 0.5 * omega0; };
    d.dphi = [](double) { return 0.0; };
    d.dpsi = [](double) { return 0.0; };
    return d;
}

FlatS3Forms flat_s3_forms(const FlatS3Data& d, double u0, double u1, double v0,
                          double v1, int grid_n) {
    for (int i = 0; i <= grid_n; ++i) {
        double u = u0 + (u1 - u0) * i / grid_n;
        for (int j = 0; j <= grid_n; ++j) {
            double v = v0 + (v1 - v0) * j / grid_n;
            double w = d.omega(u, v);
            if (!(w > 0.0 && w < M_PI))
                throw RangeViolation("omega(u,v) leaves (0,pi) at u=" +
                                     std::to_string(u) + " v=" + std::to_string(v));
        }
    }
    FlatS3Forms f;
    auto w_at = [d](double u, double v) { return d.omega(u, v); };
    f.I.E = [](double, double) { return 1.0; };
    f.I.F = [w_at](double u, double v) { return std::cos(w_at(u, v)); };
    f.I.G = [](double, double) { return 1.0; };
    f.II.E = [](double, double) { return 0.0; };
    f.II.F = [w_at](double u, double v) { return std::sin(w_at(u, v)); };
    f.II.G = [](double, double) { return 0.0; };
    // III = II I^-1 II, computed componentwise
    auto third = [w_at](double u, double v) {
        double c = std::cos(w_at(u, v)), s = std::sin(w_at(u, v));
        double det = 1.0 - c * c;
        // II I^-1 = (1/det) [[-sc, s],[s, -sc]]; times II:
        double e = (s * s) / det;
        double fc = (-s * s * c) / det;
        return std::array<double, 2>{e, fc};
    };
    f.III.E = [third](double u, double v) { return third(u, v)[0]; };
    f.III.F = [third](double u, double v) { return third(u, v)[1]; };
    f.III.G = [third](double u, double v) { return third(u, v)[0]; };
    f.I_plus_III.E = [third](double u, double v) { return 1.0 + third(u, v)[0]; };
    f.I_plus_III.F = [third, w_at](double u, double v) {
        return std::cos(w_at(u, v)) + third(u, v)[1];
    };
    f.I_plus_III.G = [third](double u, double v) { return 1.0 + third(u, v)[0]; };
    f.tau2.E = [](double, double) { return 1.0; };
    f.tau2.F = [](double, double) { return 0.0; };
    f.tau2.G = [](double, double) { return 1.0; };
    f.det_ratio = [w_at](double u, double v) {
        double c = std::cos(w_at(u, v)), s = std::sin(w_at(u, v));
        return (0.0 - s * s) / (1.0 - c * c);
    };
    return f;
}

namespace {

using Vec4 = std::array<double, 4>;

Vec4 operator+(const Vec4& a, const Vec4& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
Vec4 operator*(double s, const Vec4& a) {
    return {s * a[0], s * a[1], s * a[2], s * a[3]};
}
double dot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

struct Frame {
    Vec4 f, fu, fv, n;
};

Frame operator+(const Frame& a, const Frame& b) {
    return {a.f + b.f, a.fu + b.fu, a.fv + b.fv, a.n + b.n};
}
Frame operator*(double s, const Frame& a) {
    return {s * a.f, s * a.fu, s * a.fv, s * a.n};
}

// Structure equations for f : R^2 -> S^3 with I = (1, cos w, 1),
// II = (0, sin w, 0), w = phi(u) + psi(v):
//   f_uu = (c phi'/s) f_u - (phi'/s) f_v - f
//   f_uv = s n - c f
//   f_vv = -(psi'/s) f_u + (c psi'/s) f_v - f
//   n_u  = (c/s) f_u - (1/s) f_v
//   n_v  = -(1/s) f_u + (c/s) f_v
Frame deriv_u(const FlatS3Data& d, double u, double v, const Frame& y) {
    double w = d.omega(u, v);
    double c = std::cos(w), s = std::sin(w);
    double dphi = d.dphi(u);
    Frame r;
    r.f = y.fu;
    r.fu = (c * dphi / s) * y.fu + (-dphi / s) * y.fv + (-1.0) * y.f;
    r.fv = s * y.n + (-c) * y.f;
    r.n = (c / s) * y.fu + (-1.0 / s) * y.fv;
    return r;
}

Frame deriv_v(const FlatS3Data& d, double u, double v, const Frame& y) {
    double w = d.omega(u, v);
    double c = std::cos(w), s = std::sin(w);
    double dpsi = d.dpsi(v);
    Frame r;
    r.f = y.fv;
    r.fu = s * y.n + (-c) * y.f;
    r.fv = (-dpsi / s) * y.fu + (c * dpsi / s) * y.fv + (-1.0) * y.f;
    r.n = (-1.0 / s) * y.fu + (c / s) * y.fv;
    return r;
}

void reproject(Frame& y) {
    double nf = std::sqrt(dot(y.f, y.f));
    y.f = (1.0 / nf) * y.f;
    y.fu = y.fu + (-dot(y.fu, y.f)) * y.f;
    y.fv = y.fv + (-dot(y.fv, y.f)) * y.f;
    // n: unit, orthogonal to f and both tangents
    y.n = y.n + (-dot(y.n, y.f)) * y.f;
    double E = dot(y.fu, y.fu), F = dot(y.fu, y.fv), G = dot(y.fv, y.fv);
    double det = E * G - F * F;
    if (det > 1e-12) {
        double a = (G * dot(y.n, y.fu) - F * dot(y.n, y.fv)) / det;
        double b = (E * dot(y.n, y.fv) - F * dot(y.n, y.fu)) / det;
        y.n = y.n + (-a) * y.fu + (-b) * y.fv;
    }
    double nn = std::sqrt(dot(y.n, y.n));
    if (nn > 1e-12) y.n = (1.0 / nn) * y.n;
}

template <class D>
Frame rk4_step(const D& deriv, double t, double h, const Frame& y) {
    Frame k1 = deriv(t, y);
    Frame k2 = deriv(t + 0.5 * h, y + (0.5 * h) * k1);
    Frame k3 = deriv(t + 0.5 * h, y + (0.5 * h) * k2);
    Frame k4 = deriv(t + h, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Frame initial_frame(const FlatS3Data& d, double u0, double v0) {
    double w = d.omega(u0, v0);
    Frame y;
    y.f = {1, 0, 0, 0};
    y.fu = {0, 1, 0, 0};
    y.fv = {0, std::cos(w), std::sin(w), 0};
    y.n = {0, 0, 0, 1};
    return y;
}

}  // namespace

SurfaceMesh flat_s3_integrate(const FlatS3Data& d, double u0, double u1, double v0,
                              double v1, const FlatS3IntegrateOptions& opt) {
    SurfaceMesh mesh;
    double h = opt.step;
    int nu = static_cast<int>(std::round((u1 - u0) / h));
    int nv = static_cast<int>(std::round((v1 - v0) / h));
    mesh.nu = nu;
    mesh.nv = nv;
    mesh.u0 = u0;
    mesh.v0 = v0;
    mesh.step = h;
    mesh.vertices.assign(static_cast<size_t>(nu + 1) * (nv + 1), {});

    // initial data: v-line at u = u0
    std::vector<Frame> vline(nv + 1);
    vline[0] = initial_frame(d, u0, v0);
    for (int j = 0; j < nv; ++j) {
        double v = v0 + j * h;
        auto dv = [&](double t, const Frame& y) { return deriv_v(d, u0, t, y); };
        Frame y = rk4_step(dv, v, h, vline[j]);
        reproject(y);
        vline[j + 1] = y;
    }

    for (int j = 0; j <= nv; ++j) {
        double v = v0 + j * h;
        Frame y = vline[j];
        mesh.vertices[static_cast<size_t>(0) * (nv + 1) + j] = y.f;
        for (int i = 0; i < nu; ++i) {
            double u = u0 + i * h;
            auto du = [&](double t, const Frame& yy) { return deriv_u(d, t, v, yy); };
            y = rk4_step(du, u, h, y);
            reproject(y);
            if (dot(y.f, y.f) > opt.blowup_norm * opt.blowup_norm)
                throw IntegrationBlowup("frame integration blew up");
            mesh.vertices[static_cast<size_t>(i + 1) * (nv + 1) + j] = y.f;
        }
    }

    // compatibility cross-check: far corner reached by the v-then-u sweep must
    // match a u-then-v sweep (Gauss-Codazzi residual proxy)
    {
        Frame y = initial_frame(d, u0, v0);
        for (int i = 0; i < nu; ++i) {
            double u = u0 + i * h;
            auto du = [&](double t, const Frame& yy) { return deriv_u(d, t, v0, yy); };
            y = rk4_step(du, u, h, y);
            reproject(y);
        }
        for (int j = 0; j < nv; ++j) {
            double v = v0 + j * h;
            auto dv = [&](double t, const Frame& yy) { return deriv_v(d, u1, t, yy); };
            y = rk4_step(dv, v, h, y);
            reproject(y);
        }
        const Vec4& other = mesh.at(nu, nv);
        double diff = std::sqrt(dot(y.f + (-1.0) * other, y.f + (-1.0) * other));
        if (diff > opt.compat_tol)
            throw CompatibilityResidual("sweep-order mismatch " + std::to_string(diff));
    }
    return mesh;
}

std::array<double, 3> mesh_induced_efg(const SurfaceMesh& mesh, int i, int j) {
    // 4th-order central differences where the stencil fits, 2nd-order at the rim
    Vec4 fu, fv;
    if (i >= 2 && i + 2 <= mesh.nu) {
        double c = 1.0 / (12.0 * mesh.step);
        fu = c * (8.0 * (mesh.at(i + 1, j) + (-1.0) * mesh.at(i - 1, j)) +
                  (-1.0) * (mesh.at(i + 2, j) + (-1.0) * mesh.at(i - 2, j)));
    } else {
        fu = (1.0 / (2.0 * mesh.step)) *
             (mesh.at(i + 1, j) + (-1.0) * mesh.at(i - 1, j));
    }
    if (j >= 2 && j + 2 <= mesh.nv) {
        double c = 1.0 / (12.0 * mesh.step);
        fv = c * (8.0 * (mesh.at(i, j + 1) + (-1.0) * mesh.at(i, j - 1)) +
                  (-1.0) * (mesh.at(i, j + 2) + (-1.0) * mesh.at(i, j - 2)));
    } else {
        fv = (1.0 / (2.0 * mesh.step)) *
             (mesh.at(i, j + 1) + (-1.0) * mesh.at(i, j - 1));
    }
    return {dot(fu, fu), dot(fu, fv), dot(fv, fv)};
}

}  // namespace forge

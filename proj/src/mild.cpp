#include "gevreyns/mild.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gevreyns {

namespace {

// phi1(x) = (1 - e^{-x})/x, phi2(x) = (x - 1 + e^{-x})/x^2, both -> exact
// trapezoid weights as x -> 0.
double phi1(double x) {
    if (x == 0.0) return 1.0;
    return -std::expm1(-x) / x;
}

double phi2(double x) {
    if (x < 1e-4) return 0.5 - x / 6.0 + x * x / 24.0;
    return (x + std::expm1(-x)) / (x * x);
}

// div(u (x) v) component i = i sum_j xi_j F(v_i u_j), dealiased, projected
VectorField bilinear_div(const FrequencyGrid& g, const VectorField& u, const VectorField& v) {
    std::array<ScalarField, 3> up, vp;
    for (int i = 0; i < 3; ++i) {
        up[size_t(i)] = to_physical(g, u[i]);
        vp[size_t(i)] = to_physical(g, v[i]);
    }
    const Complex I(0.0, 1.0);
    const ArrayXd* ks[3] = {&g.k1, &g.k2, &g.k3};
    VectorField div = zero_vector_field(g);
    for (int i = 0; i < 3; ++i) {
        ScalarField acc = ScalarField::Zero(g.size());
        for (int j = 0; j < 3; ++j) {
            ScalarField prod = vp[size_t(i)] * up[size_t(j)];
            if (!prod.isFinite().all())
                throw std::runtime_error("duhamel_bilinear: non-finite product");
            acc += ks[j]->cast<Complex>() * apply_dealias(g, to_spectral(g, prod));
        }
        div[i] = I * acc;
    }
    return leray_project(g, div);
}

// kernel weights for one interval: result += wA * g(tau_a) + wB * g(tau_b)
// where wA/wB integrate e^{-lambda (t - tau)} times the linear hat functions.
void interval_weights(const ArrayXd& lambda, double h, double rb, ArrayXd& wA, ArrayXd& wB) {
    const Eigen::Index n = lambda.size();
    wA.resize(n);
    wB.resize(n);
    for (Eigen::Index m = 0; m < n; ++m) {
        const double x = lambda[m] * h;
        const double q = std::exp(-lambda[m] * rb);
        const double p1 = phi1(x), p2 = phi2(x);
        wA[m] = q * h * (p1 - p2);
        wB[m] = q * h * p2;
    }
}

void check_shared_nodes(const Trajectory& u, const Trajectory& v) {
    if (u.times.size() != v.times.size())
        throw std::invalid_argument("duhamel_bilinear: mismatched node sets");
    for (size_t j = 0; j < u.times.size(); ++j)
        if (std::abs(u.times[j] - v.times[j]) > 1e-14 * (1.0 + std::abs(u.times[j])))
            throw std::invalid_argument("duhamel_bilinear: mismatched node sets");
}

}  // namespace

VectorField duhamel_bilinear(const FrequencyGrid& g, const Trajectory& u, const Trajectory& v,
                             double t) {
    check_shared_nodes(u, v);
    if (u.times.empty() || t > u.times.back() + 1e-14)
        throw std::invalid_argument("duhamel_bilinear: t beyond trajectory");
    const ArrayXd lambda = u.params.nu * g.ksq;
    VectorField acc = zero_vector_field(g);

    // nonlinear integrand at the nodes, up to t
    std::vector<VectorField> w;
    size_t last = 0;
    while (last + 1 < u.times.size() && u.times[last] < t - 1e-14) ++last;
    for (size_t j = 0; j <= last; ++j)
        w.push_back(bilinear_div(g, u.states[j], v.states[j]));

    ArrayXd wA, wB;
    for (size_t j = 0; j + 1 <= last; ++j) {
        const double ta = u.times[j];
        double tb = u.times[j + 1];
        VectorField gb = w[j + 1];
        if (tb > t) {
            // partial interval: interpolate the integrand at t
            const double frac = (t - ta) / (tb - ta);
            gb = (1.0 - frac) * w[j] + frac * w[j + 1];
            tb = t;
        }
        const double h = tb - ta;
        if (h <= 0.0) continue;
        interval_weights(lambda, h, t - tb, wA, wB);
        for (int c = 0; c < 3; ++c)
            acc[c] += wA.cast<Complex>() * w[j][c] + wB.cast<Complex>() * gb[c];
    }
    VectorField out = leray_project(g, apply_dealias(g, -1.0 * acc));
    return out;
}

SmallnessCertificate smallness_certificate(const FrequencyGrid& g, const VectorField& u0,
                                           double T, const GevreyParams& p, double K) {
    if (T <= 0.0) throw std::invalid_argument("smallness_certificate: T must be > 0");
    SmallnessCertificate cert;
    cert.T = T;
    cert.K = K;
    cert.c0 = K * (std::pow(p.nu, -0.75) * std::pow(T, 0.25) +
                   std::pow(p.nu, -0.25) * std::pow(T, 0.75)) *
              std::sqrt(2.0 * (std::exp(2.0 * p.a) + 1.0));
    // heat semigroup is termwise nonexpansive, so the sup is at t = 0
    cert.y_norm = norm(g, u0, NormKind::H1Gevrey, p);
    cert.product = 4.0 * cert.c0 * cert.y_norm;
    cert.holds = cert.product < 1.0;
    return cert;
}

namespace {

double sup_node_norm(const FrequencyGrid& g, const Trajectory& t, NormKind kind) {
    double s = 0.0;
    for (const auto& st : t.states) s = std::max(s, norm(g, st, kind, t.params));
    return s;
}

double sup_node_diff(const FrequencyGrid& g, const Trajectory& a, const Trajectory& b) {
    double s = 0.0;
    for (size_t j = 0; j < a.states.size(); ++j)
        s = std::max(s, norm(g, a.states[j] - b.states[j], NormKind::H1Gevrey, a.params));
    return s;
}

}  // namespace

std::pair<Trajectory, PicardTrace> picard_solve(const FrequencyGrid& g, const VectorField& u0,
                                                double T, const GevreyParams& p, int nodes,
                                                double tol, int max_iter, double K) {
    if (nodes < 2) throw std::invalid_argument("picard_solve: nodes must be >= 2");
    if (T <= 0.0) throw std::invalid_argument("picard_solve: T must be > 0");
    const int m = nodes;
    const double dt = T / (m - 1);
    const ArrayXd lambda = p.nu * g.ksq;

    Trajectory y;
    y.params = p;
    VectorField u0c = apply_dealias(g, u0);
    for (int j = 0; j < m; ++j) {
        y.times.push_back(j * dt);
        y.states.push_back(heat_propagate(g, u0c, p.nu, j * dt));
    }

    PicardTrace trace;
    trace.certificate = smallness_certificate(g, u0c, T, p, K);

    // kernel weights depend only on the node distance d = j_target - j_interval_end
    std::vector<ArrayXd> wA(static_cast<size_t>(m)), wB(static_cast<size_t>(m));
    for (int d = 0; d < m; ++d) interval_weights(lambda, dt, d * dt, wA[size_t(d)], wB[size_t(d)]);

    Trajectory cur = y;
    trace.iterate_norms.push_back(sup_node_norm(g, cur, NormKind::H1Gevrey));
    for (int iter = 0; iter < max_iter; ++iter) {
        std::vector<VectorField> w;
        w.reserve(size_t(m));
        for (int j = 0; j < m; ++j) w.push_back(bilinear_div(g, cur.states[size_t(j)], cur.states[size_t(j)]));

        Trajectory next;
        next.params = p;
        next.times = y.times;
        next.states.resize(size_t(m));
        next.states[0] = y.states[0];
        for (int j = 1; j < m; ++j) {
            VectorField acc = zero_vector_field(g);
            for (int i = 0; i + 1 <= j; ++i) {
                const int d = j - (i + 1);
                for (int c = 0; c < 3; ++c)
                    acc[c] += wA[size_t(d)].cast<Complex>() * w[size_t(i)][c] +
                              wB[size_t(d)].cast<Complex>() * w[size_t(i + 1)][c];
            }
            next.states[size_t(j)] =
                y.states[size_t(j)] + leray_project(g, apply_dealias(g, -1.0 * acc));
        }

        const double delta = sup_node_diff(g, next, cur);
        trace.deltas.push_back(delta);
        cur = std::move(next);
        trace.iterate_norms.push_back(sup_node_norm(g, cur, NormKind::H1Gevrey));
        if (delta <= tol) {
            trace.converged = true;
            break;
        }
        if (!std::isfinite(delta)) break;
    }
    return {std::move(cur), std::move(trace)};
}

Trajectory timestep_integrate(const FrequencyGrid& g, const VectorField& u0, double T, double dt,
                              const GevreyParams& p, int store_stride) {
    if (dt <= 0.0) throw std::invalid_argument("timestep_integrate: dt must be > 0");
    if (store_stride < 1) store_stride = 1;
    Trajectory traj;
    traj.params = p;
    VectorField u = leray_project(g, apply_dealias(g, u0));
    traj.times.push_back(0.0);
    traj.states.push_back(u);

    auto rhs = [&](const VectorField& v) { return -1.0 * nonlinear_term(g, v); };

    double t = 0.0;
    long step = 0;
    while (t < T - 1e-14) {
        const double h = std::min(dt, T - t);
        const ArrayXcd E1 = (-p.nu * h * g.ksq).exp().cast<Complex>();
        const ArrayXcd E2 = (-p.nu * 0.5 * h * g.ksq).exp().cast<Complex>();
        VectorField k1, k2, k3, k4, ua, ub, uc, un;
        try {
            k1 = rhs(u);
            for (int c = 0; c < 3; ++c) ua[c] = E2 * (u[c] + 0.5 * h * k1[c]);
            k2 = rhs(ua);
            for (int c = 0; c < 3; ++c) ub[c] = E2 * u[c] + 0.5 * h * k2[c];
            k3 = rhs(ub);
            for (int c = 0; c < 3; ++c) uc[c] = E1 * u[c] + h * (E2 * k3[c]);
            k4 = rhs(uc);
            for (int c = 0; c < 3; ++c)
                un[c] = E1 * u[c] +
                        (h / 6.0) * (E1 * k1[c] + 2.0 * (E2 * (k2[c] + k3[c])) + k4[c]);
        } catch (const std::runtime_error&) {
            traj.failed = true;
            break;
        }
        u = leray_project(g, apply_dealias(g, un));
        bool finite = true;
        for (int c = 0; c < 3; ++c) finite = finite && u[c].isFinite().all();
        if (!finite) {
            traj.failed = true;
            break;
        }
        t += h;
        ++step;
        if (step % store_stride == 0 || t >= T - 1e-14) {
            traj.times.push_back(t);
            traj.states.push_back(u);
        }
    }
    return traj;
}

ContinueResult continue_until(const FrequencyGrid& g, const VectorField& u0,
                              const GevreyParams& p, const ContinueOptions& opt) {
    ContinueResult res;
    res.traj.params = p;
    VectorField u = apply_dealias(g, u0);
    res.traj.times.push_back(0.0);
    res.traj.states.push_back(u);
    double t = 0.0;

    if (opt.norm_threshold && norm(g, u, NormKind::H1Gevrey, p) <= *opt.norm_threshold) {
        res.status = ContinueStatus::ThresholdReached;
        return res;
    }

    while (t < opt.time_budget - 1e-14) {
        double window = std::min(opt.initial_window, opt.time_budget - t);
        SmallnessCertificate cert;
        while (true) {
            cert = smallness_certificate(g, u, window, p, opt.K);
            if (cert.holds) break;
            window *= 0.5;
            if (window < opt.window_floor) {
                res.status = ContinueStatus::UncertifiedContinuation;
                return res;
            }
        }
        auto [wtraj, wtrace] = picard_solve(g, u, window, p, opt.nodes, opt.tol, 100, opt.K);
        res.window_certificates.push_back(cert);
        res.window_traces.push_back(wtrace);
        if (!wtrace.converged) {
            res.status = ContinueStatus::UncertifiedContinuation;
            return res;
        }
        for (size_t j = 1; j < wtraj.size(); ++j) {
            res.traj.times.push_back(t + wtraj.times[j]);
            res.traj.states.push_back(wtraj.states[j]);
        }
        t += window;
        u = wtraj.states.back();
        if (opt.norm_threshold && norm(g, u, NormKind::H1Gevrey, p) <= *opt.norm_threshold) {
            res.status = ContinueStatus::ThresholdReached;
            return res;
        }
    }
    res.status = ContinueStatus::BudgetReached;
    return res;
}

}  // namespace gevreyns

#pragma once

#include "chiral/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace chiral {

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_floor = 1e-300;
    int max_panels = 10000;
    double evanescent_cutoff_u = 40.0;
    // Unconverged results with err <= fail_rel_tol·|value| are still usable.
    double fail_rel_tol = 1e-4;
};

struct QuadratureResult {
    cplx value;
    double err_estimate = 0.0;
    int panels_used = 0;
    bool converged = false;
};

template <std::size_t N>
using CVec = std::array<cplx, N>;

template <std::size_t N>
struct VecQuadratureResult {
    CVec<N> value{};
    double err_estimate = 0.0;  // max over components
    int panels_used = 0;
    bool converged = false;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double err) : std::runtime_error(what), err_(err) {}
    double achieved_error() const { return err_; }

private:
    double err_;
};

namespace detail {

struct GK15Nodes {
    static constexpr double xk[8] = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr double wk[8] = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    // Gauss-7 weights on the odd Kronrod nodes xk[1], xk[3], xk[5], xk[7]
    static constexpr double wg[4] = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

template <std::size_t N>
struct Panel {
    double a, b;
    CVec<N> value;
    double err;
};

template <std::size_t N, class F>
void gk15(F& f, Panel<N>& p)
{
    using G = GK15Nodes;
    const double c = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
    CVec<N> k{}, g{};
    auto add = [](CVec<N>& acc, const CVec<N>& v, double w) {
        for (std::size_t i = 0; i < N; ++i)
            acc[i] += w * v[i];
    };
    const CVec<N> fc = f(c);
    add(k, fc, G::wk[7]);
    add(g, fc, G::wg[3]);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * G::xk[j];
        const CVec<N> f1 = f(c - dx), f2 = f(c + dx);
        add(k, f1, G::wk[j]);
        add(k, f2, G::wk[j]);
        if (j % 2 == 1) {
            add(g, f1, G::wg[j / 2]);
            add(g, f2, G::wg[j / 2]);
        }
    }
    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        k[i] *= h;
        g[i] *= h;
        err = std::max(err, std::abs(k[i] - g[i]));
    }
    p.value = k;
    p.err = err;
}

template <std::size_t N, class F>
void evaluate(F& f, std::vector<Panel<N>>& panels, std::size_t first, ExecPolicy policy)
{
    const long n = long(panels.size());
    if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = long(first); i < n; ++i)
            gk15<N>(f, panels[std::size_t(i)]);
    } else {
        for (long i = long(first); i < n; ++i)
            gk15<N>(f, panels[std::size_t(i)]);
    }
}

}  // namespace detail

// Adaptive GK7-15 over the ordered breakpoints `edges`. Each round bisects
// every panel whose error exceeds its equal share of the tolerance; new
// panels are evaluated as one batch (concurrently under ExecPolicy::parallel)
// and all sums run in panel order, so both policies give identical bits.
template <std::size_t N, class F>
VecQuadratureResult<N> integrate_panels(F f, std::vector<double> edges, const QuadratureSpec& spec,
                                        ExecPolicy policy = ExecPolicy::parallel)
{
    if (!(spec.rel_tol > 0.0) || spec.max_panels < 1)
        throw PhysicsError("quadrature: need rel_tol > 0 and max_panels >= 1");
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    VecQuadratureResult<N> out;
    if (edges.size() < 2) {
        out.converged = true;
        return out;
    }
    std::vector<detail::Panel<N>> panels;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        panels.push_back({edges[i], edges[i + 1], {}, 0.0});
    detail::evaluate<N>(f, panels, 0, policy);

    for (;;) {
        CVec<N> total{};
        double err = 0.0;
        for (const auto& p : panels) {
            for (std::size_t i = 0; i < N; ++i)
                total[i] += p.value[i];
            err += p.err;
        }
        double scale = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            scale = std::max(scale, std::abs(total[i]));
        const double tol = spec.rel_tol * scale + spec.abs_floor;
        out.value = total;
        out.err_estimate = err;
        out.panels_used = int(panels.size());
        if (err <= tol) {
            out.converged = true;
            return out;
        }
        const int room = spec.max_panels - int(panels.size());
        if (room <= 0)
            return out;

        const double share = tol / double(panels.size());
        std::vector<char> split(panels.size(), 0);
        int nsplit = 0;
        for (std::size_t i = 0; i < panels.size() && nsplit < room; ++i)
            if (panels[i].err > share) {
                split[i] = 1;
                ++nsplit;
            }
        if (nsplit == 0)
            return out;

        // Rebuild in order: split children first, then one batch evaluation.
        std::vector<detail::Panel<N>> next, fresh;
        std::vector<std::size_t> slot;
        next.reserve(panels.size() + std::size_t(nsplit));
        for (std::size_t i = 0; i < panels.size(); ++i) {
            if (!split[i]) {
                next.push_back(panels[i]);
                continue;
            }
            const double m = 0.5 * (panels[i].a + panels[i].b);
            if (!(m > panels[i].a && m < panels[i].b)) {  // no more resolution
                next.push_back(panels[i]);
                continue;
            }
            for (int h = 0; h < 2; ++h) {
                slot.push_back(next.size());
                next.push_back({h == 0 ? panels[i].a : m, h == 0 ? m : panels[i].b, {}, 0.0});
                fresh.push_back(next.back());
            }
        }
        if (fresh.empty())
            return out;
        detail::evaluate<N>(f, fresh, 0, policy);
        for (std::size_t j = 0; j < fresh.size(); ++j)
            next[slot[j]] = fresh[j];
        panels.swap(next);
    }
}

// Panel edges over [0, k0] on the half periods π/(2z) of e^{2ik⊥z}.
std::vector<double> traveling_edges(double k0, double z, int max_panels);
// Edges over u = 2κ⊥z ∈ [0, u_max], with extra breakpoints given in κ⊥.
std::vector<double> evanescent_edges(double z, double u_max,
                                     const std::vector<double>& kappa_breaks = {});

template <std::size_t N, class F>
VecQuadratureResult<N> integrate_traveling_vec(F f, double k0, double z, const QuadratureSpec& spec,
                                               ExecPolicy policy = ExecPolicy::parallel)
{
    if (!(k0 > 0.0) || !(z > 0.0))
        throw PhysicsError("integrate_traveling: need k0 > 0 and z > 0");
    return integrate_panels<N>(f, traveling_edges(k0, z, spec.max_panels), spec, policy);
}

// ∫_0^∞ f(κ⊥) dκ⊥ through u = 2κ⊥z, truncated at spec.evanescent_cutoff_u.
template <std::size_t N, class F>
VecQuadratureResult<N> integrate_evanescent_vec(F f, double z, const QuadratureSpec& spec,
                                                ExecPolicy policy = ExecPolicy::parallel,
                                                const std::vector<double>& kappa_breaks = {})
{
    if (!(z > 0.0))
        throw PhysicsError("integrate_evanescent: need z > 0");
    const double jac = 1.0 / (2.0 * z);
    auto g = [&f, jac](double u) {
        CVec<N> v = f(u * jac);
        for (auto& x : v)
            x *= jac;
        return v;
    };
    return integrate_panels<N>(g, evanescent_edges(z, spec.evanescent_cutoff_u, kappa_breaks),
                               spec, policy);
}

QuadratureResult integrate_traveling(const std::function<cplx(double)>& f, double k0, double z,
                                     const QuadratureSpec& spec = {},
                                     ExecPolicy policy = ExecPolicy::parallel);
QuadratureResult integrate_evanescent(const std::function<cplx(double)>& f, double z,
                                      const QuadratureSpec& spec = {},
                                      ExecPolicy policy = ExecPolicy::parallel,
                                      const std::vector<double>& kappa_breaks = {});

}  // namespace chiral

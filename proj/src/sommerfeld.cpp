#include "chiral/sommerfeld.hpp"

namespace chiral {

std::vector<double> traveling_edges(double k0, double z, int max_panels)
{
    const double half = kPi / (2.0 * z);
    const int n = std::clamp(int(std::ceil(k0 / half)), 1, std::max(1, max_panels / 2));
    std::vector<double> e(std::size_t(n) + 1);
    for (int i = 0; i <= n; ++i)
        e[std::size_t(i)] = k0 * double(i) / double(n);
    e.back() = k0;
    return e;
}

std::vector<double> evanescent_edges(double z, double u_max, const std::vector<double>& kappa_breaks)
{
    // The e^{-u} weight varies on the unit scale; finer seeds near the origin.
    std::vector<double> e = {0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0, 24.0, 32.0};
    std::erase_if(e, [u_max](double u) { return u >= u_max; });
    e.push_back(u_max);
    for (double k : kappa_breaks) {
        const double u = 2.0 * k * z;
        if (u > 0.0 && u < u_max)
            e.push_back(u);
    }
    return e;
}

namespace {

QuadratureResult scalar(const VecQuadratureResult<1>& r)
{
    return {r.value[0], r.err_estimate, r.panels_used, r.converged};
}

}  // namespace

QuadratureResult integrate_traveling(const std::function<cplx(double)>& f, double k0, double z,
                                     const QuadratureSpec& spec, ExecPolicy policy)
{
    auto g = [&f](double x) { return CVec<1>{f(x)}; };
    return scalar(integrate_traveling_vec<1>(g, k0, z, spec, policy));
}

QuadratureResult integrate_evanescent(const std::function<cplx(double)>& f, double z,
                                      const QuadratureSpec& spec, ExecPolicy policy,
                                      const std::vector<double>& kappa_breaks)
{
    auto g = [&f](double x) { return CVec<1>{f(x)}; };
    return scalar(integrate_evanescent_vec<1>(g, z, spec, policy, kappa_breaks));
}

}  // namespace chiral

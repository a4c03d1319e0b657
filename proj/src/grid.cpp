#include "gevreyns/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace gevreyns {

FrequencyGrid make_grid(int N) {
    if (N < 4 || N % 2 != 0) {
        throw std::invalid_argument("make_grid: N must be even and >= 4");
    }
    FrequencyGrid g;
    g.N = N;
    const Eigen::Index n = g.size();
    g.k1.resize(n);
    g.k2.resize(n);
    g.k3.resize(n);
    g.ksq.resize(n);
    g.kabs.resize(n);
    g.dealias.resize(n);
    const int cutoff = N / 3;
    for (int i = 0; i < N; ++i) {
        const int xi1 = i < N / 2 ? i : i - N;
        for (int j = 0; j < N; ++j) {
            const int xi2 = j < N / 2 ? j : j - N;
            for (int k = 0; k < N; ++k) {
                const int xi3 = k < N / 2 ? k : k - N;
                const Eigen::Index m = g.flat(i, j, k);
                g.k1[m] = xi1;
                g.k2[m] = xi2;
                g.k3[m] = xi3;
                const double s = double(xi1) * xi1 + double(xi2) * xi2 + double(xi3) * xi3;
                g.ksq[m] = s;
                g.kabs[m] = std::sqrt(s);
                g.dealias[m] = std::abs(xi1) <= cutoff && std::abs(xi2) <= cutoff &&
                               std::abs(xi3) <= cutoff;
            }
        }
    }
    return g;
}

}  // namespace gevreyns

#pragma once

#include <Eigen/Dense>

namespace gevreyns {

using Eigen::ArrayXd;
using Eigen::ArrayXcd;
using BoolArray = Eigen::Array<bool, Eigen::Dynamic, 1>;

// Frequency lattice of the periodic box [0,2pi)^3 with N modes per axis.
// Flat index (i,j,k) -> (i*N + j)*N + k; index m on one axis carries the
// integer wavenumber m for m < N/2 and m - N otherwise, so components run
// over [-N/2, N/2-1].
struct FrequencyGrid {
    int N = 0;
    ArrayXd k1, k2, k3;   // wavevector components per flat index
    ArrayXd ksq;          // |xi|^2
    ArrayXd kabs;         // |xi|
    BoolArray dealias;    // 2/3 rule: |xi_i| <= N/3 on every axis

    Eigen::Index size() const { return Eigen::Index(N) * N * N; }

    Eigen::Index flat(int i, int j, int k) const {
        return (Eigen::Index(i) * N + j) * N + k;
    }
    // axis index of an integer wavenumber xi in [-N/2, N/2-1]
    int axis_index(int xi) const { return xi >= 0 ? xi : xi + N; }
    // flat index of an integer wavevector
    Eigen::Index flat_wave(int xi1, int xi2, int xi3) const {
        return flat(axis_index(xi1), axis_index(xi2), axis_index(xi3));
    }
    bool in_range(int xi) const { return xi >= -N / 2 && xi <= N / 2 - 1; }
};

// N must be even and >= 4; throws std::invalid_argument otherwise.
FrequencyGrid make_grid(int N);

}  // namespace gevreyns

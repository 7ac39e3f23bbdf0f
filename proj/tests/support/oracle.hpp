// Test-only reference implementations built from explicit matrices. Nothing
// here goes through ModeBasis, ElementUnitary or Circuit.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double pi = 3.14159265358979323846;

inline Mat hadamard() {
    Mat h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

inline Mat embed(const Mat& m, int i, int j, int d) {
    Mat u = Mat::Identity(d, d);
    u(i, i) = m(0, 0);
    u(i, j) = m(0, 1);
    u(j, i) = m(1, 0);
    u(j, j) = m(1, 1);
    return u;
}

inline Mat phase(int i, double phi, int d) {
    Mat u = Mat::Identity(d, d);
    u(i, i) = std::polar(1.0, phi);
    return u;
}

inline Mat recombiner(double beta) {
    if (beta == 0.0) return Mat::Identity(2, 2);
    Mat m(2, 2);
    m << std::cos(2 * beta), std::sin(2 * beta), std::sin(2 * beta), -std::cos(2 * beta);
    return m;
}

// Whole toolbox on paths 1..4 (indices 0..3), after the V -> 1, H -> 2 map.
inline Mat network(double phi1, double phi2, double beta) {
    Mat u = embed(hadamard(), 0, 2, 4);
    u = embed(hadamard(), 1, 3, 4) * u;
    u = phase(2, phi1, 4) * u;
    u = phase(3, phi2, 4) * u;
    u = embed(hadamard(), 0, 2, 4) * u;
    u = embed(recombiner(beta), 0, 1, 4) * u;
    u = embed(recombiner(beta), 2, 3, 4) * u;
    return u;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

inline Vec kron(const Vec& a, const Vec& b) {
    Vec k(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) k.segment(i * b.size(), b.size()) = a[i] * b;
    return k;
}

inline Vec single_output(double alpha, double phi1, double phi2, double beta) {
    Vec in = Vec::Zero(4);
    in[0] = std::cos(alpha);
    in[1] = std::sin(alpha);
    return network(phi1, phi2, beta) * in;
}

inline std::array<double, 4> single_probabilities(double alpha, double phi1, double phi2, double beta) {
    const Vec out = single_output(alpha, phi1, phi2, beta);
    return {std::norm(out[0]), std::norm(out[1]), std::norm(out[2]), std::norm(out[3])};
}

struct Side {
    double phi1, phi2, beta;
};

inline Vec two_photon_output(double alpha, Side a, Side b) {
    Vec in = Vec::Zero(16);
    in[0] = std::cos(alpha);  // |1>|1'>, i.e. V V'
    in[5] = std::sin(alpha);  // |2>|2'>, i.e. H H'
    return kron(network(a.phi1, a.phi2, a.beta), network(b.phi1, b.phi2, b.beta)) * in;
}

inline Mat random_unitary(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Mat g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = cd(n(rng), n(rng));
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR();
    for (int j = 0; j < d; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
    return q;
}

inline Vec random_state(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = cd(n(rng), n(rng));
    return v.normalized();
}

// Concurrence from the non-Hermitian product rho * rho~.
inline double wootters(const Mat& rho) {
    Mat yy = Mat::Zero(4, 4);
    yy(0, 3) = -1;
    yy(1, 2) = 1;
    yy(2, 1) = 1;
    yy(3, 0) = -1;
    const Mat r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Mat> es(r);
    std::array<double, 4> l{};
    for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0, es.eigenvalues()[i].real()));
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

}  // namespace oracle

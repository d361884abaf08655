// SPDX-License-Identifier: Apache-2.0
#include "fasvbcm/channel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "fasvbcm/error.hpp"
#include "fasvbcm/specfun.hpp"

namespace fas {

Matrix multiply(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows())
        throw DomainError("multiply: dimension mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) += aik * b(k, j);
        }
    return out;
}

Matrix transpose(const Matrix& a)
{
    Matrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(j, i) = a(i, j);
    return out;
}

double relative_frobenius_error(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DomainError("relative_frobenius_error: dimension mismatch");
    double diff = 0.0;
    double ref = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        const double d = a.data()[i] - b.data()[i];
        diff += d * d;
        ref += b.data()[i] * b.data()[i];
    }
    return ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
}

void FasGeometry::validate() const
{
    if (num_ports < 2)
        throw DomainError("FasGeometry: num_ports must be at least 2");
    if (!(aperture > 0.0) || !std::isfinite(aperture))
        throw DomainError("FasGeometry: aperture must be positive");
    if (!(mean_gain > 0.0) || !std::isfinite(mean_gain))
        throw DomainError("FasGeometry: mean_gain must be positive");
}

double jakes_coefficient(int k, int l, const FasGeometry& geom)
{
    geom.validate();
    if (k < 1 || l < 1 || k > geom.num_ports || l > geom.num_ports)
        throw DomainError("jakes_coefficient: port index out of range");
    const double lag = std::abs(k - l);
    return bessel_j0(2.0 * std::numbers::pi * lag * geom.aperture / (geom.num_ports - 1));
}

Covariance build_covariance(const FasGeometry& geom)
{
    geom.validate();
    const auto n = static_cast<std::size_t>(geom.num_ports);
    // Toeplitz: one coefficient per lag
    std::vector<double> by_lag(n);
    for (std::size_t lag = 0; lag < n; ++lag)
        by_lag[lag] = geom.mean_gain * jakes_coefficient(1, static_cast<int>(lag) + 1, geom);
    Covariance cov{Matrix(n, n), geom.mean_gain};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            cov.entries(i, j) = by_lag[i > j ? i - j : j - i];
    return cov;
}

namespace {

void check_symmetric(const Matrix& m)
{
    if (m.rows() != m.cols())
        throw DomainError("covariance must be square");
    double scale = 1.0;
    for (double v : m.data())
        scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale)
                throw DomainError("covariance is not symmetric");
}

}  // namespace

EigenDecomposition symmetric_eigen(const Covariance& cov)
{
    const Matrix& input = cov.entries;
    check_symmetric(input);
    const std::size_t n = input.rows();
    Matrix a = input;
    Matrix v = Matrix::identity(n);

    double total = 0.0;
    for (double x : a.data())
        total += x * x;
    const double tolerance = 1e-13 * std::sqrt(total);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j)
                    s += a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    bool converged = off_norm() <= tolerance;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0)
                    continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        converged = off_norm() <= tolerance;
    }
    if (!converged)
        throw NumericalError("symmetric_eigen: Jacobi iteration did not converge in 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition out;
    out.spectrum.mean_gain = cov.mean_gain;
    out.spectrum.eigenvalues.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.spectrum.eigenvalues[j] = a(src, src);
        for (std::size_t k = 0; k < n; ++k)
            out.vectors(k, j) = v(k, src);
    }
    return out;
}

Spectrum eigen_spectrum(const Covariance& cov)
{
    return symmetric_eigen(cov).spectrum;
}

Matrix coloring_factor(const Covariance& cov)
{
    const EigenDecomposition eig = symmetric_eigen(cov);
    const std::size_t n = cov.dim();
    Matrix factor(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double lambda = eig.spectrum.eigenvalues[j];
        if (lambda < -1e-6 * cov.mean_gain)
            throw NumericalError("coloring_factor: covariance is not positive semidefinite (eigenvalue "
                                 + std::to_string(lambda) + ")");
        const double scale = std::sqrt(std::max(lambda, 0.0));
        double sign = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (std::abs(eig.vectors(k, j)) > 1e-12) {
                sign = eig.vectors(k, j) < 0.0 ? -1.0 : 1.0;
                break;
            }
        }
        for (std::size_t k = 0; k < n; ++k)
            factor(k, j) = sign * scale * eig.vectors(k, j);
    }
    return factor;
}

namespace {

std::string shortest(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

double parse_double(const std::string& token, const char* what)
{
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    while (first < last && *first == ' ')
        ++first;
    while (last > first && (last[-1] == ' ' || last[-1] == '\r'))
        --last;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw DomainError(std::string("covariance csv: bad ") + what + " '" + token + "'");
    return v;
}

}  // namespace

void write_covariance_csv(std::ostream& out, const Covariance& cov)
{
    out << "# dim=" << cov.dim() << " eta=" << shortest(cov.mean_gain) << '\n';
    for (std::size_t i = 0; i < cov.dim(); ++i) {
        for (std::size_t j = 0; j < cov.dim(); ++j) {
            if (j)
                out << ',';
            out << shortest(cov.entries(i, j));
        }
        out << '\n';
    }
}

Covariance read_covariance_csv(std::istream& in)
{
    std::string header;
    if (!std::getline(in, header))
        throw DomainError("covariance csv: empty input");
    std::size_t dim = 0;
    double eta = 0.0;
    {
        std::istringstream hs(header);
        std::string hash, dim_tok, eta_tok;
        hs >> hash >> dim_tok >> eta_tok;
        if (hash != "#" || dim_tok.rfind("dim=", 0) != 0 || eta_tok.rfind("eta=", 0) != 0)
            throw DomainError("covariance csv: header must read '# dim=N eta=<eta>'");
        const double d = parse_double(dim_tok.substr(4), "dim");
        if (d < 1 || d != std::floor(d))
            throw DomainError("covariance csv: dim must be a positive integer");
        dim = static_cast<std::size_t>(d);
        eta = parse_double(eta_tok.substr(4), "eta");
    }
    Covariance cov{Matrix(dim, dim), eta};
    std::string line;
    for (std::size_t i = 0; i < dim; ++i) {
        if (!std::getline(in, line))
            throw DomainError("covariance csv: missing rows");
        std::istringstream ls(line);
        std::string cell;
        std::size_t j = 0;
        while (std::getline(ls, cell, ',')) {
            if (j >= dim)
                throw DomainError("covariance csv: too many columns");
            cov.entries(i, j++) = parse_double(cell, "entry");
        }
        if (j != dim)
            throw DomainError("covariance csv: too few columns");
    }
    return cov;
}

}  // namespace fas

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "fasvbcm/matrix.hpp"

namespace fas {

/// One user's linear fluid antenna: N ports spread evenly over W wavelengths.
struct FasGeometry {
    int num_ports = 2;
    double aperture = 1.0;   // W, in wavelengths
    double mean_gain = 1.0;  // eta, average channel power

    void validate() const;
};

/// Symmetric real covariance of a port channel vector, with the eta it was built for.
struct Covariance {
    Matrix entries;
    double mean_gain = 1.0;

    [[nodiscard]] std::size_t dim() const noexcept { return entries.rows(); }
};

/// Eigenvalues sorted descending.
struct Spectrum {
    std::vector<double> eigenvalues;
    double mean_gain = 1.0;

    [[nodiscard]] std::size_t dim() const noexcept { return eigenvalues.size(); }
};

struct EigenDecomposition {
    Spectrum spectrum;
    Matrix vectors;  // column j pairs with spectrum.eigenvalues[j]
};

/// Jakes correlation J0(2 pi |k - l| W / (N - 1)) between 1-based ports k and l.
double jakes_coefficient(int k, int l, const FasGeometry& geom);

Covariance build_covariance(const FasGeometry& geom);

/// Cyclic Jacobi eigensolver; throws DomainError for inputs asymmetric beyond 1e-12.
EigenDecomposition symmetric_eigen(const Covariance& cov);

Spectrum eigen_spectrum(const Covariance& cov);

/// F with F F^T = cov after clipping numerical-noise negative eigenvalues to zero.
/// Columns follow descending eigenvalues, each with a non-negative leading entry.
/// Throws NumericalError when an eigenvalue is below -1e-6 eta.
Matrix coloring_factor(const Covariance& cov);

/// CSV with header "# dim=N eta=<eta>" followed by N rows of N values.
void write_covariance_csv(std::ostream& out, const Covariance& cov);
Covariance read_covariance_csv(std::istream& in);

}  // namespace fas

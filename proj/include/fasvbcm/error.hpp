// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fas {

/// Precondition violated by a caller-supplied argument.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical contract did not hold (non-PSD covariance, non-convergence, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using WarningHandler = std::function<void(std::string_view)>;

/// Installs the sink for non-fatal numerical warnings and returns the previous one.
/// The default handler writes to stderr.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

}  // namespace fas

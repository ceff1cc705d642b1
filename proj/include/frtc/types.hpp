#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace frtc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad parameter values: out-of-range chaos constants, non-finite orders,
/// sizes below the minimum a transform supports.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Shape mismatches between operands (vector/plan, mask/image, subbands).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Malformed files: bad container magic/version, truncated payloads,
/// unparseable key files.
class FormatError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace frtc

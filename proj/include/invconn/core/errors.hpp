#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace invconn {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error { public: using Error::Error; };
// argument leaves the declared group / base / chart domain
class DomainError : public Error { public: using Error::Error; };
class SingularMatrix : public Error { public: using Error::Error; };
class NotInAlgebra : public Error { public: using Error::Error; };
class InternalConsistency : public Error { public: using Error::Error; };
class PatchSurjectivity : public Error { public: using Error::Error; };
class NotAReducedConnection : public Error { public: using Error::Error; };
class CoverageError : public Error { public: using Error::Error; };
class DegenerateConnection : public Error { public: using Error::Error; };
class PreconditionError : public Error { public: using Error::Error; };
class SamplingExhausted : public Error { public: using Error::Error; };
class NotFound : public Error { public: using Error::Error; };

// A user evaluator threw or produced a non-finite value. Keeps the input.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, Eigen::VectorXd point)
        : Error(what), point_(std::move(point)) {}
    const Eigen::VectorXd& point() const { return point_; }

private:
    Eigen::VectorXd point_;
};

} // namespace invconn

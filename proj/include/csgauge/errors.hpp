#pragma once

#include <stdexcept>
#include <string>

namespace csgauge {

/// Fields or lattices that do not share a shape.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A Fourier symbol evaluated to a non-finite value on the lattice.
struct MultiplierSingularityError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Quadrature node sets that the composite rules cannot use.
struct QuadratureError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Invalid arguments that are not shape problems.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Angle weight with negative order met a zero angle.
struct SingularWeightError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Non-finite values appeared during time integration or Picard iteration.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, double bad_time, double last_good_time)
        : std::runtime_error(what), bad_time_(bad_time), last_good_time_(last_good_time) {}
    double bad_time() const noexcept { return bad_time_; }
    double last_good_time() const noexcept { return last_good_time_; }

private:
    double bad_time_;
    double last_good_time_;
};

}  // namespace csgauge

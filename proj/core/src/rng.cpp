#include "periodica/rng.hpp"

#include <cmath>
#include <numbers>

namespace periodica {

double CounterRng::gaussian(std::uint64_t i) const {
    const double u1 = uniform(2 * i);
    const double u2 = uniform(2 * i + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace periodica

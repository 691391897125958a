#pragma once

#include <vector>

#include "encharm/signal_model.hpp"

namespace fixtures {

// Worked example: p = 2 with disturbances of orders 3 and 9.
inline encharm::EncoderSpec worked_example() {
    using encharm::kPi;
    return encharm::EncoderSpec::normalized(2, {{3, 0.05, kPi / 8, 0.02, kPi / 7}, {9, 0.075, 0.0, 0.09, kPi / 4}});
}

// p = 1 with one orthogonal disturbance of order 6.
inline encharm::EncoderSpec single_sixth() {
    return encharm::EncoderSpec::normalized(1, {{6, 0.1, 0.0, 0.1, 0.0}});
}

}  // namespace fixtures

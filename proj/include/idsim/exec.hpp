#pragma once

namespace idsim {

// threads == 0 means "use every available core"; threads == 1 is equivalent
// to the serial reference implementations.
struct ExecutionPolicy {
    int threads = 0;
};

}  // namespace idsim

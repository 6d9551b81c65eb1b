#pragma once

namespace dimsob {

// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error.
int run(int argc, char** argv);

}  // namespace dimsob

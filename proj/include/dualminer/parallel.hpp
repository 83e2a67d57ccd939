#pragma once

namespace dualminer {

/// Selects between the OpenMP kernel and its serial reference. Both produce
/// identical results; the serial path exists for testing and benchmarking.
enum class Execution { Serial, Parallel };

/// Worker count the parallel kernels will use (1 when built without OpenMP).
int max_threads() noexcept;

}  // namespace dualminer

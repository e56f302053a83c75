#pragma once

namespace dwc {

/// Serial runs the reference loop; Parallel runs the OpenMP kernel. Both
/// produce identical results.
enum class Exec { Serial, Parallel };

/// Applies the DWC_THREADS cap, if set, to the OpenMP runtime.
void configure_threads_from_env();

}  // namespace dwc

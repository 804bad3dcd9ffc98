#pragma once

namespace rufst {

/// Execution policy for the data-parallel kernels. Serial is the reference
/// implementation; Parallel runs the same per-item code across an OpenMP
/// team. Both produce bit-identical results because items never share
/// accumulators.
enum class Exec { Serial, Parallel };

/// Worker count for Exec::Parallel: RUFST_THREADS if set and positive,
/// otherwise the OpenMP default (RUFST_THREADS=0 also means auto).
int worker_count();

}  // namespace rufst

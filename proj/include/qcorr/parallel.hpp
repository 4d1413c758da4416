#pragma once

namespace qcorr {

/// Worker threads for parallel kernels: the OpenMP default (hardware
/// parallelism), capped by QCORR_THREADS when that is a positive integer.
/// Always 1 when built without OpenMP.
int worker_count();

}  // namespace qcorr

#pragma once

#include <string>

#include "secrely/sweep.hpp"
#include "secrely/system_config.hpp"

namespace secrely {

// Loads and validates a system config from JSON. All SNR fields are given in
// dB (keys carry the _db suffix) and converted to linear here, at the
// ingestion boundary. Throws ConfigError with a field-level message on
// schema violations, RangeError on out-of-range values.
//
// Schema:
// {
//   "n_relays": int, "rho": float,
//   "avg_snr_sd_db": float, "avg_snr_sr_db": float, "avg_snr_rd_db": float,
//   "avg_snr_se_db": float, "avg_snr_sb_db": float, "avg_snr_be_db": float,
//   "target_rate": float,
//   "rate_prefactor": "half" | "unit"        (optional, default "half")
// }
SystemConfig load_config_json(const std::string& path);

// Loads a sweep definition: {"axis": ..., "grid": [...], "linkage": [...]}
// with the supplied config as the base point. Linkage rules are objects
// {"target": ..., "source": ..., "factor": float}; targets additionally
// accept "gamma_c" / "gamma_ce" for the combined relay-path means.
SweepSpec load_sweep_json(const std::string& path, const SystemConfig& base);

}  // namespace secrely

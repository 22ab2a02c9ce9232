#pragma once

#include <string>
#include <vector>

namespace secrely {

// Emits the five built-in figure reproductions as fig2.csv .. fig6.csv plus
// matching self-contained gnuplot scripts fig2.gp .. fig6.gp into output_dir
// (created if missing). Returns the paths written. Throws IoError if the
// directory or a file cannot be written.
//
// All figures sweep the average S-D SNR from -5 to 30 dB with N = 5 relays,
// target rate 2 bits/s/Hz, combined relay-path SNR locked to half the S-D
// SNR and half the S-E SNR on the legitimate and eavesdropper sides:
//   fig2  non-zero secrecy probability, rho in {0, 0.5, 0.9, 1}, S-E -5 dB
//   fig3  non-zero secrecy probability, rho 0.5, S-E in {-5, 0, 5} dB
//   fig4  secrecy outage probability,   rho in {0, 0.5, 0.9, 1}, S-E 0 dB
//   fig5  ergodic secrecy capacity,     rho in {0, 0.5, 0.8, 1}, S-E -5 dB
//   fig6  ergodic secrecy capacity,     rho 0.5, S-E in {-5, 0, 5} dB
std::vector<std::string> write_figure_artifacts(const std::string& output_dir);

}  // namespace secrely

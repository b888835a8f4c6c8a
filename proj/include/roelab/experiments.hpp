#pragma once

#include "roelab/models.hpp"
#include "roelab/pairing.hpp"
#include "roelab/spectral.hpp"

namespace roelab {

struct PairingExperimentConfig {
  std::vector<int> l_list = {8, 12, 16};
  double tau = 0.05;
  double kappa = 0.0;       // 0 = window-adapted default
  int gap_index = 0;        // which clean gap hosts E_F
  double fermi_energy = std::numeric_limits<double>::quiet_NaN();  // NaN = gap midpoint
  bool run_oracle = true;
  double oracle_radius_frac = 0.5;  // sector radius as a fraction of the window
  double gap_close_frac = 0.15;     // abort threshold relative to the clean gap
  int gap_window_L = 0;             // 0 = derived from the pairing window
  bool classify_projection_decay = false;
};

struct PairingExperimentResult {
  double fermi_energy = 0.0;
  double clean_gap_width = 0.0;
  GapInfo bulk_gap;                 // measured on the periodic gap-detector window
  PairingResult pairing;
  bool oracle_ran = false;
  double oracle = 0.0;
  Tripartition sectors;
  DecayFit projection_decay;
};

/// Full pairing pipeline: clean band structure places E_F, a periodic
/// window acts as the bulk gap detector (aborting before any index is
/// reported when disorder closes the gap), the open window supplies the
/// Fermi projection, and the ladder plus the real-space Chern oracle run
/// on it.
PairingExperimentResult run_pairing_experiment(const ModelSpec& spec, const DisorderSpec& dis,
                                               const PairingExperimentConfig& config);

struct WeakPhaseReport {
  double clean_gap_width = 0.0;
  GapInfo bulk_gap;
  DecayFit projection_decay;
  PairingResult pairing;
};

/// Stacked lower-dimensional insulator probe: expects index 0 at every
/// ladder step for the gapped SSH stack, clean or mildly disordered.
WeakPhaseReport weak_phase_experiment(const ModelSpec& spec, const DisorderSpec& dis,
                                      const PairingExperimentConfig& config);

/// Smallest half-width >= L whose periodic window fits the magnetic unit
/// cell (q | 2L+1); L itself for non-magnetic models.
int gap_detector_half_width(const ModelSpec& spec, int l);

}  // namespace roelab

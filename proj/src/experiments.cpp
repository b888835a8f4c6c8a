#include "roelab/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace roelab {

int gap_detector_half_width(const ModelSpec& spec, int l) {
  if (spec.kind != ModelKind::hofstadter) return l;
  int candidate = l;
  while ((2 * candidate + 1) % spec.flux_q != 0) ++candidate;
  return candidate;
}

PairingExperimentResult run_pairing_experiment(const ModelSpec& spec, const DisorderSpec& dis,
                                               const PairingExperimentConfig& config) {
  PairingExperimentResult result;

  BandStructure bands = clean_bands(spec);
  result.clean_gap_width = bands.gap_width(config.gap_index);
  if (!(result.clean_gap_width > 0.0))
    throw Error(Error::Kind::precondition, "pairing experiment: clean model has no gap");
  result.fermi_energy = std::isnan(config.fermi_energy) ? bands.fermi_in_gap(config.gap_index)
                                                        : config.fermi_energy;

  // Bulk gap detector on a periodic window. Aborts before any index is
  // reported when the gap has closed; the open-window spectrum cannot be
  // used here because edge modes fill the bulk gap.
  const int l_pair = *std::max_element(config.l_list.begin(), config.l_list.end());
  int l_gap = gap_detector_half_width(spec, config.gap_window_L > 0 ? config.gap_window_L
                                                                    : std::min(l_pair, 13));
  ModelSpec gap_spec = spec;
  gap_spec.L = l_gap;
  gap_spec.bc = Boundary::periodic;
  SpectralData gap_data = eigendecompose(build_hamiltonian(gap_spec, dis));
  result.bulk_gap = spectral_gap(gap_data, result.fermi_energy);
  if (!result.bulk_gap.has_gap ||
      result.bulk_gap.width < config.gap_close_frac * result.clean_gap_width)
    throw Error(Error::Kind::precondition,
                "pairing experiment: bulk spectral gap closed at E_F (width " +
                    std::to_string(result.bulk_gap.has_gap ? result.bulk_gap.width : 0.0) + ")");

  ModelSpec open_spec = spec;
  open_spec.L = l_pair;
  open_spec.bc = Boundary::open;
  BlockOperator h = build_hamiltonian(open_spec, dis);
  SpectralData data = eigendecompose(h);
  FermiProjection p = fermi_projection_bulk(data, h, result.fermi_energy, result.bulk_gap);

  PairingOptions options;
  options.tau = config.tau;
  options.kappa = config.kappa;
  result.pairing = index_pairing(p, config.l_list, options);

  if (config.run_oracle && spec.d == 2) {
    result.sectors =
        default_tripartition(p.p.window(), config.oracle_radius_frac * l_pair);
    result.oracle = kitaev_chern_oracle(p.p, result.sectors);
    result.oracle_ran = true;
  }
  if (config.classify_projection_decay)
    result.projection_decay = classify_decay(decay_profile(p.p), 2.0);
  return result;
}

WeakPhaseReport weak_phase_experiment(const ModelSpec& spec, const DisorderSpec& dis,
                                      const PairingExperimentConfig& config) {
  if (spec.kind != ModelKind::ssh_stack)
    throw Error(Error::Kind::precondition, "weak_phase_experiment expects an ssh_stack model");
  PairingExperimentConfig cfg = config;
  cfg.run_oracle = false;
  cfg.classify_projection_decay = true;
  PairingExperimentResult run = run_pairing_experiment(spec, dis, cfg);

  WeakPhaseReport report;
  report.clean_gap_width = run.clean_gap_width;
  report.bulk_gap = run.bulk_gap;
  report.projection_decay = run.projection_decay;
  report.pairing = run.pairing;
  return report;
}

}  // namespace roelab

#pragma once

#include <complex>
#include <map>
#include <vector>

namespace wigner {

// One sharp-momentum helicity component of a single-photon state.
struct HelicityMode {
  std::complex<double> weight;
  int s = +1;       // helicity, +1 or -1
  int mode_id = 0;  // momentum mode label
};

struct HelicityState {
  std::vector<HelicityMode> modes;

  double norm_sq() const;
  bool is_normalized(double tol = 1e-12) const;
  void normalize();

  // (|+> + |->)/sqrt(2) in a single momentum mode.
  static HelicityState equal_superposition(int mode_id = 0);
};

enum class MultiPhotonKind { bell_plus, bell_minus, ghz, product_qubits };

// Helicity rotation of one path traversal: each amplitude of helicity s
// gains exp(i s psi).
HelicityState apply_wigner_phase(const HelicityState& state, double psi);

// Mode-resolved variant for states spread over momentum modes that picked up
// different rotation angles. Modes missing from the map keep phase zero.
HelicityState apply_mode_phases(const HelicityState& state,
                                const std::map<int, double>& psi_by_mode);

// Fidelity |<bell|U(psi) x U(psi)|bell>|^2 of a phase-evolved Bell pair
// (|+-> +- |-+>)/sqrt(2) with the original. Equals 1 for every psi.
double bell_invariance_check(MultiPhotonKind kind, double psi);

// Relative phase 2 m psi between the two branches of the m-photon GHZ state
// (|+>^m +- |->^m)/sqrt(2), unwrapped and wrapped to [0, 2 pi).
struct GhzPhase {
  double total = 0.0;
  double wrapped = 0.0;
};
GhzPhase ghz_relative_phase(int m, double psi);

// Outcome of interfering the state on the (|+> +- |->)/sqrt(2) basis.
struct VisibilityReadout {
  double p_plus = 0.0;
  double p_minus = 0.0;
  double visibility = 0.0;
  double extracted_phase = 0.0;  // arg sum_m w_{m,+} conj(w_{m,-}), in [0, 2pi)
};
VisibilityReadout interference_visibility(const HelicityState& state);

// Purity of the helicity density matrix after tracing out the momentum
// label; below 1 exactly when mode-dependent phases entangle the two.
double reduced_helicity_purity(const HelicityState& state);

}  // namespace wigner

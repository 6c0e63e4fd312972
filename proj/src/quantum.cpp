#include "wigner/quantum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wigner/errors.hpp"

namespace wigner {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_positive(double angle) {
  double w = std::fmod(angle, two_pi);
  if (w < 0.0) w += two_pi;
  return w;
}

void require_helicity(int s) {
  if (s != 1 && s != -1)
    throw InvalidArgument("helicity label must be +1 or -1");
}

}  // namespace

double HelicityState::norm_sq() const {
  double n = 0.0;
  for (const auto& m : modes) n += std::norm(m.weight);
  return n;
}

bool HelicityState::is_normalized(double tol) const {
  return std::fabs(norm_sq() - 1.0) <= tol;
}

void HelicityState::normalize() {
  const double n = norm_sq();
  if (n <= 0.0) throw InvalidArgument("cannot normalize a null state");
  const double scale = 1.0 / std::sqrt(n);
  for (auto& m : modes) m.weight *= scale;
}

HelicityState HelicityState::equal_superposition(int mode_id) {
  const double w = 1.0 / std::sqrt(2.0);
  return {{{w, +1, mode_id}, {w, -1, mode_id}}};
}

HelicityState apply_wigner_phase(const HelicityState& state, double psi) {
  HelicityState out = state;
  for (auto& m : out.modes) {
    require_helicity(m.s);
    m.weight *= std::polar(1.0, m.s * psi);
  }
  return out;
}

HelicityState apply_mode_phases(const HelicityState& state,
                                const std::map<int, double>& psi_by_mode) {
  HelicityState out = state;
  for (auto& m : out.modes) {
    require_helicity(m.s);
    const auto it = psi_by_mode.find(m.mode_id);
    if (it == psi_by_mode.end()) continue;
    m.weight *= std::polar(1.0, m.s * it->second);
  }
  return out;
}

double bell_invariance_check(MultiPhotonKind kind, double psi) {
  if (kind != MultiPhotonKind::bell_plus && kind != MultiPhotonKind::bell_minus)
    throw InvalidArgument("invariance check applies to the Bell pairs");
  // (|+-> + c |-+>)/sqrt(2) with c = +-1. Both branches carry total
  // helicity zero, so under U(psi) x U(psi) the overlap with the original
  // is |c_pm|^2 e^{i(psi - psi)} + |c_mp|^2 e^{i(-psi + psi)}.
  const double c = (kind == MultiPhotonKind::bell_plus) ? 1.0 : -1.0;
  const std::complex<double> overlap =
      0.5 * std::polar(1.0, psi - psi) +
      0.5 * (c * c) * std::polar(1.0, -psi + psi);
  return std::norm(overlap);
}

GhzPhase ghz_relative_phase(int m, double psi) {
  if (m < 1) throw InvalidArgument("photon count must be >= 1");
  GhzPhase out;
  // (|+>^m +- |->^m)/sqrt(2): the branches gain exp(+-i m psi), a relative
  // phase of 2 m psi.
  out.total = 2.0 * static_cast<double>(m) * psi;
  out.wrapped = wrap_positive(out.total);
  return out;
}

VisibilityReadout interference_visibility(const HelicityState& state) {
  // Per momentum mode, collect the two helicity amplitudes; the diagonal
  // basis (|+> +- |->)/sqrt(2) mixes them pairwise.
  std::map<int, std::complex<double>> plus, minus;
  for (const auto& m : state.modes) {
    require_helicity(m.s);
    auto& slot = (m.s == 1 ? plus : minus)[m.mode_id];
    slot += m.weight;
  }

  VisibilityReadout out;
  std::complex<double> cross;
  double n_plus = 0.0, n_minus = 0.0;
  const double inv2 = 0.5;
  for (const auto& [mode, wp] : plus) n_plus += std::norm(wp);
  for (const auto& [mode, wm] : minus) n_minus += std::norm(wm);
  for (const auto& [mode, wp] : plus) {
    const auto it = minus.find(mode);
    if (it != minus.end()) cross += wp * std::conj(it->second);
  }

  const double total = n_plus + n_minus;
  if (total <= 0.0) throw InvalidArgument("empty state has no readout");
  out.p_plus = inv2 * (total + 2.0 * cross.real()) / total;
  out.p_minus = inv2 * (total - 2.0 * cross.real()) / total;
  out.visibility = 2.0 * std::abs(cross) / total;
  out.extracted_phase = wrap_positive(std::arg(cross));
  return out;
}

double reduced_helicity_purity(const HelicityState& state) {
  std::map<int, std::complex<double>> plus, minus;
  for (const auto& m : state.modes) {
    require_helicity(m.s);
    (m.s == 1 ? plus : minus)[m.mode_id] += m.weight;
  }
  const double total = state.norm_sq();
  if (total <= 0.0) throw InvalidArgument("empty state has no purity");

  // 2x2 helicity density matrix after the momentum trace.
  double rho_pp = 0.0, rho_mm = 0.0;
  std::complex<double> rho_pm;
  for (const auto& [mode, wp] : plus) rho_pp += std::norm(wp);
  for (const auto& [mode, wm] : minus) rho_mm += std::norm(wm);
  for (const auto& [mode, wp] : plus) {
    const auto it = minus.find(mode);
    if (it != minus.end()) rho_pm += wp * std::conj(it->second);
  }
  rho_pp /= total;
  rho_mm /= total;
  rho_pm /= total;
  return rho_pp * rho_pp + rho_mm * rho_mm + 2.0 * std::norm(rho_pm);
}

}  // namespace wigner

#include "nomauth/phy.hpp"

#include <cmath>
#include <limits>

#include "nomauth/errors.hpp"

namespace nomauth {

cdouble modulate(std::uint8_t b0, std::uint8_t b1) {
  static const double s = 1.0 / std::sqrt(2.0);
  const double re = b1 ? -s : s;
  const double im = b0 ? -s : s;
  return {re, im};
}

double path_loss_db(double d_km) {
  if (!(d_km > 0.0))
    throw NonPositiveDistance("distance must be positive, got " +
                              std::to_string(d_km));
  return 128.1 + 37.6 * std::log10(d_km);
}

ChannelState init_channel(int n_resources, const Eigen::VectorXd& distances_km,
                          double zeta, double subpath_var, RngStream& rng) {
  if (n_resources < 1) throw InvalidDimensions("need at least one resource");
  if (!(zeta >= 0.0 && zeta <= 1.0))
    throw ValidationError("zeta must lie in [0, 1]");
  if (!(subpath_var > 0.0))
    throw ValidationError("subpath variance must be positive");

  const int k_devices = static_cast<int>(distances_km.size());
  ChannelState st;
  st.zeta = zeta;
  st.distances = distances_km;
  st.amp.resize(k_devices);
  st.H.resize(n_resources, k_devices);
  for (int k = 0; k < k_devices; ++k) {
    const double gain_db = -path_loss_db(distances_km(k));
    st.amp(k) = std::sqrt(subpath_var) * std::pow(10.0, gain_db / 20.0);
    for (int n = 0; n < n_resources; ++n)
      st.H(n, k) = st.amp(k) * rng.cgauss(1.0);
  }
  return st;
}

void evolve_channel(ChannelState& state, RngStream& rng) {
  const double zeta = state.zeta;
  const double innov = std::sqrt(1.0 - zeta * zeta);
  for (Eigen::Index k = 0; k < state.H.cols(); ++k) {
    const double s = state.amp(k) * innov;
    for (Eigen::Index n = 0; n < state.H.rows(); ++n)
      state.H(n, k) = zeta * state.H(n, k) + s * rng.cgauss(1.0);
  }
}

void evolve_column_gap(ChannelState& state, int device, int gap,
                       RngStream& rng) {
  if (gap <= 0) return;
  const double zg = std::pow(state.zeta, gap);
  const double s = state.amp(device) * std::sqrt(1.0 - zg * zg);
  for (Eigen::Index n = 0; n < state.H.rows(); ++n)
    state.H(n, device) = zg * state.H(n, device) + s * rng.cgauss(1.0);
}

SlotFrame synthesize_slot(int slot_index,
                          const std::vector<TransmitRecord>& records,
                          int n_resources, double snr_db,
                          double ref_symbol_energy, RngStream& rng) {
  SlotFrame f;
  f.slot_index = slot_index;
  f.records = records;
  f.y = Eigen::VectorXcd::Zero(n_resources);
  f.G.resize(n_resources, static_cast<Eigen::Index>(records.size()));

  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.channel.size() != n_resources || rec.sequence.size() != n_resources)
      throw DimensionMismatch("record vectors must have length N");
    f.G.col(static_cast<Eigen::Index>(r)) =
        rec.channel.cwiseProduct(rec.sequence);
    f.y += f.G.col(static_cast<Eigen::Index>(r)) * rec.symbol;
  }

  const bool noiseless = std::isinf(snr_db);
  f.noise_var =
      noiseless ? 0.0 : ref_symbol_energy * std::pow(10.0, -snr_db / 10.0);
  const double amp = std::sqrt(f.noise_var);
  for (int n = 0; n < n_resources; ++n) {
    const cdouble w = rng.cgauss(1.0);  // drawn even when noiseless
    if (!noiseless) f.y(n) += amp * w;
  }
  return f;
}

}  // namespace nomauth

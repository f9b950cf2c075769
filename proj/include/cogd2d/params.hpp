#pragma once

#include <cmath>
#include <string_view>

namespace cogd2d {

enum class AccessPolicy { Rsa, Psa };
enum class LinkSide { Downlink, Uplink };

std::string_view to_string(AccessPolicy p);
std::string_view to_string(LinkSide s);

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double per_km2_to_per_m2(double v) { return v * 1e-6; }
inline double per_m2_to_per_km2(double v) { return v * 1e6; }

/// Physical scalars, all SI (watts, metres, m^-2).
struct NetworkParams {
  double lambda_B = 1e-6;   // BS density
  double lambda_U = 1e-5;   // cellular user density
  double lambda_D = 2e-5;   // D2D transmitter density
  double P_B = dbm_to_watts(37.0);
  double rho_b = dbm_to_watts(-70.0);   // BS receiver sensitivity
  double rho_d = dbm_to_watts(-70.0);   // D2D receiver sensitivity
  double sigma_z2 = dbm_to_watts(-104.0);
  double a = 1.0;                       // RF-to-DC efficiency
  double alpha = 4.0;                   // cellular path-loss exponent
  double beta = 3.0;                    // D2D path-loss exponent
  double gamma_sense = dbm_to_watts(-60.0);
  double d_o = 10.0;
  double tau = 1.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  double mean_load() const { return lambda_B > 0.0 ? lambda_U / lambda_B : 0.0; }
  /// Transmit power needed for channel inversion over d_o.
  double d2d_tx_power() const { return rho_d * std::pow(d_o, beta); }
};

/// How q_c enters the harvesting constants kappa1/kappa2.
enum class KappaBasis {
  /// Usage probabilities over the whole channel set, with the D2D channel's
  /// own q_d folded into its subset.  Matches the scheduler in mcsim.
  WholeSet,
  /// Policy formula evaluated with |C_D| and |C_U| separately.
  SubsetPolicy,
  /// RSA formula with |C_D| and |C_U| regardless of policy.
  SubsetRsa,
};

std::string_view to_string(KappaBasis b);

struct ChannelPlan {
  int n_downlink = 5;
  int n_uplink = 5;
  LinkSide d2d_side = LinkSide::Downlink;
  AccessPolicy policy = AccessPolicy::Rsa;
  KappaBasis kappa_basis = KappaBasis::WholeSet;

  int total() const { return n_downlink + n_uplink; }
  int side_count(LinkSide s) const { return s == LinkSide::Downlink ? n_downlink : n_uplink; }

  void validate() const;

  /// |C_U| = floor(|C|/2), |C_D| = |C| - |C_U|.
  static ChannelPlan even_split(int n_channels, LinkSide side, AccessPolicy policy);
};

}  // namespace cogd2d

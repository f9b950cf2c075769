#include "cogd2d/params.hpp"

#include <stdexcept>
#include <string>

namespace cogd2d {

std::string_view to_string(AccessPolicy p) { return p == AccessPolicy::Rsa ? "rsa" : "psa"; }

std::string_view to_string(LinkSide s) { return s == LinkSide::Downlink ? "dl" : "ul"; }

std::string_view to_string(KappaBasis b) {
  switch (b) {
    case KappaBasis::WholeSet: return "whole";
    case KappaBasis::SubsetPolicy: return "subset";
    case KappaBasis::SubsetRsa: return "subset-rsa";
  }
  return "?";
}

namespace {
void require(bool ok, const char* field, const char* rule) {
  if (!ok) throw std::invalid_argument(std::string(field) + ": " + rule);
}
}  // namespace

void NetworkParams::validate() const {
  require(lambda_B > 0.0, "lambda_B", "must be > 0");
  require(lambda_U >= 0.0, "lambda_U", "must be >= 0");
  require(lambda_D >= 0.0, "lambda_D", "must be >= 0");
  require(P_B > 0.0, "P_B", "must be > 0");
  require(rho_b > 0.0, "rho_b", "must be > 0");
  require(rho_d > 0.0, "rho_d", "must be > 0");
  require(sigma_z2 >= 0.0, "sigma_z2", "must be >= 0");
  require(a > 0.0 && a <= 1.0, "a", "must lie in (0, 1]");
  require(alpha > 2.0, "alpha", "must be > 2");
  require(beta > 2.0, "beta", "must be > 2");
  require(gamma_sense > 0.0, "gamma_sense", "must be > 0");
  require(d_o > 0.0, "d_o", "must be > 0");
  require(tau >= 0.0, "tau", "must be >= 0");
}

void ChannelPlan::validate() const {
  require(n_downlink >= 0 && n_uplink >= 0, "n_downlink/n_uplink", "must be >= 0");
  require(total() >= 1, "n_channels", "need at least one channel");
  require(side_count(d2d_side) >= 1, "d2d_side", "the subset holding the D2D channel is empty");
  require(policy == AccessPolicy::Rsa || total() >= 2, "policy", "PSA needs at least two channels");
}

ChannelPlan ChannelPlan::even_split(int n_channels, LinkSide side, AccessPolicy policy) {
  ChannelPlan plan;
  plan.n_uplink = n_channels / 2;
  plan.n_downlink = n_channels - plan.n_uplink;
  plan.d2d_side = side;
  plan.policy = policy;
  return plan;
}

}  // namespace cogd2d

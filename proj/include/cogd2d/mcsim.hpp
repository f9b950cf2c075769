#pragma once

// Monte Carlo engine: full network realizations with explicit scheduling,
// harvesting, sensing and SINR evaluation.
//
// Channel indices: downlink channels are [0, n_downlink), uplink channels
// [n_downlink, n_downlink + n_uplink).  The D2D channel c_d is the first
// channel of its side.

#include <cstdint>
#include <vector>

#include "cogd2d/params.hpp"
#include "cogd2d/spatial_grid.hpp"

namespace cogd2d {

enum class SensingMode { Faded, MeanDisc };
enum class Boundary { Torus, Central };

std::string_view to_string(SensingMode m);
std::string_view to_string(Boundary b);

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed of iteration `iter`: mix64(base_seed ^ mix64(iter + 1)).
std::uint64_t iteration_seed(std::uint64_t base_seed, std::uint64_t iter);

enum class NodeKind : std::uint8_t { Bs = 0, User = 1, D2dTx = 2, D2dRx = 3 };

struct NodeRef {
  NodeKind kind;
  std::uint32_t id;
};

/// Unit-mean exponential power fade of the link src -> dst on `channel`,
/// a pure function of its arguments.
double fade(std::uint64_t fading_seed, NodeRef src, int channel, NodeRef dst);

struct Realization {
  Geometry geom;
  std::vector<Vec2> bs;
  std::vector<Vec2> users;
  std::vector<Vec2> d2d_tx;
  std::vector<Vec2> d2d_rx;  // each exactly d_o from its transmitter
};

Realization sample_realization(const NetworkParams& params, double window_side,
                               std::uint64_t seed, Boundary boundary = Boundary::Torus);

struct Schedule {
  int n_channels = 0;
  int n_downlink = 0;
  int cd = 0;
  std::vector<int> user_bs;          // nearest BS, -1 when there is none
  std::vector<double> user_dist2;    // squared distance to it
  std::vector<int> user_channel;     // -1 when unserved
  std::vector<double> user_power;    // uplink transmit power, 0 otherwise
  std::vector<int> bs_load;
  std::vector<int> link_user;        // [bs * n_channels + c]: user or -1
  std::vector<char> active;          // [bs * n_channels + c]

  bool is_active(int bs, int c) const {
    return active[static_cast<std::size_t>(bs) * n_channels + c] != 0;
  }
  bool is_downlink(int c) const { return c < n_downlink; }
};

/// Nearest-BS association plus RSA/PSA channel assignment.  With
/// `saturated_downlink` every BS additionally transmits on every downlink
/// channel whether or not it has users.
Schedule associate_and_schedule(const Realization& real, const NetworkParams& params,
                                const ChannelPlan& plan, std::uint64_t seed,
                                bool saturated_downlink = false);

/// Transmitters of one channel set, bucketed for range queries.
struct EmitterSet {
  std::vector<Vec2> pos;
  std::vector<double> power;
  std::vector<NodeRef> node;
  std::vector<int> channel;
  double power_sum = 0.0;
  double max_power = 0.0;
  SpatialGrid grid;

  void add(Vec2 p, double w, NodeRef n, int c);
  void build(Geometry geom, double cell_size);
  bool empty() const { return pos.empty(); }
};

/// Active cellular transmitters of one slot.
struct SlotView {
  SlotView(const Realization& real, const Schedule& sched, const NetworkParams& params);

  const Realization* real;
  const Schedule* sched;
  EmitterSet all;                        // every active cellular transmitter
  std::vector<EmitterSet> per_channel;   // indexed by channel
};

/// Sum of P h r^-e over emitters closer than `radius`, plus the mean-field
/// tail beyond it, sum(P)/area * 2 pi radius^(2-e) / (e-2).
/// `skip` excludes one emitter by node.  radius = inf sums everything.
double received_power(const EmitterSet& set, Vec2 at, NodeRef dst, double path_exp,
                      double radius, std::uint64_t fading_seed,
                      const NodeRef* skip = nullptr);

/// Total harvestable power a * sum(...) at D2D transmitter `d2d_index`
/// over every active downlink BS channel and uplink user.
double harvested_power(const SlotView& view, const NetworkParams& params, int d2d_index,
                       std::uint64_t fading_seed, double radius);

double harvested_power(const Realization& real, const Schedule& sched,
                       const NetworkParams& params, int d2d_index, std::uint64_t fading_seed);

/// True if the D2D channel is sensed free at transmitter `d2d_index`.
bool sense_channel(const SlotView& view, const NetworkParams& params, const ChannelPlan& plan,
                   int d2d_index, SensingMode mode, std::uint64_t fading_seed);

bool sense_channel(const Realization& real, const Schedule& sched, const NetworkParams& params,
                   const ChannelPlan& plan, int d2d_index, SensingMode mode,
                   std::uint64_t fading_seed);

struct Estimate {
  double mean = 0.0;
  std::uint64_t n_samples = 0;
  double ci_halfwidth = 0.0;
  bool low_count = true;   // normal approximation unreliable
};

/// 95% normal-approximation interval for k successes out of n.
Estimate make_estimate(std::uint64_t k, std::uint64_t n);

struct McSettings {
  double window_side = 20000.0;
  int n_iters = 10000;
  std::uint64_t seed = 1;
  SensingMode sensing = SensingMode::Faded;
  Boundary boundary = Boundary::Torus;
  // Exact sums inside these radii, mean-field tail beyond.
  double harvest_radius = 1000.0;
  double d2d_radius = 1000.0;
  double cellular_radius = 2500.0;
  int workers = 0;  // 0: hardware concurrency
  bool saturated_downlink = false;
  // Variants for the cellular comparison: every D2D transmitter has enough
  // energy, and/or transmits without sensing.
  bool assume_energy = false;
  bool skip_sensing = false;

  void validate() const;
};

struct McResult {
  Estimate p_s, p_f, p_t, O_D, O_D_tot;
  std::vector<Estimate> O_B_channel;
  Estimate O_B_cd, O_B_other, O_B_avg, O_B_tot;
  Estimate q_f, q_c, q_d;
  std::vector<std::uint64_t> load_histogram;
  double load_tv_distance = 0.0;  // against the analytic cell-load pmf
  double ul_moment_mean = 0.0;    // mean of P_u^(2/alpha) over uplink users
  double ul_moment_se = 0.0;
  std::uint64_t ul_moment_n = 0;
  int n_iters = 0;
  bool low_count = false;         // some estimate has too few samples

  /// Largest CI half-width among the D2D and cellular estimates.
  double max_ci() const;
};

McResult estimate_metrics(const NetworkParams& params, const ChannelPlan& plan,
                          const McSettings& settings);

}  // namespace cogd2d

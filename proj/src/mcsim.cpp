#include "cogd2d/mcsim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "cogd2d/d2d_analytic.hpp"
#include "cogd2d/spectrum.hpp"

namespace cogd2d {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Faded sensing ignores fades above this (probability e^-50 each).
constexpr double kMaxFade = 50.0;

inline double path_gain(double d2, double e) {
  if (e == 4.0) return 1.0 / (d2 * d2);
  if (e == 3.0) return 1.0 / (d2 * std::sqrt(d2));
  return std::pow(d2, -0.5 * e);
}

double grid_cell(double side, std::size_t n) {
  const double c = side / std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1)));
  return std::clamp(c, std::max(side / 1024.0, 1.0), side);
}

double tail_power(const EmitterSet& set, double side, double path_exp, double radius) {
  if (!std::isfinite(radius) || set.power_sum == 0.0 || !(path_exp > 2.0)) return 0.0;
  return set.power_sum / (side * side) * 2.0 * kPi * std::pow(radius, 2.0 - path_exp) /
         (path_exp - 2.0);
}

bool same(NodeRef a, NodeRef b) { return a.kind == b.kind && a.id == b.id; }

// Uniform integer in [0, n).
std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

std::string_view to_string(SensingMode m) { return m == SensingMode::Faded ? "faded" : "meandisc"; }
std::string_view to_string(Boundary b) { return b == Boundary::Torus ? "torus" : "central"; }

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t iteration_seed(std::uint64_t base_seed, std::uint64_t iter) {
  return mix64(base_seed ^ mix64(iter + 1));
}

double fade(std::uint64_t fading_seed, NodeRef src, int channel, NodeRef dst) {
  std::uint64_t h = mix64(fading_seed ^ (static_cast<std::uint64_t>(src.kind) << 56 | src.id));
  h = mix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(channel)) << 8 |
                 static_cast<std::uint64_t>(dst.kind)));
  h = mix64(h ^ dst.id);
  const double u = static_cast<double>((h >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  return -std::log(u);
}

Realization sample_realization(const NetworkParams& params, double window_side,
                               std::uint64_t seed, Boundary boundary) {
  if (!(window_side > 0.0)) throw std::invalid_argument("window_side: must be > 0");
  Realization r;
  r.geom = Geometry{window_side, boundary == Boundary::Torus};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, window_side);
  const double area = window_side * window_side;

  auto draw = [&](double lambda, std::vector<Vec2>& out) {
    if (lambda <= 0.0) return;
    const auto n = std::poisson_distribution<long long>(lambda * area)(rng);
    out.resize(static_cast<std::size_t>(n));
    for (auto& p : out) {
      p.x = coord(rng);
      p.y = coord(rng);
    }
  };
  draw(params.lambda_B, r.bs);
  draw(params.lambda_U, r.users);
  draw(params.lambda_D, r.d2d_tx);

  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  r.d2d_rx.resize(r.d2d_tx.size());
  for (std::size_t i = 0; i < r.d2d_tx.size(); ++i) {
    const double phi = angle(rng);
    r.d2d_rx[i] = r.geom.wrap({r.d2d_tx[i].x + params.d_o * std::cos(phi),
                               r.d2d_tx[i].y + params.d_o * std::sin(phi)});
  }
  return r;
}

Schedule associate_and_schedule(const Realization& real, const NetworkParams& params,
                                const ChannelPlan& plan, std::uint64_t seed,
                                bool saturated_downlink) {
  plan.validate();
  Schedule s;
  const int C = plan.total();
  s.n_channels = C;
  s.n_downlink = plan.n_downlink;
  s.cd = plan.d2d_side == LinkSide::Downlink ? 0 : plan.n_downlink;
  const std::size_t nb = real.bs.size();
  const std::size_t nu = real.users.size();
  s.user_bs.assign(nu, -1);
  s.user_dist2.assign(nu, kInf);
  s.user_channel.assign(nu, -1);
  s.user_power.assign(nu, 0.0);
  s.bs_load.assign(nb, 0);
  s.link_user.assign(nb * C, -1);
  s.active.assign(nb * C, 0);
  if (nb == 0) return s;

  const SpatialGrid grid(real.bs, real.geom, grid_cell(real.geom.side, nb));
  for (std::size_t u = 0; u < nu; ++u) {
    double d2 = 0.0;
    const int b = grid.nearest(real.users[u], &d2);
    s.user_bs[u] = b;
    s.user_dist2[u] = d2;
    ++s.bs_load[b];
  }

  // Users grouped by BS, in index order.
  std::vector<std::size_t> start(nb + 1, 0);
  for (std::size_t u = 0; u < nu; ++u) ++start[s.user_bs[u] + 1];
  for (std::size_t b = 0; b < nb; ++b) start[b + 1] += start[b];
  std::vector<int> members(nu);
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t u = 0; u < nu; ++u) members[fill[s.user_bs[u]]++] = static_cast<int>(u);
  }

  std::mt19937_64 rng(seed);
  std::vector<int> channels;
  for (std::size_t b = 0; b < nb; ++b) {
    const int load = s.bs_load[b];
    if (load == 0) continue;
    // Candidate channels, partially shuffled so the first k are a uniform subset.
    channels.clear();
    int k = 0;
    if (plan.policy == AccessPolicy::Rsa) {
      for (int c = 0; c < C; ++c) channels.push_back(c);
      k = std::min(load, C);
    } else {
      for (int c = 0; c < C; ++c) {
        if (c != s.cd) channels.push_back(c);
      }
      k = std::min(load, C - 1);
    }
    for (int i = 0; i < k; ++i) {
      std::swap(channels[i], channels[i + pick(rng, channels.size() - i)]);
    }
    channels.resize(k);
    if (plan.policy == AccessPolicy::Psa && load >= C) channels.push_back(s.cd);

    int* users = members.data() + start[b];
    const std::size_t n_users = static_cast<std::size_t>(load);
    for (std::size_t i = 0; i < channels.size(); ++i) {
      std::swap(users[i], users[i + pick(rng, n_users - i)]);
      const int u = users[i];
      const int c = channels[i];
      s.user_channel[u] = c;
      s.link_user[b * C + c] = u;
      s.active[b * C + c] = 1;
      if (!s.is_downlink(c)) {
        s.user_power[u] = params.rho_b * std::pow(s.user_dist2[u], 0.5 * params.alpha);
      }
    }
  }
  if (saturated_downlink) {
    for (std::size_t b = 0; b < nb; ++b) {
      for (int c = 0; c < s.n_downlink; ++c) s.active[b * C + c] = 1;
    }
  }
  return s;
}

void EmitterSet::add(Vec2 p, double w, NodeRef n, int c) {
  pos.push_back(p);
  power.push_back(w);
  node.push_back(n);
  channel.push_back(c);
  power_sum += w;
  max_power = std::max(max_power, w);
}

void EmitterSet::build(Geometry geom, double cell_size) { grid = SpatialGrid(pos, geom, cell_size); }

SlotView::SlotView(const Realization& r, const Schedule& s, const NetworkParams& params)
    : real(&r), sched(&s), per_channel(static_cast<std::size_t>(s.n_channels)) {
  const int C = s.n_channels;
  for (std::size_t b = 0; b < r.bs.size(); ++b) {
    for (int c = 0; c < C; ++c) {
      if (!s.is_active(static_cast<int>(b), c)) continue;
      if (s.is_downlink(c)) {
        const NodeRef n{NodeKind::Bs, static_cast<std::uint32_t>(b)};
        all.add(r.bs[b], params.P_B, n, c);
        per_channel[c].add(r.bs[b], params.P_B, n, c);
      } else {
        const int u = s.link_user[b * C + c];
        const NodeRef n{NodeKind::User, static_cast<std::uint32_t>(u)};
        all.add(r.users[u], s.user_power[u], n, c);
        per_channel[c].add(r.users[u], s.user_power[u], n, c);
      }
    }
  }
  all.build(r.geom, grid_cell(r.geom.side, all.pos.size()));
  for (auto& set : per_channel) set.build(r.geom, grid_cell(r.geom.side, set.pos.size()));
}

double received_power(const EmitterSet& set, Vec2 at, NodeRef dst, double path_exp,
                      double radius, std::uint64_t fading_seed, const NodeRef* skip) {
  if (set.empty()) return 0.0;
  const Geometry& geom = set.grid.geometry();
  radius = std::min(radius, geom.max_radius());
  double sum = tail_power(set, geom.side, path_exp, radius);
  set.grid.for_each_within(at, radius, [&](int k, double d2) {
    if (skip && same(set.node[k], *skip)) return;
    sum += set.power[k] * fade(fading_seed, set.node[k], set.channel[k], dst) *
           path_gain(d2, path_exp);
  });
  return sum;
}

namespace {

// P_H > target with an early exit once the partial sum crosses it.
bool harvest_exceeds(const SlotView& view, const NetworkParams& params, int d2d_index,
                     std::uint64_t fading_seed, double radius, double target) {
  const EmitterSet& set = view.all;
  if (set.empty()) return false;
  const Geometry& geom = set.grid.geometry();
  radius = std::min(radius, geom.max_radius());
  const double scaled = target / params.a;
  double sum = tail_power(set, geom.side, params.alpha, radius);
  bool done = sum > scaled;
  const NodeRef dst{NodeKind::D2dTx, static_cast<std::uint32_t>(d2d_index)};
  set.grid.for_each_within(view.real->d2d_tx[d2d_index], radius, [&](int k, double d2) {
    if (done) return;
    sum += set.power[k] * fade(fading_seed, set.node[k], set.channel[k], dst) *
           path_gain(d2, params.alpha);
    done = sum > scaled;
  });
  return done;
}

}  // namespace

double harvested_power(const SlotView& view, const NetworkParams& params, int d2d_index,
                       std::uint64_t fading_seed, double radius) {
  const NodeRef dst{NodeKind::D2dTx, static_cast<std::uint32_t>(d2d_index)};
  return params.a * received_power(view.all, view.real->d2d_tx[d2d_index], dst, params.alpha,
                                   radius, fading_seed);
}

double harvested_power(const Realization& real, const Schedule& sched,
                       const NetworkParams& params, int d2d_index, std::uint64_t fading_seed) {
  const SlotView view(real, sched, params);
  return harvested_power(view, params, d2d_index, fading_seed, kInf);
}

bool sense_channel(const SlotView& view, const NetworkParams& params, const ChannelPlan& plan,
                   int d2d_index, SensingMode mode, std::uint64_t fading_seed) {
  const EmitterSet& set = view.per_channel[view.sched->cd];
  if (set.empty()) return true;
  const Vec2 at = view.real->d2d_tx[d2d_index];
  bool busy = false;
  if (mode == SensingMode::MeanDisc) {
    set.grid.for_each_within(at, protection_radius(params, plan),
                             [&](int, double) { busy = true; });
    return !busy;
  }
  const NodeRef dst{NodeKind::D2dTx, static_cast<std::uint32_t>(d2d_index)};
  const double reach = std::pow(set.max_power * kMaxFade / params.gamma_sense, 1.0 / params.alpha);
  set.grid.for_each_within(at, reach, [&](int k, double d2) {
    if (busy) return;
    const double rx = set.power[k] * fade(fading_seed, set.node[k], set.channel[k], dst) *
                      path_gain(d2, params.alpha);
    busy = rx > params.gamma_sense;
  });
  return !busy;
}

bool sense_channel(const Realization& real, const Schedule& sched, const NetworkParams& params,
                   const ChannelPlan& plan, int d2d_index, SensingMode mode,
                   std::uint64_t fading_seed) {
  const SlotView view(real, sched, params);
  return sense_channel(view, params, plan, d2d_index, mode, fading_seed);
}

Estimate make_estimate(std::uint64_t k, std::uint64_t n) {
  Estimate e;
  e.n_samples = n;
  if (n == 0) {
    e.mean = std::numeric_limits<double>::quiet_NaN();
    e.ci_halfwidth = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  const double p = static_cast<double>(k) / static_cast<double>(n);
  e.mean = p;
  e.ci_halfwidth = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  e.low_count = static_cast<double>(n) * p < 5.0 || static_cast<double>(n) * (1.0 - p) < 5.0;
  return e;
}

void McSettings::validate() const {
  if (!(window_side > 0.0)) throw std::invalid_argument("window_side: must be > 0");
  if (n_iters < 1) throw std::invalid_argument("n_iters: must be >= 1");
  if (!(harvest_radius > 0.0)) throw std::invalid_argument("harvest_radius: must be > 0");
  if (!(d2d_radius > 0.0)) throw std::invalid_argument("d2d_radius: must be > 0");
  if (!(cellular_radius > 0.0)) throw std::invalid_argument("cellular_radius: must be > 0");
  if (workers < 0) throw std::invalid_argument("workers: must be >= 0");
}

double McResult::max_ci() const {
  double m = 0.0;
  for (const Estimate* e : {&p_s, &p_f, &p_t, &O_D, &O_D_tot, &O_B_cd, &O_B_other, &O_B_avg, &O_B_tot}) {
    if (std::isfinite(e->ci_halfwidth)) m = std::max(m, e->ci_halfwidth);
  }
  return m;
}

namespace {

struct Tally {
  std::uint64_t n_d2d = 0, n_suff = 0, n_free = 0, n_active = 0, n_d2d_out = 0;
  std::vector<std::uint64_t> link_n, link_out;
  std::uint64_t n_users = 0, n_served = 0, n_user_fail = 0;
  std::uint64_t n_bs = 0, n_cd_used = 0, n_ord_slots = 0, n_ord_used = 0;
  std::vector<std::uint64_t> hist;
  double ul_sum = 0.0, ul_sum2 = 0.0;
  std::uint64_t ul_n = 0;

  void merge(const Tally& o) {
    n_d2d += o.n_d2d;
    n_suff += o.n_suff;
    n_free += o.n_free;
    n_active += o.n_active;
    n_d2d_out += o.n_d2d_out;
    if (link_n.size() < o.link_n.size()) {
      link_n.resize(o.link_n.size());
      link_out.resize(o.link_out.size());
    }
    for (std::size_t c = 0; c < o.link_n.size(); ++c) {
      link_n[c] += o.link_n[c];
      link_out[c] += o.link_out[c];
    }
    n_users += o.n_users;
    n_served += o.n_served;
    n_user_fail += o.n_user_fail;
    n_bs += o.n_bs;
    n_cd_used += o.n_cd_used;
    n_ord_slots += o.n_ord_slots;
    n_ord_used += o.n_ord_used;
    if (hist.size() < o.hist.size()) hist.resize(o.hist.size());
    for (std::size_t i = 0; i < o.hist.size(); ++i) hist[i] += o.hist[i];
    ul_sum += o.ul_sum;
    ul_sum2 += o.ul_sum2;
    ul_n += o.ul_n;
  }
};

Tally simulate_slot(const NetworkParams& params, const ChannelPlan& plan,
                    const McSettings& settings, std::uint64_t slot_seed) {
  const Realization real =
      sample_realization(params, settings.window_side, mix64(slot_seed ^ 1), settings.boundary);
  const Schedule sched =
      associate_and_schedule(real, params, plan, mix64(slot_seed ^ 2), settings.saturated_downlink);
  const std::uint64_t fs = mix64(slot_seed ^ 3);
  const SlotView view(real, sched, params);
  const int C = sched.n_channels;
  const int cd = sched.cd;
  const double side = settings.window_side;

  auto measured = [&](Vec2 p) {
    if (settings.boundary == Boundary::Torus) return true;
    return std::abs(p.x - 0.5 * side) <= 0.25 * side && std::abs(p.y - 0.5 * side) <= 0.25 * side;
  };

  Tally t;
  t.link_n.assign(C, 0);
  t.link_out.assign(C, 0);

  // D2D activity.
  const double tx_power = params.d2d_tx_power();
  const std::size_t nd = real.d2d_tx.size();
  std::vector<char> suff(nd), is_free(nd);
  EmitterSet d2d;
  for (std::size_t i = 0; i < nd; ++i) {
    const int id = static_cast<int>(i);
    suff[i] = settings.assume_energy ||
              harvest_exceeds(view, params, id, fs, settings.harvest_radius, tx_power);
    is_free[i] = settings.skip_sensing || sense_channel(view, params, plan, id, settings.sensing, fs);
    if (suff[i] && is_free[i]) {
      d2d.add(real.d2d_tx[i], tx_power, {NodeKind::D2dTx, static_cast<std::uint32_t>(i)}, cd);
    }
  }
  d2d.build(real.geom, grid_cell(side, d2d.pos.size()));

  const EmitterSet& cd_set = view.per_channel[cd];
  for (std::size_t i = 0; i < nd; ++i) {
    if (!measured(real.d2d_tx[i])) continue;
    ++t.n_d2d;
    t.n_suff += suff[i];
    t.n_free += is_free[i];
    if (!(suff[i] && is_free[i])) continue;
    ++t.n_active;
    const NodeRef tx{NodeKind::D2dTx, static_cast<std::uint32_t>(i)};
    const NodeRef rx{NodeKind::D2dRx, static_cast<std::uint32_t>(i)};
    const Vec2 at = real.d2d_rx[i];
    const double signal = params.rho_d * fade(fs, tx, cd, rx);
    const double interference =
        received_power(cd_set, at, rx, params.alpha, settings.cellular_radius, fs) +
        received_power(d2d, at, rx, params.beta, settings.d2d_radius, fs, &tx) + params.sigma_z2;
    if (signal < params.tau * interference) ++t.n_d2d_out;
  }

  // Cellular links.
  std::vector<char> user_fail(real.users.size(), 0);
  auto link_outage = [&](int c, Vec2 at, NodeRef dst, NodeRef own, double signal) {
    double interference = received_power(view.per_channel[c], at, dst, params.alpha,
                                         settings.cellular_radius, fs, &own) +
                          params.sigma_z2;
    if (c == cd) interference += received_power(d2d, at, dst, params.beta, settings.d2d_radius, fs);
    return signal < params.tau * interference;
  };
  auto record = [&](int c, bool out) {
    ++t.link_n[c];
    t.link_out[c] += out;
  };

  for (std::size_t b = 0; b < real.bs.size(); ++b) {
    const NodeRef bs{NodeKind::Bs, static_cast<std::uint32_t>(b)};
    for (int c = 0; c < C; ++c) {
      const int u = sched.link_user[b * C + c];
      if (u < 0) continue;
      const NodeRef user{NodeKind::User, static_cast<std::uint32_t>(u)};
      if (sched.is_downlink(c)) {
        if (settings.saturated_downlink || !measured(real.users[u])) continue;
        const double signal =
            params.P_B * fade(fs, bs, c, user) * path_gain(sched.user_dist2[u], params.alpha);
        const bool out = link_outage(c, real.users[u], user, bs, signal);
        record(c, out);
        user_fail[u] = out;
      } else {
        if (!measured(real.bs[b])) continue;
        const bool out = link_outage(c, real.bs[b], bs, user, params.rho_b * fade(fs, user, c, bs));
        record(c, out);
        user_fail[u] = out;
      }
    }
  }
  if (settings.saturated_downlink && sched.n_downlink > 0) {
    // Every user is measured on downlink channel 0 against its nearest BS.
    for (std::size_t u = 0; u < real.users.size(); ++u) {
      const int b = sched.user_bs[u];
      if (b < 0 || !measured(real.users[u])) continue;
      const NodeRef bs{NodeKind::Bs, static_cast<std::uint32_t>(b)};
      const NodeRef user{NodeKind::User, static_cast<std::uint32_t>(u)};
      const double signal =
          params.P_B * fade(fs, bs, 0, user) * path_gain(sched.user_dist2[u], params.alpha);
      const bool out = link_outage(0, real.users[u], user, bs, signal);
      record(0, out);
      user_fail[u] = out;
    }
  }

  for (std::size_t u = 0; u < real.users.size(); ++u) {
    if (!measured(real.users[u])) continue;
    ++t.n_users;
    const int c = sched.user_channel[u];
    if (c < 0) {
      if (!settings.saturated_downlink) ++t.n_user_fail;
      else t.n_user_fail += user_fail[u];
      continue;
    }
    ++t.n_served;
    t.n_user_fail += user_fail[u];
    if (!sched.is_downlink(c)) {
      const double m = std::pow(sched.user_power[u], 2.0 / params.alpha);
      t.ul_sum += m;
      t.ul_sum2 += m * m;
      ++t.ul_n;
    }
  }

  for (std::size_t b = 0; b < real.bs.size(); ++b) {
    if (!measured(real.bs[b])) continue;
    ++t.n_bs;
    const std::size_t load = static_cast<std::size_t>(sched.bs_load[b]);
    if (t.hist.size() <= load) t.hist.resize(load + 1, 0);
    ++t.hist[load];
    for (int c = 0; c < C; ++c) {
      const bool used = sched.link_user[b * C + c] >= 0;
      if (c == cd) {
        t.n_cd_used += used;
      } else {
        ++t.n_ord_slots;
        t.n_ord_used += used;
      }
    }
  }
  return t;
}

}  // namespace

McResult estimate_metrics(const NetworkParams& params, const ChannelPlan& plan,
                          const McSettings& settings) {
  params.validate();
  plan.validate();
  settings.validate();

  const int n_iters = settings.n_iters;
  int workers = settings.workers > 0 ? settings.workers
                                     : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, n_iters);

  // One tally per iteration, merged in index order afterwards.
  std::vector<Tally> tallies(static_cast<std::size_t>(n_iters));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (int i = next++; i < n_iters && !failed; i = next++) {
      try {
        tallies[i] = simulate_slot(params, plan, settings, iteration_seed(settings.seed, i));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  Tally total;
  for (const Tally& t : tallies) total.merge(t);

  McResult r;
  r.n_iters = n_iters;
  r.p_s = make_estimate(total.n_suff, total.n_d2d);
  r.p_f = make_estimate(total.n_free, total.n_d2d);
  r.p_t = make_estimate(total.n_active, total.n_d2d);
  r.O_D = make_estimate(total.n_d2d_out, total.n_active);
  r.O_D_tot = make_estimate(total.n_d2d - total.n_active + total.n_d2d_out, total.n_d2d);

  const int C = plan.total();
  const int cd = plan.d2d_side == LinkSide::Downlink ? 0 : plan.n_downlink;
  total.link_n.resize(C, 0);
  total.link_out.resize(C, 0);
  std::uint64_t other_n = 0, other_out = 0, all_n = 0, all_out = 0;
  for (int c = 0; c < C; ++c) {
    r.O_B_channel.push_back(make_estimate(total.link_out[c], total.link_n[c]));
    all_n += total.link_n[c];
    all_out += total.link_out[c];
    if (c != cd) {
      other_n += total.link_n[c];
      other_out += total.link_out[c];
    }
  }
  r.O_B_cd = r.O_B_channel[cd];
  r.O_B_other = make_estimate(other_out, other_n);
  r.O_B_avg = make_estimate(all_out, all_n);
  r.O_B_tot = make_estimate(total.n_user_fail, total.n_users);
  r.q_f = make_estimate(total.n_served, total.n_users);
  r.q_c = make_estimate(total.n_ord_used, total.n_ord_slots);
  r.q_d = make_estimate(total.n_cd_used, total.n_bs);

  r.load_histogram = total.hist;
  if (total.n_bs > 0) {
    const CellLoadDist dist(params.mean_load());
    const std::size_t n = std::max(total.hist.size(), dist.n_max() + 1);
    double tv = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double emp = k < total.hist.size()
                             ? static_cast<double>(total.hist[k]) / static_cast<double>(total.n_bs)
                             : 0.0;
      tv += std::abs(emp - dist.pmf(k));
    }
    r.load_tv_distance = 0.5 * tv;
  }

  r.ul_moment_n = total.ul_n;
  if (total.ul_n > 0) {
    const double n = static_cast<double>(total.ul_n);
    r.ul_moment_mean = total.ul_sum / n;
    const double var = std::max(0.0, total.ul_sum2 / n - r.ul_moment_mean * r.ul_moment_mean);
    r.ul_moment_se = std::sqrt(var / n);
  }

  for (const Estimate* e : {&r.p_s, &r.p_f, &r.p_t, &r.O_D, &r.O_D_tot, &r.O_B_avg, &r.O_B_tot}) {
    if (e->low_count) r.low_count = true;
  }
  return r;
}

}  // namespace cogd2d

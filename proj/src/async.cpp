#include "gramflow/async.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gramflow/text.hpp"

namespace gramflow {

WindowState init_window(const Word& xi, const Grammar& g) {
  if (xi.empty() || xi.size() % 2 == 0)
    throw Error("initial window must have odd length 2N+1, got " +
                std::to_string(xi.size()));
  WeightReport wr = validate_weights(g, WeightMode::rates);
  if (!wr.valid)
    throw Error("asynchronous simulation needs positive rates: " +
                wr.problems.front());

  WindowState w;
  w.half_width = static_cast<int>(xi.size() / 2);
  w.residues.reserve(xi.size());
  for (std::size_t k = 0; k < xi.size(); ++k)
    w.residues.push_back(
        {xi[k], static_cast<int>(k) - w.half_width, false});
  return w;
}

std::vector<std::pair<Redex, double>> scan_rates(const WindowState& w,
                                                 const Grammar& g) {
  std::vector<std::pair<Redex, double>> out;
  const std::size_t len = w.residues.size();
  for (std::size_t pos = 0; pos < len; ++pos) {
    for (std::size_t pi = 0; pi < g.productions.size(); ++pi) {
      const Word& lhs = g.productions[pi].lhs;
      if (pos + lhs.size() > len) continue;
      bool match = true;
      for (std::size_t k = 0; k < lhs.size(); ++k)
        if (w.residues[pos + k].symbol != lhs[k]) {
          match = false;
          break;
        }
      if (match)
        out.push_back({{pos, pi}, g.productions[pi].rate.value_or(0.0)});
    }
  }
  return out;
}

namespace {

void apply_event(WindowState& w, const Redex& r, const Grammar& g) {
  const Production& p = g.productions[r.production_index];
  std::vector<Residue> inserted;
  inserted.reserve(p.rhs.size());
  for (const Symbol& s : p.rhs) inserted.push_back({s, std::nullopt, true});
  auto begin = w.residues.begin() + static_cast<std::ptrdiff_t>(r.position);
  w.residues.erase(begin, begin + static_cast<std::ptrdiff_t>(p.lhs.size()));
  w.residues.insert(w.residues.begin() +
                        static_cast<std::ptrdiff_t>(r.position),
                    inserted.begin(), inserted.end());
}

std::optional<EventRecord> step_until(WindowState& w, const Grammar& g,
                                      Rng& rng, double t_limit) {
  auto redexes = scan_rates(w, g);
  double total = 0.0;
  for (const auto& [r, rate] : redexes) total += rate;
  if (redexes.empty() || total <= 0.0) return std::nullopt;

  double dt = rng.exponential(total);
  if (w.time + dt > t_limit) return std::nullopt;

  std::vector<double> rates;
  rates.reserve(redexes.size());
  for (const auto& [r, rate] : redexes) rates.push_back(rate);
  std::size_t pick = rng.pick_weighted(rates, total);

  const Redex& chosen = redexes[pick].first;
  const Production& p = g.productions[chosen.production_index];
  EventRecord ev{w.time + dt, chosen.position, chosen.production_index,
                 p.lhs.size(), p.rhs.size()};
  apply_event(w, chosen, g);
  w.time += dt;
  ++w.event_count;
  return ev;
}

}  // namespace

std::optional<EventRecord> gillespie_step(WindowState& w, const Grammar& g,
                                          Rng& rng) {
  return step_until(w, g, rng, std::numeric_limits<double>::infinity());
}

SimulationResult simulate(const Word& xi, const Grammar& g, double t_max,
                          std::uint64_t seed) {
  if (t_max < 0.0) throw Error("t_max must be >= 0");
  SimulationResult res;
  res.window = init_window(xi, g);
  Rng rng(seed);
  while (auto ev = step_until(res.window, g, rng, t_max))
    res.events.push_back(*ev);
  res.window.time = t_max;
  return res;
}

std::optional<std::pair<int, int>> observer_pair(const WindowState& w) {
  std::optional<int> i, j;
  for (const Residue& r : w.residues) {
    if (r.modified || !r.origin) continue;
    if (*r.origin < 0)
      i = i ? std::max(*i, *r.origin) : *r.origin;
    else if (!j)
      j = *r.origin;
  }
  if (!i || !j) return std::nullopt;
  return std::make_pair(*i, *j);
}

Word build_xi(const XiSpec& spec, int half_width, const Grammar& g,
              Rng& rng) {
  const std::size_t len = 2 * static_cast<std::size_t>(half_width) + 1;
  switch (spec.kind) {
    case XiSpec::Kind::fixed:
      if (spec.word.size() != len)
        throw Error("fixed window has length " +
                    std::to_string(spec.word.size()) + ", expected " +
                    std::to_string(len));
      return spec.word;
    case XiSpec::Kind::motif: {
      if (spec.word.empty()) throw Error("motif cannot be empty");
      Word out;
      out.reserve(len);
      const int m = static_cast<int>(spec.word.size());
      for (int s = -half_width; s <= half_width; ++s)
        out.push_back(spec.word[static_cast<std::size_t>(((s % m) + m) % m)]);
      return out;
    }
    case XiSpec::Kind::iid_uniform: {
      if (g.terminals.empty())
        throw Error("iid-uniform window needs a terminal alphabet");
      Word out;
      out.reserve(len);
      for (std::size_t k = 0; k < len; ++k)
        out.push_back(g.terminals[rng.pick_uniform(g.terminals.size())]);
      return out;
    }
  }
  throw Error("unreachable xi kind");
}

std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t n) {
  if (n == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // 95% two-sided
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(successes) / nn;
  const double z2n = z * z / nn;
  const double denom = 1.0 + z2n;
  const double center = (phat + z2n / 2.0) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / nn + z2n / (4.0 * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::map<std::pair<int, int>, ObserverCell> ObserverLaw::normalized() const {
  std::map<std::pair<int, int>, ObserverCell> out;
  const std::uint64_t n = tallied();
  for (const auto& [cell, count] : counts) {
    ObserverCell c;
    c.count = count;
    c.mu_hat = n == 0 ? 0.0
                      : static_cast<double>(count) / static_cast<double>(n);
    std::tie(c.ci_low, c.ci_high) = wilson_interval(count, n);
    out[cell] = c;
  }
  return out;
}

ObserverLaw estimate_mu(const XiSpec& xi, int half_width, const Grammar& g,
                        double t, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw Error("trials must be >= 1");
  if (t < 0.0) throw Error("t must be >= 0");

  ObserverLaw law;
  law.t = t;
  law.trials = trials;
  for (std::uint64_t k = 0; k < trials; ++k) {
    Rng rng(seed + k);
    Word xi_word = build_xi(xi, half_width, g, rng);
    WindowState w = init_window(xi_word, g);
    while (step_until(w, g, rng, t)) {
    }
    if (auto pair = observer_pair(w))
      ++law.counts[*pair];
    else
      ++law.overflow_count;
  }
  return law;
}

double total_variation(const ObserverLaw& a, const ObserverLaw& b) {
  auto na = a.normalized();
  auto nb = b.normalized();
  std::set<std::pair<int, int>> cells;
  for (const auto& [c, v] : na) cells.insert(c);
  for (const auto& [c, v] : nb) cells.insert(c);
  double tv = 0.0;
  for (const auto& c : cells) {
    double pa = na.count(c) ? na[c].mu_hat : 0.0;
    double pb = nb.count(c) ? nb[c].mu_hat : 0.0;
    tv += std::abs(pa - pb);
  }
  return tv / 2.0;
}

std::vector<TvRow> convergence_in_n(const XiSpec& xi, const Grammar& g,
                                    double t, std::uint64_t trials,
                                    const std::vector<int>& n_list,
                                    std::uint64_t seed) {
  if (n_list.size() < 2)
    throw Error("convergence scan needs at least two window sizes");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw Error("window size list must be strictly ascending");

  std::vector<ObserverLaw> laws;
  laws.reserve(n_list.size());
  for (int n : n_list)
    laws.push_back(estimate_mu(xi, n, g, t, trials, seed));

  std::vector<TvRow> rows;
  for (std::size_t i = 1; i < laws.size(); ++i)
    rows.push_back({n_list[i - 1], n_list[i],
                    total_variation(laws[i - 1], laws[i])});
  return rows;
}

}  // namespace gramflow

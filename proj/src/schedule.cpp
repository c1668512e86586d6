#include "mmd2d/schedule.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mmd2d {

std::vector<NodeId> Pairing::endpoints() const {
  std::vector<NodeId> out;
  for (const auto& link : links) {
    out.push_back(link.tx);
    out.push_back(link.rx);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int Schedule::total_slots() const {
  return std::accumulate(pairings.begin(), pairings.end(), 0,
                         [](int acc, const Pairing& p) { return acc + p.slots; });
}

int hop_weight(int d, int c) {
  if (c < 1) {
    throw std::invalid_argument("hop rate must be at least 1 packet per slot");
  }
  if (d < 0) {
    throw std::invalid_argument("demand must be nonnegative");
  }
  return (d + c - 1) / c;
}

ValidationReport validate_schedule(const Schedule& sched, const PathSet& paths, int d,
                                   const RateMatrix& rates) {
  ValidationReport report;
  const int n = paths.n_nodes();
  std::vector<int> pairing_of(n, -1);  // pairing index of u's downloading hop
  std::vector<int> times_served(n, 0);

  for (std::size_t k = 0; k < sched.pairings.size(); ++k) {
    const auto& pairing = sched.pairings[k];
    if (!is_matching(pairing.links)) {
      report.matching = false;
      report.violations.push_back("pairing " + std::to_string(k) + " is not a matching");
    }
    for (const auto& link : pairing.links) {
      const bool known = link.rx >= 0 && link.rx < n && paths.source_of(link.rx) == link.tx;
      if (!known) {
        report.coverage_once = false;
        report.violations.push_back("link " + to_string(link) + " in pairing " +
                                    std::to_string(k) + " is not a path hop");
        continue;
      }
      ++times_served[link.rx];
      pairing_of[link.rx] = static_cast<int>(k);
      if (static_cast<long long>(pairing.slots) * rates(link.tx, link.rx) < d) {
        report.demand_completion = false;
        report.violations.push_back("link " + to_string(link) + " gets " +
                                    std::to_string(pairing.slots) + " slots, too few for " +
                                    std::to_string(d) + " packets");
      }
    }
  }

  for (NodeId u : paths.receivers()) {
    if (times_served[u] != 1) {
      report.coverage_once = false;
      report.violations.push_back("UE " + std::to_string(u) + " downloads " +
                                  std::to_string(times_served[u]) + " times");
    }
  }

  // Cumulative form: at every prefix, s_u has been served at least as often as u.
  for (NodeId u : paths.receivers()) {
    const NodeId s = paths.source_of(u);
    if (s == paths.ap() || pairing_of[u] < 0) {
      continue;
    }
    if (pairing_of[s] < 0 || pairing_of[s] >= pairing_of[u]) {
      report.precedence = false;
      report.violations.push_back("UE " + std::to_string(u) + " downloads before its source " +
                                  std::to_string(s));
    }
  }
  return report;
}

}  // namespace mmd2d

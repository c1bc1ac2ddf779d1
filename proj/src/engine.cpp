#include "bufshuf/engine.hpp"

#include "bufshuf/metrics.hpp"

#include <numeric>
#include <string>

namespace bufshuf {

RoundAssignment sample_partition(const MixConfig& config, RngStream& rng) {
  const std::size_t n = config.n();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  rng.shuffle(std::span<std::uint32_t>(order));

  RoundAssignment out;
  out.group_of.resize(n);
  for (std::size_t slot = 0; slot < n; ++slot) {
    out.group_of[order[slot]] = static_cast<std::uint32_t>(slot / config.k());
  }
  out.honest = honest_flags(config);
  out.marked = marked_flags(config);
  return out;
}

RoundAssignment sample_binomial_assignment(const MixConfig& config, RngStream& rng) {
  RoundAssignment out;
  out.group_of.resize(config.n());
  for (auto& g : out.group_of) g = static_cast<std::uint32_t>(rng.below(config.m()));
  out.honest = honest_flags(config);
  out.marked = marked_flags(config);
  return out;
}

RoundAssignment sample_assignment(const MixConfig& config, RngStream& rng) {
  return config.assignment() == AssignmentMode::ExactPartition ? sample_partition(config, rng)
                                                               : sample_binomial_assignment(config, rng);
}

BeliefState apply_round(const BeliefState& state, const RoundAssignment& assignment) {
  const std::size_t cards = assignment.group_of.size();
  if (assignment.marked.size() != cards) {
    throw ShapeMismatch("assignment has " + std::to_string(cards) + " cards but " +
                        std::to_string(assignment.marked.size()) + " marked flags");
  }
  std::size_t unmarked = 0;
  for (auto flag : assignment.marked) unmarked += flag ? 0 : 1;
  if (unmarked != state.size()) {
    throw ShapeMismatch("belief state has " + std::to_string(state.size()) + " weights but the assignment has " +
                        std::to_string(unmarked) + " unmarked cards");
  }

  const std::size_t servers = assignment.servers();
  std::vector<double> group_sum(servers, 0.0);
  std::vector<std::size_t> group_count(servers, 0);
  // slot[c] is the belief index of card c; marked cards have no slot.
  std::vector<std::size_t> slot(cards);
  for (std::size_t card = 0, next = 0; card < cards; ++card) {
    const auto g = assignment.group_of[card];
    if (g >= servers) throw ShapeMismatch("card " + std::to_string(card) + " routed to unknown server");
    if (assignment.marked[card]) continue;
    slot[card] = next;
    group_sum[g] += state[next];
    ++group_count[g];
    ++next;
  }

  std::vector<double> out(state.weights().begin(), state.weights().end());
  for (std::size_t card = 0; card < cards; ++card) {
    const auto g = assignment.group_of[card];
    if (assignment.marked[card] || !assignment.honest[g] || group_count[g] < 2) continue;
    out[slot[card]] = group_sum[g] / static_cast<double>(group_count[g]);
  }
  return BeliefState(std::move(out), state.round() + 1);
}

Trajectory run_trial(const MixConfig& config, std::size_t rounds, RngStream& rng, TrialOptions options) {
  BeliefState state = initial_state(config);
  Trajectory trajectory{{}, std::nullopt, state};
  trajectory.phi.reserve(rounds + 1);
  trajectory.phi.push_back(phi(state));
  if (options.record_metrics) {
    trajectory.metrics.emplace();
    trajectory.metrics->push_back(evaluate(state));
  }
  for (std::size_t t = 0; t < rounds; ++t) {
    state = apply_round(state, sample_assignment(config, rng));
    trajectory.phi.push_back(phi(state));
    if (options.record_metrics) trajectory.metrics->push_back(evaluate(state));
  }
  trajectory.final_state = std::move(state);
  return trajectory;
}

}  // namespace bufshuf

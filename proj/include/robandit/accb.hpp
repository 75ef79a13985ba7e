#pragma once

#include "robandit/actor.hpp"
#include "robandit/critic.hpp"
#include "robandit/envsim.hpp"

namespace robandit {

/// Critic then actor: one pass of the actor-critic contextual bandit.
struct AccbFit {
  CriticFit critic;
  ActorFit actor;
};

/// Runs the critic as configured and feeds its indicator weights to the actor.
AccbFit fit_accb(const Trajectory& data, const CriticConfig& critic_cfg, const ActorConfig& actor_cfg);

/// Robust variant: capped critic, weighted actor. critic_cfg.capped is ignored.
AccbFit fit_rs_accb(const Trajectory& data, CriticConfig critic_cfg, const ActorConfig& actor_cfg);

}  // namespace robandit

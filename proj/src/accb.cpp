#include "robandit/accb.hpp"

namespace robandit {

AccbFit fit_accb(const Trajectory& data, const CriticConfig& critic_cfg, const ActorConfig& actor_cfg) {
  AccbFit out;
  out.critic = fit_critic(data, critic_cfg);
  out.actor = fit_actor(data, out.critic.weights, out.critic.w, actor_cfg);
  return out;
}

AccbFit fit_rs_accb(const Trajectory& data, CriticConfig critic_cfg, const ActorConfig& actor_cfg) {
  critic_cfg.capped = true;
  return fit_accb(data, critic_cfg, actor_cfg);
}

}  // namespace robandit

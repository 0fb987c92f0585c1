#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "droidlab/sim/device.hpp"
#include "droidlab/sim/manifest.hpp"

namespace droidlab::sim {

// A parametrized task definition with its programmatic verifier and
// state-driven oracle, resolved against the environment.
struct TaskTemplate {
  std::string id;
  std::string app;
  int level = 1;
  std::string instruction_pattern;
  std::string guidance;
  std::map<std::string, ParamSpec> param_schema;
  bool requires_answer = false;
  const TemplateBehavior* behavior = nullptr;
};

struct Instantiation {
  TaskInstance instance;
  DeviceState state;
};

// Immutable after construction; shared across episodes and threads.
class Registry {
 public:
  static Registry builtin();
  // Loads every *.json manifest in `dir` (sorted by filename) and binds the
  // builtin behaviors by template id.
  static Registry from_dir(const std::string& dir);

  const Env& env() const { return *env_; }

  // Stable declaration order; filtered by level when given.
  // Throws InvalidLevel for levels outside {1, 2}.
  std::vector<const TaskTemplate*> list_templates(
      std::optional<int> level_filter = std::nullopt) const;

  const TaskTemplate* find_template(const std::string& id) const;

  // Deterministic in (template, seed): draws params, seeds app stores,
  // computes max_steps = 2 * oracle_length + 5 by replaying the oracle.
  Instantiation instantiate(const TaskTemplate& tmpl, std::uint64_t seed) const;
  Instantiation instantiate(const std::string& template_id, std::uint64_t seed) const;

  // The correct next action at an arbitrary reachable state.
  ActionRecord oracle_action(const DeviceState& state, const TaskInstance& instance,
                             const MemoryBank& memory = {}) const;

  bool verify_programmatic(const TaskInstance& instance, const DeviceState& final_state,
                           const std::optional<std::string>& answer) const;

  // Ground-truth answer, or nullopt for tasks that require none.
  std::optional<std::string> gt_answer(const TaskInstance& instance,
                                       const DeviceState& final_state) const;

 private:
  Registry(std::vector<AppSpec> apps, Behaviors behaviors);

  std::shared_ptr<const Env> env_;
  std::vector<TaskTemplate> templates_;
};

// Trims leading/trailing whitespace; the canonical form for answer equality.
std::string canonical_answer(const std::string& raw);

}  // namespace droidlab::sim

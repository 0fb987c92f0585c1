#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "droidlab/action.hpp"
#include "droidlab/json.hpp"
#include "droidlab/rng.hpp"
#include "droidlab/sim/device.hpp"
#include "droidlab/sim/element.hpp"

namespace droidlab::sim {

// --- Declarative app manifests ----------------------------------------------
//
// One JSON document per app describes its screens, elements, bindings, and
// task-template metadata. The engine lays out elements on the 1000x1000
// normalized grid: a title bar (with an auto "Back" chevron on non-root
// screens), static element rows top-down, then an optional scrolling list
// region fed by a record-store list. Text fields get an auto "Clear" button.
//
// Binding tags:
//   pop                       pop one screen
//   push:SCREEN               push SCREEN
//   push:SCREEN?FIELD         push SCREEN with arg = record's FIELD value
//   push:SCREEN?arg           push SCREEN forwarding the current screen arg
//   focus:FIELD_ID            focus a text field (auto-attached to fields)
//   clear:FIELD_ID            clear a field buffer
//   toggle:KEY                flip a store kv boolean
//   launch:APP                launcher icons
//   effect:NAME               app behavior registered in C++ by NAME
//
// Behaviors (effects, template setup/oracle/verifier/gt_answer) are bound by
// id in builtin_behaviors(); manifests loaded from disk reuse them.

struct ElementSpec {
  std::string id;
  ElementKind kind = ElementKind::Label;
  std::string text;     // may contain {arg} and {rec.FIELD} substitutions
  std::string binding;  // empty for non-interactive kinds
};

struct ListSpec {
  std::string source;       // store list name; may contain {arg}
  std::string text;         // row text pattern over record fields
  std::string binding;      // row binding; "push:SCREEN?FIELD" form
  ElementKind kind = ElementKind::ListItem;
};

struct ScreenSpec {
  std::string id;
  std::string title;
  std::vector<std::vector<ElementSpec>> rows;
  std::optional<ListSpec> list;
  // Record lookup backing {rec.FIELD} labels: arg matches record[key].
  std::string record_list;
  std::string record_key;
};

struct ParamSpec {
  // Exactly one of: pool (draw one of the named pool's values), int range.
  std::string pool;
  int int_lo = 0;
  int int_hi = -1;
  bool is_int() const { return int_hi >= int_lo && pool.empty(); }
};

struct TaskTemplateSpec {
  std::string id;
  std::string app;
  int level = 1;
  std::string instruction;  // pattern with {param} slots
  std::string guidance;
  std::map<std::string, ParamSpec> params;
  bool requires_answer = false;
};

struct AppSpec {
  std::string id;
  std::string display_name;
  std::string root_screen;
  std::vector<ScreenSpec> screens;
  std::vector<TaskTemplateSpec> templates;
};

AppSpec parse_app_manifest(const Json& doc);
Json dump_app_manifest(const AppSpec& app);

// --- Behaviors (the non-declarative half) -----------------------------------

using Params = std::map<std::string, std::string>;

struct TaskInstance {
  std::string template_id;
  Params params;
  std::string goal;
  std::uint64_t seed = 0;
  int max_steps = 0;

  friend bool operator==(const TaskInstance&, const TaskInstance&) = default;
};

struct ScreenCtx {
  std::string screen_id;
  std::string arg;
};

using EffectFn = std::function<void(const Env&, DeviceState&, const ScreenCtx&)>;
using SetupFn = std::function<void(DeviceState&, const Params&, Rng&)>;
// Memorize never touches DeviceState, so oracles for answer tasks consult
// the episode memory bank to decide between memorizing and answering.
using OracleFn = std::function<ActionRecord(const Env&, const DeviceState&,
                                            const TaskInstance&, const MemoryBank&)>;
using VerifyFn = std::function<bool(const Env&, const DeviceState&, const TaskInstance&,
                                    const std::optional<std::string>&)>;
using GtAnswerFn =
    std::function<std::string(const Env&, const DeviceState&, const TaskInstance&)>;

struct TemplateBehavior {
  SetupFn setup;
  OracleFn oracle;
  VerifyFn verify;
  GtAnswerFn gt_answer;  // null when the task needs no answer
};

using PushHookFn = std::function<void(const Env&, DeviceState&, const std::string&)>;

struct Behaviors {
  std::map<std::string, EffectFn> effects;  // keyed "app.name"
  std::map<std::string, TemplateBehavior> templates;
  std::map<std::string, std::vector<std::string>> pools;
  // Runs after a screen is pushed, keyed "app.screen_id"; seeds field
  // buffers for edit screens.
  std::map<std::string, PushHookFn> push_hooks;
};

// The runtime environment: parsed manifests plus bound behaviors.
class Env {
 public:
  Env(std::vector<AppSpec> apps, Behaviors behaviors);

  const AppSpec* find_app(const std::string& id) const;
  const AppSpec* find_app_by_display(const std::string& display_name) const;
  const ScreenSpec* find_screen(const std::string& app_id,
                                const std::string& screen_id) const;
  const std::vector<AppSpec>& apps() const { return apps_; }
  const Behaviors& behaviors() const { return behaviors_; }

  const EffectFn& effect(const std::string& name) const;
  const std::vector<std::string>& pool(const std::string& name) const;

 private:
  std::vector<AppSpec> apps_;
  Behaviors behaviors_;
};

// The six desk-scale apps plus launcher, as embedded manifest JSON.
std::vector<std::string> builtin_manifests();
Behaviors builtin_behaviors();

// Baseline stores every fresh instance gets before a template's setup runs.
void seed_device_defaults(DeviceState& state, std::uint64_t instance_seed);

}  // namespace droidlab::sim

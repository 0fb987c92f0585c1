#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "droidlab/action.hpp"
#include "droidlab/sim/element.hpp"

namespace droidlab::sim {

class Env;

// Typed key/value plus named record lists; one per app.
struct RecordStore {
  std::map<std::string, std::string> kv;
  std::map<std::string, std::vector<std::map<std::string, std::string>>> lists;

  friend bool operator==(const RecordStore&, const RecordStore&) = default;
};

struct Termination {
  enum class Kind { Complete, Impossible, Answered };
  Kind kind = Kind::Complete;
  std::string answer;  // Answered only

  friend bool operator==(const Termination&, const Termination&) = default;
};

// The whole simulated phone. Value type: step() is a pure transition.
//
// screen_stack entries are screen instance ids: "screen_id" or
// "screen_id#arg" where arg selects a record (e.g. "contact_detail#Alice").
// Text-field buffers live in the owning app's kv store under
// "field.{screen_id}.{field_id}".
struct DeviceState {
  std::string current_app = "launcher";
  std::vector<std::string> screen_stack = {"home"};
  std::optional<std::string> focused_field;
  std::map<std::string, int> viewport_offsets;  // keyed by screen instance id
  std::map<std::string, RecordStore> app_stores;
  std::optional<Termination> terminated;

  friend bool operator==(const DeviceState&, const DeviceState&) = default;
};

struct StepResult {
  DeviceState state;
  ScreenBlob blob;
  bool effective = false;
};

// Splits "screen_id#arg" into its parts.
std::pair<std::string, std::string> split_instance(const std::string& instance);

ScreenBlob render_screen(const Env& env, const DeviceState& state);

// Applies one atomic action. Semantics:
//  - Click/LongPress hit-test the topmost element containing the point;
//    non-interactive hits leave the state unchanged.
//  - Scroll moves the visible list by one page; no-op at the boundary.
//  - Type appends to the focused field; no-op without focus.
//  - PressBack pops (no-op at the stack root); PressHome resets to the
//    launcher; OpenApp switches app (silent no-op for unknown names).
//  - Memorize/Wait/PressEnter never change the device.
//  - Answer/TaskComplete/TaskImpossible terminate.
// effective <=> output blob hash != input blob hash, or termination.
// Throws Terminated when called on a terminated state.
StepResult step(const Env& env, const DeviceState& state, const AtomicAction& action);

}  // namespace droidlab::sim

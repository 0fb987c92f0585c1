#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "droidlab/errors.hpp"

namespace droidlab {

// Normalized screen coordinate, both axes in [0, 999].
struct NormPoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const NormPoint&, const NormPoint&) = default;
};

struct PixelPoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

struct ScreenDims {
  int width_px = 0;
  int height_px = 0;
};

enum class ActionKind {
  Click,
  LongPress,
  Scroll,
  Type,
  Memorize,
  Answer,
  PressHome,
  PressBack,
  OpenApp,
  PressEnter,
  Wait,
  TaskComplete,
  TaskImpossible,
};

constexpr int kActionKindCount = 13;

// One atomic device action. Exactly one variant is active, selected by
// `kind`; the payload fields used per kind:
//   Click/LongPress: p1
//   Scroll:          p1 (from) -> p2 (to), p1 != p2
//   Type/Answer:     text
//   OpenApp:         text (app display name)
//   Memorize:        summary + content
struct AtomicAction {
  ActionKind kind = ActionKind::Wait;
  NormPoint p1;
  NormPoint p2;
  std::string text;
  std::string summary;
  std::string content;

  friend bool operator==(const AtomicAction&, const AtomicAction&) = default;

  static AtomicAction click(NormPoint p) { return {ActionKind::Click, p}; }
  static AtomicAction long_press(NormPoint p) {
    return {ActionKind::LongPress, p};
  }
  static AtomicAction scroll(NormPoint from, NormPoint to) {
    return {ActionKind::Scroll, from, to};
  }
  static AtomicAction type_text(std::string t) {
    AtomicAction a{ActionKind::Type};
    a.text = std::move(t);
    return a;
  }
  static AtomicAction memorize(std::string summary, std::string content) {
    AtomicAction a{ActionKind::Memorize};
    a.summary = std::move(summary);
    a.content = std::move(content);
    return a;
  }
  static AtomicAction answer(std::string t) {
    AtomicAction a{ActionKind::Answer};
    a.text = std::move(t);
    return a;
  }
  static AtomicAction open_app(std::string name) {
    AtomicAction a{ActionKind::OpenApp};
    a.text = std::move(name);
    return a;
  }
  static AtomicAction press_home() { return {ActionKind::PressHome}; }
  static AtomicAction press_back() { return {ActionKind::PressBack}; }
  static AtomicAction press_enter() { return {ActionKind::PressEnter}; }
  static AtomicAction wait() { return {ActionKind::Wait}; }
  static AtomicAction task_complete() { return {ActionKind::TaskComplete}; }
  static AtomicAction task_impossible() { return {ActionKind::TaskImpossible}; }
};

// The model-output triple: rationale, templated description, grounded action.
struct ActionRecord {
  std::string thought;
  std::string description;
  AtomicAction action;
  friend bool operator==(const ActionRecord&, const ActionRecord&) = default;
};

// Append-only store of Memorize payloads, threaded into future model inputs.
struct MemoryBank {
  std::vector<std::pair<std::string, std::string>> entries;  // (summary, content)

  void add(std::string summary, std::string content) {
    entries.emplace_back(std::move(summary), std::move(content));
  }
  bool empty() const { return entries.empty(); }
  friend bool operator==(const MemoryBank&, const MemoryBank&) = default;
};

const char* action_kind_name(ActionKind kind);

// --- Action token grammar -------------------------------------------------
//
// Token formats (bit-exact public interface):
//   CLICK[[x, y]]            LONG_PRESS[[x, y]]      SCROLL[[x1, y1, x2, y2]]
//   TYPE[text]               ANSWER[text]            OPEN_APP[app_name]
//   MEMORIZE[summary: text; content: text]
//   PRESS_HOME  PRESS_BACK  PRESS_ENTER  WAIT  TASK_COMPLETE  TASK_IMPOSSIBLE
//
// Keywords are case-sensitive. Coordinates are integers in [0, 999].
// Payload text escapes '\' as "\\", ']' as "\]" and ';' as "\;" so that any
// payload round-trips; parse_action(render_action(a)) == a for every valid a.

AtomicAction parse_action(std::string_view token);  // throws MalformedAction
std::string render_action(const AtomicAction& action);

// --- Coordinate normalization ----------------------------------------------

// floor(px * 1000 / dim), clamped to [0, 999]. Throws OutOfBounds for pixels
// outside the screen.
NormPoint normalize_point(PixelPoint px, ScreenDims dims);

// Cell-center convention: floor((n + 0.5) * dim / 1000) per axis, so
// normalize(denormalize(n)) == n whenever dim >= 1000.
PixelPoint denormalize_point(NormPoint n, ScreenDims dims);

// --- Action descriptions ----------------------------------------------------
//
// Fixed description templates per kind:
//   Click:     "click {element} to {purpose}"     (element starts with "the")
//   LongPress: "long press {element} to {purpose}"
//   Scroll:    "scroll {direction} to {purpose}"
//   Type:      "type in the content '{text}'"
//   Memorize:  "memorize {summary}"
//   Answer:    "answer with the text '{text}'"
//   PressHome: "Go back to the home screen"
//   PressBack: "Go back to the previous screen"
//   OpenApp:   "open the '{app}' app"
//   PressEnter "press enter"; Wait "wait";
//   TaskComplete "task complete"; TaskImpossible "task impossible"

// Scroll direction word per the screen-content convention: the named
// direction is the opposite of the finger movement; dominant displacement
// axis wins, ties break toward vertical.
std::string scroll_direction(NormPoint from, NormPoint to);

// element/purpose are required for Click and LongPress (and purpose for
// Scroll); throws MissingSlot when a required slot is absent.
std::string render_description(const AtomicAction& action,
                               const std::string& element = "",
                               const std::string& purpose = "");

// --- Model input/output text formats ----------------------------------------

// Output framing:
//   <THOUGHT>: {thought}
//   <ACTION DESC>: {description}
//   <ACTION>: {action token}
std::string render_model_output(const ActionRecord& record);
ActionRecord parse_model_output(std::string_view text);  // throws MalformedOutput

// Input framing per the agent prompt skeleton: one "<image>" marker per
// screenshot (all but the last are past steps), then INSTRUCTION / MEMORY /
// PAST ACTIONS sections and the fixed output-format instructions.
// Empty memory and empty history render as "None".
std::string render_model_input(const std::string& goal, const MemoryBank& memory,
                               const std::vector<std::string>& history,
                               int screenshot_count);

}  // namespace droidlab

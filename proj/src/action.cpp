#include "droidlab/action.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace droidlab {

namespace {

std::string escape_payload(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (c == '\\' || c == ']' || c == ';') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string unescape_payload(std::string_view esc) {
  std::string out;
  out.reserve(esc.size());
  for (std::size_t i = 0; i < esc.size(); ++i) {
    if (esc[i] == '\\' && i + 1 < esc.size()) {
      ++i;
    }
    out.push_back(esc[i]);
  }
  return out;
}

// Finds the first unescaped occurrence of `ch` at or after `from`.
std::size_t find_unescaped(std::string_view s, char ch, std::size_t from = 0) {
  for (std::size_t i = from; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
      continue;
    }
    if (s[i] == ch) return i;
  }
  return std::string_view::npos;
}

void skip_ws(std::string_view s, std::size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

int parse_coord(std::string_view s, std::size_t& i) {
  skip_ws(s, i);
  if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
    throw MalformedAction(MalformedAction::Kind::BadCoordinate,
                          "expected coordinate digit");
  }
  long v = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    v = v * 10 + (s[i] - '0');
    if (v > 99999) break;
    ++i;
  }
  if (v < 0 || v > 999) {
    throw MalformedAction(MalformedAction::Kind::BadCoordinate,
                          "coordinate " + std::to_string(v) +
                              " out of [0, 999]");
  }
  skip_ws(s, i);
  return static_cast<int>(v);
}

void expect(std::string_view s, std::size_t& i, char ch) {
  if (i >= s.size() || s[i] != ch) {
    throw MalformedAction(MalformedAction::Kind::BadPayload,
                          std::string("expected '") + ch + "'");
  }
  ++i;
}

// Parses "[[x, y]]" or "[[x1, y1, x2, y2]]" starting at i; i must point at
// the first '['. Consumes through the final ']]' and requires end of token.
std::vector<NormPoint> parse_points(std::string_view s, std::size_t i,
                                    int count) {
  expect(s, i, '[');
  expect(s, i, '[');
  std::vector<NormPoint> pts;
  for (int k = 0; k < count; ++k) {
    int x = parse_coord(s, i);
    expect(s, i, ',');
    int y = parse_coord(s, i);
    pts.push_back({x, y});
    if (k + 1 < count) expect(s, i, ',');
  }
  expect(s, i, ']');
  expect(s, i, ']');
  if (i != s.size()) {
    throw MalformedAction(MalformedAction::Kind::BadPayload,
                          "trailing characters after coordinates");
  }
  return pts;
}

// Extracts the bracketed payload "KEYWORD[...]": i points at '['; the
// matching unescaped ']' must close the token.
std::string_view bracket_payload(std::string_view s, std::size_t i) {
  expect(s, i, '[');
  std::size_t close = find_unescaped(s, ']', i);
  if (close == std::string_view::npos || close + 1 != s.size()) {
    throw MalformedAction(MalformedAction::Kind::BadPayload,
                          "missing or misplaced closing bracket");
  }
  return s.substr(i, close - i);
}

}  // namespace

const char* action_kind_name(ActionKind kind) {
  switch (kind) {
    case ActionKind::Click: return "CLICK";
    case ActionKind::LongPress: return "LONG_PRESS";
    case ActionKind::Scroll: return "SCROLL";
    case ActionKind::Type: return "TYPE";
    case ActionKind::Memorize: return "MEMORIZE";
    case ActionKind::Answer: return "ANSWER";
    case ActionKind::PressHome: return "PRESS_HOME";
    case ActionKind::PressBack: return "PRESS_BACK";
    case ActionKind::OpenApp: return "OPEN_APP";
    case ActionKind::PressEnter: return "PRESS_ENTER";
    case ActionKind::Wait: return "WAIT";
    case ActionKind::TaskComplete: return "TASK_COMPLETE";
    case ActionKind::TaskImpossible: return "TASK_IMPOSSIBLE";
  }
  return "?";
}

AtomicAction parse_action(std::string_view token) {
  auto starts = [&](std::string_view kw) {
    return token.size() >= kw.size() && token.substr(0, kw.size()) == kw;
  };

  // Parameterless keywords must match exactly.
  if (token == "PRESS_HOME") return AtomicAction::press_home();
  if (token == "PRESS_BACK") return AtomicAction::press_back();
  if (token == "PRESS_ENTER") return AtomicAction::press_enter();
  if (token == "WAIT") return AtomicAction::wait();
  if (token == "TASK_COMPLETE") return AtomicAction::task_complete();
  if (token == "TASK_IMPOSSIBLE") return AtomicAction::task_impossible();

  if (starts("CLICK")) {
    auto pts = parse_points(token, 5, 1);
    return AtomicAction::click(pts[0]);
  }
  if (starts("LONG_PRESS")) {
    auto pts = parse_points(token, 10, 1);
    return AtomicAction::long_press(pts[0]);
  }
  if (starts("SCROLL")) {
    auto pts = parse_points(token, 6, 2);
    if (pts[0] == pts[1]) {
      throw MalformedAction(MalformedAction::Kind::BadPayload,
                            "scroll from == to");
    }
    return AtomicAction::scroll(pts[0], pts[1]);
  }
  if (starts("TYPE")) {
    return AtomicAction::type_text(unescape_payload(bracket_payload(token, 4)));
  }
  if (starts("ANSWER")) {
    return AtomicAction::answer(unescape_payload(bracket_payload(token, 6)));
  }
  if (starts("OPEN_APP")) {
    return AtomicAction::open_app(unescape_payload(bracket_payload(token, 8)));
  }
  if (starts("MEMORIZE")) {
    std::string_view payload = bracket_payload(token, 8);
    constexpr std::string_view kSummary = "summary: ";
    constexpr std::string_view kContent = "; content: ";
    if (payload.substr(0, kSummary.size()) != kSummary) {
      throw MalformedAction(MalformedAction::Kind::BadPayload,
                            "MEMORIZE payload must start with 'summary: '");
    }
    std::size_t sep = find_unescaped(payload, ';', kSummary.size());
    if (sep == std::string_view::npos ||
        payload.substr(sep, kContent.size()) != kContent) {
      throw MalformedAction(MalformedAction::Kind::BadPayload,
                            "MEMORIZE payload missing '; content: '");
    }
    return AtomicAction::memorize(
        unescape_payload(payload.substr(kSummary.size(), sep - kSummary.size())),
        unescape_payload(payload.substr(sep + kContent.size())));
  }

  throw MalformedAction(MalformedAction::Kind::UnknownKeyword,
                        "unknown action keyword in '" + std::string(token) +
                            "'");
}

std::string render_action(const AtomicAction& a) {
  std::ostringstream out;
  switch (a.kind) {
    case ActionKind::Click:
      out << "CLICK[[" << a.p1.x << ", " << a.p1.y << "]]";
      break;
    case ActionKind::LongPress:
      out << "LONG_PRESS[[" << a.p1.x << ", " << a.p1.y << "]]";
      break;
    case ActionKind::Scroll:
      out << "SCROLL[[" << a.p1.x << ", " << a.p1.y << ", " << a.p2.x << ", "
          << a.p2.y << "]]";
      break;
    case ActionKind::Type:
      out << "TYPE[" << escape_payload(a.text) << "]";
      break;
    case ActionKind::Memorize:
      out << "MEMORIZE[summary: " << escape_payload(a.summary)
          << "; content: " << escape_payload(a.content) << "]";
      break;
    case ActionKind::Answer:
      out << "ANSWER[" << escape_payload(a.text) << "]";
      break;
    case ActionKind::OpenApp:
      out << "OPEN_APP[" << escape_payload(a.text) << "]";
      break;
    case ActionKind::PressHome: out << "PRESS_HOME"; break;
    case ActionKind::PressBack: out << "PRESS_BACK"; break;
    case ActionKind::PressEnter: out << "PRESS_ENTER"; break;
    case ActionKind::Wait: out << "WAIT"; break;
    case ActionKind::TaskComplete: out << "TASK_COMPLETE"; break;
    case ActionKind::TaskImpossible: out << "TASK_IMPOSSIBLE"; break;
  }
  return out.str();
}

NormPoint normalize_point(PixelPoint px, ScreenDims dims) {
  if (dims.width_px <= 0 || dims.height_px <= 0) {
    throw OutOfBounds("screen dims must be positive");
  }
  if (px.x < 0 || px.y < 0 || px.x >= dims.width_px || px.y >= dims.height_px) {
    throw OutOfBounds("pixel (" + std::to_string(px.x) + ", " +
                      std::to_string(px.y) + ") outside screen");
  }
  auto norm = [](long v, long dim) {
    long n = v * 1000 / dim;
    if (n < 0) n = 0;
    if (n > 999) n = 999;
    return static_cast<int>(n);
  };
  return {norm(px.x, dims.width_px), norm(px.y, dims.height_px)};
}

PixelPoint denormalize_point(NormPoint n, ScreenDims dims) {
  auto denorm = [](long v, long dim) {
    // (v + 0.5) * dim / 1000, in integer arithmetic.
    return static_cast<int>((2 * v + 1) * dim / 2000);
  };
  return {denorm(n.x, dims.width_px), denorm(n.y, dims.height_px)};
}

std::string scroll_direction(NormPoint from, NormPoint to) {
  int dx = to.x - from.x;
  int dy = to.y - from.y;
  if (std::abs(dx) > std::abs(dy)) {
    // Finger right -> content reveals to the left -> "scroll left".
    return dx > 0 ? "left" : "right";
  }
  return dy > 0 ? "up" : "down";
}

std::string render_description(const AtomicAction& a, const std::string& element,
                               const std::string& purpose) {
  switch (a.kind) {
    case ActionKind::Click:
      if (element.empty()) throw MissingSlot("element");
      if (purpose.empty()) throw MissingSlot("purpose");
      return "click " + element + " to " + purpose;
    case ActionKind::LongPress:
      if (element.empty()) throw MissingSlot("element");
      if (purpose.empty()) throw MissingSlot("purpose");
      return "long press " + element + " to " + purpose;
    case ActionKind::Scroll:
      if (purpose.empty()) throw MissingSlot("purpose");
      return "scroll " + scroll_direction(a.p1, a.p2) + " to " + purpose;
    case ActionKind::Type:
      return "type in the content '" + a.text + "'";
    case ActionKind::Memorize:
      return "memorize " + a.summary;
    case ActionKind::Answer:
      return "answer with the text '" + a.text + "'";
    case ActionKind::PressHome:
      return "Go back to the home screen";
    case ActionKind::PressBack:
      return "Go back to the previous screen";
    case ActionKind::OpenApp:
      return "open the '" + a.text + "' app";
    case ActionKind::PressEnter:
      return "press enter";
    case ActionKind::Wait:
      return "wait";
    case ActionKind::TaskComplete:
      return "task complete";
    case ActionKind::TaskImpossible:
      return "task impossible";
  }
  throw MissingSlot("unreachable");
}

std::string render_model_output(const ActionRecord& r) {
  return "<THOUGHT>: " + r.thought + "\n<ACTION DESC>: " + r.description +
         "\n<ACTION>: " + render_action(r.action);
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

ActionRecord parse_model_output(std::string_view text) {
  constexpr std::string_view kThought = "<THOUGHT>:";
  constexpr std::string_view kDesc = "<ACTION DESC>:";
  constexpr std::string_view kAction = "<ACTION>:";

  std::size_t t = text.find(kThought);
  if (t == std::string_view::npos) {
    throw MalformedOutput(MalformedOutput::Kind::MissingTag, "<THOUGHT>");
  }
  std::size_t d = text.find(kDesc, t + kThought.size());
  if (d == std::string_view::npos) {
    throw MalformedOutput(MalformedOutput::Kind::MissingTag, "<ACTION DESC>");
  }
  std::size_t a = text.find(kAction, d + kDesc.size());
  if (a == std::string_view::npos) {
    throw MalformedOutput(MalformedOutput::Kind::MissingTag, "<ACTION>");
  }

  ActionRecord rec;
  rec.thought = trim(text.substr(t + kThought.size(), d - t - kThought.size()));
  rec.description = trim(text.substr(d + kDesc.size(), a - d - kDesc.size()));
  try {
    rec.action = parse_action(trim(text.substr(a + kAction.size())));
  } catch (const MalformedAction& e) {
    throw MalformedOutput(MalformedOutput::Kind::BadAction, e.what());
  }
  return rec;
}

std::string render_model_input(const std::string& goal, const MemoryBank& memory,
                               const std::vector<std::string>& history,
                               int screenshot_count) {
  std::ostringstream out;
  int past = screenshot_count - 1;
  for (int i = 0; i < past; ++i) out << "<image>\n";
  if (past > 0) {
    out << "The images are the screenshots from the past " << past
        << " steps.\n";
  }
  out << "<image>\nThe image is the current screenshot.\n";

  out << "<INSTRUCTION> (user instruction): " << goal << "\n";

  out << "<MEMORY> (stored memory content): ";
  if (memory.empty()) {
    out << "None";
  } else {
    for (std::size_t i = 0; i < memory.entries.size(); ++i) {
      if (i) out << "; ";
      out << memory.entries[i].first << ": " << memory.entries[i].second;
    }
  }
  out << "\n";

  out << "<PAST ACTIONS> (past actions): ";
  if (history.empty()) {
    out << "None";
  } else {
    for (std::size_t i = 0; i < history.size(); ++i) {
      if (i) out << "; ";
      out << (i + 1) << ". " << history[i];
    }
  }
  out << "\n";

  out << "Based on the above information, your task is to reason about the "
         "next action and provide your thinking process and the next action. "
         "Your output should follow the following format:\n"
         "<THOUGHT>: the thinking process\n"
         "<ACTION DESC>: the description about the next action\n"
         "<ACTION>: the next action";
  return out.str();
}

}  // namespace droidlab

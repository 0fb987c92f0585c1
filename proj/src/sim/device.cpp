#include "droidlab/sim/device.hpp"

#include <algorithm>
#include <cmath>

#include "droidlab/errors.hpp"
#include "droidlab/sim/manifest.hpp"

namespace droidlab::sim {

namespace {

constexpr int kContentX0 = 40;
constexpr int kContentX1 = 960;
constexpr int kRowPitch = 120;
constexpr int kRowHeight = 100;
constexpr int kFirstRowY = 130;
constexpr int kListBottom = 980;
constexpr int kClearButtonWidth = 110;

std::string field_buffer_key(const std::string& screen_id, const std::string& field_id) {
  return "field." + screen_id + "." + field_id;
}

const std::map<std::string, std::string>* find_record(
    const RecordStore& store, const std::string& list, const std::string& key,
    const std::string& value) {
  auto it = store.lists.find(list);
  if (it == store.lists.end()) return nullptr;
  for (const auto& rec : it->second) {
    auto f = rec.find(key);
    if (f != rec.end() && f->second == value) return &rec;
  }
  return nullptr;
}

// Substitutes {arg}, {rec.FIELD}, {kv.KEY} and plain {FIELD} (record fields
// for list rows) in manifest text patterns.
std::string substitute(const std::string& pattern, const std::string& arg,
                       const std::map<std::string, std::string>* record,
                       const RecordStore* store) {
  std::string out;
  out.reserve(pattern.size());
  std::size_t i = 0;
  while (i < pattern.size()) {
    if (pattern[i] != '{') {
      out.push_back(pattern[i++]);
      continue;
    }
    std::size_t close = pattern.find('}', i);
    if (close == std::string::npos) {
      out.push_back(pattern[i++]);
      continue;
    }
    std::string slot = pattern.substr(i + 1, close - i - 1);
    if (slot == "arg") {
      out += arg;
    } else if (slot.rfind("rec.", 0) == 0) {
      if (record) {
        auto f = record->find(slot.substr(4));
        if (f != record->end()) out += f->second;
      }
    } else if (slot.rfind("kv.", 0) == 0) {
      if (store) {
        auto f = store->kv.find(slot.substr(3));
        if (f != store->kv.end()) out += f->second;
      }
    } else if (record) {
      auto f = record->find(slot);
      if (f != record->end()) out += f->second;
    }
    i = close + 1;
  }
  return out;
}

int list_rows_per_page(int list_y0) {
  int rows = (kListBottom - list_y0) / kRowPitch;
  return std::max(rows, 1);
}

struct ListGeometry {
  int y0 = 0;
  int rows_per_page = 1;
  int page_count = 1;
};

ListGeometry list_geometry(const ScreenSpec& screen, std::size_t record_count) {
  ListGeometry g;
  g.y0 = kFirstRowY + static_cast<int>(screen.rows.size()) * kRowPitch;
  g.rows_per_page = list_rows_per_page(g.y0);
  g.page_count = std::max<int>(
      1, static_cast<int>((record_count + g.rows_per_page - 1) /
                          static_cast<std::size_t>(g.rows_per_page)));
  return g;
}

}  // namespace

std::pair<std::string, std::string> split_instance(const std::string& instance) {
  std::size_t hash = instance.find('#');
  if (hash == std::string::npos) return {instance, ""};
  return {instance.substr(0, hash), instance.substr(hash + 1)};
}

ScreenBlob render_screen(const Env& env, const DeviceState& state) {
  const std::string& instance = state.screen_stack.back();
  auto [screen_id, arg] = split_instance(instance);
  const ScreenSpec* screen = env.find_screen(state.current_app, screen_id);
  if (!screen) throw Error("unknown screen " + state.current_app + "/" + screen_id);

  const RecordStore* store = nullptr;
  if (auto it = state.app_stores.find(state.current_app); it != state.app_stores.end()) {
    store = &it->second;
  }
  static const RecordStore kEmptyStore;
  const RecordStore& st = store ? *store : kEmptyStore;

  const std::map<std::string, std::string>* record = nullptr;
  if (!screen->record_list.empty() && !arg.empty()) {
    record = find_record(st, screen->record_list, screen->record_key, arg);
  }

  ScreenView view;
  view.app = state.current_app;
  view.screen = instance;

  bool has_back = state.screen_stack.size() > 1;
  if (has_back) {
    view.elements.push_back({"back_btn", ElementKind::Button, "Back",
                             {10, 10}, {110, 100}, true, "pop", false});
  }
  view.elements.push_back({"title", ElementKind::Label,
                           substitute(screen->title, arg, record, &st),
                           {has_back ? 130 : kContentX0, 10}, {959, 100}, false,
                           "", false});

  for (std::size_t r = 0; r < screen->rows.size(); ++r) {
    const auto& row = screen->rows[r];
    int y1 = kFirstRowY + static_cast<int>(r) * kRowPitch;
    int y2 = y1 + kRowHeight;
    int width = (kContentX1 - kContentX0) / static_cast<int>(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
      const ElementSpec& spec = row[c];
      int x1 = kContentX0 + static_cast<int>(c) * width;
      int x2 = x1 + width - 10;
      if (spec.kind == ElementKind::TextField) {
        UiElement field;
        field.id = spec.id;
        field.kind = ElementKind::TextField;
        auto kb = st.kv.find(field_buffer_key(screen_id, spec.id));
        field.text = kb == st.kv.end() ? "" : kb->second;
        field.tl = {x1, y1};
        field.br = {x2 - kClearButtonWidth - 10, y2};
        field.interactive = true;
        field.binding = "focus:" + spec.id;
        field.focused = state.focused_field == spec.id;
        view.elements.push_back(std::move(field));
        view.elements.push_back({spec.id + "_clear", ElementKind::Button, "Clear",
                                 {x2 - kClearButtonWidth, y1}, {x2, y2}, true,
                                 "clear:" + spec.id, false});
        continue;
      }
      UiElement e;
      e.id = spec.id;
      e.kind = spec.kind;
      e.text = substitute(spec.text, arg, record, &st);
      if (spec.kind == ElementKind::Checkbox) {
        std::string key = spec.binding.rfind("toggle:", 0) == 0 ? spec.binding.substr(7) : "";
        auto kv = st.kv.find(key);
        bool on = kv != st.kv.end() && kv->second == "1";
        e.text = (on ? "[x] " : "[ ] ") + e.text;
      }
      e.tl = {x1, y1};
      e.br = {x2, y2};
      e.interactive = !spec.binding.empty();
      e.binding = substitute(spec.binding, arg, record, &st);
      view.elements.push_back(std::move(e));
    }
  }

  if (screen->list) {
    const ListSpec& list = *screen->list;
    std::string source = substitute(list.source, arg, nullptr, &st);
    static const std::vector<std::map<std::string, std::string>> kNoRecords;
    auto lit = st.lists.find(source);
    const auto& records = lit == st.lists.end() ? kNoRecords : lit->second;

    ListGeometry geo = list_geometry(*screen, records.size());
    int offset = 0;
    if (auto it = state.viewport_offsets.find(instance); it != state.viewport_offsets.end()) {
      offset = std::clamp(it->second, 0, geo.page_count - 1);
    }
    view.offset = offset;

    view.elements.push_back({"list_region", ElementKind::ScrollRegion, "",
                             {kContentX0, geo.y0}, {kContentX1, kListBottom},
                             false, "", false});

    std::size_t begin = static_cast<std::size_t>(offset) *
                        static_cast<std::size_t>(geo.rows_per_page);
    for (int slot = 0; slot < geo.rows_per_page; ++slot) {
      std::size_t idx = begin + static_cast<std::size_t>(slot);
      if (idx >= records.size()) break;
      const auto& rec = records[idx];
      int y1 = geo.y0 + 10 + slot * kRowPitch;
      UiElement e;
      e.id = "row_" + std::to_string(idx);
      e.kind = list.kind;
      e.text = substitute(list.text, arg, &rec, &st);
      e.tl = {kContentX0, y1};
      e.br = {kContentX1 - 10, y1 + kRowHeight};
      std::string binding = list.binding;
      // Row bindings of the form push:SCREEN?FIELD resolve the arg now, so
      // blobs carry fully-resolved transition tags.
      if (auto q = binding.find('?'); q != std::string::npos) {
        std::string field = binding.substr(q + 1);
        std::string value;
        if (field == "arg") {
          value = arg;
        } else if (auto f = rec.find(field); f != rec.end()) {
          value = f->second;
        }
        binding = binding.substr(0, q) + "#" + value;
      }
      e.interactive = !binding.empty();
      e.binding = std::move(binding);
      view.elements.push_back(std::move(e));
    }
  }

  return blob_from_view(view);
}

namespace {

void reset_focus(DeviceState& s) { s.focused_field.reset(); }

void do_push(const Env& env, DeviceState& s, const std::string& instance) {
  s.screen_stack.push_back(instance);
  s.viewport_offsets.erase(instance);
  reset_focus(s);
  auto [screen_id, arg] = split_instance(instance);
  auto hook = env.behaviors().push_hooks.find(s.current_app + "." + screen_id);
  if (hook != env.behaviors().push_hooks.end()) hook->second(env, s, arg);
}

void do_pop(DeviceState& s) {
  if (s.screen_stack.size() <= 1) return;
  s.viewport_offsets.erase(s.screen_stack.back());
  s.screen_stack.pop_back();
  reset_focus(s);
}

void do_open_app(const Env& env, DeviceState& s, const AppSpec& app) {
  s.current_app = app.id;
  s.screen_stack = {app.root_screen};
  s.viewport_offsets.erase(app.root_screen);
  reset_focus(s);
}

void apply_binding(const Env& env, DeviceState& s, const std::string& binding) {
  auto [screen_id, arg] = split_instance(s.screen_stack.back());
  if (binding == "pop") {
    do_pop(s);
    return;
  }
  if (binding.rfind("push:", 0) == 0) {
    do_push(env, s, binding.substr(5));
    return;
  }
  if (binding.rfind("focus:", 0) == 0) {
    s.focused_field = binding.substr(6);
    return;
  }
  if (binding.rfind("clear:", 0) == 0) {
    auto& kv = s.app_stores[s.current_app].kv;
    kv[field_buffer_key(screen_id, binding.substr(6))] = "";
    return;
  }
  if (binding.rfind("toggle:", 0) == 0) {
    auto& kv = s.app_stores[s.current_app].kv;
    std::string key = binding.substr(7);
    kv[key] = kv[key] == "1" ? "0" : "1";
    return;
  }
  if (binding.rfind("launch:", 0) == 0) {
    if (const AppSpec* app = env.find_app(binding.substr(7))) do_open_app(env, s, *app);
    return;
  }
  if (binding.rfind("effect:", 0) == 0) {
    ScreenCtx ctx{screen_id, arg};
    env.effect(binding.substr(7))(env, s, ctx);
    return;
  }
  throw Error("unknown binding tag: " + binding);
}

void apply_click(const Env& env, DeviceState& s, const ScreenBlob& blob, NormPoint p) {
  ScreenView view = parse_layout(blob.layout);
  // Topmost = last in draw order.
  for (auto it = view.elements.rbegin(); it != view.elements.rend(); ++it) {
    if (!it->contains(p)) continue;
    if (it->interactive) apply_binding(env, s, it->binding);
    return;
  }
}

void apply_scroll(const Env& env, DeviceState& s, NormPoint from, NormPoint to) {
  auto [screen_id, arg] = split_instance(s.screen_stack.back());
  const ScreenSpec* screen = env.find_screen(s.current_app, screen_id);
  if (!screen || !screen->list) return;

  const RecordStore* store = nullptr;
  if (auto it = s.app_stores.find(s.current_app); it != s.app_stores.end()) store = &it->second;
  std::size_t count = 0;
  if (store) {
    std::string source = substitute(screen->list->source, arg, nullptr, store);
    if (auto lit = store->lists.find(source); lit != store->lists.end()) {
      count = lit->second.size();
    }
  }
  ListGeometry geo = list_geometry(*screen, count);

  int dx = to.x - from.x;
  int dy = to.y - from.y;
  if (std::abs(dx) > std::abs(dy)) return;  // no horizontal lists

  const std::string& instance = s.screen_stack.back();
  int offset = 0;
  if (auto it = s.viewport_offsets.find(instance); it != s.viewport_offsets.end()) {
    offset = std::clamp(it->second, 0, geo.page_count - 1);
  }
  int next = offset;
  if (dy < 0 && offset + 1 < geo.page_count) next = offset + 1;  // finger up: scroll down
  if (dy > 0 && offset > 0) next = offset - 1;                   // finger down: scroll up
  if (next != offset) s.viewport_offsets[instance] = next;
}

}  // namespace

StepResult step(const Env& env, const DeviceState& state, const AtomicAction& action) {
  if (state.terminated) throw Terminated();

  ScreenBlob before = render_screen(env, state);
  DeviceState next = state;

  switch (action.kind) {
    case ActionKind::Click:
    case ActionKind::LongPress:
      apply_click(env, next, before, action.p1);
      break;
    case ActionKind::Scroll:
      apply_scroll(env, next, action.p1, action.p2);
      break;
    case ActionKind::Type: {
      if (next.focused_field) {
        auto [screen_id, arg] = split_instance(next.screen_stack.back());
        auto& kv = next.app_stores[next.current_app].kv;
        kv[field_buffer_key(screen_id, *next.focused_field)] += action.text;
      }
      break;
    }
    case ActionKind::PressBack:
      do_pop(next);
      break;
    case ActionKind::PressHome:
      next.current_app = "launcher";
      next.screen_stack = {"home"};
      next.viewport_offsets.erase("home");
      reset_focus(next);
      break;
    case ActionKind::OpenApp:
      if (const AppSpec* app = env.find_app_by_display(action.text)) {
        do_open_app(env, next, *app);
      }
      break;
    case ActionKind::Answer:
      next.terminated = Termination{Termination::Kind::Answered, action.text};
      break;
    case ActionKind::TaskComplete:
      next.terminated = Termination{Termination::Kind::Complete, ""};
      break;
    case ActionKind::TaskImpossible:
      next.terminated = Termination{Termination::Kind::Impossible, ""};
      break;
    case ActionKind::Memorize:
    case ActionKind::Wait:
    case ActionKind::PressEnter:
      break;
  }

  StepResult result;
  result.blob = render_screen(env, next);
  result.effective = result.blob.hash != before.hash || next.terminated.has_value();
  result.state = std::move(next);
  return result;
}

}  // namespace droidlab::sim

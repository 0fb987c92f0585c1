#include "droidlab/sim/manifest.hpp"

#include <algorithm>

#include "droidlab/errors.hpp"

namespace droidlab::sim {

namespace {

ElementSpec parse_element(const Json& j) {
  ElementSpec e;
  e.id = j.at("id").get<std::string>();
  e.kind = element_kind_from_name(j.at("kind").get<std::string>());
  e.text = j.value("text", "");
  e.binding = j.value("binding", "");
  return e;
}

Json dump_element(const ElementSpec& e) {
  Json j;
  j["id"] = e.id;
  j["kind"] = element_kind_name(e.kind);
  j["text"] = e.text;
  if (!e.binding.empty()) j["binding"] = e.binding;
  return j;
}

}  // namespace

AppSpec parse_app_manifest(const Json& doc) {
  AppSpec app;
  app.id = doc.at("app").get<std::string>();
  app.display_name = doc.at("display_name").get<std::string>();
  app.root_screen = doc.at("root").get<std::string>();

  for (const auto& sj : doc.at("screens")) {
    ScreenSpec s;
    s.id = sj.at("id").get<std::string>();
    s.title = sj.value("title", s.id);
    if (sj.contains("record")) {
      s.record_list = sj.at("record").at("list").get<std::string>();
      s.record_key = sj.at("record").at("key").get<std::string>();
    }
    if (sj.contains("rows")) {
      for (const auto& rj : sj.at("rows")) {
        std::vector<ElementSpec> row;
        for (const auto& ej : rj) row.push_back(parse_element(ej));
        s.rows.push_back(std::move(row));
      }
    }
    if (sj.contains("list")) {
      const auto& lj = sj.at("list");
      ListSpec l;
      l.source = lj.at("source").get<std::string>();
      l.text = lj.at("text").get<std::string>();
      l.binding = lj.value("binding", "");
      l.kind = element_kind_from_name(lj.value("kind", "list_item"));
      s.list = std::move(l);
    }
    app.screens.push_back(std::move(s));
  }

  if (doc.contains("templates")) {
    for (const auto& tj : doc.at("templates")) {
      TaskTemplateSpec t;
      t.id = tj.at("id").get<std::string>();
      t.app = app.id;
      t.level = tj.at("level").get<int>();
      t.instruction = tj.at("instruction").get<std::string>();
      t.guidance = tj.at("guidance").get<std::string>();
      t.requires_answer = tj.value("answer", false);
      if (tj.contains("params")) {
        for (const auto& [name, pj] : tj.at("params").items()) {
          ParamSpec p;
          if (pj.contains("pool")) {
            p.pool = pj.at("pool").get<std::string>();
          } else if (pj.contains("int")) {
            p.int_lo = pj.at("int").at(0).get<int>();
            p.int_hi = pj.at("int").at(1).get<int>();
          } else {
            throw Error("param " + name + " needs 'pool' or 'int'");
          }
          t.params[name] = std::move(p);
        }
      }
      app.templates.push_back(std::move(t));
    }
  }
  return app;
}

Json dump_app_manifest(const AppSpec& app) {
  Json doc;
  doc["app"] = app.id;
  doc["display_name"] = app.display_name;
  doc["root"] = app.root_screen;
  Json screens = Json::array();
  for (const auto& s : app.screens) {
    Json sj;
    sj["id"] = s.id;
    sj["title"] = s.title;
    if (!s.record_list.empty()) {
      sj["record"] = Json{{"list", s.record_list}, {"key", s.record_key}};
    }
    if (!s.rows.empty()) {
      Json rows = Json::array();
      for (const auto& row : s.rows) {
        Json rj = Json::array();
        for (const auto& e : row) rj.push_back(dump_element(e));
        rows.push_back(std::move(rj));
      }
      sj["rows"] = std::move(rows);
    }
    if (s.list) {
      Json lj;
      lj["source"] = s.list->source;
      lj["text"] = s.list->text;
      if (!s.list->binding.empty()) lj["binding"] = s.list->binding;
      lj["kind"] = element_kind_name(s.list->kind);
      sj["list"] = std::move(lj);
    }
    screens.push_back(std::move(sj));
  }
  doc["screens"] = std::move(screens);

  Json templates = Json::array();
  for (const auto& t : app.templates) {
    Json tj;
    tj["id"] = t.id;
    tj["level"] = t.level;
    tj["instruction"] = t.instruction;
    tj["guidance"] = t.guidance;
    if (t.requires_answer) tj["answer"] = true;
    if (!t.params.empty()) {
      Json pj;
      for (const auto& [name, p] : t.params) {
        if (p.is_int()) {
          pj[name] = Json{{"int", Json::array({p.int_lo, p.int_hi})}};
        } else {
          pj[name] = Json{{"pool", p.pool}};
        }
      }
      tj["params"] = std::move(pj);
    }
    templates.push_back(std::move(tj));
  }
  doc["templates"] = std::move(templates);
  return doc;
}

Env::Env(std::vector<AppSpec> apps, Behaviors behaviors)
    : apps_(std::move(apps)), behaviors_(std::move(behaviors)) {}

const AppSpec* Env::find_app(const std::string& id) const {
  for (const auto& a : apps_) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

const AppSpec* Env::find_app_by_display(const std::string& display_name) const {
  for (const auto& a : apps_) {
    if (a.display_name == display_name) return &a;
  }
  return nullptr;
}

const ScreenSpec* Env::find_screen(const std::string& app_id,
                                   const std::string& screen_id) const {
  const AppSpec* app = find_app(app_id);
  if (!app) return nullptr;
  for (const auto& s : app->screens) {
    if (s.id == screen_id) return &s;
  }
  return nullptr;
}

const EffectFn& Env::effect(const std::string& name) const {
  auto it = behaviors_.effects.find(name);
  if (it == behaviors_.effects.end()) throw Error("unknown effect: " + name);
  return it->second;
}

const std::vector<std::string>& Env::pool(const std::string& name) const {
  auto it = behaviors_.pools.find(name);
  if (it == behaviors_.pools.end()) throw Error("unknown pool: " + name);
  return it->second;
}

}  // namespace droidlab::sim

#include "droidlab/sim/element.hpp"

#include "droidlab/errors.hpp"
#include "droidlab/hash.hpp"

namespace droidlab::sim {

const char* element_kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::Button: return "button";
    case ElementKind::TextField: return "text_field";
    case ElementKind::ListItem: return "list_item";
    case ElementKind::Label: return "label";
    case ElementKind::Checkbox: return "checkbox";
    case ElementKind::ScrollRegion: return "scroll_region";
  }
  return "?";
}

ElementKind element_kind_from_name(const std::string& name) {
  if (name == "button") return ElementKind::Button;
  if (name == "text_field") return ElementKind::TextField;
  if (name == "list_item") return ElementKind::ListItem;
  if (name == "label") return ElementKind::Label;
  if (name == "checkbox") return ElementKind::Checkbox;
  if (name == "scroll_region") return ElementKind::ScrollRegion;
  throw Error("unknown element kind: " + name);
}

Json element_to_json(const UiElement& e) {
  Json j;
  j["id"] = e.id;
  j["kind"] = element_kind_name(e.kind);
  j["text"] = e.text;
  j["bbox"] = Json::array({e.tl.x, e.tl.y, e.br.x, e.br.y});
  j["interactive"] = e.interactive;
  j["binding"] = e.binding;
  j["focused"] = e.focused;
  return j;
}

UiElement element_from_json(const Json& j) {
  UiElement e;
  e.id = j.at("id").get<std::string>();
  e.kind = element_kind_from_name(j.at("kind").get<std::string>());
  e.text = j.at("text").get<std::string>();
  const auto& b = j.at("bbox");
  e.tl = {b.at(0).get<int>(), b.at(1).get<int>()};
  e.br = {b.at(2).get<int>(), b.at(3).get<int>()};
  e.interactive = j.at("interactive").get<bool>();
  e.binding = j.at("binding").get<std::string>();
  e.focused = j.at("focused").get<bool>();
  return e;
}

ScreenBlob blob_from_view(const ScreenView& view) {
  Json j;
  j["app"] = view.app;
  j["screen"] = view.screen;
  j["offset"] = view.offset;
  Json elems = Json::array();
  for (const auto& e : view.elements) elems.push_back(element_to_json(e));
  j["elements"] = std::move(elems);

  ScreenBlob blob;
  blob.layout = j.dump();
  blob.hash = content_hash(blob.layout);
  return blob;
}

ScreenView parse_layout(const std::string& layout) {
  Json j = Json::parse(layout);
  ScreenView v;
  v.app = j.at("app").get<std::string>();
  v.screen = j.at("screen").get<std::string>();
  v.offset = j.at("offset").get<int>();
  for (const auto& ej : j.at("elements")) v.elements.push_back(element_from_json(ej));
  return v;
}

}  // namespace droidlab::sim

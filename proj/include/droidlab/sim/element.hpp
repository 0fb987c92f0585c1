#pragma once

#include <string>
#include <vector>

#include "droidlab/action.hpp"
#include "droidlab/json.hpp"

namespace droidlab::sim {

enum class ElementKind {
  Button,
  TextField,
  ListItem,
  Label,
  Checkbox,
  ScrollRegion,
};

const char* element_kind_name(ElementKind kind);
ElementKind element_kind_from_name(const std::string& name);

// One rendered UI element. bbox corners are ordered (tl.x <= br.x,
// tl.y <= br.y); interactive elements always carry a binding tag.
struct UiElement {
  std::string id;
  ElementKind kind = ElementKind::Label;
  std::string text;
  NormPoint tl;
  NormPoint br;
  bool interactive = false;
  std::string binding;
  bool focused = false;

  bool contains(NormPoint p) const {
    return p.x >= tl.x && p.x <= br.x && p.y >= tl.y && p.y <= br.y;
  }
  NormPoint center() const { return {(tl.x + br.x) / 2, (tl.y + br.y) / 2}; }
};

// Deterministic surrogate for a screenshot: the canonical serialization of
// the visible screen and its content hash. Equal layouts <=> equal hashes.
struct ScreenBlob {
  std::string hash;
  std::string layout;  // canonical JSON text

  friend bool operator==(const ScreenBlob& a, const ScreenBlob& b) {
    return a.hash == b.hash;
  }
};

// The parsed form of a blob layout, for consumers that inspect screens
// (oracles, mock annotators, grounding-corpus builders).
struct ScreenView {
  std::string app;
  std::string screen;  // screen instance id ("contact_detail#Alice")
  int offset = 0;
  std::vector<UiElement> elements;
};

Json element_to_json(const UiElement& e);
UiElement element_from_json(const Json& j);

ScreenBlob blob_from_view(const ScreenView& view);
ScreenView parse_layout(const std::string& layout);

}  // namespace droidlab::sim

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "droidlab/errors.hpp"
#include "droidlab/rng.hpp"
#include "droidlab/sim/device.hpp"
#include "droidlab/sim/manifest.hpp"

// The desk-scale app suite: launcher + contacts, notes, expense, messages,
// timer, dice. Screens/elements/bindings are declared in the embedded JSON
// manifests; effects, setup, oracles, and verifiers are bound here by id.

namespace droidlab::sim {

namespace {

// ---------------------------------------------------------------------------
// Manifests
// ---------------------------------------------------------------------------

const char* kLauncherManifest = R"json({
  "app": "launcher",
  "display_name": "Home",
  "root": "home",
  "screens": [
    {
      "id": "home",
      "title": "Home",
      "rows": [
        [{"id": "icon_contacts", "kind": "button", "text": "Contacts", "binding": "launch:contacts"},
         {"id": "icon_notes", "kind": "button", "text": "Notes", "binding": "launch:notes"}],
        [{"id": "icon_expense", "kind": "button", "text": "Expense", "binding": "launch:expense"},
         {"id": "icon_messages", "kind": "button", "text": "Messages", "binding": "launch:messages"}],
        [{"id": "icon_timer", "kind": "button", "text": "Timer", "binding": "launch:timer"},
         {"id": "icon_dice", "kind": "button", "text": "Dice", "binding": "launch:dice"}]
      ]
    }
  ],
  "templates": []
})json";

const char* kContactsManifest = R"json({
  "app": "contacts",
  "display_name": "Contacts",
  "root": "contacts_list",
  "screens": [
    {
      "id": "contacts_list",
      "title": "Contacts",
      "rows": [
        [{"id": "add_btn", "kind": "button", "text": "Add contact", "binding": "push:contact_add"}]
      ],
      "list": {"source": "contacts", "text": "{name}", "binding": "push:contact_detail?name"}
    },
    {
      "id": "contact_detail",
      "title": "Contact {arg}",
      "record": {"list": "contacts", "key": "name"},
      "rows": [
        [{"id": "name_lbl", "kind": "label", "text": "Name: {rec.name}"}],
        [{"id": "phone_lbl", "kind": "label", "text": "Phone: {rec.phone}"}],
        [{"id": "email_lbl", "kind": "label", "text": "Email: {rec.email}"}],
        [{"id": "edit_btn", "kind": "button", "text": "Edit", "binding": "push:contact_edit?arg"},
         {"id": "delete_btn", "kind": "button", "text": "Delete", "binding": "push:confirm_delete?arg"}]
      ]
    },
    {
      "id": "contact_edit",
      "title": "Edit {arg}",
      "record": {"list": "contacts", "key": "name"},
      "rows": [
        [{"id": "phone_field", "kind": "text_field"}],
        [{"id": "email_field", "kind": "text_field"}],
        [{"id": "save_btn", "kind": "button", "text": "Save", "binding": "effect:contacts.save_edit"}]
      ]
    },
    {
      "id": "confirm_delete",
      "title": "Delete {arg}?",
      "rows": [
        [{"id": "confirm_btn", "kind": "button", "text": "Confirm", "binding": "effect:contacts.confirm_delete"},
         {"id": "cancel_btn", "kind": "button", "text": "Cancel", "binding": "pop"}]
      ]
    },
    {
      "id": "contact_add",
      "title": "New contact",
      "rows": [
        [{"id": "name_field", "kind": "text_field"}],
        [{"id": "phone_field", "kind": "text_field"}],
        [{"id": "email_field", "kind": "text_field"}],
        [{"id": "save_btn", "kind": "button", "text": "Save", "binding": "effect:contacts.save_new"}]
      ]
    }
  ],
  "templates": [
    {
      "id": "contacts-delete",
      "level": 1,
      "instruction": "Delete the contact named {name} in the Contacts app.",
      "guidance": "Open the Contacts app, tap the entry for the named contact, tap Delete on the detail screen, and confirm the deletion. The task is done when the contact no longer appears in the contact list.",
      "params": {"name": {"pool": "first_names"}}
    },
    {
      "id": "contacts-add",
      "level": 1,
      "instruction": "Add a new contact named {name} with the phone number 555-{phone} in the Contacts app.",
      "guidance": "Open the Contacts app, tap 'Add contact', type the name into the name field and the phone number into the phone field, then tap Save. The task is done when the new contact appears in the list with that phone number.",
      "params": {"name": {"pool": "first_names"}, "phone": {"int": [1000, 9999]}}
    },
    {
      "id": "contacts-count",
      "level": 1,
      "instruction": "How many contacts are saved in the Contacts app? Answer with the number only.",
      "guidance": "Open the Contacts app and count the entries in the contact list, then answer with the count as a plain number.",
      "answer": true
    },
    {
      "id": "contacts-update",
      "level": 2,
      "instruction": "Find {name} in the Contacts app, change the phone number to 555-{phone} and the email to {email}.",
      "guidance": "Open the Contacts app, open the named contact, tap Edit, clear the phone field and type the new number, clear the email field and type the new email, then tap Save. Both fields must show the new values afterwards.",
      "params": {"name": {"pool": "first_names"}, "phone": {"int": [1000, 9999]}, "email": {"pool": "emails"}}
    }
  ]
})json";

const char* kNotesManifest = R"json({
  "app": "notes",
  "display_name": "Notes",
  "root": "notes_list",
  "screens": [
    {
      "id": "notes_list",
      "title": "Notes",
      "rows": [
        [{"id": "add_btn", "kind": "button", "text": "New note", "binding": "push:note_add"}]
      ],
      "list": {"source": "notes", "text": "{title}", "binding": "push:note_view?title"}
    },
    {
      "id": "note_view",
      "title": "Note {arg}",
      "record": {"list": "notes", "key": "title"},
      "rows": [
        [{"id": "body_lbl", "kind": "label", "text": "{rec.body}"}],
        [{"id": "delete_btn", "kind": "button", "text": "Delete", "binding": "effect:notes.delete"}]
      ]
    },
    {
      "id": "note_add",
      "title": "New note",
      "rows": [
        [{"id": "title_field", "kind": "text_field"}],
        [{"id": "body_field", "kind": "text_field"}],
        [{"id": "save_btn", "kind": "button", "text": "Save", "binding": "effect:notes.save_new"}]
      ]
    }
  ],
  "templates": [
    {
      "id": "notes-create",
      "level": 1,
      "instruction": "Create a note titled {title} with the content '{body}' in the Notes app.",
      "guidance": "Open the Notes app, tap 'New note', type the title into the title field and the content into the body field, then tap Save.",
      "params": {"title": {"pool": "note_titles"}, "body": {"pool": "note_bodies"}}
    },
    {
      "id": "notes-delete",
      "level": 1,
      "instruction": "Delete the note titled {title} in the Notes app.",
      "guidance": "Open the Notes app, open the named note and tap Delete. The note must no longer appear in the list.",
      "params": {"title": {"pool": "note_titles"}}
    },
    {
      "id": "notes-read",
      "level": 1,
      "instruction": "What is the content of the note titled {title} in the Notes app? Answer with the content only.",
      "guidance": "Open the Notes app, open the named note, read its content and answer with exactly that text.",
      "params": {"title": {"pool": "note_titles"}},
      "answer": true
    },
    {
      "id": "notes-longest",
      "level": 2,
      "instruction": "Find the note with the longest content in the Notes app. Answer with its title.",
      "guidance": "Open the Notes app, open each note to inspect its content length, and answer with the title of the note whose content has the most characters.",
      "answer": true
    }
  ]
})json";

const char* kExpenseManifest = R"json({
  "app": "expense",
  "display_name": "Expense",
  "root": "expense_list",
  "screens": [
    {
      "id": "expense_list",
      "title": "Expenses",
      "rows": [
        [{"id": "add_btn", "kind": "button", "text": "Add expense", "binding": "push:expense_add"}]
      ],
      "list": {"source": "expenses", "text": "{name} - ${amount}", "binding": "push:expense_detail?name"}
    },
    {
      "id": "expense_detail",
      "title": "Expense {arg}",
      "record": {"list": "expenses", "key": "name"},
      "rows": [
        [{"id": "amount_lbl", "kind": "label", "text": "Amount: ${rec.amount}"}],
        [{"id": "delete_btn", "kind": "button", "text": "Delete", "binding": "effect:expense.delete"}]
      ]
    },
    {
      "id": "expense_add",
      "title": "New expense",
      "rows": [
        [{"id": "name_field", "kind": "text_field"}],
        [{"id": "amount_field", "kind": "text_field"}],
        [{"id": "save_btn", "kind": "button", "text": "Save", "binding": "effect:expense.save_new"}]
      ]
    }
  ],
  "templates": [
    {
      "id": "expense-add",
      "level": 1,
      "instruction": "Log an expense named {name} with the amount {amount} in the Expense app.",
      "guidance": "Open the Expense app, tap 'Add expense', type the name and the amount, then tap Save.",
      "params": {"name": {"pool": "expense_names"}, "amount": {"int": [5, 80]}}
    },
    {
      "id": "expense-total",
      "level": 1,
      "instruction": "What is the total amount of all expenses in the Expense app? Answer with the number only.",
      "guidance": "Open the Expense app, add up the amounts of every logged expense and answer with the total as a plain number.",
      "answer": true
    },
    {
      "id": "expense-delete-above",
      "level": 2,
      "instruction": "Delete all expenses in the Expense app that are higher than {amount}.",
      "guidance": "Open the Expense app and delete every expense whose amount is strictly greater than the given threshold: open the entry and tap Delete. Repeat until no expense above the threshold remains.",
      "params": {"amount": {"int": [30, 60]}}
    },
    {
      "id": "expense-names",
      "level": 2,
      "instruction": "What expenses are logged in the Expense app? Answer with the names separated by comma.",
      "guidance": "Open the Expense app and answer with the names of all logged expenses, in list order, separated by a comma and a space.",
      "answer": true
    }
  ]
})json";

const char* kMessagesManifest = R"json({
  "app": "messages",
  "display_name": "Messages",
  "root": "threads_list",
  "screens": [
    {
      "id": "threads_list",
      "title": "Messages",
      "list": {"source": "threads", "text": "{number}", "binding": "push:thread_view?number"}
    },
    {
      "id": "thread_view",
      "title": "Conversation {arg}",
      "record": {"list": "threads", "key": "number"},
      "rows": [
        [{"id": "msg_field", "kind": "text_field"},
         {"id": "send_btn", "kind": "button", "text": "Send", "binding": "effect:messages.send"}],
        [{"id": "del_conv_btn", "kind": "button", "text": "Delete conversation", "binding": "push:confirm_del_conv?arg"}]
      ],
      "list": {"source": "msgs.{arg}", "text": "{text}"}
    },
    {
      "id": "confirm_del_conv",
      "title": "Delete conversation {arg}?",
      "rows": [
        [{"id": "confirm_btn", "kind": "button", "text": "Confirm", "binding": "effect:messages.confirm_delete"},
         {"id": "cancel_btn", "kind": "button", "text": "Cancel", "binding": "pop"}]
      ]
    }
  ],
  "templates": [
    {
      "id": "messages-delete-conv",
      "level": 1,
      "instruction": "Delete the conversation from {number} in the Messages app.",
      "guidance": "Open the Messages app, open the conversation with the given number, tap 'Delete conversation' and confirm. The conversation must no longer appear in the list.",
      "params": {"number": {"pool": "msg_numbers"}}
    },
    {
      "id": "messages-send",
      "level": 1,
      "instruction": "Send a message to {number} with the content '{message}' in the Messages app.",
      "guidance": "Open the Messages app, open the conversation with the given number, tap the message field, type the content, then tap Send.",
      "params": {"number": {"pool": "msg_numbers"}, "message": {"pool": "messages"}}
    },
    {
      "id": "messages-count",
      "level": 1,
      "instruction": "How many conversations are in the Messages app? Answer with the number only.",
      "guidance": "Open the Messages app and count the conversations in the list, then answer with the count as a plain number.",
      "answer": true
    },
    {
      "id": "messages-send-n",
      "level": 2,
      "instruction": "Send the same message {n} times to {number} in the Messages app with the content '{message}'.",
      "guidance": "Open the Messages app, open the conversation with the given number, then type and send the given content the required number of times. The last messages of the conversation must all equal the content.",
      "params": {"number": {"pool": "msg_numbers"}, "message": {"pool": "messages"}, "n": {"int": [2, 4]}}
    }
  ]
})json";

const char* kTimerManifest = R"json({
  "app": "timer",
  "display_name": "Timer",
  "root": "timer_list",
  "screens": [
    {
      "id": "timer_list",
      "title": "Timers",
      "rows": [
        [{"id": "add_btn", "kind": "button", "text": "Add timer", "binding": "push:timer_add"}]
      ],
      "list": {"source": "timers", "text": "{label} ({state})", "binding": "push:timer_detail?label"}
    },
    {
      "id": "timer_detail",
      "title": "Timer {arg}",
      "record": {"list": "timers", "key": "label"},
      "rows": [
        [{"id": "state_lbl", "kind": "label", "text": "State: {rec.state}"}],
        [{"id": "start_btn", "kind": "button", "text": "Start", "binding": "effect:timer.start"},
         {"id": "pause_btn", "kind": "button", "text": "Pause", "binding": "effect:timer.pause"}],
        [{"id": "delete_btn", "kind": "button", "text": "Delete", "binding": "effect:timer.delete"}]
      ]
    },
    {
      "id": "timer_add",
      "title": "New timer",
      "rows": [
        [{"id": "label_field", "kind": "text_field"}],
        [{"id": "duration_field", "kind": "text_field"}],
        [{"id": "save_btn", "kind": "button", "text": "Save", "binding": "effect:timer.save_new"}]
      ]
    }
  ],
  "templates": [
    {
      "id": "timer-add",
      "level": 1,
      "instruction": "Add a timer labeled {label} with a duration of {duration} minutes in the Timer app.",
      "guidance": "Open the Timer app, tap 'Add timer', type the label and the duration in minutes, then tap Save.",
      "params": {"label": {"pool": "timer_labels"}, "duration": {"int": [1, 30]}}
    },
    {
      "id": "timer-delete-all",
      "level": 2,
      "instruction": "Delete all timers in the Timer app.",
      "guidance": "Open the Timer app and delete every timer: open each entry and tap Delete, until the list is empty.",
      "answer": false
    },
    {
      "id": "timer-start-all-pause",
      "level": 2,
      "instruction": "Start all timers and then pause them in the Timer app.",
      "guidance": "Open the Timer app. First start every timer (open each entry, tap Start), then pause every timer (open each entry, tap Pause). Every timer must end in the paused state.",
      "answer": false
    }
  ]
})json";

const char* kDiceManifest = R"json({
  "app": "dice",
  "display_name": "Dice",
  "root": "dice_main",
  "screens": [
    {
      "id": "dice_main",
      "title": "Dice",
      "rows": [
        [{"id": "roll_btn", "kind": "button", "text": "Roll", "binding": "effect:dice.roll"},
         {"id": "settings_btn", "kind": "button", "text": "Settings", "binding": "push:dice_settings"}],
        [{"id": "last_lbl", "kind": "label", "text": "Last roll: {kv.dice.last}"}],
        [{"id": "clear_btn", "kind": "button", "text": "Clear history", "binding": "push:confirm_clear"}]
      ],
      "list": {"source": "rolls", "text": "{values} (total {total})"}
    },
    {
      "id": "dice_settings",
      "title": "Dice settings",
      "rows": [
        [{"id": "dice_field", "kind": "text_field"}],
        [{"id": "sides_field", "kind": "text_field"}],
        [{"id": "sound_chk", "kind": "checkbox", "text": "Sound", "binding": "toggle:dice.sound"}],
        [{"id": "save_btn", "kind": "button", "text": "Save", "binding": "effect:dice.save_settings"}]
      ]
    },
    {
      "id": "confirm_clear",
      "title": "Clear roll history?",
      "rows": [
        [{"id": "confirm_btn", "kind": "button", "text": "Confirm", "binding": "effect:dice.clear"},
         {"id": "cancel_btn", "kind": "button", "text": "Cancel", "binding": "pop"}]
      ]
    }
  ],
  "templates": [
    {
      "id": "dice-roll-n",
      "level": 1,
      "instruction": "In the Dice app, roll the dice {n} times with the default settings.",
      "guidance": "Open the Dice app and tap Roll the required number of times. Do not change the settings.",
      "params": {"n": {"int": [2, 5]}}
    },
    {
      "id": "dice-set-sides",
      "level": 1,
      "instruction": "In the Dice app, set Sides to {sides} via the settings.",
      "guidance": "Open the Dice app, tap Settings, clear the sides field, type the new value, then tap Save.",
      "params": {"sides": {"int": [7, 20]}}
    },
    {
      "id": "dice-clear",
      "level": 1,
      "instruction": "Clear the roll history in the Dice app.",
      "guidance": "Open the Dice app, tap 'Clear history' and confirm. The roll history list must be empty afterwards.",
      "answer": false
    },
    {
      "id": "dice-sum",
      "level": 2,
      "instruction": "In the Dice app, set Dice to 1 and Sides to {sides}, and roll the dice twice with this setting. Record the results and answer the sum of the numbers.",
      "guidance": "Open the Dice app, set Dice to 1 and Sides to the given value in the settings, save, then tap Roll twice. Answer with the sum of the two rolled totals as a plain number.",
      "params": {"sides": {"int": [5, 9]}},
      "answer": true
    },
    {
      "id": "dice-max-roll",
      "level": 2,
      "instruction": "In the Dice app, roll the dice {n} times with the default settings and answer the highest total rolled. Answer with the number only.",
      "guidance": "Open the Dice app, tap Roll the required number of times with the default settings, then answer with the highest rolled total as a plain number.",
      "params": {"n": {"int": [3, 5]}},
      "answer": true
    }
  ]
})json";

// ---------------------------------------------------------------------------
// Store helpers
// ---------------------------------------------------------------------------

using Record = std::map<std::string, std::string>;

std::vector<Record>& store_list(DeviceState& s, const std::string& app,
                                const std::string& list) {
  return s.app_stores[app].lists[list];
}

const std::vector<Record>* store_list(const DeviceState& s, const std::string& app,
                                      const std::string& list) {
  auto a = s.app_stores.find(app);
  if (a == s.app_stores.end()) return nullptr;
  auto l = a->second.lists.find(list);
  if (l == a->second.lists.end()) return nullptr;
  return &l->second;
}

const Record* find_record(const DeviceState& s, const std::string& app,
                          const std::string& list, const std::string& key,
                          const std::string& value) {
  const auto* recs = store_list(s, app, list);
  if (!recs) return nullptr;
  for (const auto& r : *recs) {
    auto f = r.find(key);
    if (f != r.end() && f->second == value) return &r;
  }
  return nullptr;
}

bool remove_record(DeviceState& s, const std::string& app, const std::string& list,
                   const std::string& key, const std::string& value) {
  auto a = s.app_stores.find(app);
  if (a == s.app_stores.end()) return false;
  auto l = a->second.lists.find(list);
  if (l == a->second.lists.end()) return false;
  auto& recs = l->second;
  for (auto it = recs.begin(); it != recs.end(); ++it) {
    if ((*it)[key] == value) {
      recs.erase(it);
      return true;
    }
  }
  return false;
}

std::string field_key(const std::string& screen, const std::string& field) {
  return "field." + screen + "." + field;
}

std::string buffer_of(const DeviceState& s, const std::string& app,
                      const std::string& screen, const std::string& field) {
  auto a = s.app_stores.find(app);
  if (a == s.app_stores.end()) return "";
  auto f = a->second.kv.find(field_key(screen, field));
  return f == a->second.kv.end() ? "" : f->second;
}

std::string kv_of(const DeviceState& s, const std::string& app, const std::string& key,
                  const std::string& fallback = "") {
  auto a = s.app_stores.find(app);
  if (a == s.app_stores.end()) return fallback;
  auto f = a->second.kv.find(key);
  return f == a->second.kv.end() ? fallback : f->second;
}

int to_int(const std::string& v, int fallback) {
  if (v.empty()) return fallback;
  for (char c : v) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return fallback;
  }
  return std::stoi(v);
}

void pop_screens(DeviceState& s, int n) {
  for (int i = 0; i < n && s.screen_stack.size() > 1; ++i) {
    s.viewport_offsets.erase(s.screen_stack.back());
    s.screen_stack.pop_back();
  }
  s.focused_field.reset();
}

// ---------------------------------------------------------------------------
// Effects and push hooks
// ---------------------------------------------------------------------------

void register_effects(Behaviors& b) {
  b.effects["contacts.save_new"] = [](const Env&, DeviceState& s, const ScreenCtx& ctx) {
    std::string name = buffer_of(s, "contacts", ctx.screen_id, "name_field");
    if (name.empty()) return;  // Save with no name does nothing
    store_list(s, "contacts", "contacts")
        .push_back({{"name", name},
                    {"phone", buffer_of(s, "contacts", ctx.screen_id, "phone_field")},
                    {"email", buffer_of(s, "contacts", ctx.screen_id, "email_field")}});
    auto& kv = s.app_stores["contacts"].kv;
    kv.erase(field_key(ctx.screen_id, "name_field"));
    kv.erase(field_key(ctx.screen_id, "phone_field"));
    kv.erase(field_key(ctx.screen_id, "email_field"));
    pop_screens(s, 1);
  };
  b.effects["contacts.save_edit"] = [](const Env&, DeviceState& s, const ScreenCtx& ctx) {
    auto& recs = store_list(s, "contacts", "contacts");
    for (auto& r : recs) {
      if (r["name"] == ctx.arg) {
        r["phone"] = buffer_of(s, "contacts", ctx.screen_id, "phone_field");
        r["email"] = buffer_of(s, "contacts", ctx.screen_id, "email_field");
        break;
      }
    }
    pop_screens(s, 1);
  };
  b.effects["contacts.confirm_delete"] = [](const Env&, DeviceState& s, const ScreenCtx& ctx) {
    remove_record(s, "contacts", "contacts", "name", ctx.arg);
    pop_screens(s, 2);  // confirm dialog + detail
  };

  b.effects["notes.save_new"] = [](const Env&, DeviceState& s, const ScreenCtx& ctx) {
    std::string title = buffer_of(s, "notes", ctx.screen_id, "title_field");
    if (title.empty()) return;
    store_list(s, "notes", "notes")
        .push_back({{"title", title},
                    {"body", buffer_of(s, "notes", ctx.screen_id, "body_field")}});
    auto& kv = s.app_stores["notes"].kv;
    kv.erase(field_key(ctx.screen_id, "title_field"));
    kv.erase(field_key(ctx.screen_id, "body_field"));
    pop_screens(s, 1);
  };
  b.effects["notes.delete"] = [](const Env&, DeviceState& s, const ScreenCtx& ctx) {
    remove_record(s, "notes", "notes", "title", ctx.arg);
    pop_screens(s, 1);
  };

  b.effects["expense.save_new"] = [](const Env&, DeviceState& s, const ScreenCtx& ctx) {
    std::string name = buffer_of(s, "expense", ctx.screen_id, "name_field");
    if (name.empty()) return;
    store_list(s, "expense", "expenses")
        .push_back({{"name", name},
                    {"amount", buffer_of(s, "expense", ctx.screen_id, "amount_field")}});
    auto& kv = s.app_stores["expense"].kv;
    kv.erase(field_key(ctx.screen_id, "name_field"));
    kv.erase(field_key(ctx.screen_id, "amount_field"));
    pop_screens(s, 1);
  };
  b.effects["expense.delete"] = [](const Env&, DeviceState& s, const ScreenCtx& ctx) {
    remove_record(s, "expense", "expenses", "name", ctx.arg);
    pop_screens(s, 1);
  };

  b.effects["messages.send"] = [](const Env&, DeviceState& s, const ScreenCtx& ctx) {
    std::string text = buffer_of(s, "messages", ctx.screen_id, "msg_field");
    if (text.empty()) return;
    store_list(s, "messages", "msgs." + ctx.arg).push_back({{"text", text}});
    s.app_stores["messages"].kv.erase(field_key(ctx.screen_id, "msg_field"));
  };
  b.effects["messages.confirm_delete"] = [](const Env&, DeviceState& s, const ScreenCtx& ctx) {
    remove_record(s, "messages", "threads", "number", ctx.arg);
    s.app_stores["messages"].lists.erase("msgs." + ctx.arg);
    pop_screens(s, 2);
  };

  b.effects["timer.save_new"] = [](const Env&, DeviceState& s, const ScreenCtx& ctx) {
    std::string label = buffer_of(s, "timer", ctx.screen_id, "label_field");
    if (label.empty()) return;
    store_list(s, "timer", "timers")
        .push_back({{"label", label},
                    {"duration", buffer_of(s, "timer", ctx.screen_id, "duration_field")},
                    {"state", "stopped"}});
    auto& kv = s.app_stores["timer"].kv;
    kv.erase(field_key(ctx.screen_id, "label_field"));
    kv.erase(field_key(ctx.screen_id, "duration_field"));
    pop_screens(s, 1);
  };
  b.effects["timer.start"] = [](const Env&, DeviceState& s, const ScreenCtx& ctx) {
    for (auto& r : store_list(s, "timer", "timers")) {
      if (r["label"] == ctx.arg && r["state"] != "running") r["state"] = "running";
    }
  };
  b.effects["timer.pause"] = [](const Env&, DeviceState& s, const ScreenCtx& ctx) {
    for (auto& r : store_list(s, "timer", "timers")) {
      if (r["label"] == ctx.arg && r["state"] == "running") r["state"] = "paused";
    }
  };
  b.effects["timer.delete"] = [](const Env&, DeviceState& s, const ScreenCtx& ctx) {
    remove_record(s, "timer", "timers", "label", ctx.arg);
    pop_screens(s, 1);
  };

  b.effects["dice.roll"] = [](const Env&, DeviceState& s, const ScreenCtx&) {
    auto& kv = s.app_stores["dice"].kv;
    int count = to_int(kv["dice.count"], 2);
    int sides = to_int(kv["dice.sides"], 6);
    std::uint64_t state = std::stoull(kv["dice.rng"].empty() ? "1" : kv["dice.rng"]);
    std::string values;
    int total = 0;
    for (int i = 0; i < count; ++i) {
      int v = static_cast<int>(splitmix64(state + static_cast<std::uint64_t>(i)) %
                               static_cast<std::uint64_t>(sides)) + 1;
      if (i) values += ",";
      values += std::to_string(v);
      total += v;
    }
    kv["dice.rng"] = std::to_string(splitmix64(state));
    kv["dice.last"] = values;
    store_list(s, "dice", "rolls")
        .push_back({{"values", values},
                    {"total", std::to_string(total)},
                    {"dice", std::to_string(count)},
                    {"sides", std::to_string(sides)}});
  };
  b.effects["dice.save_settings"] = [](const Env&, DeviceState& s, const ScreenCtx& ctx) {
    auto& kv = s.app_stores["dice"].kv;
    int count = to_int(buffer_of(s, "dice", ctx.screen_id, "dice_field"), 0);
    int sides = to_int(buffer_of(s, "dice", ctx.screen_id, "sides_field"), 0);
    if (count > 0) kv["dice.count"] = std::to_string(count);
    if (sides > 1) kv["dice.sides"] = std::to_string(sides);
    pop_screens(s, 1);
  };
  b.effects["dice.clear"] = [](const Env&, DeviceState& s, const ScreenCtx&) {
    s.app_stores["dice"].lists["rolls"].clear();
    s.app_stores["dice"].kv["dice.last"] = "";
    pop_screens(s, 1);
  };
}

void register_push_hooks(Behaviors& b) {
  // Edit screens open with the current values in their field buffers.
  b.push_hooks["contacts.contact_edit"] = [](const Env&, DeviceState& s,
                                             const std::string& arg) {
    const Record* rec = find_record(s, "contacts", "contacts", "name", arg);
    auto& kv = s.app_stores["contacts"].kv;
    kv[field_key("contact_edit", "phone_field")] = rec ? rec->at("phone") : "";
    kv[field_key("contact_edit", "email_field")] = rec ? rec->at("email") : "";
  };
  b.push_hooks["dice.dice_settings"] = [](const Env&, DeviceState& s, const std::string&) {
    auto& kv = s.app_stores["dice"].kv;
    kv[field_key("dice_settings", "dice_field")] = kv.count("dice.count") ? kv["dice.count"] : "2";
    kv[field_key("dice_settings", "sides_field")] = kv.count("dice.sides") ? kv["dice.sides"] : "6";
  };
}

// ---------------------------------------------------------------------------
// Oracle building blocks
// ---------------------------------------------------------------------------

ActionRecord make_record(AtomicAction action, std::string thought, std::string desc) {
  ActionRecord r;
  r.action = std::move(action);
  r.thought = std::move(thought);
  r.description = std::move(desc);
  return r;
}

ActionRecord open_app_rec(const std::string& display) {
  AtomicAction a = AtomicAction::open_app(display);
  return make_record(a,
                     "The task takes place in the " + display +
                         " app, which is not on the screen yet. I will open it first.",
                     render_description(a));
}

ActionRecord back_rec(const std::string& why) {
  AtomicAction a = AtomicAction::press_back();
  return make_record(a, why, render_description(a));
}

ActionRecord complete_rec() {
  AtomicAction a = AtomicAction::task_complete();
  return make_record(a,
                     "Everything the task asked for is done and the result is "
                     "visible in the app, so I can finish here.",
                     render_description(a));
}

ActionRecord answer_rec(const std::string& text) {
  AtomicAction a = AtomicAction::answer(text);
  return make_record(a,
                     "I have gathered the information the task asked for, so I "
                     "will provide the answer now.",
                     render_description(a));
}

ActionRecord memorize_rec(const std::string& summary, const std::string& content) {
  AtomicAction a = AtomicAction::memorize(summary, content);
  return make_record(a,
                     "This information is needed for the final answer, so I will "
                     "store it in my memory before moving on.",
                     render_description(a));
}

ActionRecord click_rec(const UiElement& e, const std::string& phrase,
                       const std::string& purpose) {
  AtomicAction a = AtomicAction::click(e.center());
  return make_record(a,
                     "The " + phrase.substr(4) + " is visible on the current screen. "
                     "I will click it to " + purpose + ".",
                     render_description(a, phrase, purpose));
}

ActionRecord type_rec(const std::string& text, const std::string& what) {
  AtomicAction a = AtomicAction::type_text(text);
  return make_record(a,
                     "The " + what + " field is focused and empty, so I can type the "
                     "required text now.",
                     render_description(a));
}

ActionRecord scroll_rec(bool down, const std::string& purpose) {
  AtomicAction a = down ? AtomicAction::scroll({500, 800}, {500, 300})
                        : AtomicAction::scroll({500, 300}, {500, 800});
  return make_record(a,
                     "The entry I need is not on the visible part of the list, so "
                     "I will scroll to find it.",
                     render_description(a, "", purpose));
}

const UiElement* find_id(const ScreenView& v, const std::string& id) {
  for (const auto& e : v.elements) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::string button_phrase(const UiElement& e) { return "the '" + e.text + "' button"; }
std::string row_phrase(const UiElement& e) { return "the '" + e.text + "' entry"; }

ActionRecord click_button(const ScreenView& v, const std::string& id,
                          const std::string& purpose) {
  const UiElement* e = find_id(v, id);
  if (!e) throw Error("oracle: button " + id + " not on screen " + v.screen);
  return click_rec(*e, button_phrase(*e), purpose);
}

// Row index -> click it if visible, otherwise scroll toward its page.
ActionRecord navigate_to_row(const ScreenView& v, std::size_t idx,
                             const std::string& purpose) {
  std::string want = "row_" + std::to_string(idx);
  long lo = -1, hi = -1;
  for (const auto& e : v.elements) {
    if (e.id.rfind("row_", 0) != 0) continue;
    long n = std::stol(e.id.substr(4));
    if (lo < 0 || n < lo) lo = n;
    if (n > hi) hi = n;
    if (e.id == want) return click_rec(e, row_phrase(e), purpose);
  }
  bool down = hi < 0 || static_cast<long>(idx) > hi;
  return scroll_rec(down, "find the entry in the list");
}

// Drives one text field toward a desired value: Clear if dirty, focus, type.
// Returns nothing when the field already holds the value.
std::optional<ActionRecord> fill_field(const DeviceState& s, const ScreenView& v,
                                       const std::string& app, const std::string& screen_id,
                                       const std::string& field_id, const std::string& desired,
                                       const std::string& what) {
  std::string current = buffer_of(s, app, screen_id, field_id);
  if (current == desired) return std::nullopt;
  if (!current.empty()) {
    const UiElement* clear = find_id(v, field_id + "_clear");
    if (!clear) throw Error("oracle: no clear button for " + field_id);
    return click_rec(*clear, "the 'Clear' button", "clear the " + what + " field");
  }
  if (s.focused_field != field_id) {
    const UiElement* field = find_id(v, field_id);
    if (!field) throw Error("oracle: field " + field_id + " not on screen");
    return click_rec(*field, "the " + what + " field",
                     "activate the input field for the " + what);
  }
  return type_rec(desired, what);
}

struct OracleView {
  std::string screen_id;
  std::string arg;
  ScreenView view;
};

OracleView oracle_view(const Env& env, const DeviceState& s) {
  OracleView ov;
  auto [id, arg] = split_instance(s.screen_stack.back());
  ov.screen_id = id;
  ov.arg = arg;
  ov.view = parse_layout(render_screen(env, s).layout);
  return ov;
}

std::size_t record_index(const DeviceState& s, const std::string& app,
                         const std::string& list, const std::string& key,
                         const std::string& value) {
  const auto* recs = store_list(s, app, list);
  if (!recs) return 0;
  for (std::size_t i = 0; i < recs->size(); ++i) {
    if ((*recs)[i].at(key) == value) return i;
  }
  return 0;
}

bool memory_has(const MemoryBank& m, const std::string& summary) {
  for (const auto& [s, c] : m.entries) {
    if (s == summary) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Setup helpers
// ---------------------------------------------------------------------------

std::string gen_phone(Rng& rng) { return "555-" + std::to_string(rng.range(1000, 9999)); }

// ---------------------------------------------------------------------------
// Template behaviors
// ---------------------------------------------------------------------------

// Shared skeleton: route to the app, else hand control to the in-app logic.
// in_app returns nullopt for "unexpected screen", which backs out one level.
template <typename Fn>
ActionRecord app_oracle(const Env& env, const DeviceState& s, const std::string& app_id,
                        const std::string& display, Fn&& in_app) {
  if (s.current_app != app_id) return open_app_rec(display);
  OracleView ov = oracle_view(env, s);
  std::optional<ActionRecord> r = in_app(ov);
  if (r) return *r;
  return back_rec(
      "This screen is not where the remaining work happens. I will go back to "
      "get to the right place.");
}

}  // namespace

// Baseline device content present for every instance, independent of the
// template: dice settings and its seeded roll stream.
void seed_device_defaults(DeviceState& s, std::uint64_t instance_seed) {
  auto& kv = s.app_stores["dice"].kv;
  kv["dice.count"] = "2";
  kv["dice.sides"] = "6";
  kv["dice.sound"] = "0";
  kv["dice.last"] = "";
  kv["dice.rng"] = std::to_string(derive_seed(instance_seed, "dice-rolls") | 1);
}

// Behaviors need env pool access inside setup, so the registration happens in
// one place where the pools are defined alongside.
Behaviors builtin_behaviors() {
  Behaviors b;

  b.pools["first_names"] = {"Alice", "Bob", "Carol", "Dave", "Erin", "Frank",
                            "Grace", "Heidi", "Ivan", "Judy", "Mallory", "Niaj",
                            "Olivia", "Peggy", "Rupert", "Sybil", "Trent", "Victor",
                            "Wendy", "Yolanda"};
  b.pools["emails"] = {"blue@mail.com", "sky@mail.com", "sun@mail.com", "moon@mail.com",
                       "star@mail.com", "leaf@mail.com", "rain@mail.com", "snow@mail.com"};
  b.pools["note_titles"] = {"Groceries", "Meeting notes", "Ideas", "Travel plan",
                            "Workout", "Reading list", "Budget", "Recipes",
                            "Garden", "Gifts"};
  b.pools["note_bodies"] = {"milk and eggs",
                            "discuss the quarterly roadmap with the team",
                            "a folding bike for the commute",
                            "pack light, bring the charger",
                            "three sets of ten, rest two minutes",
                            "finish the blue book first",
                            "save a tenth of the paycheck",
                            "less salt than the recipe says",
                            "water the tomatoes on tuesdays",
                            "a scarf for grandma"};
  b.pools["expense_names"] = {"Coffee", "Lunch", "Taxi", "Books", "Cinema",
                              "Gym", "Flowers", "Snacks", "Parking", "Museum"};
  b.pools["msg_numbers"] = {"555-0101", "555-0102", "555-0103", "555-0104", "555-0105",
                            "555-0106", "555-0107", "555-0108", "555-0109", "555-0110"};
  b.pools["messages"] = {"See you soon", "Running late", "On my way", "Call me back",
                         "Happy birthday", "Meeting moved to 3pm", "Thanks a lot",
                         "The keys are under the mat"};
  b.pools["timer_labels"] = {"Tea", "Laundry", "Nap", "Pasta", "Eggs", "Workout",
                             "Break", "Pizza"};

  register_effects(b);
  register_push_hooks(b);

  const auto& first_names = b.pools["first_names"];
  const auto& note_titles = b.pools["note_titles"];
  const auto& note_bodies = b.pools["note_bodies"];
  const auto& expense_names = b.pools["expense_names"];
  const auto& msg_numbers = b.pools["msg_numbers"];
  const auto& messages_pool = b.pools["messages"];
  const auto& timer_labels = b.pools["timer_labels"];

  auto seed_contacts_pool = [first_names](DeviceState& s, Rng& rng,
                                          const std::set<std::string>& exclude, int count,
                                          const std::optional<std::string>& include) {
    std::vector<std::string> candidates;
    for (const auto& v : first_names) {
      if (!exclude.count(v)) candidates.push_back(v);
    }
    std::vector<std::string> names;
    for (int i = 0; i < count && !candidates.empty(); ++i) {
      std::size_t j = rng.below(candidates.size());
      names.push_back(candidates[j]);
      candidates.erase(candidates.begin() + static_cast<long>(j));
    }
    if (include) {
      std::size_t pos = rng.below(names.size() + 1);
      names.insert(names.begin() + static_cast<long>(pos), *include);
    }
    auto& recs = store_list(s, "contacts", "contacts");
    for (const auto& n : names) {
      std::string lower = n;
      std::transform(lower.begin(), lower.end(), lower.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      recs.push_back(
          {{"name", n}, {"phone", gen_phone(rng)}, {"email", lower + "@mail.com"}});
    }
  };

  // ---- contacts-delete ----
  {
    TemplateBehavior t;
    t.setup = [seed_contacts_pool](DeviceState& s, const Params& p, Rng& rng) {
      seed_contacts_pool(s, rng, {p.at("name")}, 4 + rng.range(0, 2), p.at("name"));
    };
    t.verify = [](const Env&, const DeviceState& s, const TaskInstance& inst,
                  const std::optional<std::string>&) {
      return s.terminated && s.terminated->kind == Termination::Kind::Complete &&
             !find_record(s, "contacts", "contacts", "name", inst.params.at("name"));
    };
    t.oracle = [](const Env& env, const DeviceState& s, const TaskInstance& inst,
                  const MemoryBank&) -> ActionRecord {
      const std::string& name = inst.params.at("name");
      if (!find_record(s, "contacts", "contacts", "name", name)) return complete_rec();
      return app_oracle(env, s, "contacts", "Contacts",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "contacts_list") {
          return navigate_to_row(ov.view,
                                 record_index(s, "contacts", "contacts", "name", name),
                                 "open the contact details");
        }
        if (ov.screen_id == "contact_detail" && ov.arg == name) {
          return click_button(ov.view, "delete_btn", "delete this contact");
        }
        if (ov.screen_id == "confirm_delete" && ov.arg == name) {
          return click_button(ov.view, "confirm_btn", "confirm the deletion");
        }
        return std::nullopt;
      });
    };
    b.templates["contacts-delete"] = std::move(t);
  }

  // ---- contacts-add ----
  {
    TemplateBehavior t;
    t.setup = [seed_contacts_pool](DeviceState& s, const Params& p, Rng& rng) {
      seed_contacts_pool(s, rng, {p.at("name")}, 3 + rng.range(0, 2), std::nullopt);
    };
    t.verify = [](const Env&, const DeviceState& s, const TaskInstance& inst,
                  const std::optional<std::string>&) {
      const Record* rec =
          find_record(s, "contacts", "contacts", "name", inst.params.at("name"));
      return s.terminated && s.terminated->kind == Termination::Kind::Complete && rec &&
             rec->at("phone") == "555-" + inst.params.at("phone");
    };
    t.oracle = [](const Env& env, const DeviceState& s, const TaskInstance& inst,
                  const MemoryBank&) -> ActionRecord {
      const std::string& name = inst.params.at("name");
      std::string phone = "555-" + inst.params.at("phone");
      const Record* rec = find_record(s, "contacts", "contacts", "name", name);
      if (rec && rec->at("phone") == phone) return complete_rec();
      return app_oracle(env, s, "contacts", "Contacts",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "contacts_list") {
          return click_button(ov.view, "add_btn", "create a new contact");
        }
        if (ov.screen_id == "contact_add") {
          if (auto r = fill_field(s, ov.view, "contacts", "contact_add", "name_field",
                                  name, "name")) {
            return r;
          }
          if (auto r = fill_field(s, ov.view, "contacts", "contact_add", "phone_field",
                                  phone, "phone")) {
            return r;
          }
          return click_button(ov.view, "save_btn", "save the new contact");
        }
        return std::nullopt;
      });
    };
    b.templates["contacts-add"] = std::move(t);
  }

  // ---- contacts-count ----
  {
    TemplateBehavior t;
    t.setup = [seed_contacts_pool](DeviceState& s, const Params&, Rng& rng) {
      seed_contacts_pool(s, rng, {}, 3 + rng.range(0, 4), std::nullopt);
    };
    t.gt_answer = [](const Env&, const DeviceState& s, const TaskInstance&) {
      const auto* recs = store_list(s, "contacts", "contacts");
      return std::to_string(recs ? recs->size() : 0);
    };
    t.verify = [](const Env&, const DeviceState& s, const TaskInstance&,
                  const std::optional<std::string>& answer) {
      const auto* recs = store_list(s, "contacts", "contacts");
      std::string gt = std::to_string(recs ? recs->size() : 0);
      return s.terminated && s.terminated->kind == Termination::Kind::Answered && answer &&
             *answer == gt;
    };
    t.oracle = [](const Env& env, const DeviceState& s, const TaskInstance&,
                  const MemoryBank& memory) -> ActionRecord {
      const auto* recs = store_list(s, "contacts", "contacts");
      std::string count = std::to_string(recs ? recs->size() : 0);
      return app_oracle(env, s, "contacts", "Contacts",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "contacts_list") {
          if (!memory_has(memory, "contact count")) {
            return memorize_rec("contact count", count);
          }
          return answer_rec(count);
        }
        return std::nullopt;
      });
    };
    b.templates["contacts-count"] = std::move(t);
  }

  // ---- contacts-update ----
  {
    TemplateBehavior t;
    t.setup = [seed_contacts_pool](DeviceState& s, const Params& p, Rng& rng) {
      seed_contacts_pool(s, rng, {p.at("name")}, 3 + rng.range(0, 2), p.at("name"));
    };
    t.verify = [](const Env&, const DeviceState& s, const TaskInstance& inst,
                  const std::optional<std::string>&) {
      const Record* rec =
          find_record(s, "contacts", "contacts", "name", inst.params.at("name"));
      return s.terminated && s.terminated->kind == Termination::Kind::Complete && rec &&
             rec->at("phone") == "555-" + inst.params.at("phone") &&
             rec->at("email") == inst.params.at("email");
    };
    t.oracle = [](const Env& env, const DeviceState& s, const TaskInstance& inst,
                  const MemoryBank&) -> ActionRecord {
      const std::string& name = inst.params.at("name");
      std::string phone = "555-" + inst.params.at("phone");
      const std::string& email = inst.params.at("email");
      const Record* rec = find_record(s, "contacts", "contacts", "name", name);
      if (rec && rec->at("phone") == phone && rec->at("email") == email) {
        return complete_rec();
      }
      return app_oracle(env, s, "contacts", "Contacts",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "contacts_list") {
          return navigate_to_row(ov.view,
                                 record_index(s, "contacts", "contacts", "name", name),
                                 "open the contact details");
        }
        if (ov.screen_id == "contact_detail" && ov.arg == name) {
          return click_button(ov.view, "edit_btn", "edit this contact");
        }
        if (ov.screen_id == "contact_edit" && ov.arg == name) {
          if (auto r = fill_field(s, ov.view, "contacts", "contact_edit", "phone_field",
                                  phone, "phone")) {
            return r;
          }
          if (auto r = fill_field(s, ov.view, "contacts", "contact_edit", "email_field",
                                  email, "email")) {
            return r;
          }
          return click_button(ov.view, "save_btn", "save the updated contact");
        }
        return std::nullopt;
      });
    };
    b.templates["contacts-update"] = std::move(t);
  }

  auto seed_notes = [note_titles, note_bodies](DeviceState& s, Rng& rng,
                                               const std::set<std::string>& exclude,
                                               int count,
                                               const std::optional<std::string>& include,
                                               bool distinct_lengths) {
    std::vector<std::string> titles;
    {
      std::vector<std::string> candidates;
      for (const auto& v : note_titles) {
        if (!exclude.count(v)) candidates.push_back(v);
      }
      for (int i = 0; i < count && !candidates.empty(); ++i) {
        std::size_t j = rng.below(candidates.size());
        titles.push_back(candidates[j]);
        candidates.erase(candidates.begin() + static_cast<long>(j));
      }
    }
    if (include) {
      std::size_t pos = rng.below(titles.size() + 1);
      titles.insert(titles.begin() + static_cast<long>(pos), *include);
    }
    std::set<std::size_t> used_lengths;
    auto& recs = store_list(s, "notes", "notes");
    for (const auto& title : titles) {
      std::string body;
      for (int tries = 0; tries < 32; ++tries) {
        body = note_bodies[rng.below(note_bodies.size())];
        if (!distinct_lengths || !used_lengths.count(body.size())) break;
      }
      used_lengths.insert(body.size());
      recs.push_back({{"title", title}, {"body", body}});
    }
  };

  // ---- notes-create ----
  {
    TemplateBehavior t;
    t.setup = [seed_notes](DeviceState& s, const Params& p, Rng& rng) {
      seed_notes(s, rng, {p.at("title")}, 2 + rng.range(0, 2), std::nullopt, false);
    };
    t.verify = [](const Env&, const DeviceState& s, const TaskInstance& inst,
                  const std::optional<std::string>&) {
      const Record* rec = find_record(s, "notes", "notes", "title", inst.params.at("title"));
      return s.terminated && s.terminated->kind == Termination::Kind::Complete && rec &&
             rec->at("body") == inst.params.at("body");
    };
    t.oracle = [](const Env& env, const DeviceState& s, const TaskInstance& inst,
                  const MemoryBank&) -> ActionRecord {
      const std::string& title = inst.params.at("title");
      const std::string& body = inst.params.at("body");
      const Record* rec = find_record(s, "notes", "notes", "title", title);
      if (rec && rec->at("body") == body) return complete_rec();
      return app_oracle(env, s, "notes", "Notes",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "notes_list") {
          return click_button(ov.view, "add_btn", "create a new note");
        }
        if (ov.screen_id == "note_add") {
          if (auto r = fill_field(s, ov.view, "notes", "note_add", "title_field", title,
                                  "title")) {
            return r;
          }
          if (auto r = fill_field(s, ov.view, "notes", "note_add", "body_field", body,
                                  "body")) {
            return r;
          }
          return click_button(ov.view, "save_btn", "save the new note");
        }
        return std::nullopt;
      });
    };
    b.templates["notes-create"] = std::move(t);
  }

  // ---- notes-delete ----
  {
    TemplateBehavior t;
    t.setup = [seed_notes](DeviceState& s, const Params& p, Rng& rng) {
      seed_notes(s, rng, {p.at("title")}, 2 + rng.range(0, 2), p.at("title"), false);
    };
    t.verify = [](const Env&, const DeviceState& s, const TaskInstance& inst,
                  const std::optional<std::string>&) {
      return s.terminated && s.terminated->kind == Termination::Kind::Complete &&
             !find_record(s, "notes", "notes", "title", inst.params.at("title"));
    };
    t.oracle = [](const Env& env, const DeviceState& s, const TaskInstance& inst,
                  const MemoryBank&) -> ActionRecord {
      const std::string& title = inst.params.at("title");
      if (!find_record(s, "notes", "notes", "title", title)) return complete_rec();
      return app_oracle(env, s, "notes", "Notes",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "notes_list") {
          return navigate_to_row(ov.view, record_index(s, "notes", "notes", "title", title),
                                 "open the note");
        }
        if (ov.screen_id == "note_view" && ov.arg == title) {
          return click_button(ov.view, "delete_btn", "delete this note");
        }
        return std::nullopt;
      });
    };
    b.templates["notes-delete"] = std::move(t);
  }

  // ---- notes-read ----
  {
    TemplateBehavior t;
    t.setup = [seed_notes](DeviceState& s, const Params& p, Rng& rng) {
      seed_notes(s, rng, {p.at("title")}, 2 + rng.range(0, 2), p.at("title"), false);
    };
    t.gt_answer = [](const Env&, const DeviceState& s, const TaskInstance& inst) {
      const Record* rec = find_record(s, "notes", "notes", "title", inst.params.at("title"));
      return rec ? rec->at("body") : "";
    };
    t.verify = [](const Env&, const DeviceState& s, const TaskInstance& inst,
                  const std::optional<std::string>& answer) {
      const Record* rec = find_record(s, "notes", "notes", "title", inst.params.at("title"));
      return s.terminated && s.terminated->kind == Termination::Kind::Answered && rec &&
             answer && *answer == rec->at("body");
    };
    t.oracle = [](const Env& env, const DeviceState& s, const TaskInstance& inst,
                  const MemoryBank& memory) -> ActionRecord {
      const std::string& title = inst.params.at("title");
      const Record* rec = find_record(s, "notes", "notes", "title", title);
      std::string body = rec ? rec->at("body") : "";
      return app_oracle(env, s, "notes", "Notes",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (memory_has(memory, "note content")) return answer_rec(body);
        if (ov.screen_id == "notes_list") {
          return navigate_to_row(ov.view, record_index(s, "notes", "notes", "title", title),
                                 "open the note");
        }
        if (ov.screen_id == "note_view" && ov.arg == title) {
          return memorize_rec("note content", body);
        }
        return std::nullopt;
      });
    };
    b.templates["notes-read"] = std::move(t);
  }

  // ---- notes-longest ----
  {
    TemplateBehavior t;
    t.setup = [seed_notes](DeviceState& s, const Params&, Rng& rng) {
      seed_notes(s, rng, {}, 3 + rng.range(0, 1), std::nullopt, true);
    };
    auto longest_title = [](const DeviceState& s) -> std::string {
      const auto* recs = store_list(s, "notes", "notes");
      if (!recs || recs->empty()) return "";
      std::size_t best = 0;
      for (std::size_t i = 1; i < recs->size(); ++i) {
        if ((*recs)[i].at("body").size() > (*recs)[best].at("body").size()) best = i;
      }
      return (*recs)[best].at("title");
    };
    t.gt_answer = [longest_title](const Env&, const DeviceState& s, const TaskInstance&) {
      return longest_title(s);
    };
    t.verify = [longest_title](const Env&, const DeviceState& s, const TaskInstance&,
                               const std::optional<std::string>& answer) {
      return s.terminated && s.terminated->kind == Termination::Kind::Answered && answer &&
             *answer == longest_title(s);
    };
    t.oracle = [longest_title](const Env& env, const DeviceState& s, const TaskInstance&,
                               const MemoryBank& memory) -> ActionRecord {
      const auto* recs = store_list(s, "notes", "notes");
      return app_oracle(env, s, "notes", "Notes",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (!recs || recs->empty()) return answer_rec("");
        // Inspect notes in list order, memorizing each content length.
        std::size_t next = recs->size();
        for (std::size_t i = 0; i < recs->size(); ++i) {
          if (!memory_has(memory, (*recs)[i].at("title") + " length")) {
            next = i;
            break;
          }
        }
        if (next == recs->size()) return answer_rec(longest_title(s));
        const std::string& title = (*recs)[next].at("title");
        if (ov.screen_id == "notes_list") {
          return navigate_to_row(ov.view, next, "open the note");
        }
        if (ov.screen_id == "note_view" && ov.arg == title) {
          return memorize_rec(title + " length",
                              std::to_string((*recs)[next].at("body").size()));
        }
        return std::nullopt;
      });
    };
    b.templates["notes-longest"] = std::move(t);
  }

  auto seed_expenses = [expense_names](DeviceState& s, Rng& rng,
                                       const std::set<std::string>& exclude, int count,
                                       const std::optional<std::string>& include,
                                       int lo, int hi) {
    std::vector<std::string> names;
    {
      std::vector<std::string> candidates;
      for (const auto& v : expense_names) {
        if (!exclude.count(v)) candidates.push_back(v);
      }
      for (int i = 0; i < count && !candidates.empty(); ++i) {
        std::size_t j = rng.below(candidates.size());
        names.push_back(candidates[j]);
        candidates.erase(candidates.begin() + static_cast<long>(j));
      }
    }
    if (include) {
      std::size_t pos = rng.below(names.size() + 1);
      names.insert(names.begin() + static_cast<long>(pos), *include);
    }
    auto& recs = store_list(s, "expense", "expenses");
    for (const auto& n : names) {
      recs.push_back({{"name", n}, {"amount", std::to_string(rng.range(lo, hi))}});
    }
  };

  // ---- expense-add ----
  {
    TemplateBehavior t;
    t.setup = [seed_expenses](DeviceState& s, const Params& p, Rng& rng) {
      seed_expenses(s, rng, {p.at("name")}, 3 + rng.range(0, 2), std::nullopt, 5, 80);
    };
    t.verify = [](const Env&, const DeviceState& s, const TaskInstance& inst,
                  const std::optional<std::string>&) {
      const Record* rec =
          find_record(s, "expense", "expenses", "name", inst.params.at("name"));
      return s.terminated && s.terminated->kind == Termination::Kind::Complete && rec &&
             rec->at("amount") == inst.params.at("amount");
    };
    t.oracle = [](const Env& env, const DeviceState& s, const TaskInstance& inst,
                  const MemoryBank&) -> ActionRecord {
      const std::string& name = inst.params.at("name");
      const std::string& amount = inst.params.at("amount");
      const Record* rec = find_record(s, "expense", "expenses", "name", name);
      if (rec && rec->at("amount") == amount) return complete_rec();
      return app_oracle(env, s, "expense", "Expense",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "expense_list") {
          return click_button(ov.view, "add_btn", "log a new expense");
        }
        if (ov.screen_id == "expense_add") {
          if (auto r = fill_field(s, ov.view, "expense", "expense_add", "name_field", name,
                                  "name")) {
            return r;
          }
          if (auto r = fill_field(s, ov.view, "expense", "expense_add", "amount_field",
                                  amount, "amount")) {
            return r;
          }
          return click_button(ov.view, "save_btn", "save the new expense");
        }
        return std::nullopt;
      });
    };
    b.templates["expense-add"] = std::move(t);
  }

  // ---- expense-total ----
  {
    TemplateBehavior t;
    t.setup = [seed_expenses](DeviceState& s, const Params&, Rng& rng) {
      seed_expenses(s, rng, {}, 3 + rng.range(0, 3), std::nullopt, 5, 80);
    };
    auto total = [](const DeviceState& s) {
      const auto* recs = store_list(s, "expense", "expenses");
      int sum = 0;
      if (recs) {
        for (const auto& r : *recs) sum += to_int(r.at("amount"), 0);
      }
      return std::to_string(sum);
    };
    t.gt_answer = [total](const Env&, const DeviceState& s, const TaskInstance&) {
      return total(s);
    };
    t.verify = [total](const Env&, const DeviceState& s, const TaskInstance&,
                       const std::optional<std::string>& answer) {
      return s.terminated && s.terminated->kind == Termination::Kind::Answered && answer &&
             *answer == total(s);
    };
    t.oracle = [total](const Env& env, const DeviceState& s, const TaskInstance&,
                       const MemoryBank& memory) -> ActionRecord {
      return app_oracle(env, s, "expense", "Expense",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "expense_list") {
          if (!memory_has(memory, "expense total")) {
            return memorize_rec("expense total", total(s));
          }
          return answer_rec(total(s));
        }
        return std::nullopt;
      });
    };
    b.templates["expense-total"] = std::move(t);
  }

  // ---- expense-delete-above ----
  {
    TemplateBehavior t;
    t.setup = [seed_expenses](DeviceState& s, const Params& p, Rng& rng) {
      int threshold = to_int(p.at("amount"), 45);
      seed_expenses(s, rng, {}, 2, std::nullopt, 5, threshold - 1);
      seed_expenses(s, rng,
                    [&] {
                      std::set<std::string> used;
                      for (const auto& r : store_list(s, "expense", "expenses")) {
                        used.insert(r.at("name"));
                      }
                      return used;
                    }(),
                    2 + rng.range(0, 1), std::nullopt, threshold + 1, 99);
    };
    auto first_above = [](const DeviceState& s, int threshold) -> std::optional<std::size_t> {
      const auto* recs = store_list(s, "expense", "expenses");
      if (!recs) return std::nullopt;
      for (std::size_t i = 0; i < recs->size(); ++i) {
        if (to_int((*recs)[i].at("amount"), 0) > threshold) return i;
      }
      return std::nullopt;
    };
    t.verify = [first_above](const Env&, const DeviceState& s, const TaskInstance& inst,
                             const std::optional<std::string>&) {
      return s.terminated && s.terminated->kind == Termination::Kind::Complete &&
             !first_above(s, to_int(inst.params.at("amount"), 0));
    };
    t.oracle = [first_above](const Env& env, const DeviceState& s, const TaskInstance& inst,
                             const MemoryBank&) -> ActionRecord {
      int threshold = to_int(inst.params.at("amount"), 0);
      auto target = first_above(s, threshold);
      if (!target) return complete_rec();
      const auto* recs = store_list(s, "expense", "expenses");
      const std::string& name = (*recs)[*target].at("name");
      return app_oracle(env, s, "expense", "Expense",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "expense_list") {
          return navigate_to_row(ov.view, *target, "open the expense entry");
        }
        if (ov.screen_id == "expense_detail" && ov.arg == name) {
          return click_button(ov.view, "delete_btn", "delete this expense");
        }
        return std::nullopt;
      });
    };
    b.templates["expense-delete-above"] = std::move(t);
  }

  // ---- expense-names ----
  {
    TemplateBehavior t;
    t.setup = [seed_expenses](DeviceState& s, const Params&, Rng& rng) {
      seed_expenses(s, rng, {}, 3 + rng.range(0, 2), std::nullopt, 5, 80);
    };
    auto names_joined = [](const DeviceState& s) {
      const auto* recs = store_list(s, "expense", "expenses");
      std::string out;
      if (recs) {
        for (std::size_t i = 0; i < recs->size(); ++i) {
          if (i) out += ", ";
          out += (*recs)[i].at("name");
        }
      }
      return out;
    };
    t.gt_answer = [names_joined](const Env&, const DeviceState& s, const TaskInstance&) {
      return names_joined(s);
    };
    t.verify = [names_joined](const Env&, const DeviceState& s, const TaskInstance&,
                              const std::optional<std::string>& answer) {
      return s.terminated && s.terminated->kind == Termination::Kind::Answered && answer &&
             *answer == names_joined(s);
    };
    t.oracle = [names_joined](const Env& env, const DeviceState& s, const TaskInstance&,
                              const MemoryBank& memory) -> ActionRecord {
      return app_oracle(env, s, "expense", "Expense",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "expense_list") {
          if (!memory_has(memory, "expense names")) {
            return memorize_rec("expense names", names_joined(s));
          }
          return answer_rec(names_joined(s));
        }
        return std::nullopt;
      });
    };
    b.templates["expense-names"] = std::move(t);
  }

  auto seed_threads = [msg_numbers, messages_pool](DeviceState& s, Rng& rng,
                                                   const std::set<std::string>& exclude,
                                                   int count,
                                                   const std::optional<std::string>& include) {
    std::vector<std::string> numbers;
    {
      std::vector<std::string> candidates;
      for (const auto& v : msg_numbers) {
        if (!exclude.count(v)) candidates.push_back(v);
      }
      for (int i = 0; i < count && !candidates.empty(); ++i) {
        std::size_t j = rng.below(candidates.size());
        numbers.push_back(candidates[j]);
        candidates.erase(candidates.begin() + static_cast<long>(j));
      }
    }
    if (include) {
      std::size_t pos = rng.below(numbers.size() + 1);
      numbers.insert(numbers.begin() + static_cast<long>(pos), *include);
    }
    for (const auto& n : numbers) {
      store_list(s, "messages", "threads").push_back({{"number", n}});
      auto& msgs = store_list(s, "messages", "msgs." + n);
      int m = 1 + rng.range(0, 2);
      for (int i = 0; i < m; ++i) {
        msgs.push_back({{"text", messages_pool[rng.below(messages_pool.size())]}});
      }
    }
  };

  // ---- messages-delete-conv ----
  {
    TemplateBehavior t;
    t.setup = [seed_threads](DeviceState& s, const Params& p, Rng& rng) {
      seed_threads(s, rng, {p.at("number")}, 2 + rng.range(0, 2), p.at("number"));
    };
    t.verify = [](const Env&, const DeviceState& s, const TaskInstance& inst,
                  const std::optional<std::string>&) {
      return s.terminated && s.terminated->kind == Termination::Kind::Complete &&
             !find_record(s, "messages", "threads", "number", inst.params.at("number"));
    };
    t.oracle = [](const Env& env, const DeviceState& s, const TaskInstance& inst,
                  const MemoryBank&) -> ActionRecord {
      const std::string& number = inst.params.at("number");
      if (!find_record(s, "messages", "threads", "number", number)) return complete_rec();
      return app_oracle(env, s, "messages", "Messages",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "threads_list") {
          return navigate_to_row(ov.view,
                                 record_index(s, "messages", "threads", "number", number),
                                 "open the conversation");
        }
        if (ov.screen_id == "thread_view" && ov.arg == number) {
          return click_button(ov.view, "del_conv_btn", "delete this conversation");
        }
        if (ov.screen_id == "confirm_del_conv" && ov.arg == number) {
          return click_button(ov.view, "confirm_btn", "confirm the deletion");
        }
        return std::nullopt;
      });
    };
    b.templates["messages-delete-conv"] = std::move(t);
  }

  auto last_n_equal = [](const DeviceState& s, const std::string& number,
                         const std::string& message, int n) {
    const auto* msgs = store_list(s, "messages", "msgs." + number);
    if (!msgs || msgs->size() < static_cast<std::size_t>(n)) return false;
    for (int i = 0; i < n; ++i) {
      if ((*msgs)[msgs->size() - 1 - static_cast<std::size_t>(i)].at("text") != message) {
        return false;
      }
    }
    return true;
  };

  // ---- messages-send ----
  {
    TemplateBehavior t;
    t.setup = [seed_threads](DeviceState& s, const Params& p, Rng& rng) {
      seed_threads(s, rng, {p.at("number")}, 1 + rng.range(0, 2), p.at("number"));
    };
    t.verify = [last_n_equal](const Env&, const DeviceState& s, const TaskInstance& inst,
                              const std::optional<std::string>&) {
      return s.terminated && s.terminated->kind == Termination::Kind::Complete &&
             last_n_equal(s, inst.params.at("number"), inst.params.at("message"), 1);
    };
    t.oracle = [last_n_equal](const Env& env, const DeviceState& s, const TaskInstance& inst,
                              const MemoryBank&) -> ActionRecord {
      const std::string& number = inst.params.at("number");
      const std::string& message = inst.params.at("message");
      if (last_n_equal(s, number, message, 1)) return complete_rec();
      return app_oracle(env, s, "messages", "Messages",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "threads_list") {
          return navigate_to_row(ov.view,
                                 record_index(s, "messages", "threads", "number", number),
                                 "open the conversation");
        }
        if (ov.screen_id == "thread_view" && ov.arg == number) {
          if (auto r = fill_field(s, ov.view, "messages", "thread_view", "msg_field",
                                  message, "message")) {
            return r;
          }
          return click_button(ov.view, "send_btn", "send the message");
        }
        return std::nullopt;
      });
    };
    b.templates["messages-send"] = std::move(t);
  }

  // ---- messages-count ----
  {
    TemplateBehavior t;
    t.setup = [seed_threads](DeviceState& s, const Params&, Rng& rng) {
      seed_threads(s, rng, {}, 2 + rng.range(0, 3), std::nullopt);
    };
    auto count_of = [](const DeviceState& s) {
      const auto* recs = store_list(s, "messages", "threads");
      return std::to_string(recs ? recs->size() : 0);
    };
    t.gt_answer = [count_of](const Env&, const DeviceState& s, const TaskInstance&) {
      return count_of(s);
    };
    t.verify = [count_of](const Env&, const DeviceState& s, const TaskInstance&,
                          const std::optional<std::string>& answer) {
      return s.terminated && s.terminated->kind == Termination::Kind::Answered && answer &&
             *answer == count_of(s);
    };
    t.oracle = [count_of](const Env& env, const DeviceState& s, const TaskInstance&,
                          const MemoryBank& memory) -> ActionRecord {
      return app_oracle(env, s, "messages", "Messages",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "threads_list") {
          if (!memory_has(memory, "conversation count")) {
            return memorize_rec("conversation count", count_of(s));
          }
          return answer_rec(count_of(s));
        }
        return std::nullopt;
      });
    };
    b.templates["messages-count"] = std::move(t);
  }

  // ---- messages-send-n ----
  {
    TemplateBehavior t;
    t.setup = [seed_threads](DeviceState& s, const Params& p, Rng& rng) {
      seed_threads(s, rng, {p.at("number")}, 1 + rng.range(0, 1), p.at("number"));
    };
    auto sent_count = [](const DeviceState& s, const std::string& number,
                         const std::string& message) {
      const auto* msgs = store_list(s, "messages", "msgs." + number);
      int run = 0;
      if (msgs) {
        for (auto it = msgs->rbegin(); it != msgs->rend() && it->at("text") == message; ++it) {
          ++run;
        }
      }
      return run;
    };
    t.verify = [sent_count](const Env&, const DeviceState& s, const TaskInstance& inst,
                            const std::optional<std::string>&) {
      return s.terminated && s.terminated->kind == Termination::Kind::Complete &&
             sent_count(s, inst.params.at("number"), inst.params.at("message")) >=
                 to_int(inst.params.at("n"), 0);
    };
    t.oracle = [sent_count](const Env& env, const DeviceState& s, const TaskInstance& inst,
                            const MemoryBank&) -> ActionRecord {
      const std::string& number = inst.params.at("number");
      const std::string& message = inst.params.at("message");
      int n = to_int(inst.params.at("n"), 0);
      if (sent_count(s, number, message) >= n) return complete_rec();
      return app_oracle(env, s, "messages", "Messages",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "threads_list") {
          return navigate_to_row(ov.view,
                                 record_index(s, "messages", "threads", "number", number),
                                 "open the conversation");
        }
        if (ov.screen_id == "thread_view" && ov.arg == number) {
          if (auto r = fill_field(s, ov.view, "messages", "thread_view", "msg_field",
                                  message, "message")) {
            return r;
          }
          return click_button(ov.view, "send_btn", "send the message");
        }
        return std::nullopt;
      });
    };
    b.templates["messages-send-n"] = std::move(t);
  }

  auto seed_timers = [timer_labels](DeviceState& s, Rng& rng,
                                    const std::set<std::string>& exclude, int count,
                                    const std::optional<std::string>& include) {
    std::vector<std::string> labels;
    {
      std::vector<std::string> candidates;
      for (const auto& v : timer_labels) {
        if (!exclude.count(v)) candidates.push_back(v);
      }
      for (int i = 0; i < count && !candidates.empty(); ++i) {
        std::size_t j = rng.below(candidates.size());
        labels.push_back(candidates[j]);
        candidates.erase(candidates.begin() + static_cast<long>(j));
      }
    }
    if (include) {
      std::size_t pos = rng.below(labels.size() + 1);
      labels.insert(labels.begin() + static_cast<long>(pos), *include);
    }
    auto& recs = store_list(s, "timer", "timers");
    for (const auto& l : labels) {
      recs.push_back({{"label", l},
                      {"duration", std::to_string(rng.range(1, 30))},
                      {"state", "stopped"}});
    }
  };

  // ---- timer-add ----
  {
    TemplateBehavior t;
    t.setup = [seed_timers](DeviceState& s, const Params& p, Rng& rng) {
      seed_timers(s, rng, {p.at("label")}, 1 + rng.range(0, 2), std::nullopt);
    };
    t.verify = [](const Env&, const DeviceState& s, const TaskInstance& inst,
                  const std::optional<std::string>&) {
      const Record* rec = find_record(s, "timer", "timers", "label", inst.params.at("label"));
      return s.terminated && s.terminated->kind == Termination::Kind::Complete && rec &&
             rec->at("duration") == inst.params.at("duration");
    };
    t.oracle = [](const Env& env, const DeviceState& s, const TaskInstance& inst,
                  const MemoryBank&) -> ActionRecord {
      const std::string& label = inst.params.at("label");
      const std::string& duration = inst.params.at("duration");
      const Record* rec = find_record(s, "timer", "timers", "label", label);
      if (rec && rec->at("duration") == duration) return complete_rec();
      return app_oracle(env, s, "timer", "Timer",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "timer_list") {
          return click_button(ov.view, "add_btn", "create a new timer");
        }
        if (ov.screen_id == "timer_add") {
          if (auto r = fill_field(s, ov.view, "timer", "timer_add", "label_field", label,
                                  "label")) {
            return r;
          }
          if (auto r = fill_field(s, ov.view, "timer", "timer_add", "duration_field",
                                  duration, "duration")) {
            return r;
          }
          return click_button(ov.view, "save_btn", "save the new timer");
        }
        return std::nullopt;
      });
    };
    b.templates["timer-add"] = std::move(t);
  }

  // ---- timer-delete-all ----
  {
    TemplateBehavior t;
    t.setup = [seed_timers](DeviceState& s, const Params&, Rng& rng) {
      seed_timers(s, rng, {}, 2 + rng.range(0, 2), std::nullopt);
    };
    t.verify = [](const Env&, const DeviceState& s, const TaskInstance&,
                  const std::optional<std::string>&) {
      const auto* recs = store_list(s, "timer", "timers");
      return s.terminated && s.terminated->kind == Termination::Kind::Complete &&
             (!recs || recs->empty());
    };
    t.oracle = [](const Env& env, const DeviceState& s, const TaskInstance&,
                  const MemoryBank&) -> ActionRecord {
      const auto* recs = store_list(s, "timer", "timers");
      if (!recs || recs->empty()) return complete_rec();
      const std::string& label = (*recs)[0].at("label");
      return app_oracle(env, s, "timer", "Timer",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "timer_list") {
          return navigate_to_row(ov.view, 0, "open the timer");
        }
        if (ov.screen_id == "timer_detail" && ov.arg == label) {
          return click_button(ov.view, "delete_btn", "delete this timer");
        }
        return std::nullopt;
      });
    };
    b.templates["timer-delete-all"] = std::move(t);
  }

  // ---- timer-start-all-pause ----
  {
    TemplateBehavior t;
    t.setup = [seed_timers](DeviceState& s, const Params&, Rng& rng) {
      seed_timers(s, rng, {}, 2 + rng.range(0, 1), std::nullopt);
    };
    t.verify = [](const Env&, const DeviceState& s, const TaskInstance&,
                  const std::optional<std::string>&) {
      const auto* recs = store_list(s, "timer", "timers");
      if (!s.terminated || s.terminated->kind != Termination::Kind::Complete) return false;
      if (!recs || recs->empty()) return false;
      return std::all_of(recs->begin(), recs->end(),
                         [](const Record& r) { return r.at("state") == "paused"; });
    };
    t.oracle = [](const Env& env, const DeviceState& s, const TaskInstance&,
                  const MemoryBank&) -> ActionRecord {
      const auto* recs = store_list(s, "timer", "timers");
      // Phase 1: start everything; phase 2: pause everything.
      std::optional<std::size_t> target;
      bool start_phase = false;
      if (recs) {
        for (std::size_t i = 0; i < recs->size(); ++i) {
          if ((*recs)[i].at("state") == "stopped") {
            target = i;
            start_phase = true;
            break;
          }
        }
        if (!target) {
          for (std::size_t i = 0; i < recs->size(); ++i) {
            if ((*recs)[i].at("state") == "running") {
              target = i;
              break;
            }
          }
        }
      }
      if (!target) return complete_rec();
      const std::string& label = (*recs)[*target].at("label");
      return app_oracle(env, s, "timer", "Timer",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "timer_list") {
          return navigate_to_row(ov.view, *target, "open the timer");
        }
        if (ov.screen_id == "timer_detail" && ov.arg == label) {
          return start_phase ? click_button(ov.view, "start_btn", "start this timer")
                             : click_button(ov.view, "pause_btn", "pause this timer");
        }
        return std::nullopt;
      });
    };
    b.templates["timer-start-all-pause"] = std::move(t);
  }

  auto rolls_of = [](const DeviceState& s) { return store_list(s, "dice", "rolls"); };

  // ---- dice-roll-n ----
  {
    TemplateBehavior t;
    t.setup = [](DeviceState& s, const Params&, Rng&) {};  // seeded in instantiate wrapper
    t.verify = [rolls_of](const Env&, const DeviceState& s, const TaskInstance& inst,
                          const std::optional<std::string>&) {
      const auto* rolls = rolls_of(s);
      return s.terminated && s.terminated->kind == Termination::Kind::Complete && rolls &&
             rolls->size() == static_cast<std::size_t>(to_int(inst.params.at("n"), 0));
    };
    t.oracle = [rolls_of](const Env& env, const DeviceState& s, const TaskInstance& inst,
                          const MemoryBank&) -> ActionRecord {
      const auto* rolls = rolls_of(s);
      std::size_t n = static_cast<std::size_t>(to_int(inst.params.at("n"), 0));
      if (rolls && rolls->size() >= n) return complete_rec();
      return app_oracle(env, s, "dice", "Dice",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "dice_main") {
          return click_button(ov.view, "roll_btn", "roll the dice");
        }
        return std::nullopt;
      });
    };
    b.templates["dice-roll-n"] = std::move(t);
  }

  // ---- dice-set-sides ----
  {
    TemplateBehavior t;
    t.setup = [](DeviceState&, const Params&, Rng&) {};
    t.verify = [](const Env&, const DeviceState& s, const TaskInstance& inst,
                  const std::optional<std::string>&) {
      return s.terminated && s.terminated->kind == Termination::Kind::Complete &&
             kv_of(s, "dice", "dice.sides") == inst.params.at("sides");
    };
    t.oracle = [](const Env& env, const DeviceState& s, const TaskInstance& inst,
                  const MemoryBank&) -> ActionRecord {
      const std::string& sides = inst.params.at("sides");
      if (kv_of(s, "dice", "dice.sides") == sides) return complete_rec();
      return app_oracle(env, s, "dice", "Dice",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "dice_main") {
          return click_button(ov.view, "settings_btn", "open the dice settings");
        }
        if (ov.screen_id == "dice_settings") {
          if (auto r = fill_field(s, ov.view, "dice", "dice_settings", "sides_field", sides,
                                  "sides")) {
            return r;
          }
          return click_button(ov.view, "save_btn", "save the settings");
        }
        return std::nullopt;
      });
    };
    b.templates["dice-set-sides"] = std::move(t);
  }

  // ---- dice-clear ----
  {
    TemplateBehavior t;
    t.setup = [](DeviceState& s, const Params&, Rng& rng) {
      // Pre-roll a few entries so there is something to clear.
      int pre = 2 + rng.range(0, 2);
      auto& kv = s.app_stores["dice"].kv;
      std::uint64_t state = std::stoull(kv["dice.rng"]);
      for (int i = 0; i < pre; ++i) {
        int a = static_cast<int>(splitmix64(state + 0) % 6) + 1;
        int bb = static_cast<int>(splitmix64(state + 1) % 6) + 1;
        std::string values = std::to_string(a) + "," + std::to_string(bb);
        store_list(s, "dice", "rolls")
            .push_back({{"values", values},
                        {"total", std::to_string(a + bb)},
                        {"dice", "2"},
                        {"sides", "6"}});
        kv["dice.last"] = values;
        state = splitmix64(state);
      }
      kv["dice.rng"] = std::to_string(state);
    };
    t.verify = [rolls_of](const Env&, const DeviceState& s, const TaskInstance&,
                          const std::optional<std::string>&) {
      const auto* rolls = rolls_of(s);
      return s.terminated && s.terminated->kind == Termination::Kind::Complete &&
             (!rolls || rolls->empty());
    };
    t.oracle = [rolls_of](const Env& env, const DeviceState& s, const TaskInstance&,
                          const MemoryBank&) -> ActionRecord {
      const auto* rolls = rolls_of(s);
      if (!rolls || rolls->empty()) return complete_rec();
      return app_oracle(env, s, "dice", "Dice",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id == "dice_main") {
          return click_button(ov.view, "clear_btn", "clear the roll history");
        }
        if (ov.screen_id == "confirm_clear") {
          return click_button(ov.view, "confirm_btn", "confirm clearing the history");
        }
        return std::nullopt;
      });
    };
    b.templates["dice-clear"] = std::move(t);
  }

  // ---- dice-sum ----
  {
    TemplateBehavior t;
    t.setup = [](DeviceState&, const Params&, Rng&) {};
    auto matching_rolls = [](const DeviceState& s, const std::string& sides) {
      std::vector<int> totals;
      const auto* rolls = store_list(s, "dice", "rolls");
      if (rolls) {
        for (const auto& r : *rolls) {
          if (r.at("dice") == "1" && r.at("sides") == sides) {
            totals.push_back(to_int(r.at("total"), 0));
          }
        }
      }
      return totals;
    };
    t.gt_answer = [matching_rolls](const Env&, const DeviceState& s,
                                   const TaskInstance& inst) {
      auto totals = matching_rolls(s, inst.params.at("sides"));
      if (totals.size() < 2) return std::string();
      return std::to_string(totals[totals.size() - 2] + totals[totals.size() - 1]);
    };
    t.verify = [matching_rolls](const Env&, const DeviceState& s, const TaskInstance& inst,
                                const std::optional<std::string>& answer) {
      auto totals = matching_rolls(s, inst.params.at("sides"));
      if (totals.size() < 2) return false;
      std::string gt =
          std::to_string(totals[totals.size() - 2] + totals[totals.size() - 1]);
      return s.terminated && s.terminated->kind == Termination::Kind::Answered && answer &&
             *answer == gt;
    };
    t.oracle = [matching_rolls](const Env& env, const DeviceState& s,
                                const TaskInstance& inst,
                                const MemoryBank& memory) -> ActionRecord {
      const std::string& sides = inst.params.at("sides");
      auto totals = matching_rolls(s, sides);
      bool settings_ok =
          kv_of(s, "dice", "dice.count") == "1" && kv_of(s, "dice", "dice.sides") == sides;
      return app_oracle(env, s, "dice", "Dice",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (totals.size() >= 2) {
          if (!memory_has(memory, "second roll")) {
            return memorize_rec("second roll", std::to_string(totals.back()));
          }
          return answer_rec(
              std::to_string(totals[totals.size() - 2] + totals[totals.size() - 1]));
        }
        if (!settings_ok) {
          if (ov.screen_id == "dice_main") {
            return click_button(ov.view, "settings_btn", "open the dice settings");
          }
          if (ov.screen_id == "dice_settings") {
            if (auto r = fill_field(s, ov.view, "dice", "dice_settings", "dice_field", "1",
                                    "dice")) {
              return r;
            }
            if (auto r = fill_field(s, ov.view, "dice", "dice_settings", "sides_field",
                                    sides, "sides")) {
              return r;
            }
            return click_button(ov.view, "save_btn", "save the settings");
          }
          return std::nullopt;
        }
        if (ov.screen_id == "dice_main") {
          if (totals.size() == 1 && !memory_has(memory, "first roll")) {
            return memorize_rec("first roll", std::to_string(totals[0]));
          }
          return click_button(ov.view, "roll_btn", "roll the die");
        }
        return std::nullopt;
      });
    };
    b.templates["dice-sum"] = std::move(t);
  }

  // ---- dice-max-roll ----
  {
    TemplateBehavior t;
    t.setup = [](DeviceState&, const Params&, Rng&) {};
    auto max_total = [](const DeviceState& s, int n) {
      const auto* rolls = store_list(s, "dice", "rolls");
      int best = 0;
      if (rolls) {
        std::size_t from = rolls->size() > static_cast<std::size_t>(n)
                               ? rolls->size() - static_cast<std::size_t>(n)
                               : 0;
        for (std::size_t i = from; i < rolls->size(); ++i) {
          best = std::max(best, to_int((*rolls)[i].at("total"), 0));
        }
      }
      return best;
    };
    t.gt_answer = [max_total](const Env&, const DeviceState& s, const TaskInstance& inst) {
      return std::to_string(max_total(s, to_int(inst.params.at("n"), 0)));
    };
    t.verify = [max_total, rolls_of](const Env&, const DeviceState& s,
                                     const TaskInstance& inst,
                                     const std::optional<std::string>& answer) {
      int n = to_int(inst.params.at("n"), 0);
      const auto* rolls = rolls_of(s);
      return s.terminated && s.terminated->kind == Termination::Kind::Answered && rolls &&
             rolls->size() >= static_cast<std::size_t>(n) && answer &&
             *answer == std::to_string(max_total(s, n));
    };
    t.oracle = [max_total, rolls_of](const Env& env, const DeviceState& s,
                                     const TaskInstance& inst,
                                     const MemoryBank& memory) -> ActionRecord {
      std::size_t n = static_cast<std::size_t>(to_int(inst.params.at("n"), 0));
      const auto* rolls = rolls_of(s);
      std::size_t done = rolls ? rolls->size() : 0;
      return app_oracle(env, s, "dice", "Dice",
                        [&](const OracleView& ov) -> std::optional<ActionRecord> {
        if (ov.screen_id != "dice_main") return std::nullopt;
        if (done >= n) {
          if (!memory_has(memory, "highest total")) {
            return memorize_rec("highest total",
                                std::to_string(max_total(s, static_cast<int>(n))));
          }
          return answer_rec(std::to_string(max_total(s, static_cast<int>(n))));
        }
        return click_button(ov.view, "roll_btn", "roll the dice");
      });
    };
    b.templates["dice-max-roll"] = std::move(t);
  }

  return b;
}

std::vector<std::string> builtin_manifests() {
  return {kLauncherManifest, kContactsManifest, kNotesManifest, kExpenseManifest,
          kMessagesManifest, kTimerManifest, kDiceManifest};
}

}  // namespace droidlab::sim

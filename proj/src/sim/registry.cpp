#include "droidlab/sim/registry.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "droidlab/errors.hpp"

namespace droidlab::sim {

namespace {

std::string substitute_params(const std::string& pattern, const Params& params) {
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
    std::string name = pattern.substr(i + 1, close - i - 1);
    auto f = params.find(name);
    if (f == params.end()) throw Error("instruction slot {" + name + "} has no param");
    out += f->second;
    i = close + 1;
  }
  return out;
}

}  // namespace

std::string canonical_answer(const std::string& raw) {
  std::size_t b = 0, e = raw.size();
  while (b < e && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1]))) --e;
  return raw.substr(b, e - b);
}

Registry::Registry(std::vector<AppSpec> apps, Behaviors behaviors)
    : env_(std::make_shared<const Env>(std::move(apps), std::move(behaviors))) {
  for (const auto& app : env_->apps()) {
    for (const auto& spec : app.templates) {
      auto bit = env_->behaviors().templates.find(spec.id);
      if (bit == env_->behaviors().templates.end()) {
        throw Error("template " + spec.id + " has no bound behavior");
      }
      TaskTemplate t;
      t.id = spec.id;
      t.app = spec.app;
      t.level = spec.level;
      t.instruction_pattern = spec.instruction;
      t.guidance = spec.guidance;
      t.param_schema = spec.params;
      t.requires_answer = spec.requires_answer;
      t.behavior = &bit->second;
      templates_.push_back(std::move(t));
    }
  }
}

Registry Registry::builtin() {
  std::vector<AppSpec> apps;
  for (const auto& doc : builtin_manifests()) {
    apps.push_back(parse_app_manifest(Json::parse(doc)));
  }
  return Registry(std::move(apps), builtin_behaviors());
}

Registry Registry::from_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("no *.json manifests in " + dir);

  std::vector<AppSpec> apps;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw ConfigError("cannot read manifest " + f.string());
    Json doc = Json::parse(in);
    apps.push_back(parse_app_manifest(doc));
  }
  return Registry(std::move(apps), builtin_behaviors());
}

std::vector<const TaskTemplate*> Registry::list_templates(
    std::optional<int> level_filter) const {
  if (level_filter && *level_filter != 1 && *level_filter != 2) {
    throw InvalidLevel(*level_filter);
  }
  std::vector<const TaskTemplate*> out;
  for (const auto& t : templates_) {
    if (!level_filter || t.level == *level_filter) out.push_back(&t);
  }
  return out;
}

const TaskTemplate* Registry::find_template(const std::string& id) const {
  for (const auto& t : templates_) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

Instantiation Registry::instantiate(const TaskTemplate& tmpl, std::uint64_t seed) const {
  Rng param_rng(derive_seed(seed, tmpl.id + ":params"));
  Params params;
  for (const auto& [name, spec] : tmpl.param_schema) {
    if (spec.is_int()) {
      params[name] = std::to_string(param_rng.range(spec.int_lo, spec.int_hi));
    } else {
      const auto& pool = env_->pool(spec.pool);
      params[name] = pool[param_rng.below(pool.size())];
    }
  }

  TaskInstance instance;
  instance.template_id = tmpl.id;
  instance.params = params;
  instance.goal = substitute_params(tmpl.instruction_pattern, params);
  instance.seed = seed;

  DeviceState state;
  seed_device_defaults(state, seed);
  Rng setup_rng(derive_seed(seed, tmpl.id + ":setup"));
  tmpl.behavior->setup(state, params, setup_rng);

  // Step budget: twice the oracle's solve length plus slack.
  DeviceState replay = state;
  MemoryBank memory;
  int oracle_len = 0;
  while (!replay.terminated) {
    if (oracle_len > 200) {
      throw Error("oracle for " + tmpl.id + " did not terminate within 200 steps");
    }
    ActionRecord rec = tmpl.behavior->oracle(*env_, replay, instance, memory);
    if (rec.action.kind == ActionKind::Memorize) {
      memory.add(rec.action.summary, rec.action.content);
    }
    replay = step(*env_, replay, rec.action).state;
    ++oracle_len;
  }
  instance.max_steps = 2 * oracle_len + 5;

  return {std::move(instance), std::move(state)};
}

Instantiation Registry::instantiate(const std::string& template_id,
                                    std::uint64_t seed) const {
  const TaskTemplate* t = find_template(template_id);
  if (!t) throw Error("unknown template: " + template_id);
  return instantiate(*t, seed);
}

ActionRecord Registry::oracle_action(const DeviceState& state, const TaskInstance& instance,
                                     const MemoryBank& memory) const {
  const TaskTemplate* t = find_template(instance.template_id);
  if (!t) throw Error("unknown template: " + instance.template_id);
  return t->behavior->oracle(*env_, state, instance, memory);
}

bool Registry::verify_programmatic(const TaskInstance& instance,
                                   const DeviceState& final_state,
                                   const std::optional<std::string>& answer) const {
  const TaskTemplate* t = find_template(instance.template_id);
  if (!t) throw Error("unknown template: " + instance.template_id);
  std::optional<std::string> canonical;
  if (answer) canonical = canonical_answer(*answer);
  return t->behavior->verify(*env_, final_state, instance, canonical);
}

std::optional<std::string> Registry::gt_answer(const TaskInstance& instance,
                                               const DeviceState& final_state) const {
  const TaskTemplate* t = find_template(instance.template_id);
  if (!t || !t->behavior->gt_answer) return std::nullopt;
  return t->behavior->gt_answer(*env_, final_state, instance);
}

}  // namespace droidlab::sim

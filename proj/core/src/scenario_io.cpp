#include "ransomguard/scenario_io.hpp"

#include <initializer_list>
#include <limits>

#include <nlohmann/json.hpp>

#include "ransomguard/error.hpp"

namespace ransomguard {
namespace {

using nlohmann::json;

// Tracks the field path for error messages while walking the document.
class Cursor {
 public:
  Cursor(const json& node, std::string path) : node_(node), path_(std::move(path)) {}

  const json& node() const { return node_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& what) const { throw MalformedScenario(path_, what); }

  void expect_object(std::initializer_list<std::string_view> allowed) const {
    if (!node_.is_object()) fail("expected an object");
    for (const auto& [key, _] : node_.items()) {
      bool known = false;
      for (std::string_view a : allowed) known = known || key == a;
      if (!known) fail("unknown key '" + key + "'");
    }
  }

  bool has(std::string_view key) const { return node_.contains(key); }

  Cursor at(const std::string& key) const {
    if (!node_.contains(key)) fail("missing key '" + key + "'");
    return Cursor(node_.at(key), path_ + "." + key);
  }

  Cursor at(std::size_t i) const {
    return Cursor(node_.at(i), path_ + "[" + std::to_string(i) + "]");
  }

  std::string string() const {
    if (!node_.is_string()) fail("expected a string");
    return node_.get<std::string>();
  }

  bool boolean() const {
    if (!node_.is_boolean()) fail("expected a boolean");
    return node_.get<bool>();
  }

  // Integers are range-checked by the caller; syntactic integer-ness here.
  std::int64_t signed_integer() const {
    if (node_.is_number_unsigned()) {
      auto v = node_.get<std::uint64_t>();
      if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        throw InvariantViolation(path_ + " value out of range");
      }
      return static_cast<std::int64_t>(v);
    }
    if (!node_.is_number_integer()) fail("expected an integer");
    return node_.get<std::int64_t>();
  }

  std::uint64_t unsigned_integer() const {
    if (!node_.is_number_unsigned()) {
      if (node_.is_number_integer()) fail("expected a non-negative integer");
      fail("expected an integer");
    }
    return node_.get<std::uint64_t>();
  }

  std::size_t array_size() const {
    if (!node_.is_array()) fail("expected an array");
    return node_.size();
  }

 private:
  const json& node_;
  std::string path_;
};

template <typename Enum, std::size_t N>
Enum parse_enum(const Cursor& c, const std::array<Enum, N>& values) {
  const std::string text = c.string();
  for (Enum v : values) {
    if (to_string(v) == text) return v;
  }
  c.fail("unknown value '" + text + "'");
}

std::uint32_t parse_port(const Cursor& c) {
  std::int64_t v = c.signed_integer();
  if (v < 0 || v > 65535) {
    throw InvariantViolation(c.path() + " port " + std::to_string(v) + " outside 0-65535");
  }
  return static_cast<std::uint32_t>(v);
}

SyscallEvent parse_event(const Cursor& c, std::size_t index) {
  c.expect_object({"kind", "arg"});
  const std::string name = c.at("kind").string();
  auto kind = parse_event_kind(name);
  if (!kind) c.at("kind").fail("unknown event kind '" + name + "'");
  SyscallEvent event{*kind, std::nullopt, index};
  if (c.has("arg")) event.arg = c.at("arg").string();
  return event;
}

SoftwareSample parse_sample(const Cursor& c) {
  c.expect_object({"name", "target", "entry", "ingress", "trace", "evasive", "permissions"});
  SoftwareSample s;
  s.name = c.at("name").string();
  s.target_device = c.at("target").string();
  s.entry = parse_enum(c.at("entry"),
                       std::array{EntryPoint::Network, EntryPoint::PhysicalDevice});
  if (c.has("ingress")) {
    Cursor in = c.at("ingress");
    in.expect_object({"source_ip", "port", "file_extension"});
    if (in.has("source_ip")) s.ingress.source_ip = in.at("source_ip").string();
    if (in.has("port")) s.ingress.port = parse_port(in.at("port"));
    if (in.has("file_extension")) s.ingress.file_extension = in.at("file_extension").string();
  } else if (s.entry == EntryPoint::Network) {
    c.fail("network-entry sample needs 'ingress'");
  }
  if (c.has("evasive")) s.evasive = c.at("evasive").boolean();
  Cursor trace = c.at("trace");
  for (std::size_t i = 0, n = trace.array_size(); i < n; ++i) {
    s.trace.push_back(parse_event(trace.at(i), i));
  }
  if (c.has("permissions")) {
    Cursor perms = c.at("permissions");
    for (std::size_t i = 0, n = perms.array_size(); i < n; ++i) {
      s.permission_script.push_back(
          parse_enum(perms.at(i), std::array{Permission::Allow, Permission::Deny}));
    }
  }
  return s;
}

DeviceSpec parse_device(const Cursor& c) {
  c.expect_object({"id", "class", "files", "scopes", "enrollment"});
  DeviceSpec d;
  d.id = c.at("id").string();
  d.device_class = parse_enum(
      c.at("class"), std::array{DeviceClass::Constrained, DeviceClass::Edge, DeviceClass::Honeypot});
  if (c.has("files")) {
    Cursor files = c.at("files");
    if (!files.node().is_object()) files.fail("expected an object of path -> content");
    for (const auto& [path, _] : files.node().items()) {
      d.files.emplace(path, files.at(path).string());
    }
  }
  if (c.has("scopes")) {
    d.scopes.clear();
    Cursor scopes = c.at("scopes");
    for (std::size_t i = 0, n = scopes.array_size(); i < n; ++i) {
      d.scopes.insert(parse_enum(scopes.at(i),
                                 std::array{AccessScope::FileAccess, AccessScope::NetworkAccess}));
    }
  }
  if (c.has("enrollment")) {
    d.enrollment = parse_enum(c.at("enrollment"), std::array{Enrollment::Registered,
                                                            Enrollment::Unregistered,
                                                            Enrollment::WrongKey});
  }
  return d;
}

FirewallConfig parse_firewall(const Cursor& c) {
  c.expect_object({"port_blacklist", "ip_blacklist", "extension_blacklist"});
  FirewallConfig f;
  if (c.has("port_blacklist")) {
    Cursor ports = c.at("port_blacklist");
    for (std::size_t i = 0, n = ports.array_size(); i < n; ++i) {
      f.port_blacklist.insert(parse_port(ports.at(i)));
    }
  }
  if (c.has("ip_blacklist")) {
    Cursor ips = c.at("ip_blacklist");
    for (std::size_t i = 0, n = ips.array_size(); i < n; ++i) f.ip_blacklist.insert(ips.at(i).string());
  }
  if (c.has("extension_blacklist")) {
    Cursor exts = c.at("extension_blacklist");
    for (std::size_t i = 0, n = exts.array_size(); i < n; ++i) {
      f.extension_blacklist.insert(exts.at(i).string());
    }
  }
  return f;
}

json to_json(const SoftwareSample& s) {
  json trace = json::array();
  for (const SyscallEvent& e : s.trace) {
    json ev = {{"kind", to_string(e.kind)}};
    if (e.arg) ev["arg"] = *e.arg;
    trace.push_back(std::move(ev));
  }
  json out = {
      {"name", s.name},
      {"target", s.target_device},
      {"entry", to_string(s.entry)},
      {"ingress",
       {{"source_ip", s.ingress.source_ip},
        {"port", s.ingress.port},
        {"file_extension", s.ingress.file_extension}}},
      {"evasive", s.evasive},
      {"trace", std::move(trace)},
  };
  if (!s.permission_script.empty()) {
    json perms = json::array();
    for (Permission p : s.permission_script) perms.push_back(to_string(p));
    out["permissions"] = std::move(perms);
  }
  return out;
}

json to_json(const DeviceSpec& d) {
  json scopes = json::array();
  for (AccessScope s : d.scopes) scopes.push_back(to_string(s));
  json files = json::object();
  for (const auto& [path, content] : d.files) files[path] = content;
  return {
      {"id", d.id},
      {"class", to_string(d.device_class)},
      {"files", std::move(files)},
      {"scopes", std::move(scopes)},
      {"enrollment", to_string(d.enrollment)},
  };
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw MalformedScenario("byte " + std::to_string(e.byte), e.what());
  }
  Cursor root(doc, "$");
  root.expect_object({"devices", "firewall", "samples", "user_policy", "seed", "workstations"});

  Scenario scenario;
  Cursor devices = root.at("devices");
  for (std::size_t i = 0, n = devices.array_size(); i < n; ++i) {
    scenario.devices.push_back(parse_device(devices.at(i)));
  }
  scenario.firewall = parse_firewall(root.at("firewall"));
  Cursor samples = root.at("samples");
  for (std::size_t i = 0, n = samples.array_size(); i < n; ++i) {
    scenario.samples.push_back(parse_sample(samples.at(i)));
  }
  scenario.user_policy = parse_enum(root.at("user_policy"),
                                    std::array{UserPolicy::AllowAll, UserPolicy::DenyAll,
                                               UserPolicy::PerSampleScript});
  scenario.seed = root.at("seed").unsigned_integer();
  std::int64_t ws = root.at("workstations").signed_integer();
  if (ws < 1 || ws > std::numeric_limits<std::uint32_t>::max()) {
    throw InvariantViolation("workstations must be in 1.." +
                             std::to_string(std::numeric_limits<std::uint32_t>::max()));
  }
  scenario.workstations = static_cast<std::uint32_t>(ws);

  validate(scenario);
  return scenario;
}

std::string serialize_scenario(const Scenario& scenario) {
  json devices = json::array();
  for (const DeviceSpec& d : scenario.devices) devices.push_back(to_json(d));
  json samples = json::array();
  for (const SoftwareSample& s : scenario.samples) samples.push_back(to_json(s));
  json doc = {
      {"devices", std::move(devices)},
      {"firewall",
       {{"port_blacklist", scenario.firewall.port_blacklist},
        {"ip_blacklist", scenario.firewall.ip_blacklist},
        {"extension_blacklist", scenario.firewall.extension_blacklist}}},
      {"samples", std::move(samples)},
      {"user_policy", to_string(scenario.user_policy)},
      {"seed", scenario.seed},
      {"workstations", scenario.workstations},
  };
  return doc.dump(2) + "\n";
}

}  // namespace ransomguard

#include "dynslice/trace_io.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

namespace dynslice {

using nlohmann::json;

namespace {

json var_json(const RuntimeVar& v) {
  json j = {{"frame", v.frame}, {"name", v.name}};
  if (v.is_member()) j["member"] = v.member;
  return j;
}

json vars_json(const std::vector<RuntimeVar>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(var_json(v));
  return a;
}

RuntimeVar var_from(const json& j) {
  RuntimeVar v;
  v.frame = j.at("frame").get<std::uint32_t>();
  v.name = j.at("name").get<std::string>();
  if (auto it = j.find("member"); it != j.end()) v.member = it->get<std::string>();
  return v;
}

std::vector<RuntimeVar> vars_from(const json& j) {
  std::vector<RuntimeVar> out;
  for (const auto& e : j) out.push_back(var_from(e));
  return out;
}

}  // namespace

std::string to_json_line(const ExecEvent& event) {
  json j = std::visit(
      [](const auto& ev) -> json {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, StmtExecuted>) {
          json o = {{"id", ev.id}, {"defs", vars_json(ev.defs)}, {"uses", vars_json(ev.uses)}};
          if (!ev.receiver.empty()) o["receiver"] = vars_json(ev.receiver);
          return o;
        } else if constexpr (std::is_same_v<T, CallEntered>) {
          json bindings = json::array();
          for (const auto& b : ev.bindings)
            bindings.push_back(
                {{"formal", var_json(b.formal)}, {"sources", vars_json(b.sources)}, {"byref", b.by_ref}});
          return {{"site", ev.site},
                  {"callee", ev.callee},
                  {"frame", ev.frame},
                  {"receiver", var_json(ev.receiver)},
                  {"bindings", bindings}};
        } else if constexpr (std::is_same_v<T, AboutToReturn>) {
          return {{"id", ev.id ? json(*ev.id) : json(nullptr)}, {"uses", vars_json(ev.uses)}};
        } else if constexpr (std::is_same_v<T, Returned>) {
          json copybacks = json::array();
          for (const auto& c : ev.copybacks)
            copybacks.push_back({{"formal", var_json(c.formal)}, {"actual", var_json(c.actual)}});
          return {{"site", ev.site},
                  {"frame", ev.frame},
                  {"copybacks", copybacks},
                  {"reset", vars_json(ev.reset)},
                  {"into", ev.into ? var_json(*ev.into) : json(nullptr)}};
        } else if constexpr (std::is_same_v<T, LoopExited>) {
          return {{"id", ev.id}};
        } else if constexpr (std::is_same_v<T, InputConsumed> || std::is_same_v<T, OutputProduced>) {
          return {{"id", ev.id}, {"value", ev.value}};
        } else {
          return {{"id", ev.id}, {"message", ev.message}};
        }
      },
      event);
  j["event"] = std::string(event_name(event));
  return j.dump();
}

ExecEvent from_json_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw TraceFormatError(std::string("invalid JSON: ") + e.what());
  }
  try {
    const std::string kind = j.at("event").get<std::string>();
    if (kind == "StmtExecuted") {
      StmtExecuted ev{j.at("id").get<StmtId>(), vars_from(j.at("defs")), vars_from(j.at("uses")), {}};
      if (auto it = j.find("receiver"); it != j.end()) ev.receiver = vars_from(*it);
      return ev;
    }
    if (kind == "CallEntered") {
      CallEntered ev;
      ev.site = j.at("site").get<StmtId>();
      ev.callee = j.at("callee").get<std::string>();
      ev.frame = j.at("frame").get<std::uint32_t>();
      ev.receiver = var_from(j.at("receiver"));
      for (const auto& b : j.at("bindings"))
        ev.bindings.push_back(
            {var_from(b.at("formal")), vars_from(b.at("sources")), b.at("byref").get<bool>()});
      return ev;
    }
    if (kind == "AboutToReturn") {
      AboutToReturn ev;
      if (!j.at("id").is_null()) ev.id = j.at("id").get<StmtId>();
      ev.uses = vars_from(j.at("uses"));
      return ev;
    }
    if (kind == "Returned") {
      Returned ev;
      ev.site = j.at("site").get<StmtId>();
      ev.frame = j.at("frame").get<std::uint32_t>();
      for (const auto& c : j.at("copybacks"))
        ev.copybacks.push_back({var_from(c.at("formal")), var_from(c.at("actual"))});
      ev.reset = vars_from(j.at("reset"));
      if (!j.at("into").is_null()) ev.into = var_from(j.at("into"));
      return ev;
    }
    if (kind == "LoopExited") return LoopExited{j.at("id").get<StmtId>()};
    if (kind == "InputConsumed")
      return InputConsumed{j.at("id").get<StmtId>(), j.at("value").get<std::int64_t>()};
    if (kind == "OutputProduced")
      return OutputProduced{j.at("id").get<StmtId>(), j.at("value").get<std::int64_t>()};
    if (kind == "Warning") return Warning{j.at("id").get<StmtId>(), j.at("message").get<std::string>()};
    throw TraceFormatError("unknown event kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw TraceFormatError(std::string("malformed event: ") + e.what());
  }
}

void write_trace(std::ostream& out, std::span<const ExecEvent> events) {
  for (const auto& ev : events) out << to_json_line(ev) << '\n';
}

std::vector<ExecEvent> read_trace(std::istream& in) {
  std::vector<ExecEvent> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(from_json_line(line));
    } catch (const TraceFormatError& e) {
      throw TraceFormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace dynslice

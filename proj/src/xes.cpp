// Copyright 2026 The pmkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <expat.h>

#include <cctype>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>

#include "pmkit/error.hpp"
#include "pmkit/ingest.hpp"
#include "pmkit/segmentation.hpp"

namespace pmkit {

namespace {

constexpr std::string_view kXesPreamble =
    "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    "<log xes.version=\"1.0\" xmlns=\"http://www.xes-standard.org/\">\n"
    "  <extension name=\"Concept\" prefix=\"concept\" "
    "uri=\"http://www.xes-standard.org/concept.xesext\"/>\n"
    "  <extension name=\"Time\" prefix=\"time\" "
    "uri=\"http://www.xes-standard.org/time.xesext\"/>\n";
constexpr std::string_view kXesClose = "</log>\n";

void append_escaped(std::string& out, std::string_view value) {
  for (char c : value) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
}

void append_trace(std::string& out, std::string_view id,
                  std::span<const Event> events) {
  out += "  <trace>\n    <string key=\"concept:name\" value=\"";
  append_escaped(out, id);
  out += "\"/>\n";
  for (const Event& e : events) {
    out += "    <event>\n      <string key=\"concept:name\" value=\"";
    append_escaped(out, e.activity.str());
    out += "\"/>\n      <date key=\"time:timestamp\" value=\"";
    out += e.date.iso();
    out += "T00:00:00+00:00\"/>\n    </event>\n";
  }
  out += "  </trace>\n";
}

std::size_t emit(std::ostream& sink, std::string_view chunk) {
  sink.write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
  if (!sink) throw Error(ErrorKind::kIo, "failed writing XES sink");
  return chunk.size();
}

std::string_view local_name(std::string_view name) {
  auto pos = name.rfind(':');
  return pos == std::string_view::npos ? name : name.substr(pos + 1);
}

std::optional<Day> parse_timestamp(std::string_view text) {
  if (text.size() < 10) return std::nullopt;
  if (text.size() > 10 && text[10] != 'T' && text[10] != ' ') return std::nullopt;
  return parse_iso_date(text.substr(0, 10));
}

// Whitespace inside an activity name becomes '_', so external logs with
// multi-word activity names still produce valid labels.
std::string normalize_label(std::string_view name) {
  std::string out;
  bool in_space = false;
  for (unsigned char c : name) {
    if (std::isspace(c)) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out += '_';
    in_space = false;
    out += static_cast<char>(c);
  }
  return out;
}

struct XesReader {
  enum class Scope { kOther, kLog, kTrace, kEvent };

  std::vector<Scope> stack;
  std::vector<Trace> traces;
  Trace current;
  bool have_trace_name = false;
  std::optional<std::string> trace_error;

  std::optional<std::string> event_name;
  std::optional<std::string> event_time;

  std::optional<Error> error;
  XML_Parser parser = nullptr;

  Scope parent() const { return stack.empty() ? Scope::kOther : stack.back(); }

  void fail(Error e) {
    if (!error) error = std::move(e);
    XML_StopParser(parser, XML_FALSE);
  }

  void start(std::string_view name, const XML_Char** attrs) {
    if (error) return;
    const auto local = local_name(name);
    const Scope up = parent();
    Scope scope = Scope::kOther;
    if (stack.empty()) {
      if (local != "log") {
        fail(Error(ErrorKind::kXes, "XES root element must be <log>"));
        return;
      }
      scope = Scope::kLog;
    } else if (up == Scope::kLog && local == "trace") {
      scope = Scope::kTrace;
      current = Trace{};
      have_trace_name = false;
      trace_error.reset();
    } else if (up == Scope::kTrace && local == "event") {
      scope = Scope::kEvent;
      event_name.reset();
      event_time.reset();
    } else if (up == Scope::kTrace || up == Scope::kEvent) {
      std::optional<std::string_view> key, value;
      for (int i = 0; attrs[i]; i += 2) {
        const std::string_view attr = attrs[i];
        if (attr == "key") key = attrs[i + 1];
        else if (attr == "value") value = attrs[i + 1];
      }
      if (key && value) {
        if (up == Scope::kTrace && *key == "concept:name") {
          current.trace_id = std::string(*value);
          have_trace_name = true;
        } else if (up == Scope::kEvent && *key == "concept:name") {
          event_name = std::string(*value);
        } else if (up == Scope::kEvent && *key == "time:timestamp") {
          event_time = std::string(*value);
        }
      }
    }
    stack.push_back(scope);
  }

  void end() {
    if (stack.empty() || error) return;
    const Scope scope = stack.back();
    stack.pop_back();
    if (scope == Scope::kEvent) {
      end_event();
    } else if (scope == Scope::kTrace) {
      end_trace();
    }
  }

  void end_event() {
    if (trace_error) return;
    if (!event_time) {
      trace_error = "missing time:timestamp";
      return;
    }
    if (!event_name) {
      trace_error = "missing concept:name";
      return;
    }
    const auto day = parse_timestamp(*event_time);
    if (!day) {
      trace_error = "unparseable time:timestamp '" + *event_time + "'";
      return;
    }
    std::string label = normalize_label(*event_name);
    if (!ActivityLabel::is_valid(label)) {
      trace_error = "empty activity name";
      return;
    }
    current.events.push_back(Event{{}, ActivityLabel(std::move(label)), *day});
  }

  void end_trace() {
    if (!have_trace_name)
      current.trace_id = "trace-" + std::to_string(traces.size() + 1);
    if (trace_error) {
      fail(Error(ErrorKind::kXes, "XES event in trace '" + current.trace_id +
                                      "': " + *trace_error));
      return;
    }
    const std::string lineage(lineage_of(current.trace_id));
    for (Event& e : current.events) e.case_id = lineage;
    traces.push_back(std::move(current));
  }

  static void on_start(void* self, const XML_Char* name, const XML_Char** attrs) {
    static_cast<XesReader*>(self)->start(name, attrs);
  }
  static void on_end(void* self, const XML_Char*) {
    static_cast<XesReader*>(self)->end();
  }
};

}  // namespace

std::size_t write_xes(std::span<const Trace> traces, std::ostream& sink) {
  std::size_t bytes = emit(sink, kXesPreamble);
  std::string buffer;
  for (const Trace& t : traces) {
    buffer.clear();
    append_trace(buffer, t.trace_id, t.events);
    bytes += emit(sink, buffer);
  }
  bytes += emit(sink, kXesClose);
  return bytes;
}

std::size_t write_xes(const EventLog& log, std::ostream& sink) {
  const auto traces = group_by_case(log);
  return write_xes(std::span<const Trace>(traces), sink);
}

std::vector<Trace> read_xes(std::istream& source) {
  if (!source.good()) throw Error(ErrorKind::kIo, "XES source is not readable");

  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)>
      parser(XML_ParserCreate("UTF-8"), &XML_ParserFree);
  if (!parser) throw Error(ErrorKind::kIo, "cannot create XML parser");

  XesReader reader;
  reader.parser = parser.get();
  XML_SetUserData(parser.get(), &reader);
  XML_SetElementHandler(parser.get(), &XesReader::on_start, &XesReader::on_end);

  std::vector<char> chunk(1 << 16);
  while (true) {
    source.read(chunk.data(), static_cast<std::streamsize>(chunk.size()));
    const auto got = source.gcount();
    if (source.bad()) throw Error(ErrorKind::kIo, "failed reading XES source");
    const bool last = got < static_cast<std::streamsize>(chunk.size());
    if (XML_Parse(parser.get(), chunk.data(), static_cast<int>(got),
                  last ? XML_TRUE : XML_FALSE) != XML_STATUS_OK) {
      if (reader.error) throw *reader.error;
      throw Error(ErrorKind::kXes,
                  std::string("malformed XES document at line ") +
                      std::to_string(XML_GetCurrentLineNumber(parser.get())) +
                      ": " + XML_ErrorString(XML_GetErrorCode(parser.get())));
    }
    if (reader.error) throw *reader.error;
    if (last) break;
  }
  return std::move(reader.traces);
}

}  // namespace pmkit

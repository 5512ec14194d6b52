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

#include "pmkit/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"

#include "format_util.hpp"
#include "pmkit/analytics.hpp"
#include "pmkit/compare.hpp"
#include "pmkit/repair.hpp"
#include "pmkit/synth.hpp"

namespace pmkit {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return kExitIo;
    case ErrorKind::kSchema: return kExitSchema;
    case ErrorKind::kRejectThreshold: return kExitRejectThreshold;
    case ErrorKind::kXes: return kExitXes;
    case ErrorKind::kUnknownLabel: return kExitUnknownLabel;
    case ErrorKind::kPrecondition: return kExitPrecondition;
    case ErrorKind::kInvalidArgument: return kExitInvalidArgument;
    case ErrorKind::kEmptyInput: return kExitEmptyInput;
  }
  return kExitInternal;
}

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  1  internal error\n"
    "  2  usage error\n"
    "  3  I/O error (unreadable input, unwritable output)\n"
    "  4  schema error (missing CSV column, malformed header or trace text)\n"
    "  5  CSV reject fraction above --max-reject\n"
    "  6  malformed XES document\n"
    "  7  activity label missing from the activity order\n"
    "  8  precondition violated (e.g. unsorted log given to segment)\n"
    "  9  invalid argument\n"
    " 10  empty input where data is required\n"
    "\n"
    "Parse reports are written to standard error as JSON lines.";

enum class FileKind { kCsv, kXes, kTraceText };

FileKind kind_of(const std::string& path) {
  const auto ext = std::filesystem::path(path).extension().string();
  if (ext == ".xes" || ext == ".XES") return FileKind::kXes;
  if (ext == ".txt") return FileKind::kTraceText;
  return FileKind::kCsv;
}

// Options gathered from flags; merged over --config after parsing.
struct Flags {
  std::string config_path;
  bool print_config = false;

  std::string order;
  std::string alpha;
  std::int32_t delta0 = 0;
  std::int32_t deltaN = 0;
  std::vector<std::string> windows;
  std::string format;
  std::string out;

  CsvSchema schema;
  bool no_header = false;
  std::string delimiter = ",";
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  // -- option wiring --
  void add_common(CLI::App* cmd, bool csv_input, bool with_format);
  void add_order(CLI::App* cmd);
  void add_segmentation(CLI::App* cmd);
  void add_windows(CLI::App* cmd);
  PipelineConfig resolve(CLI::App* cmd);
  CsvSchema schema() const;

  // -- I/O --
  std::unique_ptr<std::istream> open_input(const std::string& path) const;
  std::ostream& output(const PipelineConfig& config);
  void parse_report(const std::string& path, const ParseReport& report);
  EventLog load_log(const std::string& path);
  std::vector<Trace> load_traces(const std::string& path);

  // -- subcommands --
  void convert(const PipelineConfig& config, const std::string& to);
  void repair(const PipelineConfig& config);
  void segment_cmd(const PipelineConfig& config, const std::string& report_path);
  void stats(const PipelineConfig& config, std::size_t dropped, const std::string& report);
  void dfg(const PipelineConfig& config);
  void variants(const PipelineConfig& config, std::size_t k);
  void timeline(const PipelineConfig& config, const std::string& activity,
                const std::string& bucket);
  void diff(const PipelineConfig& config, const CooccurrenceOptions& options,
            const std::string& name_x, const std::string& name_y);
  void changes(const PipelineConfig& config, const std::string& reference,
               const std::vector<std::string>& baselines,
               const std::string& reference_counts,
               const std::vector<std::string>& baseline_counts,
               const std::string& aggregate);
  void synth(const PipelineConfig& config, const SynthProfile& profile);

  std::string format_or(const PipelineConfig& config, const std::string& fallback,
                        std::initializer_list<const char*> allowed) const;

  std::ostream& out_;
  std::ostream& err_;
  std::unique_ptr<std::ofstream> file_out_;
  Flags flags_;
};

void Runner::add_order(CLI::App* cmd) {
  cmd->add_option("--order", flags_.order,
                  "Activity order, comma separated (A,B,...) or @FILE; default A..G");
}

void Runner::add_segmentation(CLI::App* cmd) {
  cmd->add_option("--alpha", flags_.alpha, "Start activities, comma separated (default A)");
  cmd->add_option("--delta0-days", flags_.delta0,
                  "Max days from trace start for a start activity to join (default 180)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--deltan-days", flags_.deltaN,
                  "Max days from trace's last event for a start activity to join (default 30)")
      ->check(CLI::NonNegativeNumber);
}

void Runner::add_windows(CLI::App* cmd) {
  cmd->add_option("--window", flags_.windows,
                  "Keep events in YEAR[:MM-DD:MM-DD] (repeatable; default span 03-01..11-30)");
}

void Runner::add_common(CLI::App* cmd, bool csv_input, bool with_format) {
  cmd->add_option("--config", flags_.config_path, "Pipeline config JSON");
  cmd->add_flag("--print-config", flags_.print_config,
                "Print the effective pipeline config as JSON and exit");
  cmd->add_option("--out", flags_.out, "Output path (default standard output)");
  if (with_format) cmd->add_option("--format", flags_.format, "Output format");
  if (csv_input) {
    cmd->add_option("--case-col", flags_.schema.case_column, "CSV case id column");
    cmd->add_option("--activity-col", flags_.schema.activity_column, "CSV activity column");
    cmd->add_option("--date-col", flags_.schema.date_column, "CSV date column");
    cmd->add_option("--date-format", flags_.schema.date_format,
                    "CSV date pattern using YYYY, MM, DD (default YYYY-MM-DD)");
    cmd->add_option("--delimiter", flags_.delimiter, "CSV delimiter (one character)");
    cmd->add_flag("--no-header", flags_.no_header,
                  "CSV has no header; columns are case,activity,date");
    cmd->add_option("--max-reject", flags_.schema.max_reject_fraction,
                    "Max fraction of rejected CSV rows (default 0.01)")
        ->check(CLI::Range(0.0, 1.0));
  }
}

CsvSchema Runner::schema() const {
  CsvSchema s = flags_.schema;
  if (flags_.delimiter.size() != 1)
    throw Error(ErrorKind::kInvalidArgument, "--delimiter must be a single character");
  s.delimiter = flags_.delimiter[0];
  s.has_header = !flags_.no_header;
  return s;
}

PipelineConfig Runner::resolve(CLI::App* cmd) {
  PipelineConfig config;
  if (!flags_.config_path.empty()) {
    auto in = open_input(flags_.config_path);
    nlohmann::ordered_json json;
    try {
      json = nlohmann::ordered_json::parse(*in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kInvalidArgument, std::string("invalid config JSON: ") + e.what());
    }
    config = pipeline_config_from_json(json);
  }
  auto given = [&](const char* name) {
    auto* opt = cmd->get_option_no_throw(name);
    return opt && opt->count() > 0;
  };
  if (given("--order")) {
    if (flags_.order.starts_with('@')) {
      auto in = open_input(flags_.order.substr(1));
      // One label per line; commas also allowed; blank lines skipped.
      std::string text, line;
      while (std::getline(*in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        text += (text.empty() ? "" : ",") + line;
      }
      config.order = ActivityOrder::parse(text);
    } else {
      config.order = ActivityOrder::parse(flags_.order);
    }
  }
  if (given("--alpha")) {
    config.segmentation.start_activities.clear();
    const ActivityOrder alpha = ActivityOrder::parse(flags_.alpha);
    for (const auto& l : alpha.labels()) config.segmentation.start_activities.insert(l);
  }
  if (given("--delta0-days")) config.segmentation.delta0_days = flags_.delta0;
  if (given("--deltan-days")) config.segmentation.deltaN_days = flags_.deltaN;
  config.segmentation.validate();
  if (given("--window")) {
    config.windows.clear();
    for (const auto& w : flags_.windows) config.windows.push_back(PeriodWindow::parse(w));
  }
  if (given("input")) {
    config.inputs.clear();
    for (const auto& s : cmd->get_option("input")->as<std::vector<std::string>>())
      config.inputs.push_back(s);
  }
  if (given("--out")) config.output = flags_.out;
  if (given("--format")) config.format = flags_.format;
  return config;
}

std::unique_ptr<std::istream> Runner::open_input(const std::string& path) const {
  if (path == "-") {
    auto in = std::make_unique<std::istream>(std::cin.rdbuf());
    return in;
  }
  auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*in) throw Error(ErrorKind::kIo, "cannot open input '" + path + "'");
  return in;
}

std::ostream& Runner::output(const PipelineConfig& config) {
  if (config.output.empty() || config.output == "-") return out_;
  file_out_ = std::make_unique<std::ofstream>(config.output, std::ios::binary | std::ios::trunc);
  if (!*file_out_) throw Error(ErrorKind::kIo, "cannot open output '" + config.output + "'");
  return *file_out_;
}

void Runner::parse_report(const std::string& path, const ParseReport& report) {
  nlohmann::ordered_json samples = nlohmann::ordered_json::array();
  for (const auto& s : report.samples)
    samples.push_back({{"line", s.line}, {"reason", to_string(s.reason)}});
  nlohmann::ordered_json line{{"event", "parse_report"},
                              {"source", path},
                              {"rows_read", report.rows_read},
                              {"rows_rejected", report.rows_rejected},
                              {"rejects_by_reason", report.rejects_by_reason},
                              {"samples", samples}};
  err_ << line.dump() << '\n';
}

EventLog Runner::load_log(const std::string& path) {
  auto in = open_input(path);
  switch (kind_of(path)) {
    case FileKind::kXes: {
      const auto traces = read_xes(*in);
      return flatten(traces);
    }
    case FileKind::kTraceText: {
      const auto traces = read_trace_text(*in);
      return flatten(traces);
    }
    case FileKind::kCsv: break;
  }
  auto result = parse_csv(*in, schema());
  parse_report(path, result.report);
  return std::move(result.log);
}

std::vector<Trace> Runner::load_traces(const std::string& path) {
  switch (kind_of(path)) {
    case FileKind::kXes: {
      auto in = open_input(path);
      return read_xes(*in);
    }
    case FileKind::kTraceText: {
      auto in = open_input(path);
      return read_trace_text(*in);
    }
    case FileKind::kCsv: break;
  }
  return group_by_case(load_log(path));
}

std::string Runner::format_or(const PipelineConfig& config, const std::string& fallback,
                              std::initializer_list<const char*> allowed) const {
  const std::string f = config.format.empty() ? fallback : config.format;
  for (const char* a : allowed)
    if (f == a) return f;
  std::string msg = "unsupported --format '" + f + "' (expected";
  for (const char* a : allowed) msg += std::string(" ") + a;
  throw Error(ErrorKind::kInvalidArgument, msg + ")");
}

// ---------------------------------------------------------------------------

void Runner::convert(const PipelineConfig& config, const std::string& to) {
  const std::string& input = config.inputs.at(0);
  std::string target = to;
  if (target.empty() && !config.output.empty())
    target = kind_of(config.output) == FileKind::kXes ? "xes" : "csv";
  if (target.empty()) target = kind_of(input) == FileKind::kXes ? "csv" : "xes";
  if (target != "xes" && target != "csv")
    throw Error(ErrorKind::kInvalidArgument, "--to must be xes or csv");

  std::vector<Trace> traces;
  if (kind_of(input) == FileKind::kXes) {
    auto in = open_input(input);
    traces = read_xes(*in);
  } else {
    traces = group_by_case(load_log(input));
  }
  if (!config.windows.empty()) {
    for (Trace& t : traces) t.events = filter_periods(t.events, config.windows);
    std::erase_if(traces, [](const Trace& t) { return t.events.empty(); });
  }
  std::ostream& sink = output(config);
  if (target == "xes") {
    write_xes(std::span<const Trace>(traces), sink);
  } else {
    // Events carry the lineage case id, so segmented traces stay ingestible.
    write_csv(flatten(traces), sink);
  }
}

void Runner::repair(const PipelineConfig& config) {
  const EventLog log = filter_periods(load_log(config.inputs.at(0)), config.windows);
  const EventLog repaired = repair_log(log, config.order);
  write_csv(repaired, output(config));
}

void Runner::segment_cmd(const PipelineConfig& config, const std::string& report_path) {
  const EventLog log = filter_periods(load_log(config.inputs.at(0)), config.windows);
  const auto format = format_or(config,
                                kind_of(config.output) == FileKind::kTraceText ? "text" : "xes",
                                {"xes", "text"});
  const SegmentationResult result = segment(log, config.segmentation);

  std::ostream& sink = output(config);
  if (format == "xes") write_xes(std::span<const Trace>(result.traces), sink);
  else write_trace_text(result.traces, sink);

  const nlohmann::ordered_json report{{"event", "segment_report"},
                                      {"input_events", log.size()},
                                      {"traces", result.traces.size()},
                                      {"dropped_events", result.dropped_events},
                                      {"dropped_fraction", result.dropped_fraction}};
  err_ << report.dump() << '\n';
  if (!report_path.empty()) {
    std::ofstream f(report_path, std::ios::binary | std::ios::trunc);
    f << report.dump(2) << '\n';
    if (!f) throw Error(ErrorKind::kIo, "cannot write report '" + report_path + "'");
  }
}

void Runner::stats(const PipelineConfig& config, std::size_t dropped,
                   const std::string& report) {
  if (!report.empty()) {
    auto in = open_input(report);
    try {
      dropped = nlohmann::json::parse(*in).at("dropped_events").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kInvalidArgument,
                  "cannot read dropped_events from '" + report + "': " + e.what());
    }
  }
  const auto traces = load_traces(config.inputs.at(0));
  const LogStats s = compute_stats(traces, dropped);
  const auto format = format_or(config, "json", {"json", "csv", "text"});
  std::ostream& sink = output(config);
  const auto json = to_json(s);
  if (format == "json") {
    sink << json.dump(2) << '\n';
  } else if (format == "csv") {
    bool first = true;
    for (const auto& [key, value] : json.items()) {
      sink << (first ? "" : ",") << key;
      first = false;
    }
    sink << '\n';
    first = true;
    for (const auto& [key, value] : json.items()) {
      sink << (first ? "" : ",") << value.dump();
      first = false;
    }
    sink << '\n';
  } else {
    sink << "traces      " << s.total_traces << '\n'
         << "distinct    " << s.distinct_traces << " (" << detail::fixed(s.distinct_pct, 1)
         << "%)\n"
         << "events      " << s.total_events << '\n'
         << "activities  " << s.distinct_activities << '\n'
         << "filtered    " << s.filtered_events << " (" << detail::fixed(s.filtered_pct, 1)
         << "%)\n"
         << "length      min " << s.min_len << "  avg " << detail::fixed(s.avg_len, 1)
         << "  max " << s.max_len << '\n';
  }
}

void Runner::dfg(const PipelineConfig& config) {
  const auto traces = load_traces(config.inputs.at(0));
  const DFGMatrix m = compute_dfg(traces, &config.order);
  const auto format = format_or(config, "csv", {"csv", "json", "text"});
  std::ostream& sink = output(config);
  if (format == "csv") {
    write_dfg_csv(m, sink);
  } else if (format == "json") {
    sink << to_json(m).dump(2) << '\n';
  } else {
    std::size_t width = 1;
    for (std::size_t r = 0; r < m.size(); ++r) {
      width = std::max(width, m.labels()[r].str().size());
      for (std::size_t c = 0; c < m.size(); ++c)
        width = std::max(width, std::to_string(m.at(r, c)).size());
    }
    sink << std::setw(static_cast<int>(width)) << "";
    for (const auto& l : m.labels()) sink << ' ' << std::setw(static_cast<int>(width)) << l.str();
    sink << '\n';
    for (std::size_t r = 0; r < m.size(); ++r) {
      sink << std::setw(static_cast<int>(width)) << m.labels()[r].str();
      for (std::size_t c = 0; c < m.size(); ++c)
        sink << ' ' << std::setw(static_cast<int>(width)) << m.at(r, c);
      sink << '\n';
    }
  }
}

void Runner::variants(const PipelineConfig& config, std::size_t k) {
  const auto traces = load_traces(config.inputs.at(0));
  const VariantRanking ranking = top_k_variants(traces, k);
  const auto format = format_or(config, "text", {"text", "csv", "json"});
  std::ostream& sink = output(config);
  if (format == "text") {
    for (std::size_t i = 0; i < ranking.entries.size(); ++i)
      sink << (i + 1) << ' ' << render_entry(ranking.entries[i]) << '\n';
  } else if (format == "csv") {
    sink << "rank,variant,frequency\n";
    for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
      const auto& e = ranking.entries[i];
      std::string seq;
      for (std::size_t j = 0; j < e.sequence.size(); ++j)
        seq += (j ? "," : "") + e.sequence[j].str();
      sink << (i + 1) << ",\"" << seq << "\"," << e.frequency << '\n';
    }
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : ranking.entries) {
      nlohmann::ordered_json seq = nlohmann::ordered_json::array();
      for (const auto& l : e.sequence) seq.push_back(l.str());
      arr.push_back({{"variant", seq}, {"frequency", e.frequency}});
    }
    sink << arr.dump(2) << '\n';
  }
}

void Runner::timeline(const PipelineConfig& config, const std::string& activity,
                      const std::string& bucket) {
  const EventLog all = load_log(config.inputs.at(0));
  std::ostream& sink = output(config);
  const auto format = format_or(config, "csv", {"csv", "json"});
  if (activity.empty()) {
    const EventLog log = filter_periods(all, config.windows);
    const auto counts = activity_counts(log);
    const auto relative = relative_frequencies(log);
    if (format == "csv") {
      sink << "activity,count,relative_pct\n";
      for (const auto& [label, count] : counts)
        sink << label.str() << ',' << count << ',' << detail::fixed(relative.at(label), 2) << '\n';
    } else {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& [label, count] : counts)
        arr.push_back({{"activity", label.str()},
                       {"count", count},
                       {"relative_pct", round_to(relative.at(label), 2)}});
      sink << arr.dump(2) << '\n';
    }
    return;
  }
  if (config.windows.empty())
    throw Error(ErrorKind::kInvalidArgument, "timeline --activity needs a --window");
  const ActivityLabel label(activity);
  const BucketKind kind = parse_bucket_kind(bucket);
  for (const PeriodWindow& w : config.windows) {
    const auto h = temporal_histogram(all, label, kind, w);
    if (format == "csv") {
      write_histogram_csv(h, sink);
    } else {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& [start, count] : h.buckets)
        arr.push_back({{"bucket_start", start.iso()}, {"count", count}});
      sink << nlohmann::ordered_json{{"activity", activity},
                                     {"bucket", to_string(kind)},
                                     {"window", w.to_string()},
                                     {"buckets", arr}}
                  .dump(2)
           << '\n';
    }
  }
}

void Runner::diff(const PipelineConfig& config, const CooccurrenceOptions& options,
                  const std::string& name_x, const std::string& name_y) {
  if (config.inputs.size() != 2)
    throw Error(ErrorKind::kInvalidArgument, "diff takes exactly two inputs");
  const auto x = load_traces(config.inputs[0]);
  const auto y = load_traces(config.inputs[1]);
  const auto rules = cooccurrence_diff(x, y, options);
  const auto format = format_or(config, "text", {"text", "csv", "json"});
  std::ostream& sink = output(config);
  if (format == "text") {
    for (const auto& r : rules) sink << render_rule(r, name_x, name_y) << '\n';
  } else if (format == "csv") {
    write_rules_csv(rules, sink);
  } else {
    sink << to_json(rules).dump(2) << '\n';
  }
}

namespace {

ActivityCounts read_counts(std::istream& in, const std::string& path) {
  ActivityCounts counts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (line_no == 1 && line.starts_with("activity,"))) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      std::size_t used = 0;
      const std::string number = line.substr(comma + 1);
      const double value = std::stod(number, &used);
      if (used != number.size()) throw std::invalid_argument("trailing text");
      counts[line.substr(0, comma)] += value;
    } catch (const std::exception&) {
      throw Error(ErrorKind::kSchema, path + ":" + std::to_string(line_no) +
                                          ": expected 'activity,count'");
    }
  }
  return counts;
}

ActivityCounts counts_in(const EventLog& log, const PeriodWindow& window) {
  ActivityCounts counts;
  for (const auto& [label, count] : activity_counts(filter_period(log, window)))
    counts[label.str()] = static_cast<double>(count);
  return counts;
}

}  // namespace

void Runner::changes(const PipelineConfig& config, const std::string& reference,
                     const std::vector<std::string>& baselines,
                     const std::string& reference_counts,
                     const std::vector<std::string>& baseline_counts,
                     const std::string& aggregate_text) {
  const Aggregate aggregate = parse_aggregate(aggregate_text);
  ActivityCounts ref;
  std::vector<ActivityCounts> bases;
  if (!reference_counts.empty()) {
    if (baseline_counts.empty())
      throw Error(ErrorKind::kInvalidArgument, "--reference-counts needs --baseline-counts");
    auto in = open_input(reference_counts);
    ref = read_counts(*in, reference_counts);
    for (const auto& path : baseline_counts) {
      auto b = open_input(path);
      bases.push_back(read_counts(*b, path));
    }
  } else {
    if (config.inputs.size() != 1 || reference.empty() || baselines.empty())
      throw Error(ErrorKind::kInvalidArgument,
                  "changes needs one input log with --reference and --baseline windows, "
                  "or --reference-counts with --baseline-counts");
    const EventLog log = load_log(config.inputs[0]);
    ref = counts_in(log, PeriodWindow::parse(reference));
    for (const auto& b : baselines) bases.push_back(counts_in(log, PeriodWindow::parse(b)));
  }
  const ChangeReport report = change_report(ref, bases, aggregate);
  const auto format = format_or(config, "csv", {"csv", "json"});
  std::ostream& sink = output(config);
  if (format == "csv") write_change_csv(report, sink);
  else sink << to_json(report).dump(2) << '\n';
}

void Runner::synth(const PipelineConfig& config, const SynthProfile& profile) {
  const EventLog log = filter_periods(generate(profile), config.windows);
  write_csv(log, output(config));
}

// ---------------------------------------------------------------------------

int Runner::run(const std::vector<std::string>& args) {
  CLI::App app{"pmkit: event log repair, trace segmentation and process analytics"};
  app.name("pmkit");
  app.require_subcommand(1);
  app.footer(kExitCodeHelp);

  std::vector<std::string> inputs;
  std::string to;
  std::string report_path;
  std::size_t dropped = 0;
  std::string stats_report;
  std::size_t k = 20;
  std::string activity;
  std::string bucket = "month";
  CooccurrenceOptions diff_options;
  std::string name_x = "Variant X", name_y = "Variant Y";
  std::string reference, reference_counts, aggregate = "mean";
  std::vector<std::string> baselines, baseline_counts;
  SynthProfile profile;
  std::string synth_from, synth_to;

  auto* convert_cmd = app.add_subcommand("convert", "Convert CSV <-> XES");
  convert_cmd->add_option("input", inputs, "Input file (.csv or .xes)")->required()->expected(1);
  convert_cmd->add_option("--to", to, "Target format: xes|csv (default from --out or input)");
  add_common(convert_cmd, true, false);
  add_windows(convert_cmd);

  auto* repair_cmd = app.add_subcommand("repair", "Reorder same-day events by activity order");
  repair_cmd->add_option("input", inputs, "Input event log")->required()->expected(1);
  add_common(repair_cmd, true, false);
  add_order(repair_cmd);
  add_windows(repair_cmd);

  auto* segment_cmd_app = app.add_subcommand("segment", "Cut case histories into bounded traces");
  segment_cmd_app->add_option("input", inputs, "Date-ordered (repaired) event log")
      ->required()->expected(1);
  segment_cmd_app->add_option("--report", report_path, "Write the segmentation report JSON here");
  add_common(segment_cmd_app, true, true);
  add_segmentation(segment_cmd_app);
  add_windows(segment_cmd_app);

  auto* stats_cmd = app.add_subcommand("stats", "Log characteristics of a trace set");
  stats_cmd->add_option("input", inputs, "Traces (.xes, .txt) or event log (.csv)")
      ->required()->expected(1);
  stats_cmd->add_option("--dropped", dropped, "Events filtered during segmentation");
  stats_cmd->add_option("--report", stats_report, "Read dropped_events from a segment report");
  add_common(stats_cmd, true, true);

  auto* dfg_cmd = app.add_subcommand("dfg", "Directly-follows graph matrix");
  dfg_cmd->add_option("input", inputs, "Traces (.xes, .txt) or event log (.csv)")
      ->required()->expected(1);
  add_common(dfg_cmd, true, true);
  add_order(dfg_cmd);

  auto* variants_cmd = app.add_subcommand("variants", "Most frequent trace variants");
  variants_cmd->add_option("input", inputs, "Traces (.xes, .txt) or event log (.csv)")
      ->required()->expected(1);
  variants_cmd->add_option("--k", k, "Number of variants (default 20)")->check(CLI::PositiveNumber);
  add_common(variants_cmd, true, true);

  auto* timeline_cmd = app.add_subcommand(
      "timeline", "Activity frequencies, or one activity's histogram over a window");
  timeline_cmd->add_option("input", inputs, "Event log")->required()->expected(1);
  timeline_cmd->add_option("--activity", activity, "Activity to histogram");
  timeline_cmd->add_option("--bucket", bucket, "month|fortnight (default month)");
  add_common(timeline_cmd, true, true);
  add_windows(timeline_cmd);

  auto* diff_cmd = app.add_subcommand("diff", "Co-occurrence rule differences between two logs");
  diff_cmd->add_option("input", inputs, "Trace sets X and Y")->required()->expected(2);
  diff_cmd->add_option("--top-n", diff_options.top_n, "Rules to report (default 10)")
      ->check(CLI::PositiveNumber);
  diff_cmd->add_option("--min-support", diff_options.min_support,
                       "Min antecedent support in both logs (default 0.01)")
      ->check(CLI::Range(0.0, 1.0));
  diff_cmd->add_option("--min-delta", diff_options.min_delta_pp,
                       "Min difference in percentage points (default 0.01)")
      ->check(CLI::NonNegativeNumber);
  diff_cmd->add_option("--name-x", name_x, "Display name of the first log");
  diff_cmd->add_option("--name-y", name_y, "Display name of the second log");
  add_common(diff_cmd, true, true);

  auto* changes_cmd = app.add_subcommand("changes", "Per-activity frequency change vs baseline");
  changes_cmd->add_option("input", inputs, "Event log")->expected(0, 1);
  changes_cmd->add_option("--reference", reference, "Reference window YEAR[:MM-DD:MM-DD]");
  changes_cmd->add_option("--baseline", baselines, "Baseline window (repeatable)");
  changes_cmd->add_option("--reference-counts", reference_counts,
                          "Reference counts CSV (activity,count)");
  changes_cmd->add_option("--baseline-counts", baseline_counts,
                          "Baseline counts CSV (repeatable)");
  changes_cmd->add_option("--aggregate", aggregate, "single|mean (default mean)");
  add_common(changes_cmd, true, true);

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic GP-like event log (CSV)");
  synth_cmd->add_option("--cases", profile.case_count, "Number of cases (default 10000)");
  synth_cmd->add_option("--seed", profile.seed, "Generator seed");
  synth_cmd->add_option("--from", synth_from, "First day YYYY-MM-DD (default 2016-01-01)");
  synth_cmd->add_option("--to", synth_to, "Last day YYYY-MM-DD (default 2020-11-30)");
  add_common(synth_cmd, false, false);
  add_windows(synth_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out_, err_);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    const PipelineConfig config = resolve(cmd);
    if (flags_.print_config) {
      out_ << to_json(config).dump(2) << '\n';
      return kExitOk;
    }
    const std::string name = cmd->get_name();
    if (name == "convert") convert(config, to);
    else if (name == "repair") repair(config);
    else if (name == "segment") segment_cmd(config, report_path);
    else if (name == "stats") stats(config, dropped, stats_report);
    else if (name == "dfg") dfg(config);
    else if (name == "variants") variants(config, k);
    else if (name == "timeline") timeline(config, activity, bucket);
    else if (name == "diff") diff(config, diff_options, name_x, name_y);
    else if (name == "changes")
      changes(config, reference, baselines, reference_counts, baseline_counts, aggregate);
    else if (name == "synth") {
      auto parse_day = [](const std::string& text) {
        auto d = parse_iso_date(text);
        if (!d) throw Error(ErrorKind::kInvalidArgument, "invalid date '" + text + "'");
        return *d;
      };
      if (!synth_from.empty()) profile.first_day = parse_day(synth_from);
      if (!synth_to.empty()) profile.last_day = parse_day(synth_to);
      profile.alphabet = config.order;
      synth(config, profile);
    }
    if (file_out_) {
      file_out_->flush();
      if (!*file_out_) throw Error(ErrorKind::kIo, "failed writing '" + config.output + "'");
    }
    out_.flush();
  } catch (const Error& e) {
    err_ << "pmkit: error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err_ << "pmkit: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner runner(out, err);
  return runner.run(args);
}

}  // namespace pmkit

#include "looming/report.hpp"

#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace looming {

namespace {

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("csv: no column '" + std::string(name) + "'");
}

std::vector<double> CsvTable::numeric(std::string_view name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    const std::string& s = r[c];
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw std::invalid_argument("csv: column '" + std::string(name) + "' has non-numeric value '" + s + "'");
    }
    out.push_back(v);
  }
  return out;
}

CsvTable parse_csv(std::string_view text, const std::string& source) {
  CsvTable t;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    const std::size_t line_start = pos;
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto fields = split(line);
    if (first) {
      t.header = std::move(fields);
      first = false;
    } else {
      if (fields.size() != t.header.size()) {
        throw ParseError(source, line_start,
                         "expected " + std::to_string(t.header.size()) + " fields, got " + std::to_string(fields.size()));
      }
      t.rows.push_back(std::move(fields));
    }
  }
  if (first) throw ParseError(source, 0, "empty csv");
  return t;
}

CsvTable read_csv(const std::string& path) {
  const auto bytes = read_file_bytes(path);
  return parse_csv(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  // Tiny negatives print as "-0.000..."; drop the sign.
  if (buf[0] == '-' && std::strspn(buf + 1, "0.") == std::strlen(buf + 1)) return buf + 1;
  return buf;
}

std::string format_rate(const std::optional<double>& rate) { return rate ? format_fixed(*rate, 2) : "NA"; }

RunReport run_sequence(const FrameSequence& frames, const ModelConfig& config) {
  RunReport r;
  HybridModel model(config);
  r.frames.reserve(frames.size());
  for (const auto& f : frames) {
    FrameResult res = model.process(f);
    for (std::size_t i = 0; i < 4; ++i) r.spike_totals[i] += res.neurons[i].spikes;
    if (res.trigger) r.trigger_frames.push_back(res.frame_index);
    if (res.decision.verdict == Verdict::Collision) ++r.collision_frames;
    if (res.decision.verdict == Verdict::Suppressed) ++r.suppressed_frames;
    r.frames.push_back(res);
  }
  return r;
}

std::string potentials_csv(const std::vector<FrameResult>& frames) {
  std::string out = "frame,u_lgmd1,u_lgmd2,u_lptc_r,u_lptc_l,s_lgmd1,s_lgmd2,s_lptc_r,s_lptc_l\n";
  for (const auto& f : frames) {
    out += std::to_string(f.frame_index);
    for (const auto& n : f.neurons) out += "," + format_fixed(n.potential, 6);
    for (const auto& n : f.neurons) out += "," + std::to_string(n.spikes);
    out += "\n";
  }
  return out;
}

std::string decisions_csv(const std::vector<FrameResult>& frames) {
  std::string out = "frame,verdict,effective_spikes,trigger\n";
  for (const auto& f : frames) {
    out += std::to_string(f.frame_index) + "," + std::string(verdict_name(f.decision.verdict)) + "," +
           std::to_string(f.decision.effective_lgmd_spikes) + "," + (f.trigger ? "1" : "0") + "\n";
  }
  return out;
}

std::string summary_text(const RunReport& r) {
  std::ostringstream s;
  s << "frames " << r.frames.size() << "\n";
  for (std::size_t i = 0; i < 4; ++i) {
    s << "spikes_" << neuron_name(kAllNeurons[i]) << " " << r.spike_totals[i] << "\n";
  }
  s << "collision_frames " << r.collision_frames << "\n";
  s << "suppressed_frames " << r.suppressed_frames << "\n";
  s << "trigger_frames";
  if (r.trigger_frames.empty()) s << " none";
  for (auto f : r.trigger_frames) s << " " << f;
  s << "\n";
  return s.str();
}

std::string ledger_csv(const EventLedger& ledger) {
  std::string out = "frame,agent,kind,context\n";
  for (const auto& e : ledger.events) {
    std::string ctx = e.context;
    for (char& c : ctx) {
      if (c == ',' || c == '\n') c = ';';
    }
    out += std::to_string(e.frame) + "," + std::to_string(e.agent_id) + "," + std::string(event_kind_name(e.kind)) + "," +
           ctx + "\n";
  }
  return out;
}

}  // namespace looming

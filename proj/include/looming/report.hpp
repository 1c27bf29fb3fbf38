#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "looming/arena.hpp"
#include "looming/pipeline.hpp"
#include "looming/sequence_io.hpp"

namespace looming {

// Plain comma-separated table with a header row. No quoting: none of the
// emitted fields contain commas or newlines.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column; throws std::out_of_range when absent.
  std::size_t column(std::string_view name) const;
  // Whole column parsed as numbers.
  std::vector<double> numeric(std::string_view name) const;
};

// Throws ParseError (byte offset of the offending row) on ragged rows or an
// empty input.
CsvTable parse_csv(std::string_view text, const std::string& source = "<memory>");
CsvTable read_csv(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

struct RunReport {
  std::vector<FrameResult> frames;
  std::array<long long, 4> spike_totals{};
  std::vector<std::int64_t> trigger_frames;
  std::int64_t collision_frames = 0;
  std::int64_t suppressed_frames = 0;
};

RunReport run_sequence(const FrameSequence& frames, const ModelConfig& config);

// frame, u_lgmd1, u_lgmd2, u_lptc_r, u_lptc_l, s_lgmd1, s_lgmd2, s_lptc_r, s_lptc_l
std::string potentials_csv(const std::vector<FrameResult>& frames);
// frame, verdict, effective_spikes, trigger
std::string decisions_csv(const std::vector<FrameResult>& frames);
std::string summary_text(const RunReport& r);

// frame, agent, kind, context
std::string ledger_csv(const EventLedger& ledger);

// Fixed-precision numbers so that reruns compare byte for byte.
std::string format_fixed(double v, int decimals);
std::string format_rate(const std::optional<double>& rate);

}  // namespace looming

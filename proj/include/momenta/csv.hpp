#ifndef MOMENTA_CSV_HPP
#define MOMENTA_CSV_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "momenta/signal.hpp"

namespace momenta {

// Non-fatal validation note attached to a parsed row.
struct ParseWarning {
    std::size_t line = 0;
    std::string message;
};

template <typename Sample>
struct Parsed {
    std::vector<Sample> samples;
    std::vector<ParseWarning> warnings;
};

// CSV formats (UTF-8, comma-separated, '.' decimal, LF, one header line):
//   accelerometer  t_ms,ax,ay,az      t_ms integer, axes written %.6f
//   rr             t_ms,rr_ms         rr_ms written %.3f
//   eeg            t_ms,att,rel,eye   levels written %.1f
// Parsers accept arbitrary decimal precision in value cells; t_ms must be
// integral. Header mismatch -> FormatError; bad cell or invariant violation
// -> RowError with the 1-based line number; non-monotonic t -> SequenceError.
// RR values outside [200, 3000] ms parse fine but produce a warning.
Parsed<TriaxSample> parse_triax_csv(std::istream& in);
Parsed<RRInterval> parse_rr_csv(std::istream& in);
Parsed<EEGSample> parse_eeg_csv(std::istream& in);

void write_triax_csv(std::ostream& out, std::span<const TriaxSample> samples);
void write_rr_csv(std::ostream& out, std::span<const RRInterval> samples);
void write_eeg_csv(std::ostream& out, std::span<const EEGSample> samples);

}  // namespace momenta

#endif

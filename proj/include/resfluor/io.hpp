// Serialization of results: CSV with a parameter-echo comment line and
// 17-significant-digit values (round-trip exact, byte-stable across runs),
// and JSON documents tagged with their schema version.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "resfluor/correlation.hpp"
#include "resfluor/field.hpp"
#include "resfluor/spectrum.hpp"
#include "resfluor/trajectory.hpp"

namespace resfluor::io {

using ordered_json = nlohmann::ordered_json;

// %.17g formatting, the shortest form that round-trips a double exactly.
std::string format_double(double x);

// Key/value pairs echoed in the CSV header comment, in insertion order.
using ParamEcho = std::vector<std::pair<std::string, std::string>>;

std::string series_csv(const ParamEcho& echo, const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows);

std::string record_csv(const ParamEcho& echo,
                       const std::vector<std::pair<std::string, double>>& values);

ordered_json params_json(const SystemParams& p);
ordered_json spectrum_json(const SpectrumSeries& s);
ordered_json envelope_json(const EnvelopeSeries& e, const SystemParams& p);
ordered_json peaks_json(const SystemParams& p, const PeakReport& field,
                        const PeakReport& mollow);
ordered_json sweep_json(const SystemParams& base, const SweepTable& t);
ordered_json audit_json(const AuditReport& r);
ordered_json field_json(const FieldWeight& w, const RadialKernel& k,
                        const RadialExponents& e);
ordered_json trajectory_json(const SystemParams& p, const StationaryEstimate& est,
                             std::uint64_t seed, double t_max, double dt);

}  // namespace resfluor::io

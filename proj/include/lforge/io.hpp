#pragma once

#include <string>
#include <vector>

#include "lforge/inverse_spectral.hpp"
#include "lforge/lattice_core.hpp"
#include "lforge/predictions.hpp"
#include "lforge/spectral_conditions.hpp"
#include "lforge/transport.hpp"

namespace lforge::io {

// %.17g rendering used for all JSON numbers (deterministic, round-trip safe).
std::string format_double(double value);

// Lattice serialization: {"n_max":..,"couplings":[..],"site_constants":[..],
// "meta":{..}} with meta keys in sorted order.
std::string lattice_to_json(const LatticeSpec& lattice);
LatticeSpec lattice_from_json_text(const std::string& text);  // ParseError
LatticeSpec load_lattice(const std::string& path);  // IoError + ParseError

// Spectrum input: a flat JSON array of strictly increasing reals, or
// {"values":[...],"beta":x}. `load_spectrum_arg` treats arguments starting
// with '[' or '{' as inline JSON and anything else as a file path.
Spectrum spectrum_from_json_text(const std::string& text);
Spectrum load_spectrum_arg(const std::string& inline_or_path);

std::string spectrum_to_json(const Spectrum& spectrum);
std::string events_to_json(const std::vector<TransportEvent>& events);
std::string condition_report_to_json(const ConditionReport& report);
std::string predictions_to_json(
    const std::vector<TransportPrediction>& predictions);

// Amplitude trace as CSV "z,site,re,im,prob" (9 significant digits).
std::string trace_to_csv(const std::vector<AmplitudeField>& fields);

// Adjacent-pair geometry as CSV "pair,distance" with rows like "0-1",d.
std::string geometry_to_csv(const std::vector<double>& distances);

// Single-writer atomic write via temp file + rename. Throws IoError.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace lforge::io

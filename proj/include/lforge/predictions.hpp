#pragma once

#include <string>

namespace lforge {

enum class PredictionKind { PST, FR, None };

// Analytic transport prediction: a PST or FR occurrence at `distance` with
// mixing angle theta and phase phi, or a kind=None entry whose note explains
// which constraint failed. Shared by the model catalog (producer) and the
// transport module (verify_event consumer).
struct TransportPrediction {
    PredictionKind kind = PredictionKind::None;
    double distance = 0.0;      // Z, length units; > 0 for PST/FR entries
    double mixing_angle = 0.0;  // theta, canonical representative in [0, pi/2]
    double phase = 0.0;         // phi in (-pi, pi]
    std::string constraint_note;
};

inline const char* to_string(PredictionKind k) {
    switch (k) {
        case PredictionKind::PST: return "PST";
        case PredictionKind::FR: return "FR";
        default: return "none";
    }
}

}  // namespace lforge

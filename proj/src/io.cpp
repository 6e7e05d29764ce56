#include "lforge/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lforge/errors.hpp"

namespace lforge::io {

namespace {

std::string escape_json(const std::string& text) {
    std::string out;
    out.reserve(text.size() + 8);
    for (char ch : text) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x",
                                  static_cast<unsigned>(ch));
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

std::string format_double9(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

void append_array(std::string& out, const std::vector<double>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        out += format_double(values[i]);
    }
    out += ']';
}

void append_array(std::string& out, const std::vector<long long>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(values[i]);
    }
    out += ']';
}

const char* kind_name(EventKind kind) {
    switch (kind) {
        case EventKind::PST: return "PST";
        case EventKind::FR: return "FR";
        default: return "return";
    }
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string lattice_to_json(const LatticeSpec& lattice) {
    std::string out = "{\"n_max\":" + std::to_string(lattice.n_max);
    out += ",\"couplings\":";
    append_array(out, lattice.couplings);
    out += ",\"site_constants\":";
    append_array(out, lattice.site_constants);
    out += ",\"meta\":{";
    bool first = true;
    for (const auto& [key, value] : lattice.meta) {  // std::map: sorted keys
        if (!first) out += ',';
        first = false;
        out += '"' + escape_json(key) + "\":\"" + escape_json(value) + '"';
    }
    out += "}}\n";
    return out;
}

LatticeSpec lattice_from_json_text(const std::string& text) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid lattice JSON: ") + e.what());
    }
    LatticeSpec lattice;
    try {
        lattice.n_max = parsed.at("n_max").get<int>();
        lattice.couplings = parsed.at("couplings").get<std::vector<double>>();
        lattice.site_constants =
            parsed.at("site_constants").get<std::vector<double>>();
        if (parsed.contains("meta")) {
            for (const auto& [key, value] : parsed.at("meta").items()) {
                lattice.meta[key] = value.get<std::string>();
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("lattice JSON missing or mistyped field: ") +
                         e.what());
    }
    try {
        lattice.validate();
    } catch (const Error& e) {
        throw ParseError(std::string("lattice JSON fails validation: ") +
                         e.what());
    }
    return lattice;
}

LatticeSpec load_lattice(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lattice file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return lattice_from_json_text(buffer.str());
}

Spectrum spectrum_from_json_text(const std::string& text) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid spectrum JSON: ") + e.what());
    }
    Spectrum spectrum;
    try {
        if (parsed.is_array()) {
            spectrum.values = parsed.get<std::vector<double>>();
        } else if (parsed.is_object()) {
            spectrum.values = parsed.at("values").get<std::vector<double>>();
            if (parsed.contains("beta")) {
                spectrum.scale = parsed.at("beta").get<double>();
            }
        } else {
            throw ParseError(
                "spectrum JSON must be an array or an object with \"values\"");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("spectrum JSON missing or mistyped field: ") +
                         e.what());
    }
    try {
        spectrum.validate();
    } catch (const Error& e) {
        throw ParseError(std::string("spectrum fails validation: ") + e.what());
    }
    return spectrum;
}

Spectrum load_spectrum_arg(const std::string& inline_or_path) {
    if (!inline_or_path.empty() &&
        (inline_or_path.front() == '[' || inline_or_path.front() == '{')) {
        return spectrum_from_json_text(inline_or_path);
    }
    std::ifstream in(inline_or_path, std::ios::binary);
    if (!in) throw IoError("cannot open spectrum file '" + inline_or_path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return spectrum_from_json_text(buffer.str());
}

std::string spectrum_to_json(const Spectrum& spectrum) {
    std::string out = "{\"values\":";
    append_array(out, spectrum.values);
    out += ",\"beta\":" + format_double(spectrum.scale) + "}\n";
    return out;
}

std::string events_to_json(const std::vector<TransportEvent>& events) {
    std::string out = "[";
    for (std::size_t i = 0; i < events.size(); ++i) {
        const TransportEvent& event = events[i];
        if (i > 0) out += ',';
        out += "{\"z\":" + format_double(event.z);
        out += ",\"kind\":\"" + std::string(kind_name(event.kind)) + '"';
        out += ",\"theta\":" + format_double(event.theta);
        out += ",\"phi\":" + format_double(event.phi);
        out += ",\"leakage\":" + format_double(event.leakage);
        out += ",\"end_probabilities\":[" + format_double(event.end_p0) + ',' +
               format_double(event.end_pn) + "]}";
    }
    out += "]\n";
    return out;
}

std::string condition_report_to_json(const ConditionReport& report) {
    std::string out = "{\"pst\":";
    if (report.pst) {
        out += "{\"z_pst\":" + format_double(report.pst->z_pst);
        out += ",\"multipliers\":";
        append_array(out, report.pst->multipliers);
        out += '}';
    } else {
        out += "null";
    }
    out += ",\"fr\":[";
    for (std::size_t i = 0; i < report.fr.size(); ++i) {
        const FrEvent& event = report.fr[i];
        if (i > 0) out += ',';
        out += "{\"z_fr\":" + format_double(event.z_fr);
        out += ",\"kind\":\"" + std::string(kind_name(event.kind)) + '"';
        out += ",\"theta\":" + format_double(event.theta);
        out += ",\"theta_raw\":" + format_double(event.theta_raw);
        out += ",\"phi\":" + format_double(event.phi);
        out += ",\"l0\":";
        append_array(out, event.l0);
        out += ",\"l1\":";
        append_array(out, event.l1);
        out += '}';
    }
    out += "],\"notes\":\"" + escape_json(report.notes) + "\"}\n";
    return out;
}

std::string predictions_to_json(
    const std::vector<TransportPrediction>& predictions) {
    std::string out = "[";
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const TransportPrediction& pred = predictions[i];
        if (i > 0) out += ',';
        out += "{\"kind\":\"" + std::string(to_string(pred.kind)) + '"';
        out += ",\"distance\":" + format_double(pred.distance);
        out += ",\"mixing_angle\":" + format_double(pred.mixing_angle);
        out += ",\"phase\":" + format_double(pred.phase);
        out += ",\"note\":\"" + escape_json(pred.constraint_note) + "\"}";
    }
    out += "]\n";
    return out;
}

std::string trace_to_csv(const std::vector<AmplitudeField>& fields) {
    std::string out = "z,site,re,im,prob\n";
    for (const AmplitudeField& field : fields) {
        for (std::size_t n = 0; n < field.amplitudes.size(); ++n) {
            const std::complex<double>& amp = field.amplitudes[n];
            out += format_double9(field.z);
            out += ',';
            out += std::to_string(n);
            out += ',';
            out += format_double9(amp.real());
            out += ',';
            out += format_double9(amp.imag());
            out += ',';
            out += format_double9(std::norm(amp));
            out += '\n';
        }
    }
    return out;
}

std::string geometry_to_csv(const std::vector<double>& distances) {
    std::string out = "pair,distance\n";
    for (std::size_t i = 0; i < distances.size(); ++i) {
        out += std::to_string(i) + '-' + std::to_string(i + 1) + ',' +
               format_double9(distances[i]) + '\n';
    }
    return out;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string temp = path + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + temp + "' for writing");
        out.write(content.data(),
                  static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("failed writing '" + temp + "'");
    }
    if (std::rename(temp.c_str(), path.c_str()) != 0) {
        std::remove(temp.c_str());
        throw IoError("failed to move '" + temp + "' into place at '" + path +
                      "'");
    }
}

}  // namespace lforge::io

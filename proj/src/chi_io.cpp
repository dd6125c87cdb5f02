#include "holo/chi_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace holo {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw Error("expected [re, im] pair");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

template <typename Matrix>
json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

json basis_names(int count) {
    json names = json::array();
    const auto& all = OperatorBasis9::standard().names();
    for (int k = 0; k < count; ++k) names.push_back(all[static_cast<std::size_t>(k)]);
    return names;
}

}  // namespace

std::string chi_to_json(const ProcessMatrix& chi) {
    json j;
    j["basis"] = basis_names(9);
    j["dimension"] = 9;
    j["matrix"] = matrix_to_json(chi.chi);
    return j.dump(2);
}

std::string chi_to_json(const ReducedProcessMatrix& chi) {
    json j;
    j["basis"] = basis_names(4);
    j["dimension"] = 4;
    j["matrix"] = matrix_to_json(chi.chi_tilde);
    return j.dump(2);
}

ProcessMatrix chi_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.value("dimension", 0) != 9) throw Error("chi_from_json: expected dimension 9");
    const auto& rows = j.at("matrix");
    ProcessMatrix chi;
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 9; ++c) chi.chi(r, c) = complex_from_json(rows.at(r).at(c));
    return chi;
}

std::string record_to_json(const MeasurementRecord& record) {
    json j;
    j["basis"] = basis_names(9);
    j["mode"] = record.sampled ? "sampled" : "exact";
    j["shots"] = record.shots;
    j["seed"] = record.seed;
    json inputs = json::array();
    for (int i = 0; i < 9; ++i) {
        json settings = json::array();
        for (int s = 0; s < 9; ++s) {
            const auto& v = record.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
            settings.push_back({{"setting", s}, {"values", {v(0), v(1), v(2)}}});
        }
        inputs.push_back({{"input", i}, {"settings", settings}});
    }
    j["inputs"] = inputs;
    return j.dump(2);
}

MeasurementRecord record_from_json(const std::string& text) {
    const json j = json::parse(text);
    MeasurementRecord record;
    record.sampled = j.value("mode", "exact") == std::string("sampled");
    record.shots = j.value("shots", 0L);
    record.seed = j.value("seed", 0UL);
    for (const auto& input : j.at("inputs")) {
        const int i = input.at("input").get<int>();
        if (i < 0 || i > 8) throw Error("record_from_json: input index out of range");
        for (const auto& setting : input.at("settings")) {
            const int s = setting.at("setting").get<int>();
            if (s < 0 || s > 8) throw Error("record_from_json: setting index out of range");
            const auto& v = setting.at("values");
            record.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] =
                Eigen::Vector3d(v.at(0).get<double>(), v.at(1).get<double>(),
                                v.at(2).get<double>());
        }
    }
    return record;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace holo

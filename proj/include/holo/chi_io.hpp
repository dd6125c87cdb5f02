// chi_io.hpp — JSON serialization of measurement records and chi matrices.
// Complex numbers are stored as [re, im] pairs, matrices row-major, and a
// top-level "basis" field names the operator order.

#pragma once

#include "holo/tomography.hpp"

#include <iosfwd>
#include <string>

namespace holo {

std::string chi_to_json(const ProcessMatrix& chi);
std::string chi_to_json(const ReducedProcessMatrix& chi);
ProcessMatrix chi_from_json(const std::string& text);

std::string record_to_json(const MeasurementRecord& record);
MeasurementRecord record_from_json(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace holo

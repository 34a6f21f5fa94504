#pragma once

#include <iosfwd>
#include <string>

#include "linml/multiclass.hpp"
#include "linml/train.hpp"

namespace linml {

// Versioned plain-text model format. Reals are written in shortest
// round-trip form, so save -> load -> save is byte-identical. Loading
// rejects unknown format versions.
inline constexpr int kModelFormatVersion = 1;

void save_model(const Model& m, std::ostream& out);
std::string save_model_string(const Model& m);
void save_model_file(const Model& m, const std::string& path);

Model load_model(std::istream& in);
Model load_model_file(const std::string& path);

// One-vs-rest container: nests one binary model block per class.
void save_ovr_model(const OvrModel& m, std::ostream& out);
std::string save_ovr_model_string(const OvrModel& m);
void save_ovr_model_file(const OvrModel& m, const std::string& path);

OvrModel load_ovr_model(std::istream& in);
OvrModel load_ovr_model_file(const std::string& path);

// Peeks at a model file's first line: true when it holds a one-vs-rest
// container rather than a single model.
bool model_file_is_ovr(const std::string& path);

}  // namespace linml

#ifndef CAMEL_DATAIO_HPP
#define CAMEL_DATAIO_HPP

#include <string>

#include "camel/model.hpp"
#include "camel/types.hpp"

namespace camel {

// Shortest exact decimal representation (%.17g); strtod round-trips it to
// the identical double, which is what makes saved artifacts byte-stable.
std::string format_double(double v);

// CSV with header `view,id,f1,...,fM`; one row per image. The id column may
// be empty (then it must be empty on every row). Parse errors carry the
// offending line number.
FeatureSet load_features(const std::string& path);
void save_features(const FeatureSet& fs, const std::string& path);

// Versioned plain-text model container ("camel-model 1"); layout documented
// in the README. save(load(f)) reproduces f byte for byte.
void save_model(const ProjectionModel& model, const std::string& path);
ProjectionModel load_model(const std::string& path);

}  // namespace camel

#endif  // CAMEL_DATAIO_HPP

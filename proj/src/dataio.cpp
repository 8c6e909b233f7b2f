#include "camel/dataio.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace camel {

namespace {

std::string line_error(const std::string& path, long line, const std::string& what) {
  return path + ":" + std::to_string(line) + ": " + what;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, const std::string& path, long line) {
  if (s.empty()) throw DataError(line_error(path, line, "empty numeric field"));
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw DataError(line_error(path, line, "bad numeric field '" + s + "'"));
  return v;
}

long parse_long(const std::string& s, const std::string& path, long line) {
  if (s.empty()) throw DataError(line_error(path, line, "empty integer field"));
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size())
    throw DataError(line_error(path, line, "bad integer field '" + s + "'"));
  return v;
}

bool read_trimmed(std::istream& in, std::string* line) {
  if (!std::getline(in, *line)) return false;
  if (!line->empty() && line->back() == '\r') line->pop_back();
  return true;
}

// ---- model file helpers ----

std::string next_model_line(std::istream& in, const std::string& path, long* line) {
  std::string s;
  if (!read_trimmed(in, &s))
    throw DataError(path + ": truncated model file (unexpected end at line " +
                    std::to_string(*line + 1) + ")");
  ++*line;
  return s;
}

std::string expect_key(const std::string& s, const std::string& key, const std::string& path,
                       long line) {
  if (s.size() <= key.size() || s.compare(0, key.size(), key) != 0 || s[key.size()] != ' ')
    throw DataError(line_error(path, line, "expected '" + key + " <value>', got '" + s + "'"));
  return s.substr(key.size() + 1);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

FeatureSet load_features(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open feature file '" + path + "'");

  std::string line;
  long lineno = 0;
  if (!read_trimmed(in, &line)) throw DataError(path + ": empty file");
  ++lineno;
  const std::vector<std::string> header = split_csv(line);
  if (header.size() < 3 || header[0] != "view" || header[1] != "id")
    throw DataError(line_error(path, lineno, "header must be 'view,id,f1,...,fM'"));
  const int dim = static_cast<int>(header.size()) - 2;

  std::vector<Sample> samples;
  int max_view = 0;
  while (read_trimmed(in, &line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (static_cast<int>(fields.size()) != dim + 2)
      throw DataError(line_error(path, lineno,
                                 "expected " + std::to_string(dim + 2) + " fields, got " +
                                     std::to_string(fields.size())));
    Sample s;
    const long view = parse_long(fields[0], path, lineno);
    if (view < 1) throw DataError(line_error(path, lineno, "view id must be >= 1"));
    s.view = static_cast<int>(view);
    max_view = std::max(max_view, s.view);
    s.identity = fields[1].empty() ? -1 : parse_long(fields[1], path, lineno);
    if (!fields[1].empty() && s.identity < 0)
      throw DataError(line_error(path, lineno, "identity id must be nonnegative"));
    s.feature.resize(dim);
    for (int j = 0; j < dim; ++j) s.feature[j] = parse_double(fields[static_cast<std::size_t>(j) + 2], path, lineno);
    samples.push_back(std::move(s));
  }
  if (samples.empty()) throw DataError(path + ": no data rows");
  try {
    return FeatureSet(max_view, samples);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void save_features(const FeatureSet& fs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << "view,id";
  for (int j = 1; j <= fs.dim(); ++j) out << ",f" << j;
  out << "\n";
  for (int i = 0; i < fs.size(); ++i) {
    out << fs.view_of(i) << ",";
    if (fs.labeled()) out << fs.identity_of(i);
    const auto x = fs.feature(i);
    for (int j = 0; j < fs.dim(); ++j) out << "," << format_double(x[j]);
    out << "\n";
  }
  if (!out) throw DataError("write to '" + path + "' failed");
}

void save_model(const ProjectionModel& model, const std::string& path) {
  model.validate();
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");

  out << "camel-model 1\n";
  out << "views " << model.num_views() << "\n";
  out << "dim " << model.dim() << "\n";
  out << "out_dim " << model.out_dim() << "\n";
  out << "lambda " << format_double(model.config.lambda) << "\n";
  out << "num_clusters " << model.config.num_clusters << "\n";
  out << "alpha " << format_double(model.config.alpha) << "\n";
  out << "epsilon " << format_double(model.config.epsilon) << "\n";
  out << "max_iter " << model.config.max_iter << "\n";
  out << "seed " << model.config.seed << "\n";
  out << "iterations " << model.iterations << "\n";
  out << "converged " << (model.converged ? 1 : 0) << "\n";
  out << "final_objective " << format_double(model.final_objective) << "\n";
  out << "history " << model.objective_history.size() << "\n";
  for (double v : model.objective_history) out << format_double(v) << "\n";
  for (int p = 1; p <= model.num_views(); ++p) {
    out << "transform " << p << "\n";
    const Eigen::MatrixXd& u = model.transforms[static_cast<std::size_t>(p - 1)];
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      for (Eigen::Index c = 0; c < u.cols(); ++c) {
        if (c) out << " ";
        out << format_double(u(r, c));
      }
      out << "\n";
    }
  }
  out << "end\n";
  if (!out) throw DataError("write to '" + path + "' failed");
}

ProjectionModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file '" + path + "'");
  long lineno = 0;

  const std::string magic = next_model_line(in, path, &lineno);
  if (magic != "camel-model 1")
    throw DataError(path + ": unsupported format or version (expected 'camel-model 1')");

  const auto next_int = [&](const std::string& key) {
    const std::string s = next_model_line(in, path, &lineno);
    return parse_long(expect_key(s, key, path, lineno), path, lineno);
  };
  const auto next_double = [&](const std::string& key) {
    const std::string s = next_model_line(in, path, &lineno);
    return parse_double(expect_key(s, key, path, lineno), path, lineno);
  };

  ProjectionModel model;
  const long views = next_int("views");
  const long dim = next_int("dim");
  const long out_dim = next_int("out_dim");
  if (views < 2 || dim < 1 || out_dim < 1)
    throw DataError(path + ": invalid model dimensions");
  model.config.lambda = next_double("lambda");
  model.config.num_clusters = static_cast<int>(next_int("num_clusters"));
  model.config.alpha = next_double("alpha");
  model.config.epsilon = next_double("epsilon");
  model.config.max_iter = static_cast<int>(next_int("max_iter"));
  {
    const std::string s = next_model_line(in, path, &lineno);
    const std::string v = expect_key(s, "seed", path, lineno);
    char* end = nullptr;
    model.config.seed = std::strtoull(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size())
      throw DataError(line_error(path, lineno, "bad seed '" + v + "'"));
  }
  model.config.out_dim = static_cast<int>(out_dim);
  model.iterations = static_cast<int>(next_int("iterations"));
  model.converged = next_int("converged") != 0;
  model.final_objective = next_double("final_objective");

  const long hist = next_int("history");
  if (hist < 0 || hist > 1000000) throw DataError(path + ": implausible history length");
  model.objective_history.reserve(static_cast<std::size_t>(hist));
  for (long i = 0; i < hist; ++i) {
    const std::string s = next_model_line(in, path, &lineno);
    model.objective_history.push_back(parse_double(s, path, lineno));
  }

  for (long p = 1; p <= views; ++p) {
    const std::string s = next_model_line(in, path, &lineno);
    if (s != "transform " + std::to_string(p))
      throw DataError(line_error(path, lineno, "expected 'transform " + std::to_string(p) + "'"));
    Eigen::MatrixXd u(dim, out_dim);
    for (long r = 0; r < dim; ++r) {
      const std::string row = next_model_line(in, path, &lineno);
      std::istringstream iss(row);
      std::string tok;
      for (long c = 0; c < out_dim; ++c) {
        if (!(iss >> tok))
          throw DataError(line_error(path, lineno, "transform row has too few entries"));
        u(r, c) = parse_double(tok, path, lineno);
      }
      if (iss >> tok)
        throw DataError(line_error(path, lineno, "transform row has too many entries"));
    }
    model.transforms.push_back(std::move(u));
  }

  const std::string tail = next_model_line(in, path, &lineno);
  if (tail != "end") throw DataError(line_error(path, lineno, "missing 'end' sentinel"));
  model.validate();
  return model;
}

}  // namespace camel

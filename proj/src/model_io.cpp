#include "linml/model_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "linml/error.hpp"
#include "linml/util.hpp"

namespace linml {

namespace {

constexpr const char* kMissing = "_";

std::string label_token(const std::optional<double>& v) {
  return v ? format_double(*v) : kMissing;
}

// Line-oriented reader for the fixed-order model format.
class Reader {
public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::vector<std::string> next_line() {
    std::string line;
    if (!std::getline(in_, line)) fail(ErrorKind::MalformedLine, where("unexpected end of model"));
    ++line_no_;
    std::istringstream split(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (split >> tok) tokens.push_back(tok);
    return tokens;
  }

  // "key value..." line; returns the values.
  std::vector<std::string> expect(const std::string& key, std::size_t n_values) {
    auto tokens = next_line();
    if (tokens.empty() || tokens[0] != key || tokens.size() != n_values + 1)
      fail(ErrorKind::MalformedLine, where("expected '" + key + "' line"));
    return {tokens.begin() + 1, tokens.end()};
  }

  double expect_double(const std::string& key) {
    return parse_double(expect(key, 1)[0]);
  }

  std::uint64_t expect_u64(const std::string& key) {
    return parse_u64(expect(key, 1)[0]);
  }

  double parse_double(const std::string& tok) {
    double v;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
      fail(ErrorKind::MalformedLine, where("bad number '" + tok + "'"));
    return v;
  }

  std::uint64_t parse_u64(const std::string& tok) {
    std::uint64_t v;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
      fail(ErrorKind::MalformedLine, where("bad integer '" + tok + "'"));
    return v;
  }

  std::string where(const std::string& what) {
    return "model line " + std::to_string(line_no_ + 1) + ": " + what;
  }

private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

void check_header(Reader& r, const std::string& kind) {
  auto tokens = r.next_line();
  if (tokens.size() != 3 || tokens[0] != "linml" || tokens[1] != kind)
    fail(ErrorKind::MalformedLine, "not a linml " + kind + " file");
  if (r.parse_u64(tokens[2]) != static_cast<std::uint64_t>(kModelFormatVersion))
    fail(ErrorKind::MalformedLine, "unsupported " + kind + " format version " + tokens[2]);
}

}  // namespace

void save_model(const Model& m, std::ostream& out) {
  out << "linml model " << kModelFormatVersion << '\n';
  out << "task " << task_name(m.task) << '\n';
  const LabelMap map = m.label_map.value_or(LabelMap{});
  out << "labels " << label_token(map.raw_zero) << ' ' << label_token(map.raw_one) << '\n';
  out << "k " << m.k << '\n';
  out << "consensus " << consensus_name(m.config.consensus) << '\n';
  out << "inc " << format_double(m.config.inc) << '\n';
  out << "eps " << format_double(m.config.eps) << '\n';
  out << "max_iters " << m.config.max_iters << '\n';
  out << "ridge_lambda " << format_double(m.config.ridge_lambda) << '\n';
  out << "seed " << m.config.seed << '\n';
  out << "leave_self_out " << (m.config.leave_self_out ? 1 : 0) << '\n';
  out << "rng " << Rng::kIdentity << '\n';
  out << "bias " << format_double(m.projection.bias) << '\n';
  out << "weights " << m.projection.weights.size() << '\n';
  for (double w : m.projection.weights) out << format_double(w) << '\n';
  out << "entries " << m.index.size() << '\n';
  for (const auto& e : m.index.entries())
    out << format_double(e.projected) << ' ' << format_double(e.target) << '\n';
}

std::string save_model_string(const Model& m) {
  std::ostringstream out;
  save_model(m, out);
  return out.str();
}

void save_model_file(const Model& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::DatasetNotFound, "cannot write " + path);
  save_model(m, out);
}

namespace {

Model load_model_body(Reader& r) {
  Model m;

  auto task_tok = r.expect("task", 1)[0];
  auto task = task_from_name(task_tok);
  if (!task || *task == Task::Multiclass)
    fail(ErrorKind::MalformedLine, r.where("bad task '" + task_tok + "'"));
  m.task = *task;

  auto labels = r.expect("labels", 2);
  LabelMap map;
  if (labels[0] != kMissing) map.raw_zero = r.parse_double(labels[0]);
  if (labels[1] != kMissing) map.raw_one = r.parse_double(labels[1]);
  if (m.task == Task::Binary) m.label_map = map;

  m.k = static_cast<std::size_t>(r.expect_u64("k"));
  auto consensus_tok = r.expect("consensus", 1)[0];
  auto variant = consensus_from_name(consensus_tok);
  if (!variant) fail(ErrorKind::MalformedLine, r.where("bad consensus '" + consensus_tok + "'"));
  m.config.consensus = *variant;
  m.config.inc = r.expect_double("inc");
  m.config.eps = r.expect_double("eps");
  m.config.max_iters = static_cast<std::size_t>(r.expect_u64("max_iters"));
  m.config.ridge_lambda = r.expect_double("ridge_lambda");
  m.config.seed = r.expect_u64("seed");
  m.config.leave_self_out = r.expect_u64("leave_self_out") != 0;
  m.config.k = m.k;
  r.expect("rng", 1);  // informational

  m.projection.bias = r.expect_double("bias");
  auto n_weights = r.expect_u64("weights");
  m.projection.weights.reserve(n_weights);
  for (std::uint64_t i = 0; i < n_weights; ++i) {
    auto tokens = r.next_line();
    if (tokens.size() != 1) fail(ErrorKind::MalformedLine, r.where("bad weight line"));
    m.projection.weights.push_back(r.parse_double(tokens[0]));
  }

  auto n_entries = r.expect_u64("entries");
  if (n_entries < 1) fail(ErrorKind::Empty, r.where("model has no index entries"));
  std::vector<double> projected;
  std::vector<double> targets;
  projected.reserve(n_entries);
  targets.reserve(n_entries);
  for (std::uint64_t i = 0; i < n_entries; ++i) {
    auto tokens = r.next_line();
    if (tokens.size() != 2) fail(ErrorKind::MalformedLine, r.where("bad index entry"));
    projected.push_back(r.parse_double(tokens[0]));
    targets.push_back(r.parse_double(tokens[1]));
    if (!std::isfinite(projected.back()) || !std::isfinite(targets.back()))
      fail(ErrorKind::NonFiniteValue, r.where("non-finite index entry"));
  }
  m.index = build_index(projected, targets);

  if (m.k < 1 || m.k > m.index.size())
    fail(ErrorKind::MalformedLine, r.where("k outside the index size"));
  if (!std::isfinite(m.projection.bias))
    fail(ErrorKind::NonFiniteValue, r.where("non-finite bias"));
  for (double w : m.projection.weights)
    if (!std::isfinite(w)) fail(ErrorKind::NonFiniteValue, r.where("non-finite weight"));
  return m;
}

}  // namespace

Model load_model(std::istream& in) {
  Reader r(in);
  check_header(r, "model");
  return load_model_body(r);
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::DatasetNotFound, path);
  return load_model(in);
}

void save_ovr_model(const OvrModel& m, std::ostream& out) {
  out << "linml ovr " << kModelFormatVersion << '\n';
  out << "classes " << m.classes.size() << '\n';
  for (std::size_t i = 0; i < m.classes.size(); ++i) {
    out << "class " << m.classes[i] << '\n';
    save_model(m.models[i], out);
  }
}

std::string save_ovr_model_string(const OvrModel& m) {
  std::ostringstream out;
  save_ovr_model(m, out);
  return out.str();
}

void save_ovr_model_file(const OvrModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::DatasetNotFound, "cannot write " + path);
  save_ovr_model(m, out);
}

OvrModel load_ovr_model(std::istream& in) {
  Reader r(in);
  check_header(r, "ovr");
  auto n_classes = r.expect_u64("classes");
  if (n_classes < 1) fail(ErrorKind::Empty, "ovr model with no classes");

  OvrModel m;
  for (std::uint64_t i = 0; i < n_classes; ++i) {
    auto id_tok = r.expect("class", 1)[0];
    m.classes.push_back(static_cast<int>(r.parse_u64(id_tok)));
    Reader body(in);
    check_header(body, "model");
    m.models.push_back(load_model_body(body));
  }
  return m;
}

OvrModel load_ovr_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::DatasetNotFound, path);
  return load_ovr_model(in);
}

bool model_file_is_ovr(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::DatasetNotFound, path);
  std::string word1, word2;
  in >> word1 >> word2;
  return word1 == "linml" && word2 == "ovr";
}

}  // namespace linml

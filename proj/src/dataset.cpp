#include "linml/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "linml/error.hpp"
#include "linml/util.hpp"

namespace linml {

namespace {

bool parse_full_double(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);  // "+1" labels
  if (tok.empty()) return false;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

bool parse_full_u32(std::string_view tok, std::uint32_t& out) {
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

std::string line_msg(std::size_t line_no, const std::string& what) {
  return "line " + std::to_string(line_no) + ": " + what;
}

// Raw label that becomes class 0: a non-positive one if exactly one side is
// non-positive, otherwise the one whose printed form sorts first.
double pick_zero_label(double a, double b) {
  if (a <= 0.0 && b > 0.0) return a;
  if (b <= 0.0 && a > 0.0) return b;
  return format_double(a) < format_double(b) ? a : b;
}

}  // namespace

const char* task_name(Task t) {
  switch (t) {
    case Task::Regression: return "regression";
    case Task::Binary: return "binary";
    case Task::Multiclass: return "multiclass";
  }
  return "unknown";
}

std::optional<Task> task_from_name(const std::string& name) {
  if (name == "regression") return Task::Regression;
  if (name == "binary") return Task::Binary;
  if (name == "multiclass") return Task::Multiclass;
  return std::nullopt;
}

Dataset parse_libsvm(std::istream& in, Task task) {
  Dataset d;
  d.task = task;

  std::vector<double> raw_labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);

    std::istringstream tokens(line);
    std::string tok;
    if (!(tokens >> tok)) continue;  // blank or comment-only line

    double label;
    if (!parse_full_double(tok, label))
      fail(ErrorKind::MalformedLine, line_msg(line_no, "bad label token '" + tok + "'"));
    if (!std::isfinite(label))
      fail(ErrorKind::NonFiniteValue, line_msg(line_no, "non-finite label"));

    Example ex;
    std::uint32_t prev_index = 0;
    while (tokens >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        fail(ErrorKind::MalformedLine, line_msg(line_no, "bad feature token '" + tok + "'"));
      std::uint32_t index;
      double value;
      if (!parse_full_u32(tok.substr(0, colon), index) || index == 0)
        fail(ErrorKind::MalformedLine, line_msg(line_no, "bad feature index in '" + tok + "'"));
      if (!parse_full_double(tok.substr(colon + 1), value))
        fail(ErrorKind::MalformedLine, line_msg(line_no, "bad feature value in '" + tok + "'"));
      if (index <= prev_index)
        fail(ErrorKind::NonAscendingIndex,
             line_msg(line_no, "index " + std::to_string(index) + " after " +
                                   std::to_string(prev_index)));
      if (!std::isfinite(value))
        fail(ErrorKind::NonFiniteValue, line_msg(line_no, "non-finite value in '" + tok + "'"));
      prev_index = index;
      ex.features.entries.push_back({index, value});
    }
    d.n_features = std::max<std::size_t>(d.n_features, prev_index);
    ex.target = label;
    raw_labels.push_back(label);
    d.examples.push_back(std::move(ex));
  }

  if (task == Task::Binary) {
    std::vector<double> distinct;
    for (double l : raw_labels)
      if (std::find(distinct.begin(), distinct.end(), l) == distinct.end()) distinct.push_back(l);
    if (distinct.size() > 2)
      fail(ErrorKind::LabelArityMismatch,
           "binary task but " + std::to_string(distinct.size()) + " distinct labels");

    LabelMap map;
    if (distinct.size() == 2) {
      double zero = pick_zero_label(distinct[0], distinct[1]);
      map.raw_zero = zero;
      map.raw_one = (distinct[0] == zero) ? distinct[1] : distinct[0];
    } else if (distinct.size() == 1) {
      if (distinct[0] <= 0.0)
        map.raw_zero = distinct[0];
      else
        map.raw_one = distinct[0];
    }
    for (auto& ex : d.examples)
      ex.target = (map.raw_zero && ex.target == *map.raw_zero) ? 0.0 : (map.raw_one ? 1.0 : 0.0);
    d.label_map = map;
  } else if (task == Task::Multiclass) {
    for (std::size_t i = 0; i < d.examples.size(); ++i) {
      double t = d.examples[i].target;
      if (t < 0.0 || t != std::floor(t))
        fail(ErrorKind::MalformedLine,
             "multiclass label " + format_double(t) + " is not a non-negative integer");
    }
  }
  return d;
}

Dataset parse_libsvm(const std::string& text, Task task) {
  std::istringstream in(text);
  return parse_libsvm(in, task);
}

Dataset parse_libsvm_file(const std::string& path, Task task) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::DatasetNotFound, path);
  return parse_libsvm(in, task);
}

void write_libsvm(const Dataset& d, std::ostream& out) {
  for (const auto& ex : d.examples) {
    out << format_double(ex.target);
    for (const auto& e : ex.features.entries)
      out << ' ' << e.index << ':' << format_double(e.value);
    out << '\n';
  }
}

std::string write_libsvm_string(const Dataset& d) {
  std::ostringstream out;
  write_libsvm(d, out);
  return out.str();
}

void write_libsvm_file(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::DatasetNotFound, "cannot write " + path);
  write_libsvm(d, out);
}

namespace {

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng.below(i)]);
  return idx;
}

Dataset like(const Dataset& d) {
  Dataset out;
  out.n_features = d.n_features;
  out.task = d.task;
  out.label_map = d.label_map;
  return out;
}

}  // namespace

std::pair<Dataset, Dataset> split_dataset(const Dataset& d, double train_fraction,
                                          std::uint64_t seed) {
  if (!(train_fraction >= 0.0 && train_fraction <= 1.0))
    fail(ErrorKind::ConfigInvalid, "train_fraction must lie in [0,1]");

  auto idx = shuffled_indices(d.size(), seed);
  auto n_train = static_cast<std::size_t>(std::llround(train_fraction * double(d.size())));

  Dataset train = like(d);
  Dataset test = like(d);
  for (std::size_t i = 0; i < idx.size(); ++i)
    (i < n_train ? train : test).examples.push_back(d.examples[idx[i]]);
  return {std::move(train), std::move(test)};
}

Dataset subsample_dataset(const Dataset& d, std::size_t n, std::uint64_t seed) {
  if (n >= d.size()) return d;
  auto idx = shuffled_indices(d.size(), seed);
  Dataset out = like(d);
  out.examples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.examples.push_back(d.examples[idx[i]]);
  return out;
}

Dataset generate_synthetic(SyntheticFn fn, std::size_t n, double x_lo, double x_hi,
                           SyntheticMode mode, std::uint64_t seed) {
  if (!(x_lo <= x_hi)) fail(ErrorKind::InvalidRange, "empty x range");
  if (fn == SyntheticFn::Sqrt && x_lo < 0.0)
    fail(ErrorKind::InvalidRange, "sqrt needs a non-negative range");

  Rng rng(seed);
  std::vector<double> xs(n);
  std::vector<double> fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = rng.uniform(x_lo, x_hi);
    fs[i] = (fn == SyntheticFn::Sqrt) ? std::sqrt(xs[i]) : std::exp(xs[i]);
  }

  Dataset d;
  d.n_features = n > 0 ? 1 : 0;
  if (mode == SyntheticMode::Regression) {
    d.task = Task::Regression;
    for (std::size_t i = 0; i < n; ++i)
      d.examples.push_back({SparseVector{{{1, xs[i]}}}, fs[i]});
  } else {
    d.task = Task::Binary;
    d.label_map = LabelMap{0.0, 1.0};
    double median = 0.0;
    if (n > 0) {
      std::vector<double> sorted = fs;
      std::sort(sorted.begin(), sorted.end());
      median = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    }
    for (std::size_t i = 0; i < n; ++i)
      d.examples.push_back({SparseVector{{{1, xs[i]}}}, fs[i] > median ? 1.0 : 0.0});
  }
  return d;
}

}  // namespace linml

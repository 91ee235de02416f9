#include "gkl/fields.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gkl {

namespace {

void require_dim(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("field: dimension must be >= 1");
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

class ConstField final : public ScalarField {
 public:
  ConstField(std::size_t dim, double c) : dim_(dim), c_(c) {}
  double operator()(std::span<const double>) const override { return c_; }
  std::size_t dim() const override { return dim_; }
  double sup_bound() const override { return std::abs(c_); }
  std::string name() const override { return "const(" + num(c_) + ")"; }

 private:
  std::size_t dim_;
  double c_;
};

class CoordinateField final : public ScalarField {
 public:
  CoordinateField(std::size_t dim, std::size_t i) : dim_(dim), i_(i) {}
  double operator()(std::span<const double> y) const override { return y[i_ - 1]; }
  std::size_t dim() const override { return dim_; }
  double sup_bound() const override { return std::numeric_limits<double>::infinity(); }
  std::string name() const override { return "coordinate(" + std::to_string(i_) + ")"; }

 private:
  std::size_t dim_, i_;
};

class GaussBump final : public ScalarField {
 public:
  GaussBump(std::size_t dim, double width, double center)
      : dim_(dim), width_(width), center_(center) {}
  double operator()(std::span<const double> y) const override {
    double d2 = (y[0] - center_) * (y[0] - center_);
    for (std::size_t i = 1; i < y.size(); ++i) d2 += y[i] * y[i];
    return std::exp(-d2 / (width_ * width_));
  }
  std::size_t dim() const override { return dim_; }
  double sup_bound() const override { return 1.0; }
  std::string name() const override {
    return "gauss-bump(" + num(width_) + "," + num(center_) + ")";
  }

 private:
  std::size_t dim_;
  double width_, center_;
};

class SinX1 final : public ScalarField {
 public:
  SinX1(std::size_t dim, double k) : dim_(dim), k_(k) {}
  double operator()(std::span<const double> y) const override { return std::sin(k_ * y[0]); }
  std::size_t dim() const override { return dim_; }
  double sup_bound() const override { return 1.0; }
  std::string name() const override { return "sin-x1(" + num(k_) + ")"; }

 private:
  std::size_t dim_;
  double k_;
};

class SinX1Sq final : public ScalarField {
 public:
  explicit SinX1Sq(std::size_t dim) : dim_(dim) {}
  double operator()(std::span<const double> y) const override {
    return std::sin(0.5 * y[0] * y[0]);
  }
  std::size_t dim() const override { return dim_; }
  double sup_bound() const override { return 1.0; }
  std::string name() const override { return "sin-x1sq"; }

 private:
  std::size_t dim_;
};

class Snowflake final : public ScalarField {
 public:
  Snowflake(std::size_t dim, double p, double alpha) : dim_(dim), p_(p), alpha_(alpha) {}
  double operator()(std::span<const double> y) const override {
    double d2 = (y[0] - p_) * (y[0] - p_);
    for (std::size_t i = 1; i < y.size(); ++i) d2 += y[i] * y[i];
    return d2 >= 1.0 ? 1.0 : std::pow(d2, 0.5 * alpha_);
  }
  std::size_t dim() const override { return dim_; }
  double sup_bound() const override { return 1.0; }
  std::string name() const override { return "snowflake(" + num(p_) + "," + num(alpha_) + ")"; }
  std::vector<double> kinks() const override {
    if (dim_ != 1) return {};
    return {p_ - 1.0, p_, p_ + 1.0};
  }

 private:
  std::size_t dim_;
  double p_, alpha_;
};

class AffineField final : public ScalarField {
 public:
  AffineField(FieldPtr f, double lambda, double c) : f_(std::move(f)), lambda_(lambda), c_(c) {}
  double operator()(std::span<const double> y) const override { return lambda_ * (*f_)(y) + c_; }
  std::size_t dim() const override { return f_->dim(); }
  double sup_bound() const override { return std::abs(lambda_) * f_->sup_bound() + std::abs(c_); }
  std::string name() const override {
    return num(lambda_) + "*" + f_->name() + (c_ == 0.0 ? "" : "+" + num(c_));
  }
  std::vector<double> kinks() const override { return f_->kinks(); }

 private:
  FieldPtr f_;
  double lambda_, c_;
};

// Whitespace tokenizer that remembers line numbers for error messages.
struct Token {
  std::string text;
  int line;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) out.push_back({tok, lineno});
  }
  return out;
}

}  // namespace

FieldPtr make_const_field(std::size_t dim, double c) {
  require_dim(dim);
  if (!std::isfinite(c)) throw std::invalid_argument("const: value must be finite");
  return std::make_shared<ConstField>(dim, c);
}

FieldPtr make_coordinate_field(std::size_t dim, std::size_t i) {
  require_dim(dim);
  if (i < 1 || i > dim) throw std::invalid_argument("coordinate: index out of range");
  return std::make_shared<CoordinateField>(dim, i);
}

FieldPtr make_gauss_bump(std::size_t dim, double width, double center) {
  require_dim(dim);
  if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(center)) {
    throw std::invalid_argument("gauss-bump: width must be finite and > 0");
  }
  return std::make_shared<GaussBump>(dim, width, center);
}

FieldPtr make_sin_x1(std::size_t dim, double k) {
  require_dim(dim);
  if (!std::isfinite(k)) throw std::invalid_argument("sin-x1: frequency must be finite");
  return std::make_shared<SinX1>(dim, k);
}

FieldPtr make_sin_x1sq(std::size_t dim) {
  require_dim(dim);
  return std::make_shared<SinX1Sq>(dim);
}

FieldPtr make_snowflake(std::size_t dim, double p, double alpha) {
  require_dim(dim);
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("snowflake: alpha must be in (0,1)");
  if (!std::isfinite(p)) throw std::invalid_argument("snowflake: p must be finite");
  return std::make_shared<Snowflake>(dim, p, alpha);
}

FieldPtr make_affine(FieldPtr f, double lambda, double c) {
  if (!f) throw std::invalid_argument("affine: null field");
  if (!std::isfinite(lambda) || !std::isfinite(c)) {
    throw std::invalid_argument("affine: coefficients must be finite");
  }
  return std::make_shared<AffineField>(std::move(f), lambda, c);
}

GridField::GridField(std::vector<std::vector<double>> axes, std::vector<double> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
  if (axes_.empty()) throw std::invalid_argument("grid: need at least one axis");
  std::size_t total = 1;
  strides_.assign(axes_.size(), 1);
  for (std::size_t d = axes_.size(); d-- > 0;) {
    const auto& ax = axes_[d];
    if (ax.empty()) throw std::invalid_argument("grid: empty axis");
    for (std::size_t i = 1; i < ax.size(); ++i) {
      if (!(ax[i] > ax[i - 1])) throw std::invalid_argument("grid: axis coordinates must increase");
    }
    strides_[d] = total;
    total *= ax.size();
  }
  if (values_.size() != total) throw std::invalid_argument("grid: value count mismatch");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("grid: non-finite value");
    sup_ = std::max(sup_, std::abs(v));
  }
}

std::shared_ptr<const GridField> GridField::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("grid: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

std::shared_ptr<const GridField> GridField::parse(const std::string& text,
                                                  const std::string& source) {
  const std::vector<Token> toks = tokenize(text);
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg, int line) -> std::invalid_argument {
    return std::invalid_argument(source + ":" + std::to_string(line) + ": " + msg);
  };
  auto last_line = [&] { return toks.empty() ? 1 : toks.back().line; };
  auto next_number = [&](const char* what) {
    if (pos >= toks.size()) throw fail(std::string("unexpected end of file, expected ") + what, last_line());
    const Token& tk = toks[pos++];
    try {
      std::size_t used = 0;
      const double v = std::stod(tk.text, &used);
      if (used != tk.text.size() || !std::isfinite(v)) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw fail("expected " + std::string(what) + ", got '" + tk.text + "'", tk.line);
    }
  };
  auto next_count = [&](const char* what) {
    const int line = pos < toks.size() ? toks[pos].line : last_line();
    const double v = next_number(what);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e8) throw fail(std::string(what) + " must be a positive integer", line);
    return static_cast<std::size_t>(v);
  };

  const std::size_t n = next_count("dimension");
  std::vector<std::size_t> sizes(n);
  std::size_t total = 1;
  for (auto& s : sizes) {
    s = next_count("axis size");
    total *= s;
  }
  if (total > 50'000'000) throw fail("grid too large", toks.front().line);
  std::vector<std::vector<double>> axes(n);
  for (std::size_t d = 0; d < n; ++d) {
    for (std::size_t i = 0; i < sizes[d]; ++i) {
      const int line = pos < toks.size() ? toks[pos].line : last_line();
      axes[d].push_back(next_number("axis coordinate"));
      if (i > 0 && !(axes[d][i] > axes[d][i - 1])) {
        throw fail("axis " + std::to_string(d + 1) + " coordinates must be strictly increasing", line);
      }
    }
  }
  std::vector<double> values(total);
  for (double& v : values) v = next_number("grid value");
  if (pos != toks.size()) throw fail("trailing data after " + std::to_string(total) + " values", toks[pos].line);
  return std::make_shared<GridField>(std::move(axes), std::move(values));
}

std::vector<double> GridField::kinks() const {
  if (axes_.size() != 1) return {};
  return axes_[0];
}

double GridField::operator()(std::span<const double> y) const {
  const std::size_t n = axes_.size();
  // Per-axis lower index and weight of the upper neighbour.
  std::vector<std::size_t> lo(n);
  std::vector<double> w(n);
  bool clamped = false;
  for (std::size_t d = 0; d < n; ++d) {
    const auto& ax = axes_[d];
    double v = y[d];
    if (v < ax.front() || v > ax.back()) {
      clamped = true;
      v = std::clamp(v, ax.front(), ax.back());
    }
    if (ax.size() == 1) {
      lo[d] = 0;
      w[d] = 0.0;
      continue;
    }
    auto it = std::upper_bound(ax.begin(), ax.end(), v);
    std::size_t i = static_cast<std::size_t>(it - ax.begin());
    i = std::clamp<std::size_t>(i, 1, ax.size() - 1) - 1;
    lo[d] = i;
    w[d] = (v - ax[i]) / (ax[i + 1] - ax[i]);
  }
  if (clamped && !warned_.exchange(true)) {
    std::fprintf(stderr, "warning: grid field evaluated outside its hull; using constant extrapolation\n");
  }
  double acc = 0.0;
  for (std::size_t corner = 0; corner < (std::size_t{1} << n); ++corner) {
    double weight = 1.0;
    std::size_t idx = 0;
    for (std::size_t d = 0; d < n; ++d) {
      const bool up = (corner >> d) & 1u;
      if (up && axes_[d].size() == 1) {
        weight = 0.0;
        break;
      }
      weight *= up ? w[d] : 1.0 - w[d];
      idx += (lo[d] + (up ? 1 : 0)) * strides_[d];
    }
    if (weight != 0.0) acc += weight * values_[idx];
  }
  return acc;
}

FieldPtr parse_field(const std::string& spec_in, std::size_t dim) {
  std::string spec;
  for (char c : spec_in) {
    if (!std::isspace(static_cast<unsigned char>(c))) spec.push_back(c);
  }
  std::string name = spec;
  std::vector<std::string> args;
  if (auto open = spec.find('('); open != std::string::npos) {
    if (spec.back() != ')') throw std::invalid_argument("field '" + spec_in + "': missing ')'");
    name = spec.substr(0, open);
    const std::string inner = spec.substr(open + 1, spec.size() - open - 2);
    if (name == "grid") {
      args.push_back(inner);
    } else if (!inner.empty()) {
      std::stringstream ss(inner);
      std::string a;
      while (std::getline(ss, a, ',')) args.push_back(a);
    }
  }
  auto arg = [&](std::size_t i) {
    try {
      std::size_t used = 0;
      const double v = std::stod(args.at(i), &used);
      if (used != args[i].size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument("field '" + spec_in + "': bad parameter " + std::to_string(i + 1));
    }
  };
  auto want = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      throw std::invalid_argument("field '" + name + "': expected " + std::to_string(lo) +
                                  (lo == hi ? "" : ".." + std::to_string(hi)) + " parameters");
    }
  };
  if (name == "const") {
    want(0, 1);
    return make_const_field(dim, args.empty() ? 1.0 : arg(0));
  }
  if (name == "coordinate") {
    want(0, 1);
    const double i = args.empty() ? 1.0 : arg(0);
    if (i != std::floor(i) || i < 1) throw std::invalid_argument("coordinate: index must be a positive integer");
    return make_coordinate_field(dim, static_cast<std::size_t>(i));
  }
  if (name == "gauss-bump") {
    want(0, 2);
    return make_gauss_bump(dim, args.empty() ? 1.0 : arg(0), args.size() < 2 ? 0.0 : arg(1));
  }
  if (name == "sin-x1") {
    want(0, 1);
    return make_sin_x1(dim, args.empty() ? 1.0 : arg(0));
  }
  if (name == "sin-x1sq") {
    want(0, 0);
    return make_sin_x1sq(dim);
  }
  if (name == "snowflake") {
    want(2, 2);
    return make_snowflake(dim, arg(0), arg(1));
  }
  if (name == "grid") {
    want(1, 1);
    auto g = GridField::load(args[0]);
    if (g->dim() != dim) throw std::invalid_argument("grid: file dimension does not match n");
    return g;
  }
  throw std::invalid_argument("unknown function '" + name + "'");
}

}  // namespace gkl

#include "kvol/geometry.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace kvol {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

double immersion_content(const ImmersionSpec& spec) {
  const int k = spec.param_dim;
  if (k <= 0 || spec.ambient_dim < k) {
    throw std::domain_error("immersion needs 0 < k <= n");
  }
  if (static_cast<int>(spec.domain.size()) != k ||
      static_cast<int>(spec.resolution.size()) != k) {
    throw std::domain_error("domain and resolution must have one entry per "
                            "parameter axis");
  }
  if (!spec.jacobian) {
    throw std::domain_error("immersion spec has no Jacobian sampler");
  }

  double cell_measure = 1.0;
  std::vector<double> width(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const auto& iv = spec.domain[static_cast<std::size_t>(i)];
    if (!(iv.hi > iv.lo)) {
      throw std::domain_error("degenerate parameter interval");
    }
    const int res = spec.resolution[static_cast<std::size_t>(i)];
    if (res < 1) throw std::domain_error("resolution must be >= 1 per axis");
    width[static_cast<std::size_t>(i)] = (iv.hi - iv.lo) / res;
    cell_measure *= width[static_cast<std::size_t>(i)];
  }

  // Midpoint samples, cells visited in lexicographic order (last axis
  // fastest) so the float result is deterministic per resolution.
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  std::vector<double> p(static_cast<std::size_t>(k));
  KahanSum acc;
  for (;;) {
    for (int i = 0; i < k; ++i) {
      p[static_cast<std::size_t>(i)] =
          spec.domain[static_cast<std::size_t>(i)].lo +
          (idx[static_cast<std::size_t>(i)] + 0.5) *
              width[static_cast<std::size_t>(i)];
    }
    const Matrix<double> j = spec.jacobian(p);
    if (j.rows() != spec.ambient_dim || j.cols() != k) {
      throw std::domain_error("Jacobian sampler returned wrong shape");
    }
    double g = determinant(gram(j).matrix());
    if (g < -1e-12) {
      throw std::domain_error("negative det(g) signals a broken sampler");
    }
    if (g < 0.0) g = 0.0;
    acc.add(std::sqrt(g));

    int axis = k - 1;
    while (axis >= 0) {
      if (++idx[static_cast<std::size_t>(axis)] <
          spec.resolution[static_cast<std::size_t>(axis)]) {
        break;
      }
      idx[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return cell_measure * acc.sum;
}

std::function<Matrix<double>(std::span<const double>)>
central_difference_jacobian(
    std::function<std::vector<double>(std::span<const double>)> position,
    int param_dim, int ambient_dim) {
  const double base_step = std::cbrt(std::ldexp(1.0, -52));
  return [=](std::span<const double> p) {
    Matrix<double> j(ambient_dim, param_dim);
    std::vector<double> shifted(p.begin(), p.end());
    for (int axis = 0; axis < param_dim; ++axis) {
      const double x = p[static_cast<std::size_t>(axis)];
      const double h = base_step * std::max(1.0, std::fabs(x));
      shifted[static_cast<std::size_t>(axis)] = x + h;
      const std::vector<double> fwd = position(shifted);
      shifted[static_cast<std::size_t>(axis)] = x - h;
      const std::vector<double> bwd = position(shifted);
      shifted[static_cast<std::size_t>(axis)] = x;
      if (static_cast<int>(fwd.size()) != ambient_dim ||
          static_cast<int>(bwd.size()) != ambient_dim) {
        throw std::domain_error("position sampler returned wrong dimension");
      }
      for (int r = 0; r < ambient_dim; ++r) {
        j(r, axis) = (fwd[static_cast<std::size_t>(r)] -
                      bwd[static_cast<std::size_t>(r)]) /
                     (2.0 * h);
      }
    }
    return j;
  };
}

namespace {

using Params = std::map<std::string, double>;

double take(Params& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = it->second;
  params.erase(it);
  return v;
}

void require_positive(const std::string& shape, const std::string& key,
                      double v) {
  if (!(v > 0.0)) {
    throw std::invalid_argument(shape + ": parameter " + key +
                                " must be positive");
  }
}

Params parse_params(const std::string& shape, const std::string& body) {
  Params params;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(shape + ": expected param=value, got '" +
                                  item + "'");
    }
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    auto trim = [](std::string& s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
    };
    trim(key);
    trim(val);
    std::size_t used = 0;
    double parsed = 0.0;
    try {
      parsed = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != val.size() || !std::isfinite(parsed)) {
      throw std::invalid_argument(shape + ": bad value for " + key + ": '" +
                                  val + "'");
    }
    if (!params.emplace(key, parsed).second) {
      throw std::invalid_argument(shape + ": duplicate parameter " + key);
    }
  }
  return params;
}

Shape build_shape(const std::string& name, Params params) {
  Shape shape;
  shape.name = name;

  auto constant_jacobian = [](Matrix<double> j) {
    return [j = std::move(j)](std::span<const double>) { return j; };
  };

  if (name == "segment") {
    const double x = take(params, "x", 1.0);
    const double y = take(params, "y", 0.0);
    const double z = take(params, "z", 0.0);
    Matrix<double> j(3, 1);
    j(0, 0) = x;
    j(1, 0) = y;
    j(2, 0) = z;
    shape.spec = {1, 3, {{0.0, 1.0}}, constant_jacobian(std::move(j)), {}};
    shape.closed_form = std::sqrt(x * x + y * y + z * z);
  } else if (name == "circle") {
    const double r = take(params, "r", 1.0);
    const double angle = take(params, "angle", kTwoPi);
    require_positive(name, "r", r);
    require_positive(name, "angle", angle);
    shape.spec = {1,
                  2,
                  {{0.0, angle}},
                  [r](std::span<const double> p) {
                    Matrix<double> j(2, 1);
                    j(0, 0) = -r * std::sin(p[0]);
                    j(1, 0) = r * std::cos(p[0]);
                    return j;
                  },
                  {}};
    shape.closed_form = r * angle;
  } else if (name == "helix") {
    const double r = take(params, "r", 1.0);
    const double pitch = take(params, "pitch", 1.0);  // height per turn
    const double turns = take(params, "turns", 1.0);
    require_positive(name, "r", r);
    require_positive(name, "turns", turns);
    const double rise = pitch / kTwoPi;
    shape.spec = {1,
                  3,
                  {{0.0, kTwoPi * turns}},
                  [r, rise](std::span<const double> p) {
                    Matrix<double> j(3, 1);
                    j(0, 0) = -r * std::sin(p[0]);
                    j(1, 0) = r * std::cos(p[0]);
                    j(2, 0) = rise;
                    return j;
                  },
                  {}};
    shape.closed_form = kTwoPi * turns * std::sqrt(r * r + rise * rise);
  } else if (name == "patch") {
    const double w = take(params, "w", 1.0);
    const double h = take(params, "h", 1.0);
    require_positive(name, "w", w);
    require_positive(name, "h", h);
    Matrix<double> j(3, 2);
    j(0, 0) = 1.0;
    j(1, 1) = 1.0;
    shape.spec = {2,
                  3,
                  {{0.0, w}, {0.0, h}},
                  constant_jacobian(std::move(j)),
                  {}};
    shape.closed_form = w * h;
  } else if (name == "sphere") {
    const double r = take(params, "r", 1.0);
    require_positive(name, "r", r);
    shape.spec = {2,
                  3,
                  {{0.0, std::numbers::pi}, {0.0, kTwoPi}},
                  [r](std::span<const double> p) {
                    const double th = p[0], ph = p[1];
                    Matrix<double> j(3, 2);
                    j(0, 0) = r * std::cos(th) * std::cos(ph);
                    j(1, 0) = r * std::cos(th) * std::sin(ph);
                    j(2, 0) = -r * std::sin(th);
                    j(0, 1) = -r * std::sin(th) * std::sin(ph);
                    j(1, 1) = r * std::sin(th) * std::cos(ph);
                    j(2, 1) = 0.0;
                    return j;
                  },
                  {}};
    shape.closed_form = 4.0 * std::numbers::pi * r * r;
  } else if (name == "torus") {
    const double big = take(params, "R", 2.0);
    const double small = take(params, "r", 1.0);
    require_positive(name, "R", big);
    require_positive(name, "r", small);
    shape.spec = {2,
                  3,
                  {{0.0, kTwoPi}, {0.0, kTwoPi}},
                  [big, small](std::span<const double> p) {
                    const double th = p[0], ph = p[1];
                    Matrix<double> j(3, 2);
                    j(0, 0) = -small * std::sin(th) * std::cos(ph);
                    j(1, 0) = -small * std::sin(th) * std::sin(ph);
                    j(2, 0) = small * std::cos(th);
                    j(0, 1) = -(big + small * std::cos(th)) * std::sin(ph);
                    j(1, 1) = (big + small * std::cos(th)) * std::cos(ph);
                    j(2, 1) = 0.0;
                    return j;
                  },
                  {}};
    shape.closed_form = 4.0 * std::numbers::pi * std::numbers::pi * big * small;
  } else if (name == "graph") {
    // Saddle patch z = a*x*y over the unit square; no simple closed form.
    const double a = take(params, "a", 1.0);
    shape.spec = {2,
                  3,
                  {{0.0, 1.0}, {0.0, 1.0}},
                  [a](std::span<const double> p) {
                    Matrix<double> j(3, 2);
                    j(0, 0) = 1.0;
                    j(1, 1) = 1.0;
                    j(2, 0) = a * p[1];
                    j(2, 1) = a * p[0];
                    return j;
                  },
                  {}};
  } else {
    throw std::invalid_argument("unknown shape '" + name + "'");
  }

  if (!params.empty()) {
    throw std::invalid_argument(name + ": unknown parameter '" +
                                params.begin()->first + "'");
  }
  shape.spec.resolution.assign(
      static_cast<std::size_t>(shape.spec.param_dim), 1);
  return shape;
}

}  // namespace

Shape make_shape(const std::string& spec_string) {
  const auto open = spec_string.find('(');
  std::string name;
  std::string body;
  if (open == std::string::npos) {
    name = spec_string;
  } else {
    if (spec_string.back() != ')') {
      throw std::invalid_argument("shape spec must look like name(k=v,...)");
    }
    name = spec_string.substr(0, open);
    body = spec_string.substr(open + 1, spec_string.size() - open - 2);
  }
  return build_shape(name, parse_params(name, body));
}

std::vector<std::string> shape_catalog() {
  return {"segment", "circle", "helix", "patch", "sphere", "torus", "graph"};
}

}  // namespace kvol

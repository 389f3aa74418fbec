#include "segbound/data_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "segbound/error.hpp"

namespace segbound {

double Instance::dot(const Vector& w) const {
  double s = 0.0;
  for (const auto& f : features) s += f.value * w[f.index - 1];
  return s;
}

double Instance::squared_norm() const {
  double s = 0.0;
  for (const auto& f : features) s += f.value * f.value;
  return s;
}

int Instance::max_index() const {
  return features.empty() ? 0 : features.back().index;
}

Vector Instance::to_dense(int dim) const {
  Vector v = Vector::Zero(dim);
  for (const auto& f : features) v[f.index - 1] = f.value;
  return v;
}

namespace {

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

double parse_real(const std::string& tok, std::size_t line, const char* what) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
    throw ParseError(std::string("bad ") + what + " '" + tok + "'", line);
  return v;
}

Instance parse_line(const std::string& text, std::size_t line) {
  std::istringstream ss(text);
  std::string tok;
  ss >> tok;
  double y = parse_real(tok, line, "label");
  if (y == 0.0) throw ParseError("label 0 has no sign", line);

  Instance inst;
  inst.label = y > 0 ? 1 : -1;
  int prev = 0;
  while (ss >> tok) {
    auto colon = tok.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
      throw ParseError("expected idx:val, got '" + tok + "'", line);
    std::string idx_str = tok.substr(0, colon);
    char* end = nullptr;
    errno = 0;
    long idx = std::strtol(idx_str.c_str(), &end, 10);
    if (*end != '\0' || errno == ERANGE || idx < 1 ||
        idx > std::numeric_limits<int>::max())
      throw ParseError("bad feature index '" + idx_str + "'", line);
    if (idx <= prev)
      throw ParseError("feature indices must be strictly increasing", line);
    prev = static_cast<int>(idx);
    double v = parse_real(tok.substr(colon + 1), line, "feature value");
    inst.features.push_back({prev, v});
  }
  return inst;
}

std::uint64_t instance_hash(const Instance& inst) {
  std::uint64_t h = static_cast<std::uint64_t>(inst.label + 2);
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (const auto& f : inst.features) {
    mix(static_cast<std::uint64_t>(f.index));
    mix(std::hash<double>{}(f.value));
  }
  return h;
}

// First `k` entries of a seeded partial Fisher-Yates shuffle of 0..n-1.
std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t k,
                                                    std::mt19937_64& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace

Dataset parse_libsvm(std::istream& in) {
  Dataset d;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (blank(text)) continue;
    d.instances.push_back(parse_line(text, line));
    d.dim = std::max(d.dim, d.instances.back().max_index());
  }
  if (d.instances.empty()) throw ParseError("zero instances");
  return d;
}

Dataset parse_libsvm(const std::string& text) {
  std::istringstream in(text);
  return parse_libsvm(in);
}

Dataset load_libsvm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return parse_libsvm(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_libsvm(std::ostream& out, const Dataset& d) {
  out << std::setprecision(17);
  for (const auto& inst : d.instances) {
    out << (inst.label > 0 ? "+1" : "-1");
    for (const auto& f : inst.features) out << ' ' << f.index << ':' << f.value;
    out << '\n';
  }
}

std::string to_libsvm(const Dataset& d) {
  std::ostringstream out;
  write_libsvm(out, d);
  return out.str();
}

void align_dims(std::vector<Dataset*> sets) {
  int dim = 0;
  for (const auto* s : sets) dim = std::max(dim, s->dim);
  for (auto* s : sets) s->dim = dim;
}

Dataset augment_bias(const Dataset& d) {
  Dataset out = d;
  out.dim = d.dim + 1;
  for (auto& inst : out.instances) inst.features.push_back({out.dim, 1.0});
  return out;
}

Modification plan_modification(const Dataset& base, const Dataset& pool,
                               const ModificationPlan& plan) {
  if (!(plan.p_up >= 0.0) || !std::isfinite(plan.p_up))
    throw InvalidArgument("p_up must be a finite non-negative ratio");
  if (!(plan.add_fraction >= 0.0 && plan.add_fraction <= 1.0))
    throw InvalidArgument("add_fraction must lie in [0, 1]");

  const double n0 = static_cast<double>(base.size());
  const auto n_add =
      static_cast<std::size_t>(std::llround(plan.add_fraction * plan.p_up * n0));
  const auto n_rem = static_cast<std::size_t>(
      std::llround((1.0 - plan.add_fraction) * plan.p_up * n0));
  if (n_rem > base.size())
    throw InvalidArgument("cannot remove " + std::to_string(n_rem) + " of " +
                          std::to_string(base.size()) + " base instances");
  if (n_add > pool.size())
    throw InvalidArgument("pool holds " + std::to_string(pool.size()) +
                          " instances, " + std::to_string(n_add) + " requested");

  if (plan.require_disjoint && n_add > 0) {
    std::unordered_multimap<std::uint64_t, const Instance*> seen;
    for (const auto& inst : base.instances)
      seen.emplace(instance_hash(inst), &inst);
    for (const auto& inst : pool.instances) {
      auto [lo, hi] = seen.equal_range(instance_hash(inst));
      for (auto it = lo; it != hi; ++it)
        if (*it->second == inst)
          throw InvalidArgument("pool overlaps base dataset");
    }
  }

  std::mt19937_64 rng(plan.seed);
  Modification m;
  m.removed = sample_without_replacement(base.size(), n_rem, rng);
  for (std::size_t i : sample_without_replacement(pool.size(), n_add, rng))
    m.added.push_back(pool.instances[i]);
  return m;
}

void check_modification(const Dataset& base, const Modification& m) {
  std::vector<bool> hit(base.size(), false);
  for (std::size_t i : m.removed) {
    if (i >= base.size())
      throw InvalidArgument("removed index " + std::to_string(i) +
                            " out of range");
    if (hit[i])
      throw InvalidArgument("removed index " + std::to_string(i) +
                            " listed twice");
    hit[i] = true;
  }
}

Dataset apply_modification(const Dataset& base, const Modification& m) {
  check_modification(base, m);
  std::vector<bool> gone(base.size(), false);
  for (std::size_t i : m.removed) gone[i] = true;

  Dataset out;
  out.dim = base.dim;
  out.instances.reserve(base.size() - m.n_removed() + m.n_added());
  for (std::size_t i = 0; i < base.size(); ++i)
    if (!gone[i]) out.instances.push_back(base.instances[i]);
  for (const auto& inst : m.added) {
    out.instances.push_back(inst);
    out.dim = std::max(out.dim, inst.max_index());
  }
  return out;
}

Dataset make_two_gaussians(std::size_t n, int dim, double separation,
                           std::uint64_t seed) {
  if (dim < 1) throw InvalidArgument("dim must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  Vector dir(dim);
  for (int j = 0; j < dim; ++j) dir[j] = normal(rng);
  dir.normalize();

  std::bernoulli_distribution coin(0.5);
  Dataset d;
  d.dim = dim;
  d.instances.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Instance inst;
    inst.label = coin(rng) ? 1 : -1;
    inst.features.reserve(dim);
    for (int j = 0; j < dim; ++j) {
      double v = normal(rng) + 0.5 * separation * inst.label * dir[j];
      inst.features.push_back({j + 1, v});
    }
    d.instances.push_back(std::move(inst));
  }
  return d;
}

}  // namespace segbound

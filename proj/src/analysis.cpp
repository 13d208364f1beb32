#include "lightcyl/analysis.hpp"

#include <atomic>
#include <cstdio>
#include <sstream>
#include <thread>

namespace lightcyl {

std::string fingerprint(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<int> parse_grid(const std::string& text, int n_params) {
  std::vector<int> counts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || part.empty() || v < 1) throw UsageError("grid must look like 16x16, got '" + text + "'");
    counts.push_back(v);
  }
  if (counts.size() == 1) counts.assign(static_cast<size_t>(n_params), counts[0]);
  if (static_cast<int>(counts.size()) != n_params)
    throw UsageError("grid '" + text + "' has " + std::to_string(counts.size()) + " axes but the spec has " +
                     std::to_string(n_params) + " parameters");
  return counts;
}

std::vector<Interval> parse_domain_overrides(const std::string& text, const ImmersionSpec& spec) {
  std::vector<Interval> out = spec.param_domain;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    const auto colon = item.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos)
      throw UsageError("domain override must look like name=lo:hi, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    int idx = -1;
    for (int i = 0; i < spec.n_params; ++i)
      if (spec.param_names[static_cast<size_t>(i)] == name) idx = i;
    if (idx < 0) throw UsageError("domain override names unknown parameter '" + name + "'");
    Interval iv;
    try {
      iv.lo = evaluate_constant_expression(item.substr(eq + 1, colon - eq - 1));
      iv.hi = evaluate_constant_expression(item.substr(colon + 1));
    } catch (const ParseError& e) {
      throw UsageError("domain override '" + item + "': " + e.what());
    }
    if (!(iv.lo < iv.hi)) throw UsageError("domain override '" + item + "' is empty");
    out[static_cast<size_t>(idx)] = iv;
  }
  return out;
}

std::vector<double> grid_axis(Interval iv, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(iv.lo + (k + 0.5) * (iv.hi - iv.lo) / count);
  return out;
}

namespace {

void analyze_node(const ImmersionSpec& spec, const JetField& field, const AnalysisOptions& opt, NodeResult& node) {
  try {
    if (spec.mode == AmbientMode::Cone) {
      node.cone = analyze_cone_point(spec, std::span<const double>(node.point.data(), node.point.size()), opt.tol);
      return;
    }
    AnalysisOptions local = opt;
    try {
      node.report = analyze_point(field, node.point, local);
    } catch (const StencilError&) {
      local.residuals = false;
      node.report = analyze_point(field, node.point, local);
    }
  } catch (const NotOnCylinderError& e) {
    node.status = "not_on_cylinder";
    node.message = e.what();
  } catch (const DegenerateSubspaceError& e) {
    node.status = "degenerate_metric";
    node.message = e.what();
  } catch (const DegenerateNormalError& e) {
    node.status = "degenerate_normal";
    node.message = e.what();
  } catch (const DomainError& e) {
    node.status = "domain";
    node.message = e.what();
  } catch (const StencilError& e) {
    node.status = "stencil";
    node.message = e.what();
  } catch (const Error& e) {
    node.status = "error";
    node.message = e.what();
  }
}

}  // namespace

AnalysisReport analyze_spec(const ImmersionSpec& spec, const std::vector<int>& counts,
                            const std::vector<Interval>& domain, const AnalysisOptions& opt, int threads) {
  if (static_cast<int>(counts.size()) != spec.n_params || static_cast<int>(domain.size()) != spec.n_params)
    throw DimensionError("analyze_spec: grid does not match the parameter count");
  for (int i = 0; i < spec.n_params; ++i)
    if (!domain[static_cast<size_t>(i)].bounded())
      throw UsageError("parameter '" + spec.param_names[static_cast<size_t>(i)] +
                       "' has no bounded domain; declare one or pass --domain");

  AnalysisReport rep;
  rep.fingerprint = fingerprint(spec.source);
  rep.mode = spec.mode;
  rep.param_names = spec.param_names;
  rep.counts = counts;
  rep.domain = domain;
  rep.options = opt;

  std::vector<std::vector<double>> axes;
  size_t total = 1;
  for (int i = 0; i < spec.n_params; ++i) {
    axes.push_back(grid_axis(domain[static_cast<size_t>(i)], counts[static_cast<size_t>(i)]));
    total *= static_cast<size_t>(counts[static_cast<size_t>(i)]);
  }
  rep.nodes.resize(total);
  for (size_t k = 0; k < total; ++k) {
    NodeResult& node = rep.nodes[k];
    node.index.assign(static_cast<size_t>(spec.n_params), 0);
    node.point.resize(spec.n_params);
    size_t rest = k;
    for (int i = spec.n_params - 1; i >= 0; --i) {
      const size_t c = static_cast<size_t>(counts[static_cast<size_t>(i)]);
      node.index[static_cast<size_t>(i)] = static_cast<int>(rest % c);
      node.point(i) = axes[static_cast<size_t>(i)][rest % c];
      rest /= c;
    }
  }

  JetField field = jet_field(spec);
  field.domain = spec.param_domain;
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t k = next++; k < total; k = next++) analyze_node(spec, field, opt, rep.nodes[k]);
  };
  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<size_t>(n_threads, total));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rep;
}

}  // namespace lightcyl

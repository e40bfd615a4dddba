#include "c0ip/study.hpp"

#include <atomic>
#include <chrono>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "c0ip/problems.hpp"

namespace c0ip {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format(const char* fmt, double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string sci(double v) { return format("%.9e", v); }
std::string gen(double v) { return format("%.10g", v); }

std::string h_label(const StudyRow& row) {
  if (row.n > 0) return "1/" + std::to_string(row.n);
  return format("%.4g", row.errors.h);
}

ErrorReport nan_report() {
  ErrorReport r;
  r.l2 = r.h1 = r.h2_broken = r.h3_broken = kNaN;
  r.jump_n_1 = r.jump_n_3 = r.jump_nn_1 = kNaN;
  r.triple2 = r.triple3 = r.norm_iota_h = kNaN;
  return r;
}

ManufacturedProblem make_problem(StudyExample example, double iota) {
  switch (example) {
    case StudyExample::Example1: return example1(iota);
    case StudyExample::Example2: {
      auto p = example2();
      p.iota = iota;
      return p;
    }
    case StudyExample::Custom:
    default:
      return custom_problem("custom", iota, [](const Point&) { return 1.0; });
  }
}

template <class T, class Parse>
std::vector<T> parse_list(std::string_view text, Parse parse) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    std::string item(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                      : comma - pos));
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty list entry");
    item = item.substr(b, e - b + 1);
    std::size_t used = 0;
    T value = parse(item, &used);
    if (used != item.size()) throw std::invalid_argument("malformed list entry '" + item + "'");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::string_view to_string(StudyExample example) {
  switch (example) {
    case StudyExample::Example1: return "1";
    case StudyExample::Example2: return "2";
    default: return "custom";
  }
}

StudyExample parse_example(std::string_view name) {
  if (name == "1") return StudyExample::Example1;
  if (name == "2") return StudyExample::Example2;
  if (name == "custom") return StudyExample::Custom;
  throw std::invalid_argument("unknown example '" + std::string(name) + "'");
}

std::vector<double> default_iotas(StudyExample example) {
  if (example == StudyExample::Example2) return {1e-6, 1e-8};
  return {1.0, 1e-2, 1e-4, 1e-6, 0.0};
}

void StudyConfig::validate() {
  if (iotas.empty()) iotas = default_iotas(example);
  if (mesh_file.empty()) {
    if (example == StudyExample::Custom) {
      throw std::invalid_argument("the custom example needs a mesh file");
    }
    if (mesh_sizes.empty()) throw std::invalid_argument("no mesh sizes given");
    for (int n : mesh_sizes) {
      if (n < 1) throw std::invalid_argument("mesh sizes must be >= 1");
    }
  } else {
    mesh_sizes = {0};
  }
  if (etas.empty()) throw std::invalid_argument("no penalty values given");
  for (double e : etas) {
    if (!(e > 0.0)) throw std::invalid_argument("penalty eta must be > 0");
  }
  for (double i : iotas) {
    if (!(i >= 0.0)) throw std::invalid_argument("iota must be >= 0");
  }
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

bool StudyResult::all_succeeded() const {
  for (const auto& r : rows) {
    if (!r.success) return false;
  }
  return true;
}

std::vector<const StudyRow*> StudyResult::series(double iota, double eta) const {
  std::vector<const StudyRow*> out;
  for (const auto& r : rows) {
    if (r.errors.iota == iota && r.errors.eta == eta) out.push_back(&r);
  }
  return out;
}

StudyRow run_point(StudyExample example, int n, double iota, double eta,
                   const StudyConfig& config) {
  StudyRow row;
  row.example = example;
  row.n = n;
  row.solver = config.solver.method;
  row.errors = nan_report();
  row.errors.iota = iota;
  row.errors.eta = eta;

  Mesh mesh = config.mesh_file.empty() ? build_structured_mesh(n) : read_mesh_file(config.mesh_file);
  auto space = std::make_shared<const HermiteSpace>(std::move(mesh));
  row.errors.h = space->mesh().mesh_parameter();
  row.errors.dofs = space->dofs().num_free();

  const ManufacturedProblem problem = make_problem(example, iota);
  const AssembledSystem system = assemble(*space, iota, eta, problem.load, config.quadrature);

  const auto start = std::chrono::steady_clock::now();
  const SolveReport report = solve(system, config.solver);
  const auto stop = std::chrono::steady_clock::now();
  row.solve_seconds =
      config.timing ? std::chrono::duration<double>(stop - start).count() : 0.0;
  row.residual = report.relative_residual;
  row.success = report.success;
  row.factorization_ok = report.factorization_ok;
  row.diagnostic = report.diagnostic;

  row.errors.osc = oscillation(problem.load, space->mesh(), config.quadrature.error);
  const AnalyticField* reference = problem.comparison();
  row.has_reference = reference != nullptr;
  if (report.success || report.factorization_ok) {
    const DiscreteFunction wh = DiscreteFunction::from_free(space, report.solution);
    const JetField zero = [](const Point&) { return Jet{}; };
    ErrorReport e = error_norms(wh, reference ? reference->as_jet_field() : zero, iota,
                                config.quadrature);
    if (!reference) {
      e = nan_report();
      e.dofs = row.errors.dofs;
      e.h = row.errors.h;
      e.iota = iota;
    }
    e.eta = eta;
    e.osc = row.errors.osc;
    row.errors = e;
  }
  return row;
}

StudyResult run_study(StudyConfig config) {
  config.validate();
  StudyResult result;
  result.config = config;

  struct Point3 {
    double iota, eta;
    int n;
  };
  std::vector<Point3> grid;
  for (double iota : config.iotas) {
    for (double eta : config.etas) {
      for (int n : config.mesh_sizes) grid.push_back({iota, eta, n});
    }
  }
  result.rows.resize(grid.size());

  auto work = [&](std::size_t k) {
    const auto& g = grid[k];
    try {
      result.rows[k] = run_point(config.example, g.n, g.iota, g.eta, config);
    } catch (const std::exception& ex) {
      StudyRow row;
      row.example = config.example;
      row.n = g.n;
      row.solver = config.solver.method;
      row.errors = nan_report();
      row.errors.iota = g.iota;
      row.errors.eta = g.eta;
      row.errors.h = g.n > 0 ? 1.0 / g.n : kNaN;
      row.success = false;
      row.diagnostic = ex.what();
      result.rows[k] = std::move(row);
    }
  };

  if (config.threads <= 1) {
    for (std::size_t k = 0; k < grid.size(); ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < config.threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < grid.size(); k = next++) work(k);
      });
    }
    for (auto& t : pool) t.join();
  }

  for (std::size_t k = 1; k < result.rows.size(); ++k) {
    const auto& prev = result.rows[k - 1];
    auto& row = result.rows[k];
    if (prev.errors.iota != row.errors.iota || prev.errors.eta != row.errors.eta) continue;
    row.rate_norm_iota_h = rate(prev.errors.norm_iota_h, row.errors.norm_iota_h);
  }
  return result;
}

void write_csv(std::ostream& out, const StudyResult& result) {
  out << "example,n,h,iota,eta,dofs,l2,h1,h2_broken,h3_broken,jump_n_1,jump_n_3,jump_nn_1,"
         "triple2,triple3,norm_iota_h,osc,rate_norm_iota_h,solve_seconds,solver,residual\n";
  for (const auto& r : result.rows) {
    const auto& e = r.errors;
    out << to_string(r.example) << ',' << r.n << ',' << gen(e.h) << ',' << gen(e.iota) << ','
        << gen(e.eta) << ',' << e.dofs << ',' << sci(e.l2) << ',' << sci(e.h1) << ','
        << sci(e.h2_broken) << ',' << sci(e.h3_broken) << ',' << sci(e.jump_n_1) << ','
        << sci(e.jump_n_3) << ',' << sci(e.jump_nn_1) << ',' << sci(e.triple2) << ','
        << sci(e.triple3) << ',' << sci(e.norm_iota_h) << ',' << sci(e.osc) << ','
        << (r.rate_norm_iota_h ? format("%.4f", *r.rate_norm_iota_h) : std::string("NA")) << ','
        << format("%.6f", r.solve_seconds) << ',' << to_string(r.solver) << ','
        << sci(r.residual) << '\n';
  }
}

void write_json(std::ostream& out, const StudyResult& result) {
  using nlohmann::json;
  const auto& c = result.config;
  json doc;
  doc["config"] = {
      {"example", std::string(to_string(c.example))},
      {"n", c.mesh_sizes},
      {"iota", c.iotas},
      {"eta", c.etas},
      {"quad_volume", c.quadrature.load},
      {"quad_error", c.quadrature.error},
      {"quad_edge", c.quadrature.edge_points},
      {"solver", std::string(to_string(c.solver.method))},
      {"mesh_file", c.mesh_file},
  };
  json rows = json::array();
  for (const auto& r : result.rows) {
    const auto& e = r.errors;
    json row = {
        {"example", std::string(to_string(r.example))},
        {"n", r.n},
        {"h", e.h},
        {"iota", e.iota},
        {"eta", e.eta},
        {"dofs", e.dofs},
        {"l2", e.l2},
        {"h1", e.h1},
        {"h2_broken", e.h2_broken},
        {"h3_broken", e.h3_broken},
        {"jump_n_1", e.jump_n_1},
        {"jump_n_3", e.jump_n_3},
        {"jump_nn_1", e.jump_nn_1},
        {"triple2", e.triple2},
        {"triple3", e.triple3},
        {"norm_iota_h", e.norm_iota_h},
        {"osc", e.osc},
        {"rate_norm_iota_h", r.rate_norm_iota_h ? json(*r.rate_norm_iota_h) : json(nullptr)},
        {"solve_seconds", r.solve_seconds},
        {"solver", std::string(to_string(r.solver))},
        {"residual", r.residual},
        {"success", r.success},
        {"diagnostic", r.diagnostic},
    };
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void print_table(std::ostream& out, const StudyResult& result) {
  const auto& c = result.config;
  auto pad = [](const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
  };
  auto cell = [](double v) { return format("%10.3e", v); };

  for (double eta : c.etas) {
    out << "example " << to_string(c.example) << ", eta = " << gen(eta)
        << ": error ||w - w_h||_{iota,h}\n";
    out << pad("iota", 10);
    for (const auto* r : result.series(c.iotas.front(), eta)) out << ' ' << pad(h_label(*r), 10);
    out << "   rate\n";
    for (double iota : c.iotas) {
      const auto s = result.series(iota, eta);
      out << format("%10.0e", iota);
      for (const auto* r : s) out << ' ' << cell(r->errors.norm_iota_h);
      const auto last = s.empty() ? std::nullopt : s.back()->rate_norm_iota_h;
      out << ' ' << (last ? format("%6.2f", *last) : std::string("     -")) << '\n';
    }
    out << '\n';
  }

  if (c.example != StudyExample::Example2) return;
  struct Column {
    const char* label;
    double ErrorReport::*field;
  };
  const Column columns[] = {{"||w0-wh||_{iota,h}", &ErrorReport::norm_iota_h},
                            {"|w0-wh|_1", &ErrorReport::h1},
                            {"|w0-wh|_{2,h}", &ErrorReport::h2_broken},
                            {"|w0-wh|_{3,h}", &ErrorReport::h3_broken},
                            {"||w0-wh||_0", &ErrorReport::l2}};
  for (double iota : c.iotas) {
    for (double eta : c.etas) {
      const auto s = result.series(iota, eta);
      out << "example 2, iota = " << gen(iota) << ", eta = " << gen(eta) << '\n';
      out << pad("h", 20);
      for (const auto* r : s) out << ' ' << pad(h_label(*r), 10);
      out << '\n';
      for (const auto& col : columns) {
        out << pad(col.label, 20);
        for (const auto* r : s) out << ' ' << cell(r->errors.*col.field);
        out << '\n' << pad("rate", 20);
        for (std::size_t k = 0; k < s.size(); ++k) {
          const auto rr =
              k == 0 ? std::nullopt : rate(s[k - 1]->errors.*col.field, s[k]->errors.*col.field);
          out << ' ' << (rr ? format("%10.2f", *rr) : pad("-", 10));
        }
        out << '\n';
      }
      out << '\n';
    }
  }
}

std::vector<int> parse_int_list(std::string_view text) {
  return parse_list<int>(text, [](const std::string& s, std::size_t* used) {
    return std::stoi(s, used);
  });
}

std::vector<double> parse_double_list(std::string_view text) {
  return parse_list<double>(text, [](const std::string& s, std::size_t* used) {
    return std::stod(s, used);
  });
}

}  // namespace c0ip

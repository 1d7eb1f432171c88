#include "nabla/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "nabla/chart.hpp"

namespace nabla {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw DomainError("scenario: bad number '" + s + "' for key '" + key + "'");
  }
  return v;
}

Index parse_integer(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DomainError("scenario: bad integer '" + s + "' for key '" + key + "'");
  }
  return static_cast<Index>(v);
}

// "x", "x, y, z" or "start:step:end" (inclusive, step may be negative).
std::vector<double> parse_grid(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw DomainError("scenario: range for '" + key + "' must be start:step:end");
    const double start = parse_number(parts[0], key), step = parse_number(parts[1], key),
                 end = parse_number(parts[2], key);
    if (step == 0.0 || (end - start) / step < 0.0) throw DomainError("scenario: empty range for '" + key + "'");
    const auto count = static_cast<long long>(std::floor((end - start) / step + 1e-9)) + 1;
    if (count > 10000) throw DomainError("scenario: range for '" + key + "' is too long");
    // start + i*step, rounded to 12 decimals so 0.1 steps land on the
    // same doubles as the literals 0.3, 0.7, ...
    for (long long i = 0; i < count; ++i) out.push_back(std::round((start + step * i) * 1e12) / 1e12);
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, key));
  if (out.empty()) throw DomainError("scenario: empty list for '" + key + "'");
  return out;
}

std::vector<double> steps(double start, double step, int count) {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(std::round((start + step * i) * 1e12) / 1e12);
  return v;
}

std::string short_num(double v, int digits = 6) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

bool near_integer(double x) { return std::abs(x - std::round(x)) <= 1e-12; }

}  // namespace

MethodChoice parse_method(const std::string& s) {
  if (s == "auto") return MethodChoice::Auto;
  if (s == "explicit") return MethodChoice::Explicit;
  if (s == "recursive") return MethodChoice::Recursive;
  throw DomainError("method must be auto, explicit or recursive (got '" + s + "')");
}

const char* to_string(MethodChoice m) {
  switch (m) {
    case MethodChoice::Auto: return "auto";
    case MethodChoice::Explicit: return "explicit";
    case MethodChoice::Recursive: return "recursive";
  }
  return "?";
}

SolveMethod resolve_method(MethodChoice m, double alpha, double lambda) {
  switch (m) {
    case MethodChoice::Explicit: return SolveMethod::Explicit;
    case MethodChoice::Recursive: return SolveMethod::Recursive;
    case MethodChoice::Auto: break;
  }
  return (std::abs(lambda) >= 0.95 || near_integer(alpha)) ? SolveMethod::Recursive : SolveMethod::Explicit;
}

Response solve_zero_input(const SystemSpec& spec, MethodChoice m, Index K) {
  if (resolve_method(m, spec.alpha, spec.lambda) == SolveMethod::Explicit) {
    return solve_explicit(spec, InputSignal::zero(), K);
  }
  return solve_recursive(spec, InputSignal::zero(), K);
}

void Scenario::validate() const {
  if (alpha_grid.empty() || lambda_grid.empty()) throw DomainError("scenario '" + name + "': alpha and lambda are required");
  if ((alpha_grid.size() > 1) == (lambda_grid.size() > 1)) {
    throw DomainError("scenario '" + name + "': exactly one of alpha / lambda must hold more than one value");
  }
  for (double alpha : alpha_grid) {
    if (!(alpha > 0.0)) throw DomainError("scenario '" + name + "': alpha must be positive");
    if (alpha <= 1.0 && b1 != 0.0) throw DomainError("scenario '" + name + "': b1 needs alpha > 1");
  }
  for (double lambda : lambda_grid) {
    if (lambda == 1.0) throw DomainError("lambda must not equal 1");
  }
  if (horizon < 1) throw DomainError("scenario '" + name + "': horizon must be at least 1");
}

SystemSpec Scenario::system(std::size_t i) const {
  SystemSpec s;
  s.alpha = sweeps_alpha() ? alpha_grid[i] : alpha_grid.front();
  s.lambda = sweeps_alpha() ? lambda_grid.front() : lambda_grid[i];
  s.a = a;
  const int n = caputo_order(s.alpha);
  s.b = Eigen::VectorXd::Zero(n);
  s.b(0) = b0;
  if (n > 1) s.b(1) = b1;
  return s;
}

bool is_builtin_scenario(const std::string& name) {
  return name == "case1" || name == "case2" || name == "case3" || name == "case4";
}

Scenario builtin_scenario(const std::string& name) {
  Scenario sc;
  sc.name = name;
  if (name == "case1") {
    sc.alpha_grid = steps(0.1, 0.1, 10);
    sc.lambda_grid = {-0.2};
  } else if (name == "case2") {
    sc.alpha_grid = steps(1.0, 0.1, 11);
    sc.lambda_grid = {-0.2};
  } else if (name == "case3") {
    sc.alpha_grid = steps(1.1, 0.1, 10);
    sc.lambda_grid = {-0.2};
    sc.b0 = 0.0;
    sc.b1 = 1.0;
  } else if (name == "case4") {
    sc.alpha_grid = {1.5};
    sc.lambda_grid = steps(-0.04, -0.04, 10);
  } else {
    throw DomainError("unknown built-in case '" + name + "' (expected case1..case4)");
  }
  return sc;
}

Scenario parse_scenario(std::istream& in, const std::string& default_name) {
  Scenario sc;
  sc.name = default_name;
  std::map<std::string, int> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("scenario line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (++seen[key] > 1) throw DomainError("scenario line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    if (key == "name") {
      if (value.empty()) throw DomainError("scenario: empty name");
      sc.name = value;
    } else if (key == "alpha") {
      sc.alpha_grid = parse_grid(value, key);
    } else if (key == "lambda") {
      sc.lambda_grid = parse_grid(value, key);
    } else if (key == "b0") {
      sc.b0 = parse_number(value, key);
    } else if (key == "b1") {
      sc.b1 = parse_number(value, key);
    } else if (key == "a") {
      sc.a = parse_integer(value, key);
    } else if (key == "horizon") {
      sc.horizon = parse_integer(value, key);
    } else if (key == "method") {
      sc.method = parse_method(value);
    } else {
      throw DomainError("scenario line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  sc.validate();
  return sc;
}

Scenario load_scenario(const std::string& case_or_path) {
  if (is_builtin_scenario(case_or_path)) return builtin_scenario(case_or_path);
  std::ifstream in(case_or_path);
  if (!in) throw DomainError("cannot open scenario file '" + case_or_path + "'");
  return parse_scenario(in, std::filesystem::path(case_or_path).stem().string());
}

std::string format_g17(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv_rows(std::ostream& out, double sweep_param, const Response& r) {
  const std::string p = format_g17(sweep_param);
  for (Index m = 1; m <= r.horizon(); ++m) {
    out << p << ',' << (r.a + m) << ',' << format_g17(r.y(m - 1)) << '\n';
  }
}

RunOutput run_scenario(const Scenario& sc, const std::filesystem::path& out_dir, unsigned workers) {
  sc.validate();
  const std::size_t n = sc.size();
  std::vector<SweepPoint> points(n);

  // Each task writes only its own slot, so the result does not depend on the schedule.
  auto task = [&](std::size_t i) {
    const SystemSpec spec = sc.system(i);
    SweepPoint& p = points[i];
    p.param = sc.sweep_value(i);
    p.response = solve_zero_input(spec, sc.method, sc.horizon);
    p.analytic = classify_zero_input(spec.alpha, spec.lambda, spec.b);
    const auto tail = solve_recursive<long double>(spec, InputSignal::zero(), kEmpiricalHorizon);
    p.empirical = empirical_classify(tail);
    p.overshoot = overshoot_magnitude<double>(p.response.y);
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            task(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::filesystem::create_directories(out_dir);
  RunOutput out;
  out.csv_path = out_dir / (sc.name + ".csv");
  out.svg_path = out_dir / (sc.name + ".svg");

  {
    std::ofstream csv(out.csv_path, std::ios::binary);
    if (!csv) throw DomainError("cannot write '" + out.csv_path.string() + "'");
    csv << kCsvHeader << '\n';
    for (const auto& p : points) write_csv_rows(csv, p.param, p.response);
    if (!csv) throw DomainError("write failed for '" + out.csv_path.string() + "'");
  }

  std::vector<ChartSeries> series;
  for (const auto& p : points) {
    ChartSeries s;
    s.label = std::string(sc.sweep_name()) + " = " + short_num(p.param);
    for (Index m = 1; m <= p.response.horizon(); ++m) {
      s.x.push_back(static_cast<double>(p.response.a + m));
      s.y.push_back(p.response.y(m - 1));
    }
    series.push_back(std::move(s));
  }
  ChartOptions opts;
  opts.title = sc.name + ": zero-input response";
  {
    std::ofstream svg(out.svg_path, std::ios::binary);
    if (!svg) throw DomainError("cannot write '" + out.svg_path.string() + "'");
    svg << render_line_chart(series, opts);
  }

  std::ostringstream sum;
  sum << "scenario " << sc.name << ": " << n << " curves, sweep over " << sc.sweep_name() << ", a=" << sc.a
      << ", K=" << sc.horizon << ", method=" << to_string(sc.method) << "\n";
  for (const auto& p : points) {
    sum << "  " << sc.sweep_name() << "=" << short_num(p.param) << "  analytic=" << to_string(p.analytic.verdict)
        << "  empirical(K=" << kEmpiricalHorizon << ")=" << to_string(p.empirical.kind)
        << (p.empirical.overshoot ? "+overshoot" : "") << "  method="
        << (p.response.method == SolveMethod::Explicit ? "explicit" : "recursive")
        << "  y(a+K)=" << short_num(p.response.y(p.response.horizon() - 1), 8)
        << "  overshoot=" << short_num(p.overshoot, 8) << "\n";
  }
  out.summary = sum.str();
  {
    std::ofstream txt(out_dir / (sc.name + "_summary.txt"), std::ios::binary);
    txt << out.summary;
  }
  out.points = std::move(points);
  return out;
}

}  // namespace nabla

namespace nabla {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

}  // namespace

std::vector<CsvRow> read_csv(std::istream& in) {
  std::vector<CsvRow> rows;
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) throw DomainError("csv: missing header");
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != 3) throw DomainError("csv: expected 3 columns in '" + line + "'");
    rows.push_back({parse_number(cells[0], "sweep_param"), parse_integer(cells[1], "k"), parse_number(cells[2], "y")});
  }
  return rows;
}

Eigen::VectorXd read_input_table(std::istream& in) {
  std::vector<double> v;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto cells = split_commas(line);
    const std::string& last = cells.back();
    double x = 0.0;
    const auto res = std::from_chars(last.data(), last.data() + last.size(), x);
    const bool numeric = !last.empty() && res.ec == std::errc() && res.ptr == last.data() + last.size();
    if (!numeric && first) {
      first = false;
      continue;
    }
    first = false;
    v.push_back(parse_number(last, "u"));
  }
  return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace nabla

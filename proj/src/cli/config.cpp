#include "duopoly/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "duopoly/error.hpp"

namespace duopoly::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_key(std::string_view key) {
  if (key.empty() || key.front() == '.' || key.back() == '.') return false;
  for (char c : key) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) {
      return false;
    }
  }
  return key.find("..") == std::string_view::npos;
}

// Drops a trailing `# comment` unless the # sits inside quotes.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (!quoted && line[i] == '#') return line.substr(0, i);
  }
  return line;
}

std::string unquote(std::string_view v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return std::string(v.substr(1, v.size() - 2));
  return std::string(v);
}

bool parse_bool(std::string_view v, const std::string& field) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw Error(ErrorCode::kConfigParse, "field '" + field + "': expected true or false, got '" +
                                           std::string(v) + "'");
}

Criterion parse_criterion(std::string_view v, const std::string& field) {
  if (v == "a-posteriori") return Criterion::kAPosterioriBound;
  if (v == "residual") return Criterion::kResidual;
  if (v == "fixed") return Criterion::kFixedCount;
  throw Error(ErrorCode::kConfigParse, "field '" + field +
                                           "': expected a-posteriori, residual or fixed, got '" +
                                           std::string(v) + "'");
}

}  // namespace

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "table") return OutputFormat::kTable;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown format '" + std::string(name) + "' (expected csv or table)");
}

double parse_real(std::string_view text, const std::string& field) {
  const std::string s(trim(text));
  if (s.empty()) throw Error(ErrorCode::kConfigParse, "field '" + field + "': missing number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw Error(ErrorCode::kConfigParse, "field '" + field + "': '" + s + "' is not a finite number");
  }
  return v;
}

std::uint64_t parse_count(std::string_view text, const std::string& field) {
  const std::string s(trim(text));
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw Error(ErrorCode::kConfigParse,
                "field '" + field + "': '" + s + "' is not a nonnegative integer");
  }
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), nullptr, 10);
  if (errno == ERANGE) throw Error(ErrorCode::kConfigParse, "field '" + field + "': value too large");
  return v;
}

std::vector<double> parse_number_list(std::string_view text, const std::string& field) {
  std::vector<double> out;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) out.push_back(parse_real(token, field));
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ';' || c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  if (out.empty()) throw Error(ErrorCode::kConfigParse, "field '" + field + "': empty number list");
  return out;
}

ConfigMap parse_config_text(std::string_view text, const std::string& source) {
  ConfigMap out;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    auto fail = [&](const std::string& what) {
      throw Error(ErrorCode::kConfigParse, source + ":" + std::to_string(line_no) + ": " + what);
    };
    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (!valid_key(name)) fail("invalid section name '" + std::string(name) + "'");
      section = std::string(name);
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!valid_key(key)) fail("invalid key '" + std::string(key) + "'");
    if (value.empty()) fail("field '" + std::string(key) + "': missing value");
    const std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
    if (auto it = out.find(full); it != out.end()) {
      fail("field '" + full + "' already set on line " + std::to_string(it->second.line));
    }
    out[full] = {unquote(value), line_no};
  }
  return out;
}

void apply_config(const ConfigMap& entries, const std::string& source, Scenario& sc) {
  using Setter = std::function<void(const std::string& value, const std::string& field)>;
  auto linear = [&sc]() -> LinearSpec& {
    if (!sc.linear) sc.linear = LinearSpec{{100.0, 20.0, 30.0, 0.5, 0.125, 1.0 / 3, 1.0 / 6}, {}};
    return *sc.linear;
  };
  auto cournot = [&sc]() -> CournotLinearParams& {
    if (!sc.cournot) sc.cournot = CournotLinearParams{120.0, 1.0, 30.0, 20.0};
    return *sc.cournot;
  };
  std::vector<double> start_x, start_y;
  bool has_x = false, has_y = false;

  const std::map<std::string, Setter> setters = {
      {"model.id", [&](const std::string& v, const std::string&) { sc.model_id = v; }},
      {"model.p", [&](const std::string& v, const std::string& f) { sc.norm_p = parse_real(v, f); }},
      {"model.linear.a", [&](const std::string& v, const std::string& f) { linear().params.a = parse_real(v, f); }},
      {"model.linear.s", [&](const std::string& v, const std::string& f) { linear().params.s = parse_real(v, f); }},
      {"model.linear.r", [&](const std::string& v, const std::string& f) { linear().params.r = parse_real(v, f); }},
      {"model.linear.F_x", [&](const std::string& v, const std::string& f) { linear().params.F_x = parse_real(v, f); }},
      {"model.linear.F_y", [&](const std::string& v, const std::string& f) { linear().params.F_y = parse_real(v, f); }},
      {"model.linear.f_x", [&](const std::string& v, const std::string& f) { linear().params.f_x = parse_real(v, f); }},
      {"model.linear.f_y", [&](const std::string& v, const std::string& f) { linear().params.f_y = parse_real(v, f); }},
      {"model.linear.domain",
       [&](const std::string& v, const std::string& f) {
         try {
           linear().domain = parse_linear_domain(v);
         } catch (const Error& e) {
           throw Error(ErrorCode::kConfigParse, "field '" + f + "': " + e.what());
         }
       }},
      {"model.cournot.A", [&](const std::string& v, const std::string& f) { cournot().A = parse_real(v, f); }},
      {"model.cournot.b", [&](const std::string& v, const std::string& f) { cournot().b = parse_real(v, f); }},
      {"model.cournot.c1", [&](const std::string& v, const std::string& f) { cournot().c1 = parse_real(v, f); }},
      {"model.cournot.c2", [&](const std::string& v, const std::string& f) { cournot().c2 = parse_real(v, f); }},
      {"start", [&](const std::string& v, const std::string& f) { sc.start = parse_number_list(v, f); }},
      {"start.x", [&](const std::string& v, const std::string& f) { start_x = parse_number_list(v, f); has_x = true; }},
      {"start.y", [&](const std::string& v, const std::string& f) { start_y = parse_number_list(v, f); has_y = true; }},
      {"run.criterion", [&](const std::string& v, const std::string& f) { sc.rule.criterion = parse_criterion(v, f); }},
      {"run.tolerance",
       [&](const std::string& v, const std::string& f) {
         sc.rule.tolerance = parse_real(v, f);
         if (!(sc.rule.tolerance > 0.0)) throw Error(ErrorCode::kConfigParse, "field '" + f + "': must be > 0");
       }},
      {"run.max_iter",
       [&](const std::string& v, const std::string& f) {
         sc.rule.max_iter = parse_count(v, f);
         if (sc.rule.max_iter < 1) throw Error(ErrorCode::kConfigParse, "field '" + f + "': must be >= 1");
       }},
      {"run.fixed_count", [&](const std::string& v, const std::string& f) { sc.rule.fixed_count = parse_count(v, f); }},
      {"run.k_override", [&](const std::string& v, const std::string& f) { sc.k_override = parse_real(v, f); }},
      {"run.clamp", [&](const std::string& v, const std::string& f) { sc.clamp = parse_bool(v, f); }},
      {"bounds.eps", [&](const std::string& v, const std::string& f) { sc.eps = parse_number_list(v, f); }},
      {"verify.samples", [&](const std::string& v, const std::string& f) { sc.samples = parse_count(v, f); }},
      {"verify.seed", [&](const std::string& v, const std::string& f) { sc.seed = parse_count(v, f); }},
      {"verify.threads", [&](const std::string& v, const std::string& f) { sc.threads = static_cast<unsigned>(parse_count(v, f)); }},
      {"equilibrium.grid", [&](const std::string& v, const std::string& f) { sc.grid = parse_count(v, f); }},
      {"output.format",
       [&](const std::string& v, const std::string& f) {
         try {
           sc.format = parse_format(v);
         } catch (const Error& e) {
           throw Error(ErrorCode::kConfigParse, "field '" + f + "': " + e.what());
         }
       }},
  };

  for (const auto& [key, entry] : entries) {
    const std::string where = source + ":" + std::to_string(entry.line) + ": ";
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw Error(ErrorCode::kConfigParse, where + "unknown field '" + key + "'");
    }
    try {
      it->second(entry.value, key);
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfigParse, where + e.what());
    }
  }
  if (has_x != has_y) {
    const auto& e = entries.at(has_x ? "start.x" : "start.y");
    throw Error(ErrorCode::kConfigParse, source + ":" + std::to_string(e.line) +
                                             ": field 'start.x' and 'start.y' must be given together");
  }
  if (has_x) {
    if (!sc.start.empty()) {
      throw Error(ErrorCode::kConfigParse,
                  source + ":" + std::to_string(entries.at("start").line) +
                      ": field 'start' conflicts with 'start.x'/'start.y'");
    }
    sc.start = start_x;
    sc.start.insert(sc.start.end(), start_y.begin(), start_y.end());
  }
  if (sc.rule.criterion == Criterion::kFixedCount && sc.rule.fixed_count == 0 &&
      entries.count("run.fixed_count") == 0) {
    throw Error(ErrorCode::kConfigParse,
                source + ":" + std::to_string(entries.at("run.criterion").line) +
                    ": field 'run.criterion': fixed criterion needs run.fixed_count");
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigParse, path.string() + ": cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  Scenario sc;
  apply_config(parse_config_text(buf.str(), path.string()), path.string(), sc);
  return sc;
}

ResponseModel Scenario::build_model() const {
  if (model_id == "linear") {
    if (!linear) {
      throw Error(ErrorCode::kInvalidArgument, "model 'linear' needs [model.linear] parameters");
    }
    return linear_model(linear->params, linear->domain, "linear");
  }
  if (model_id == "cournot") {
    if (!cournot) {
      throw Error(ErrorCode::kInvalidArgument, "model 'cournot' needs [model.cournot] parameters");
    }
    return cournot_model(*cournot, "cournot");
  }
  if (linear || cournot) {
    throw Error(ErrorCode::kInvalidArgument,
                "inline parameters are only read for model.id = linear or cournot");
  }
  if (norm_p) {
    if (model_id != "two-product") {
      throw Error(ErrorCode::kInvalidArgument, "model.p only applies to two-product");
    }
    return two_product_model(*norm_p);
  }
  return model_by_id(model_id);
}

State Scenario::resolve_start(const ResponseModel& model) const {
  if (start.empty()) {
    if (model_id == "linear" || model_id == "cournot") {
      return {model.domain().x_set().lower(), model.domain().y_set().lower()};
    }
    return default_start(model_id);
  }
  const std::size_t dim = model.dimension();
  if (start.size() != 2 * dim) {
    std::ostringstream os;
    os << "start needs " << 2 * dim << " coordinates for model '" << model.id() << "' (x then y), got "
       << start.size();
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  return {Point(std::vector<double>(start.begin(), start.begin() + dim)),
          Point(std::vector<double>(start.begin() + dim, start.end()))};
}

}  // namespace duopoly::cli

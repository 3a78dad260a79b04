#include "bls/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace bls {

using nlohmann::json;

namespace {

struct FieldError {
    std::string path;
    std::string msg;
};

[[noreturn]] void field_error(const std::string& path, const std::string& msg)
{
    throw FieldError{path, msg};
}

// Line of the deepest located key on a path like "terms[1].R[0]".
std::size_t field_line(const std::string& text, const std::string& path)
{
    std::size_t pos = 0, found = std::string::npos;
    int skip = 0;
    std::size_t i = 0;
    while (i < path.size()) {
        if (path[i] == '.') {
            ++i;
            continue;
        }
        if (path[i] == '[') {
            const std::size_t close = path.find(']', i);
            skip = std::stoi(path.substr(i + 1, close - i - 1));
            i = close + 1;
            continue;
        }
        std::size_t end = path.find_first_of(".[", i);
        if (end == std::string::npos) end = path.size();
        const std::string key = "\"" + path.substr(i, end - i) + "\"";
        std::size_t at = text.find(key, pos);
        for (int n = 0; n < skip && at != std::string::npos; ++n) at = text.find(key, at + key.size());
        skip = 0;
        if (at == std::string::npos) break;
        found = pos = at;
        i = end;
    }
    if (found == std::string::npos) return 0;
    return 1 + std::count(text.begin(), text.begin() + found, '\n');
}

const json& need(const json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object() || !j.contains(key)) field_error(path + key, "missing");
    return j.at(key);
}

double as_real(const json& j, const std::string& path)
{
    if (!j.is_number()) field_error(path, "expected a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& path)
{
    if (!j.is_number_integer()) field_error(path, "expected an integer");
    return j.get<int>();
}

cx as_complex(const json& j, const std::string& path)
{
    if (j.is_number()) return cx(j.get<double>(), 0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cx(j[0].get<double>(), j[1].get<double>());
    field_error(path, "expected a real number or a [re, im] pair");
}

Polynomial as_poly(const json& j, const std::string& path)
{
    if (!j.is_array() || j.empty()) field_error(path, "expected a non-empty coefficient list (ascending degree)");
    std::vector<cx> c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(as_complex(j[i], path + "[" + std::to_string(i) + "]"));
    if (c.size() > 1 && c.back() == cx(0)) field_error(path, "leading coefficient must be nonzero");
    return Polynomial(c);
}

GridFunction as_profile(const json& j, const MGrid& g, const std::string& path, const std::string& base)
{
    if (!j.is_object()) field_error(path, "expected a profile object");
    const std::string type = need(j, "type", path + ".").get<std::string>();
    GridFunction f(g);
    if (type == "zero") return f;
    if (type == "tabulated") {
        if (j.contains("csv")) {
            auto p = std::filesystem::path(base) / j.at("csv").get<std::string>();
            std::ifstream in(p);
            if (!in) field_error(path + ".csv", "cannot open " + p.string());
            GridFunction t = read_grid_csv(in);
            if (!(t.grid == g)) field_error(path + ".csv", "grid does not match the spec grid");
            return t;
        }
        const json& v = need(j, "values", path + ".");
        if (!v.is_array() || static_cast<int>(v.size()) != g.points)
            field_error(path + ".values", "expected " + std::to_string(g.points) + " entries");
        for (int i = 0; i < g.points; ++i) f[i] = as_complex(v[i], path + ".values[" + std::to_string(i) + "]");
        return f;
    }
    const cx A = j.contains("amplitude") ? as_complex(j.at("amplitude"), path + ".amplitude") : cx(1);
    const double w = j.contains("width") ? as_real(j.at("width"), path + ".width") : 1.0;
    const double c = j.contains("center") ? as_real(j.at("center"), path + ".center") : 0.0;
    if (!(w > 0)) field_error(path + ".width", "must be positive");
    for (int i = 0; i < g.points; ++i) {
        const double x = (g.m(i) - c) / w;
        if (type == "gaussian")
            f[i] = A * std::exp(-x * x);
        else if (type == "sech")
            f[i] = A / std::cosh(x);
        else if (type == "exp_decay")
            f[i] = A * std::exp(-std::abs(x));
        else
            field_error(path + ".type", "unknown profile type '" + type + "'");
    }
    return f;
}

std::vector<GridFunction> as_series(const json& j, const MGrid& g, const std::string& path, const std::string& base,
                                    int first)
{
    std::vector<GridFunction> out;
    if (!j.is_array()) field_error(path, "expected a list of {n, profile}");
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        const int n = as_int(need(j[i], "n", p + "."), p + ".n");
        if (n < first) field_error(p + ".n", "order must be >= " + std::to_string(first));
        const std::size_t idx = static_cast<std::size_t>(n - first);
        if (out.size() <= idx) out.resize(idx + 1, GridFunction(g));
        out[idx] = as_profile(need(j[i], "profile", p + "."), g, p + ".profile", base);
    }
    return out;
}

}  // namespace

EquationSpec parse_spec(const std::string& text, const std::string& base_dir)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1 + std::count(text.begin(), text.begin() + std::min(e.byte, text.size()), '\n');
        throw ConfigError("line " + std::to_string(line) + ": " + e.what());
    }
    EquationSpec s;
    try {
        if (j.contains("name")) s.name = j.at("name").get<std::string>();
        s.k = as_int(need(j, "k", ""), "k");
        const json& terms = need(j, "terms", "");
        if (!terms.is_array() || terms.empty()) field_error("terms", "expected a non-empty list");
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::string p = "terms[" + std::to_string(i) + "]";
            OperatorTerm t;
            t.d = as_int(need(terms[i], "d", p + "."), p + ".d");
            t.delta = as_int(need(terms[i], "delta", p + "."), p + ".delta");
            t.Delta = as_int(need(terms[i], "Delta", p + "."), p + ".Delta");
            t.R = as_poly(need(terms[i], "R", p + "."), p + ".R");
            s.terms.push_back(t);
        }
        s.D = j.contains("D") ? as_int(j.at("D"), "D") : static_cast<int>(s.terms.size());
        s.Q = as_poly(need(j, "Q", ""), "Q");
        s.Q1 = as_poly(need(j, "Q1", ""), "Q1");
        s.Q2 = as_poly(need(j, "Q2", ""), "Q2");
        s.R0 = as_poly(need(j, "R0", ""), "R0");
        const json& g = need(j, "grid", "");
        const double L = as_real(need(g, "L", "grid."), "grid.L");
        const int pts = as_int(need(g, "points", "grid."), "grid.points");
        if (!(L > 0)) field_error("grid.L", "must be positive");
        if (pts < 3 || pts % 2 == 0) field_error("grid.points", "must be odd and >= 3");
        s.grid = MGrid(L, pts);
        const json& nm = need(j, "norms", "");
        s.beta = as_real(need(nm, "beta", "norms."), "norms.beta");
        s.mu = as_real(need(nm, "mu", "norms."), "norms.mu");
        s.nu = as_real(need(nm, "nu", "norms."), "norms.nu");
        s.rho = as_real(need(nm, "rho", "norms."), "norms.rho");
        s.eps0 = as_real(need(nm, "eps0", "norms."), "norms.eps0");
        s.T0 = as_real(need(nm, "T0", "norms."), "norms.T0");
        s.K0 = as_real(need(nm, "K0", "norms."), "norms.K0");
        s.coeff_series = j.contains("coeff_series") ? as_series(j.at("coeff_series"), s.grid, "coeff_series", base_dir, 0)
                                                    : std::vector<GridFunction>{};
        if (s.coeff_series.empty()) s.coeff_series.push_back(GridFunction(s.grid));
        s.forcing_series = j.contains("forcing_series")
                               ? as_series(j.at("forcing_series"), s.grid, "forcing_series", base_dir, 1)
                               : std::vector<GridFunction>{};
    } catch (const FieldError& e) {
        std::string at = e.path;
        if (e.msg == "missing") at = at.substr(0, std::min(at.size(), at.find_last_of('.')));
        const std::size_t line = field_line(text, at);
        throw ConfigError((line ? "line " + std::to_string(line) + ", " : std::string()) + "field '" + e.path +
                          "': " + e.msg);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("schema: ") + e.what());
    }
    return s;
}

EquationSpec load_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open spec file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str(), std::filesystem::path(path).parent_path().string());
}

std::string config_hash(const std::string& spec_text, const std::string& params)
{
    std::string canon = spec_text;
    try {
        canon = json::parse(spec_text).dump();
    } catch (...) {
    }
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canon + "\x1f" + params) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

}  // namespace bls

#include "warpcheck/metric_file.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "warpcheck/errors.hpp"

namespace warpcheck::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// One [[factor]] block's raw key/value strings.
struct RawTable {
    std::map<std::string, std::string> values; // unquoted strings kept verbatim
    std::map<std::string, bool> quoted;
};

Rational parse_rational_value(const std::string& raw, const std::string& key) {
    const auto slash = raw.find('/');
    if (slash != std::string::npos) {
        auto num = rational_from_decimal(trim(raw.substr(0, slash)));
        auto den = rational_from_decimal(trim(raw.substr(slash + 1)));
        if (!num || !den || sgn(*den) == 0)
            throw ParseError("bad rational for key `" + key + "`: " + raw);
        return *num / *den;
    }
    std::string text = raw;
    bool neg = false;
    if (!text.empty() && text[0] == '-') {
        neg = true;
        text = text.substr(1);
    }
    auto q = rational_from_decimal(trim(text));
    if (!q) throw ParseError("bad numeric value for key `" + key + "`: " + raw);
    return neg ? Rational(-*q) : *q;
}

double parse_double_value(const std::string& raw, const std::string& key) {
    try {
        size_t used = 0;
        const double v = std::stod(raw, &used);
        if (used != raw.size()) throw ParseError("trailing junk after number");
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad numeric value for key `" + key + "`: " + raw);
    }
}

} // namespace

geometry::WarpedMetric parse_metric_toml(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string section;
    RawTable metric_table;
    std::vector<RawTable> factor_tables;
    RawTable* current = nullptr;
    int line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        // strip comments outside quotes
        std::string stripped;
        bool in_quote = false;
        for (char c : line) {
            if (c == '"') in_quote = !in_quote;
            if (c == '#' && !in_quote) break;
            stripped += c;
        }
        stripped = trim(stripped);
        if (stripped.empty()) continue;

        if (stripped == "[metric]") {
            section = "metric";
            current = &metric_table;
            continue;
        }
        if (stripped == "[[factor]]") {
            section = "factor";
            factor_tables.emplace_back();
            current = &factor_tables.back();
            continue;
        }
        if (stripped.front() == '[')
            throw ParseError("line " + std::to_string(line_no) +
                             ": unknown table " + stripped);

        const auto eq = stripped.find('=');
        if (eq == std::string::npos || current == nullptr)
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected `key = value`");
        const std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        bool was_quoted = false;
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
            was_quoted = true;
        }
        current->values[key] = value;
        current->quoted[key] = was_quoted;
    }

    if (!metric_table.values.count("epsilon"))
        throw ParseError("[metric] section with `epsilon` is required");
    const double eps = parse_double_value(metric_table.values["epsilon"], "epsilon");
    if (!(eps > 0)) throw ParseError("epsilon must be positive");
    if (factor_tables.empty()) throw ParseError("at least one [[factor]] is required");

    geometry::WarpedMetric m;
    m.half_width = eps;
    int index = 0;
    for (auto& tab : factor_tables) {
        ++index;
        const std::string where = "factor " + std::to_string(index);
        if (!tab.values.count("dim")) throw ParseError(where + ": `dim` is required");
        const long dim = std::lround(parse_double_value(tab.values["dim"], "dim"));
        if (dim < 1) throw ParseError(where + ": dim must be >= 1");

        Rational k(0);
        if (tab.values.count("sec_curv"))
            k = parse_rational_value(tab.values["sec_curv"], "sec_curv");

        std::string label = tab.values.count("label") ? tab.values["label"]
                                                      : "F" + std::to_string(index);

        std::optional<double> volume;
        if (tab.values.count("volume"))
            volume = parse_double_value(tab.values["volume"], "volume");
        if (!volume) {
            if (sign_of(k) > 0 && dim >= 1) {
                // round sphere of radius 1/sqrt(k)
                volume = geometry::unit_sphere_volume(static_cast<int>(dim)) *
                         std::pow(to_double(k), -double(dim) / 2.0);
            } else {
                throw ParseError(where +
                                 ": `volume` is required for non-spherical factors");
            }
        }

        const bool has_warp = tab.values.count("warp") > 0;
        const bool has_coeff = tab.values.count("coeff") > 0;
        if (has_warp == has_coeff)
            throw ParseError(where + ": exactly one of `warp` or `coeff` is required");
        series::ScalarExpr f;
        try {
            f = has_warp ? series::ScalarExpr::parse(tab.values["warp"])
                         : sqrt(series::ScalarExpr::parse(tab.values["coeff"]));
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }

        m.factors.emplace_back(static_cast<int>(dim), k, *volume, label);
        m.warps.push_back(std::move(f));
    }

    geometry::validate(m);
    return m;
}

geometry::WarpedMetric load_metric_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open metric file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_metric_toml(buf.str());
}

} // namespace warpcheck::cli

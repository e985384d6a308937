#include "shellbend/config.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "shellbend/errors.hpp"
#include "shellbend/harness.hpp"

namespace shellbend {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& field) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size())
        throw ConfigError("expected a real number for " + field + ", got '" + t + "'", field);
    return v;
}

long parse_int(const std::string& text, const std::string& field) {
    const std::string t = trim(text);
    char* end = nullptr;
    const long v = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size())
        throw ConfigError("expected an integer for " + field + ", got '" + t + "'", field);
    return v;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    for (char c : text) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!item.empty()) out.push_back(item);
            item.clear();
        } else {
            item += c;
        }
    }
    if (!item.empty()) out.push_back(item);
    return out;
}

using Section = std::vector<std::pair<std::string, std::string>>; // ordered key/value

std::optional<std::string> section_value(const Section& s, const std::string& key) {
    for (const auto& [k, v] : s)
        if (k == key) return v;
    return std::nullopt;
}

ParamDomain parse_domain_quad(const std::string& text, const std::string& field) {
    const std::vector<std::string> parts = split_list(text);
    if (parts.size() != 4)
        throw ConfigError("expected 'xi1_min xi1_max xi2_min xi2_max' for " + field, field);
    ParamDomain d;
    d.xi1_min = parse_double(parts[0], field);
    d.xi1_max = parse_double(parts[1], field);
    d.xi2_min = parse_double(parts[2], field);
    d.xi2_max = parse_double(parts[3], field);
    return d;
}

SurfaceConfig parse_surface_section(const Section& section, const std::string& name) {
    SurfaceConfig sc;
    const char* comp_keys[3] = {"x1", "x2", "x3"};
    for (int k = 0; k < 3; ++k) {
        auto v = section_value(section, comp_keys[k]);
        if (!v || trim(*v).empty())
            throw ConfigError("missing expression " + name + "." + comp_keys[k],
                              name + "." + comp_keys[k]);
        sc.components[static_cast<std::size_t>(k)] = trim(*v);
    }
    for (const auto& [key, value] : section) {
        if (key == "x1" || key == "x2" || key == "x3" || key == "domain") continue;
        sc.params[key] = parse_double(value, name + "." + key);
    }
    return sc;
}

void validate_surface(const SurfaceConfig& sc, const ParamDomain& domain,
                      const std::string& name) {
    for (int k = 0; k < 3; ++k) {
        const std::string field = name + ".x" + std::to_string(k + 1);
        ExprPtr ast;
        try {
            ast = parse_expr(sc.components[static_cast<std::size_t>(k)]);
        } catch (const ParseError& e) {
            throw ConfigError(field + ": " + e.what(), field);
        }
        try {
            validate_expr(*ast, sc.params);
        } catch (const UnknownIdentifier& e) {
            throw ConfigError(field + ": " + e.what(), field);
        }
    }
    try {
        SurfaceExpr::parse(sc.components, sc.params, domain);
    } catch (const Error& e) {
        throw ConfigError(name + ": " + e.what(), name);
    }
}

} // namespace

std::pair<int, int> parse_grid_spec(const std::string& text) {
    std::string t = trim(text);
    for (char& c : t)
        if (c == 'x' || c == 'X') c = ' ';
    const std::vector<std::string> parts = split_list(t);
    if (parts.empty() || parts.size() > 2)
        throw ConfigError("expected 'NxM' or 'N' for run.grid, got '" + text + "'", "run.grid");
    const long n1 = parse_int(parts[0], "run.grid");
    const long n2 = parts.size() == 2 ? parse_int(parts[1], "run.grid") : n1;
    if (n1 < 2 || n2 < 2)
        throw ConfigError("grid resolution must be at least 2 in each direction", "run.grid");
    return {static_cast<int>(n1), static_cast<int>(n2)};
}

std::vector<double> parse_scale_list(const std::string& text) {
    std::vector<double> scales;
    for (const std::string& item : split_list(text)) {
        const double a = parse_double(item, "run.scales");
        if (!(a > 0.0))
            throw ConfigError("scale factors must be positive, got '" + item + "'", "run.scales");
        scales.push_back(a);
    }
    if (scales.empty())
        throw ConfigError("run.scales must list at least one factor", "run.scales");
    return scales;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    std::map<std::string, Section> sections;
    std::string current;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": unterminated section header",
                                  line);
            current = trim(line.substr(1, line.size() - 2));
            if (current != "reference" && current != "deformed" && current != "domain" &&
                current != "run")
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown section [" +
                                      current + "]",
                                  current);
            sections.try_emplace(current);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos || current.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": expected 'key = value' inside a section",
                              current.empty() ? "<top>" : current);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key", current);
        Section& sec = sections[current];
        if (section_value(sec, key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key +
                                  "' in [" + current + "]",
                              current + "." + key);
        sec.emplace_back(key, value);
    }

    if (!sections.count("reference"))
        throw ConfigError("missing [reference] section", "reference");
    if (!sections.count("deformed"))
        throw ConfigError("missing [deformed] section", "deformed");

    RunConfig cfg;
    cfg.reference = parse_surface_section(sections["reference"], "reference");
    cfg.deformed = parse_surface_section(sections["deformed"], "deformed");

    // Domain: the [domain] section and any per-surface restatements must
    // all agree; at least one of them must be present.
    std::optional<ParamDomain> domain;
    auto merge_domain = [&domain](const ParamDomain& d, const std::string& field) {
        if (domain && !(*domain == d))
            throw ConfigError("parameter domains disagree between surface sections "
                              "(convected coordinates require one shared domain)",
                              "domain");
        (void)field;
        domain = d;
    };
    if (auto it = sections.find("domain"); it != sections.end()) {
        ParamDomain d;
        const char* keys[4] = {"xi1_min", "xi1_max", "xi2_min", "xi2_max"};
        double* slots[4] = {&d.xi1_min, &d.xi1_max, &d.xi2_min, &d.xi2_max};
        for (int k = 0; k < 4; ++k) {
            auto v = section_value(it->second, keys[k]);
            if (!v)
                throw ConfigError(std::string("missing domain.") + keys[k],
                                  std::string("domain.") + keys[k]);
            *slots[k] = parse_double(*v, std::string("domain.") + keys[k]);
        }
        merge_domain(d, "domain");
    }
    if (auto v = section_value(sections["reference"], "domain"))
        merge_domain(parse_domain_quad(*v, "reference.domain"), "reference.domain");
    if (auto v = section_value(sections["deformed"], "domain"))
        merge_domain(parse_domain_quad(*v, "deformed.domain"), "deformed.domain");
    if (!domain)
        throw ConfigError("no parameter domain given (add a [domain] section)", "domain");
    if (!domain->positive_measure())
        throw ConfigError("parameter domain has empty measure", "domain");
    cfg.domain = *domain;

    if (auto it = sections.find("run"); it != sections.end()) {
        for (const auto& [key, value] : it->second) {
            if (key == "grid") {
                std::tie(cfg.grid_n1, cfg.grid_n2) = parse_grid_spec(value);
            } else if (key == "scales") {
                cfg.scales = parse_scale_list(value);
            } else if (key == "seed") {
                cfg.seed = static_cast<std::uint64_t>(parse_int(value, "run.seed"));
            } else if (key == "tol") {
                cfg.tol = parse_double(value, "run.tol");
                if (!(cfg.tol > 0.0))
                    throw ConfigError("run.tol must be positive", "run.tol");
            } else if (key == "nullity_tol") {
                cfg.nullity_tol = parse_double(value, "run.nullity_tol");
                if (!(cfg.nullity_tol > 0.0))
                    throw ConfigError("run.nullity_tol must be positive", "run.nullity_tol");
            } else if (key == "families") {
                cfg.families.clear();
                if (trim(value) != "none") {
                    for (const std::string& name : split_list(value)) {
                        auto kind = family_from_name(name);
                        if (!kind || *kind == FamilyKind::UserConfig)
                            throw ConfigError("unknown surface family '" + name + "'",
                                              "run.families");
                        cfg.families.push_back(name);
                    }
                }
            } else if (key == "pairs_per_family") {
                cfg.pairs_per_family = static_cast<int>(parse_int(value, "run.pairs_per_family"));
                if (cfg.pairs_per_family < 0)
                    throw ConfigError("run.pairs_per_family must be >= 0", "run.pairs_per_family");
            } else if (key == "motions") {
                cfg.motions = static_cast<int>(parse_int(value, "run.motions"));
                if (cfg.motions < 1)
                    throw ConfigError("run.motions must be >= 1", "run.motions");
            } else if (key == "out") {
                cfg.out = value;
            } else if (key == "skip_degenerate") {
                const std::string v = trim(value);
                if (v == "true" || v == "1")
                    cfg.skip_degenerate = true;
                else if (v == "false" || v == "0")
                    cfg.skip_degenerate = false;
                else
                    throw ConfigError("run.skip_degenerate must be true or false",
                                      "run.skip_degenerate");
            } else {
                throw ConfigError("unknown key run." + key, "run." + key);
            }
        }
    }

    validate_surface(cfg.reference, cfg.domain, "reference");
    validate_surface(cfg.deformed, cfg.domain, "deformed");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'", "path");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

SurfaceExpr reference_surface(const RunConfig& config) {
    return SurfaceExpr::parse(config.reference.components, config.reference.params, config.domain);
}

SurfaceExpr deformed_surface(const RunConfig& config) {
    return SurfaceExpr::parse(config.deformed.components, config.deformed.params, config.domain);
}

} // namespace shellbend

#include "qcycle/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace qcycle {

namespace {

enum class Domain { Any, Positive, NonNegative };

struct DoubleKey {
    const char* name;
    double ModelParams::*field;
    Domain domain;
};

constexpr DoubleKey kParamKeys[] = {
    {"eps_Q0", &ModelParams::eps_Q0, Domain::Any},
    {"E_Q0", &ModelParams::E_Q0, Domain::Any},
    {"eps_L_prime", &ModelParams::eps_L_prime, Domain::Any},
    {"eps_H_prime", &ModelParams::eps_H_prime, Domain::Any},
    {"eps_A_prime", &ModelParams::eps_A_prime, Domain::Any},
    {"eps_B_prime", &ModelParams::eps_B_prime, Domain::Any},
    {"U_ee", &ModelParams::U_ee, Domain::Any},
    {"U_pp", &ModelParams::U_pp, Domain::Any},
    {"U_ep", &ModelParams::U_ep, Domain::Any},
    {"U_LH", &ModelParams::U_LH, Domain::Any},
    {"lambda_AQ", &ModelParams::lambda_AQ, Domain::Positive},
    {"lambda_BQ", &ModelParams::lambda_BQ, Domain::Positive},
    {"lambda_LQ", &ModelParams::lambda_LQ, Domain::Positive},
    {"lambda_HQ", &ModelParams::lambda_HQ, Domain::Positive},
    {"lambda_LH", &ModelParams::lambda_LH, Domain::Positive},
    {"Delta_AQ", &ModelParams::Delta_AQ, Domain::Any},
    {"Delta_BQ", &ModelParams::Delta_BQ, Domain::Any},
    {"Delta_LQ", &ModelParams::Delta_LQ, Domain::Any},
    {"Delta_HQ", &ModelParams::Delta_HQ, Domain::Any},
    {"Delta_LH", &ModelParams::Delta_LH, Domain::Any},
    {"gamma_Fd", &ModelParams::gamma_Fd, Domain::NonNegative},
    {"gamma_Pc", &ModelParams::gamma_Pc, Domain::NonNegative},
    {"Gamma_N", &ModelParams::Gamma_N, Domain::NonNegative},
    {"Gamma_P", &ModelParams::Gamma_P, Domain::NonNegative},
    {"mu_Fd", &ModelParams::mu_Fd, Domain::Any},
    {"mu_Pc", &ModelParams::mu_Pc, Domain::Any},
    {"mu_N", &ModelParams::mu_N, Domain::Any},
    {"mu_P", &ModelParams::mu_P, Domain::Any},
    {"T", &ModelParams::T, Domain::Positive},
    {"V_P", &ModelParams::V_P, Domain::Any},
    {"V_N", &ModelParams::V_N, Domain::Any},
    {"U_w0", &ModelParams::U_w0, Domain::Any},
    {"U_ch0", &ModelParams::U_ch0, Domain::Any},
    {"x0", &ModelParams::x0, Domain::Positive},
    {"l_e", &ModelParams::l_e, Domain::Positive},
    {"l_p", &ModelParams::l_p, Domain::Positive},
    {"x_w", &ModelParams::x_w, Domain::Positive},
    {"l_w", &ModelParams::l_w, Domain::Positive},
    {"x_ch", &ModelParams::x_ch, Domain::Positive},
    {"l_ch", &ModelParams::l_ch, Domain::Positive},
    {"zeta", &ModelParams::zeta, Domain::Positive},
    {"dt", &ModelParams::dt, Domain::Positive},
    {"initial_x", &ModelParams::initial_x, Domain::Any},
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(int line, const std::string& message) {
    throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

double parse_double(std::string_view value, const std::string& key, int line) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last)
        fail(line, "key '" + key + "': cannot parse '" + std::string(value) + "' as a number");
    if (!std::isfinite(out))
        fail(line, "key '" + key + "': value must be finite");
    return out;
}

long long parse_integer(std::string_view value, const std::string& key, int line) {
    long long out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        fail(line, "key '" + key + "': cannot parse '" + std::string(value) + "' as an integer");
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

ParsedConfig parse_config(std::string_view text) {
    ParsedConfig cfg;
    bool grid_set = false;
    std::set<std::string> seen;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(line_no, "expected 'key = value'");
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty())
            fail(line_no, "missing key before '='");
        if (value.empty())
            fail(line_no, "key '" + key + "': missing value");
        if (!seen.insert(key).second)
            fail(line_no, "key '" + key + "' appears twice");

        if (key == "proton_gap_convention") {
            if (value == "signed")
                cfg.params.proton_gap_convention = ProtonGapConvention::Signed;
            else if (value == "absolute")
                cfg.params.proton_gap_convention = ProtonGapConvention::Absolute;
            else
                fail(line_no, "key '" + key + "': expected 'signed' or 'absolute'");
            continue;
        }
        if (key == "initial_state") {
            if (value == "vacuum") {
                cfg.params.initial_state = 0;
            } else if (value == "primed") {
                cfg.params.initial_state = 0xA0;
            } else {
                const long long n = parse_integer(value, key, line_no);
                if (n < 0 || n > 255)
                    fail(line_no, "key 'initial_state': expected 'vacuum', 'primed' "
                                  "or a Fock index in [0, 255]");
                cfg.params.initial_state = static_cast<int>(n);
            }
            continue;
        }
        if (key == "seed") {
            std::uint64_t out = 0;
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
            if (ec != std::errc() || ptr != value.data() + value.size())
                fail(line_no, "key 'seed': cannot parse '" + std::string(value) + "'");
            cfg.scan.master_seed = out;
            continue;
        }
        if (key == "sample_every") {
            const long long n = parse_integer(value, key, line_no);
            if (n < 1)
                fail(line_no, "key 'sample_every': must be >= 1");
            cfg.scan.sample_every = static_cast<int>(n);
            continue;
        }
        if (key == "scan.variable") {
            if (value == "delta_mu")
                cfg.scan.variable = ScanVariable::DeltaMu;
            else if (value == "delta_V")
                cfg.scan.variable = ScanVariable::DeltaV;
            else if (value == "temperature")
                cfg.scan.variable = ScanVariable::Temperature;
            else
                fail(line_no, "key '" + key +
                                  "': expected 'delta_mu', 'delta_V' or 'temperature'");
            continue;
        }
        if (key == "scan.scheme") {
            if (value == "I")
                cfg.scan.scheme = TemperatureScheme::I;
            else if (value == "II")
                cfg.scan.scheme = TemperatureScheme::II;
            else if (value == "III")
                cfg.scan.scheme = TemperatureScheme::III;
            else
                fail(line_no, "key '" + key + "': expected 'I', 'II' or 'III'");
            continue;
        }
        if (key == "scan.grid") {
            std::vector<double> grid;
            std::size_t start = 0;
            const std::string list{value};
            while (start <= list.size()) {
                std::size_t comma = list.find(',', start);
                if (comma == std::string::npos)
                    comma = list.size();
                const std::string_view item = trim(std::string_view(list).substr(start, comma - start));
                if (item.empty())
                    fail(line_no, "key 'scan.grid': empty entry");
                grid.push_back(parse_double(item, key, line_no));
                start = comma + 1;
            }
            for (std::size_t i = 1; i < grid.size(); ++i)
                if (!(grid[i] > grid[i - 1]))
                    fail(line_no, "key 'scan.grid': values must be strictly increasing");
            cfg.scan.grid = std::move(grid);
            grid_set = true;
            continue;
        }
        if (key == "scan.trajectories") {
            const long long n = parse_integer(value, key, line_no);
            if (n < 1)
                fail(line_no, "key 'scan.trajectories': must be >= 1");
            cfg.scan.trajectories = static_cast<int>(n);
            continue;
        }
        if (key == "scan.t_end") {
            const double v = parse_double(value, key, line_no);
            if (!(v > 0.0))
                fail(line_no, "key 'scan.t_end': must be positive");
            cfg.scan.t_end = v;
            continue;
        }
        if (key == "scan.dt") {
            const double v = parse_double(value, key, line_no);
            if (!(v > 0.0))
                fail(line_no, "key 'scan.dt': must be positive");
            cfg.scan.dt = v;
            continue;
        }

        const auto* entry = std::find_if(std::begin(kParamKeys), std::end(kParamKeys),
                                         [&](const DoubleKey& k) { return key == k.name; });
        if (entry == std::end(kParamKeys))
            fail(line_no, "unknown key '" + key + "'");
        const double v = parse_double(value, key, line_no);
        if (entry->domain == Domain::Positive && !(v > 0.0))
            fail(line_no, "key '" + key + "': must be positive");
        if (entry->domain == Domain::NonNegative && v < 0.0)
            fail(line_no, "key '" + key + "': must be non-negative");
        cfg.params.*(entry->field) = v;
    }

    if (!grid_set)
        cfg.scan.grid = default_grid(cfg.scan.variable);
    cfg.params.check();
    cfg.scan.check();
    return cfg;
}

ParsedConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string emit_config(const ModelParams& params, const ScanSpec& scan) {
    std::ostringstream out;
    for (const DoubleKey& k : kParamKeys)
        out << k.name << " = " << fmt_double(params.*(k.field)) << "\n";
    out << "proton_gap_convention = "
        << (params.proton_gap_convention == ProtonGapConvention::Signed ? "signed"
                                                                        : "absolute")
        << "\n";
    out << "initial_state = " << params.initial_state << "\n";
    out << "seed = " << scan.master_seed << "\n";
    out << "sample_every = " << scan.sample_every << "\n";
    switch (scan.variable) {
    case ScanVariable::DeltaMu: out << "scan.variable = delta_mu\n"; break;
    case ScanVariable::DeltaV: out << "scan.variable = delta_V\n"; break;
    case ScanVariable::Temperature: out << "scan.variable = temperature\n"; break;
    }
    out << "scan.grid = ";
    for (std::size_t i = 0; i < scan.grid.size(); ++i)
        out << (i ? ", " : "") << fmt_double(scan.grid[i]);
    out << "\n";
    switch (scan.scheme) {
    case TemperatureScheme::I: out << "scan.scheme = I\n"; break;
    case TemperatureScheme::II: out << "scan.scheme = II\n"; break;
    case TemperatureScheme::III: out << "scan.scheme = III\n"; break;
    }
    out << "scan.trajectories = " << scan.trajectories << "\n";
    out << "scan.t_end = " << fmt_double(scan.t_end) << "\n";
    out << "scan.dt = " << fmt_double(scan.dt) << "\n";
    return out.str();
}

} // namespace qcycle

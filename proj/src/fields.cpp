#include <trilevel/fields.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace trilevel {

extern const char* const kPresetTableText;  // generated from data/presets.ini

namespace {

const std::vector<std::pair<InitialKind, std::string_view>> kInitialNames = {
    {InitialKind::level1, "level1"},
    {InitialKind::level2, "level2"},
    {InitialKind::level3, "level3"},
    {InitialKind::stark_plus, "stark_plus"},
    {InitialKind::stark_minus, "stark_minus"},
    {InitialKind::stark_zero, "stark_zero"},
    {InitialKind::custom, "custom"},
};

double number_or(const KeyValues& kv, const std::string& key, double fallback)
{
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : parse_number(key, it->second);
}

std::string join_numbers(const std::vector<double>& xs)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) {
            out += ", ";
        }
        out += format_number(xs[i]);
    }
    return out;
}

std::vector<double> read_numbers(const std::string& key,
                                 const std::string& text, std::size_t count)
{
    std::vector<double> xs;
    for (const auto& item : split_list(text)) {
        xs.push_back(parse_number(key, item));
    }
    if (xs.size() != count) {
        throw ConfigError(key, key + ": expected " + std::to_string(count) +
                                   " comma-separated numbers");
    }
    return xs;
}

}  // namespace

void
FieldConfig::validate() const
{
    auto finite = [](const char* key, double v) {
        if (!std::isfinite(v)) {
            throw ConfigError(key, std::string(key) + " must be finite");
        }
    };
    finite("A", A);
    finite("Omega", Omega);
    finite("B", B);
    finite("omega", omega);
    finite("delta", delta);
    finite("Gamma", Gamma);
    if (Gamma < 0.0) {
        throw ConfigError("Gamma", "Gamma must be ≥ 0");
    }
    if (sign != 1 && sign != -1) {
        throw ConfigError("sign", "sign must be +1 or -1");
    }
}

double
epsilon(double t, const FieldConfig& cfg)
{
    return cfg.sign * cfg.A * std::cos(cfg.Omega * t);
}

double
j_coupling(double t, const FieldConfig& cfg)
{
    return cfg.sign * 0.5 * cfg.B * std::cos(cfg.omega * t + cfg.delta);
}

Mat3
hamiltonian(double t, const FieldConfig& cfg)
{
    const auto& g = GeneratorSet::standard();
    return epsilon(t, cfg) * g.Az + 2.0 * j_coupling(t, cfg) * g.Ax;
}

Mat8
field_generator(double t, const FieldConfig& cfg)
{
    const auto& g = GeneratorSet::standard();
    return epsilon(t, cfg) * g.Bz + 2.0 * j_coupling(t, cfg) * g.Bx;
}

Mat8
liouvillian(double t, const FieldConfig& cfg)
{
    Mat8 l = field_generator(t, cfg);
    l.diagonal().array() -= I * cfg.Gamma;
    return l;
}

std::string_view
to_string(InitialKind kind)
{
    for (const auto& [k, name] : kInitialNames) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

InitialKind
parse_initial_kind(const std::string& text)
{
    for (const auto& [k, name] : kInitialNames) {
        if (name == text) {
            return k;
        }
    }
    throw ConfigError("initial",
                      "initial: unknown initial state '" + text +
                          "' (expected level1, level2, level3, stark_plus, "
                          "stark_minus, stark_zero or custom)");
}

Vec3
stark_state(InitialKind kind)
{
    const double r2 = std::sqrt(2.0);
    const double r3 = std::sqrt(3.0);
    const double r6 = std::sqrt(6.0);
    switch (kind) {
    case InitialKind::stark_plus:
        return Vec3(1.0 / r3, 1.0 / r2, 1.0 / r6);
    case InitialKind::stark_minus:
        return Vec3(1.0 / r3, -1.0 / r2, 1.0 / r6);
    case InitialKind::stark_zero:
        return Vec3(1.0 / r3, 0.0, -r2 / r3);
    default:
        throw std::invalid_argument("not a Stark initial state");
    }
}

DensityMatrix
InitialState::density() const
{
    switch (kind) {
    case InitialKind::level1:
        return DensityMatrix::level(1);
    case InitialKind::level2:
        return DensityMatrix::level(2);
    case InitialKind::level3:
        return DensityMatrix::level(3);
    case InitialKind::stark_plus:
    case InitialKind::stark_minus:
    case InitialKind::stark_zero:
        return DensityMatrix::pure(stark_state(kind));
    case InitialKind::custom:
        if (!custom_rho) {
            throw ConfigError("rho_re", "custom initial state needs rho_re/rho_im");
        }
        return *custom_rho;
    }
    throw std::logic_error("unhandled initial kind");
}

UnknownPresetError::UnknownPresetError(const std::string& name)
    : std::invalid_argument([&] {
          std::string msg = "unknown preset '" + name + "'; valid names:";
          for (const auto& n : preset_names()) {
              msg += " " + n;
          }
          return msg;
      }())
{
}

const std::vector<Preset>&
presets()
{
    static const std::vector<Preset> table = parse_preset_table(kPresetTableText);
    return table;
}

const Preset&
preset(std::string_view name)
{
    for (const auto& p : presets()) {
        if (p.name == name) {
            return p;
        }
    }
    throw UnknownPresetError(std::string(name));
}

std::vector<std::string>
preset_names()
{
    std::vector<std::string> names;
    for (const auto& p : presets()) {
        names.push_back(p.name);
    }
    return names;
}

FieldConfig
hydrogen_config(double amplitude, double omega, double Gamma)
{
    FieldConfig cfg;
    cfg.A = amplitude;
    cfg.B = amplitude / std::sqrt(2.0);
    cfg.Omega = omega;
    cfg.omega = omega;
    cfg.delta = 0.0;
    cfg.Gamma = Gamma;
    cfg.sign = -1;
    return cfg;
}

bool
is_hydrogen_config(const FieldConfig& cfg)
{
    const double scale = std::max(std::abs(cfg.A), 1.0);
    return cfg.omega != 0.0 && cfg.Omega == cfg.omega && cfg.delta == 0.0 &&
        std::abs(cfg.A - std::sqrt(2.0) * cfg.B) <= 1e-12 * scale;
}

double
hydrogen_amplitude(const FieldConfig& cfg)
{
    // The Stark matrix carries -A; a +1 sign convention flips the amplitude.
    return -cfg.sign * cfg.A;
}

void
write_field_config(const FieldConfig& cfg, KeyValues& out)
{
    out["A"] = format_number(cfg.A);
    out["Omega"] = format_number(cfg.Omega);
    out["B"] = format_number(cfg.B);
    out["omega"] = format_number(cfg.omega);
    out["delta"] = format_number(cfg.delta);
    out["Gamma"] = format_number(cfg.Gamma);
    out["sign"] = std::to_string(cfg.sign);
}

FieldConfig
read_field_config(const KeyValues& kv, FieldConfig base)
{
    FieldConfig cfg = base;
    cfg.A = number_or(kv, "A", cfg.A);
    cfg.Omega = number_or(kv, "Omega", cfg.Omega);
    cfg.B = number_or(kv, "B", cfg.B);
    cfg.omega = number_or(kv, "omega", cfg.omega);
    cfg.delta = number_or(kv, "delta", cfg.delta);
    cfg.Gamma = number_or(kv, "Gamma", cfg.Gamma);
    const double s = number_or(kv, "sign", cfg.sign);
    if (s != 1.0 && s != -1.0) {
        throw ConfigError("sign", "sign must be +1 or -1");
    }
    cfg.sign = static_cast<int>(s);
    cfg.validate();
    return cfg;
}

void
write_initial_state(const InitialState& init, KeyValues& out)
{
    out["initial"] = std::string(to_string(init.kind));
    if (init.kind == InitialKind::custom && init.custom_rho) {
        std::vector<double> re, im;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                re.push_back((*init.custom_rho)(i, j).real());
                im.push_back((*init.custom_rho)(i, j).imag());
            }
        }
        out["rho_re"] = join_numbers(re);
        out["rho_im"] = join_numbers(im);
    }
}

InitialState
read_initial_state(const KeyValues& kv, InitialState base)
{
    InitialState init = base;
    if (const auto it = kv.find("initial"); it != kv.end()) {
        init.kind = parse_initial_kind(it->second);
    }
    if (init.kind != InitialKind::custom) {
        init.custom_rho.reset();
        return init;
    }
    const auto re = kv.find("rho_re");
    if (re == kv.end()) {
        throw ConfigError("rho_re", "rho_re: required for initial = custom");
    }
    const auto re_vals = read_numbers("rho_re", re->second, 9);
    std::vector<double> im_vals(9, 0.0);
    if (const auto im = kv.find("rho_im"); im != kv.end()) {
        im_vals = read_numbers("rho_im", im->second, 9);
    }
    Mat3 m;
    for (int k = 0; k < 9; ++k) {
        m(k / 3, k % 3) = cplx(re_vals[k], im_vals[k]);
    }
    try {
        init.custom_rho = DensityMatrix::checked(m);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("rho_re", std::string("rho_re: ") + e.what());
    }
    return init;
}

std::string
serialize_preset_table(const std::vector<Preset>& table)
{
    std::string out;
    for (const auto& p : table) {
        KeyValues kv;
        write_field_config(p.config, kv);
        write_initial_state(p.initial, kv);
        kv["t_end"] = format_number(p.t_end);
        kv["dt_out"] = format_number(p.dt_out);
        if (!p.desk_scale.empty()) {
            kv["desk_scale"] = p.desk_scale;
        }
        out += "[" + p.name + "]\n";
        for (const auto& [k, v] : kv) {
            out += k + " = " + v + "\n";
        }
        out += "\n";
    }
    return out;
}

std::vector<Preset>
parse_preset_table(const std::string& text)
{
    const ConfigDocument doc = parse_config_text(text);
    std::vector<Preset> table;
    for (const auto& [name, kv] : doc.sections) {
        Preset p;
        if (const auto it = kv.find("base"); it != kv.end()) {
            const auto found =
                std::find_if(table.begin(), table.end(),
                             [&](const Preset& q) { return q.name == it->second; });
            if (found == table.end()) {
                throw ConfigError("base", name + ": base preset '" + it->second +
                                              "' must be defined earlier");
            }
            p = *found;
            p.desk_scale.clear();
        }
        p.name = name;
        p.config = read_field_config(kv, p.config);
        p.initial = read_initial_state(kv, p.initial);
        p.t_end = number_or(kv, "t_end", p.t_end);
        p.dt_out = number_or(kv, "dt_out", p.dt_out);
        if (const auto it = kv.find("desk_scale"); it != kv.end()) {
            p.desk_scale = it->second;
        }
        table.push_back(std::move(p));
    }
    return table;
}

}  // namespace trilevel

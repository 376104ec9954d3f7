#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <trilevel/algebra.hpp>
#include <trilevel/config.hpp>
#include <trilevel/types.hpp>

namespace trilevel {

/// epsilon(t) = s A cos(Omega t), J(t) = s (B/2) cos(omega t + delta),
/// uniform damping Gamma. s = sign is +1 or -1.
struct FieldConfig
{
    double A = 0.0;
    double Omega = 0.0;
    double B = 0.0;
    double omega = 0.0;
    double delta = 0.0;
    double Gamma = 0.0;
    int sign = 1;

    /// Throws ConfigError naming the offending key.
    void validate() const;

    bool operator==(const FieldConfig&) const = default;
};

double epsilon(double t, const FieldConfig& cfg);
double j_coupling(double t, const FieldConfig& cfg);

/// H(t) = eps(t) Az + 2 J(t) Ax.
Mat3 hamiltonian(double t, const FieldConfig& cfg);
/// Field part of the Liouvillian, eps(t) Bz + 2 J(t) Bx (Hermitian).
Mat8 field_generator(double t, const FieldConfig& cfg);
/// -i Gamma I + eps(t) Bz + 2 J(t) Bx.
Mat8 liouvillian(double t, const FieldConfig& cfg);

enum class InitialKind {
    level1,
    level2,
    level3,
    stark_plus,
    stark_minus,
    stark_zero,
    custom,
};

std::string_view to_string(InitialKind kind);
InitialKind parse_initial_kind(const std::string& text);

/// Parabolic (Stark) states in the (s, p, d) = (level1, level2, level3) basis:
/// plus/minus = s/sqrt3 +- p/sqrt2 + d/sqrt6, zero = (s - sqrt2 d)/sqrt3.
Vec3 stark_state(InitialKind kind);

struct InitialState
{
    InitialKind kind = InitialKind::level1;
    std::optional<DensityMatrix> custom_rho;

    DensityMatrix density() const;
};

struct Preset
{
    std::string name;
    FieldConfig config;
    InitialState initial;
    double t_end = 100.0;
    double dt_out = 0.05;
    std::string desk_scale;  // note on why this t_end was picked
};

class UnknownPresetError : public std::invalid_argument
{
public:
    explicit UnknownPresetError(const std::string& name);
};

/// The bundled preset table (data/presets.ini), parsed once.
const std::vector<Preset>& presets();
const Preset& preset(std::string_view name);
std::vector<std::string> preset_names();

/// Resonant n = 3 hydrogen drive: A = amplitude, B = A/sqrt2, Omega = omega,
/// delta = 0, sign = -1 so that H(t) matches the Stark coupling matrix.
FieldConfig hydrogen_config(double amplitude, double omega = 1.0,
                            double Gamma = 0.0);
bool is_hydrogen_config(const FieldConfig& cfg);
/// Signed amplitude entering the Stark closed form for a hydrogen config.
double hydrogen_amplitude(const FieldConfig& cfg);

/// FieldConfig <-> key/value text. Unknown keys are left for the caller.
void write_field_config(const FieldConfig& cfg, KeyValues& out);
FieldConfig read_field_config(const KeyValues& kv, FieldConfig base = {});

void write_initial_state(const InitialState& init, KeyValues& out);
InitialState read_initial_state(const KeyValues& kv, InitialState base = {});

std::string serialize_preset_table(const std::vector<Preset>& table);
std::vector<Preset> parse_preset_table(const std::string& text);

}  // namespace trilevel

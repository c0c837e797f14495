pub mod ode;
pub mod preset;
pub mod truncation;

pub use ode::{solve_series, ODESpec};
pub use preset::{
    builtin_presets, delta25_degree, embedded_file, parse_registry, phi_moments, preset, series_from_moments,
    ComponentSource, CurvePreset, DegreeRule, JPrimeRule, TruncationRule,
};
pub use truncation::{solution_series, truncation_path, truncation_ph, TruncationResult};

//! Bessel functions, their zeros, and the spectral data of a metric cone built from them.

mod functions;
mod hp;
mod product;
mod spectrum;
mod zeros;
mod zeta;

pub use functions::{bessel_eval, j_pair, ln_i_pair, Kind};
pub use hp::{working_bits, working_digits, DEFAULT_DIGITS};
pub use product::{product_formula_residual, ProductCheck};
pub use spectrum::{
    cone_spectrum, scale_factor, torsion_zeta_partial, BoundaryCondition, ConeSpectrumInput, Family, SectionEigenvalue,
    SpectrumEntry, TorsionZetaPartial,
};
pub use zeros::{find_zero, interlacing_holds, mcmahon, BesselSequence, CertifiedZero, Mode, RESIDUAL_BOUND};
pub use zeta::{rayleigh_sum, DUAL_PATH_TOLERANCE, z_q_values, zeta_at_zero, RayleighSum, ZetaValue, ZqValues};

//! Even symmetries of tensor categories: exact construction and verification,
//! Poincaré series, Schur-Weyl decompositions, twisted Lie algebras and
//! Laplace-type spectra.

pub mod exactnum;
pub mod fusion;
pub mod poincare;
pub mod schurweyl;
pub mod spectra;
pub mod symmetry;
pub mod tensor;
pub mod twistlie;

/// Largest tensor degrees attempted before refusing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Caps {
    /// Dense representations and tensor-power constructions over exact scalars.
    pub exact_m: usize,
    /// The same over floats.
    pub float_m: usize,
    /// Schur functor images over exact scalars.
    pub schur_exact_m: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { exact_m: 6, float_m: 8, schur_exact_m: 5 }
    }
}

impl Caps {
    /// Defaults overridden by `SWLAB_EXACT_M` and `SWLAB_FLOAT_M` when set.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        let read = |key: &str| std::env::var(key).ok().and_then(|v| v.trim().parse::<usize>().ok());
        if let Some(m) = read("SWLAB_EXACT_M") {
            caps.exact_m = m;
            caps.schur_exact_m = m;
        }
        if let Some(m) = read("SWLAB_FLOAT_M") {
            caps.float_m = m;
        }
        caps
    }
}

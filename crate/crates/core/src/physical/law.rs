use serde::Serialize;

use crate::C64;

/// Which asymptotic statement a set of constants belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LawKind {
    /// Density at `γt = 1`.
    LimitProfile,
    /// `(1-γt)^{(r-1)/γ} ∫x^r u → const`, `r > 1`.
    MomentBlowup,
    /// `∫x u / (-log(1-γt)) → const`.
    LogMoment,
    /// `∫x^r u` bounded, `0 < r < 1`.
    SubcriticalMoment,
    /// `ω(t,x) ~ Re(A x^{-σ₂-γ})` as `x → ∞`.
    LargeX,
    /// `v(t,x) ~ x^{-1-γ}(h₁ cos(ζ log x) + h₂ sin(ζ log x))` as `x → 0`.
    SmallXOscillation,
}

/// A named constant, stored as `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedConstant {
    pub name: String,
    pub value: [f64; 2],
}

/// An asymptotic law with its constants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticLaw {
    pub kind: LawKind,
    pub constants: Vec<NamedConstant>,
}

impl AsymptoticLaw {
    pub fn new(kind: LawKind) -> Self {
        Self { kind, constants: Vec::new() }
    }

    pub fn with(mut self, name: &str, value: C64) -> Self {
        self.constants.push(NamedConstant { name: name.into(), value: [value.re, value.im] });
        self
    }

    pub fn constant(&self, name: &str) -> Option<C64> {
        self.constants.iter().find(|c| c.name == name).map(|c| C64::new(c.value[0], c.value[1]))
    }

    pub fn is_finite(&self) -> bool {
        self.constants.iter().all(|c| c.value.iter().all(|v| v.is_finite()))
    }
}

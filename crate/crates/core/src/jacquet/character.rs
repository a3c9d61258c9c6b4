//! Characters of the diagonal torus of `SL2(Qp)`.
//!
//! A [`TorusCharacter`] is a formal product `chi_k psi^a (psi^w)^b delta_P^c`
//! where `psi` is one fixed smooth character. Eigenvalues of
//! `z = diag(p, p^-1)` are kept as `p^e * u` without fixing `p`.

use std::fmt;
use std::ops::Mul;

use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::exactla::{render_rational, Rational};

/// Exponent of `p` in `delta_P(z)`: `[N_0 : z N_0 z^-1] = p^2`.
pub const DELTA_P_Z_EXPONENT: i64 = -2;

/// A value `p^p_exp * unit` at `z = diag(p, p^-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeckeEigenvalue {
    pub p_exp: i64,
    pub unit: Rational,
}

impl HeckeEigenvalue {
    pub fn one() -> Self {
        HeckeEigenvalue {
            p_exp: 0,
            unit: Rational::one(),
        }
    }

    pub fn p_power(e: i64) -> Self {
        HeckeEigenvalue {
            p_exp: e,
            unit: Rational::one(),
        }
    }

    pub fn inverse(&self) -> Self {
        HeckeEigenvalue {
            p_exp: -self.p_exp,
            unit: self.unit.recip(),
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        let n32 = i32::try_from(n).expect("exponent out of range");
        HeckeEigenvalue {
            p_exp: self.p_exp * n,
            unit: Pow::pow(&self.unit, n32),
        }
    }

    pub fn is_nonzero(&self) -> bool {
        !self.unit.is_zero()
    }

    /// Numeric value for a concrete prime.
    pub fn evaluate(&self, p: u64) -> Rational {
        let base = Rational::from_integer(p.into());
        let e = i32::try_from(self.p_exp).expect("exponent out of range");
        Pow::pow(&base, e) * &self.unit
    }
}

impl Mul for &HeckeEigenvalue {
    type Output = HeckeEigenvalue;

    fn mul(self, rhs: &HeckeEigenvalue) -> HeckeEigenvalue {
        HeckeEigenvalue {
            p_exp: self.p_exp + rhs.p_exp,
            unit: &self.unit * &rhs.unit,
        }
    }
}

impl fmt::Display for HeckeEigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p^{} * {}", self.p_exp, render_rational(&self.unit))
    }
}

/// A smooth character `psi` of the torus, recorded through its value at `z`
/// and a name for its restriction to `T(Z_p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmoothCharacter {
    pub label: String,
    pub z_valuation: i64,
    pub z_unit: Rational,
    /// Declares `psi^w = psi`.
    pub w_selfdual: bool,
    /// Name of `psi` restricted to `T(Z_p)`; `"trivial"` means trivial.
    pub torus_unit_label: String,
}

pub const TRIVIAL_LABEL: &str = "trivial";

impl SmoothCharacter {
    pub fn trivial() -> Self {
        SmoothCharacter {
            label: TRIVIAL_LABEL.to_string(),
            z_valuation: 0,
            z_unit: Rational::one(),
            w_selfdual: true,
            torus_unit_label: TRIVIAL_LABEL.to_string(),
        }
    }

    pub fn new(
        label: impl Into<String>,
        z_valuation: i64,
        z_unit: Rational,
        w_selfdual: bool,
        torus_unit_label: impl Into<String>,
    ) -> Result<Self> {
        let c = SmoothCharacter {
            label: label.into(),
            z_valuation,
            z_unit,
            w_selfdual,
            torus_unit_label: torus_unit_label.into(),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.label.is_empty() {
            return Err(Error::InvalidInput("smooth character needs a label".into()));
        }
        if self.z_unit.is_zero() {
            return Err(Error::InvalidInput(format!(
                "{}: value at z must be nonzero",
                self.label
            )));
        }
        // psi^w(z) = psi(z)^-1, so a w-invariant character has psi(z)^2 = 1
        if self.w_selfdual
            && (self.z_valuation != 0 || &self.z_unit * &self.z_unit != Rational::one())
        {
            return Err(Error::InvalidInput(format!(
                "{}: declared psi^w = psi but psi(z)^2 != 1",
                self.label
            )));
        }
        Ok(())
    }

    pub fn is_trivial(&self) -> bool {
        self.z_valuation == 0 && self.z_unit.is_one() && self.torus_unit_label == TRIVIAL_LABEL
    }

    pub fn value_at_z(&self) -> HeckeEigenvalue {
        HeckeEigenvalue {
            p_exp: self.z_valuation,
            unit: self.z_unit.clone(),
        }
    }

    /// `psi^w(z) = psi(w^-1 z w) = psi(z^-1)`.
    pub fn w_value_at_z(&self) -> HeckeEigenvalue {
        self.value_at_z().inverse()
    }
}

/// Formal character `chi_weight psi^psi_exp (psi^w)^psiw_exp delta_P^delta_exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusCharacter {
    pub weight: i64,
    pub psi_exp: i64,
    pub psiw_exp: i64,
    pub delta_exp: i64,
}

impl TorusCharacter {
    pub const fn new(weight: i64, psi_exp: i64, psiw_exp: i64, delta_exp: i64) -> Self {
        TorusCharacter {
            weight,
            psi_exp,
            psiw_exp,
            delta_exp,
        }
    }

    pub const fn chi(weight: i64) -> Self {
        Self::new(weight, 0, 0, 0)
    }

    /// `chi_k psi delta_P`.
    pub const fn section(weight: i64) -> Self {
        Self::new(weight, 1, 0, 1)
    }

    /// `chi_k psi^w`.
    pub const fn stalk(weight: i64) -> Self {
        Self::new(weight, 0, 1, 0)
    }

    pub fn times(self, other: TorusCharacter) -> Self {
        Self::new(
            self.weight + other.weight,
            self.psi_exp + other.psi_exp,
            self.psiw_exp + other.psiw_exp,
            self.delta_exp + other.delta_exp,
        )
    }

    /// Conjugation by the Weyl element: `chi_k -> chi_-k`, `psi <-> psi^w`,
    /// `delta_P -> delta_P^-1`.
    pub fn w_twist(self) -> Self {
        Self::new(-self.weight, self.psiw_exp, self.psi_exp, -self.delta_exp)
    }

    /// Merges `psi^w` into `psi` when `psi` is declared w-invariant.
    pub fn normalized(self, psi: &SmoothCharacter) -> Self {
        if psi.w_selfdual {
            Self::new(self.weight, self.psi_exp + self.psiw_exp, 0, self.delta_exp)
        } else {
            self
        }
    }

    /// Renders with a custom name for the smooth character.
    pub fn display_with(&self, name: &str) -> String {
        let mut s = format!("chi_{{{}}}", self.weight);
        let power = |base: String, e: i64| match e {
            0 => String::new(),
            1 => format!(" {base}"),
            _ => format!(" {base}^{{{e}}}"),
        };
        s += &power(name.to_string(), self.psi_exp);
        let wname = if self.psiw_exp == 1 {
            format!("{name}^w")
        } else {
            format!("({name}^w)")
        };
        s += &power(wname, self.psiw_exp);
        s += &power("delta_P".to_string(), self.delta_exp);
        s
    }
}

impl fmt::Display for TorusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("psi"))
    }
}

pub fn w_twist_all(chars: &[TorusCharacter]) -> Vec<TorusCharacter> {
    chars.iter().map(|c| c.w_twist()).collect()
}

/// Eigenvalue of `z = diag(p, p^-1)` on the line `chi`. `chi_k(z) = p^k`,
/// `delta_P(z) = p^-2`, and `psi`, `psi^w` contribute their declared values.
pub fn hecke_eigenvalue(chi: &TorusCharacter, psi: &SmoothCharacter) -> HeckeEigenvalue {
    let algebraic = HeckeEigenvalue::p_power(chi.weight);
    let delta = HeckeEigenvalue::p_power(DELTA_P_Z_EXPONENT).pow(chi.delta_exp);
    let smooth = &psi.value_at_z().pow(chi.psi_exp) * &psi.w_value_at_z().pow(chi.psiw_exp);
    &(&algebraic * &delta) * &smooth
}

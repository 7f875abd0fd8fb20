//! Stiffened-gas mixture thermodynamics.
//!
//! The flow model evolves the conserved vector `(rho, rho v, rho E, Gamma, Pi)`
//! where `Gamma` and `Pi` are mixture EOS parameters transported with the
//! flow. The mixture closure is
//!
//! ```text
//!     p * Gamma + Pi = rho e,      rho e = rho E - |rho v|^2 / (2 rho),
//! ```
//!
//! with the ratio of specific heats and stiffening pressure recovered as
//! `gamma = (Gamma + 1) / Gamma` and `p_inf = Pi / (Gamma + 1)`. Each pure
//! component is a stiffened gas `p = (gamma_i - 1) rho e - gamma_i p_inf_i`,
//! which covers both gases (`p_inf = 0`) and compressible liquids.

use crate::error::{Error, Result};

/// Conserved variables at one collocation point, `d = D` space dimensions.
///
/// `gamma` stores the EOS parameter Γ = 1/(γ−1) and `pi` stores
/// Π = γ p∞/(γ−1); both are carried by pure transport. The struct doubles
/// as the plain n_eq = D+4 vector for fluxes, fluctuations and residuals,
/// so it supports componentwise arithmetic without admissibility meaning.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConservedState<const D: usize> {
    /// Mixture density.
    pub rho: f64,
    /// Momentum density, one entry per space dimension.
    pub mom: [f64; D],
    /// Total energy density rho E.
    pub energy: f64,
    /// EOS parameter Γ.
    pub gamma: f64,
    /// EOS parameter Π.
    pub pi: f64,
}

/// Primitive variables `(rho, v, p, Gamma, Pi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimitiveState<const D: usize> {
    pub rho: f64,
    pub vel: [f64; D],
    pub p: f64,
    pub gamma: f64,
    pub pi: f64,
}

/// One stiffened-gas component.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Species {
    /// Ratio of specific heats, > 1.
    pub gamma: f64,
    /// Stiffening pressure, >= 0.
    pub p_inf: f64,
    /// Specific heat at constant volume, > 0.
    pub cv: f64,
}

/// The component table of a run; owns the limiter bounds on Γ and Π.
#[derive(Clone, Debug, PartialEq)]
pub struct SpeciesTable {
    species: Vec<Species>,
}

/// Entropy pair evaluation at a state (pure-phase diagnostic).
#[derive(Clone, Copy, Debug)]
pub struct EntropyEval<const D: usize> {
    /// Mathematical entropy eta = -rho s.
    pub eta: f64,
    /// Entropy flux q = -rho s v.
    pub q: [f64; D],
    /// Entropy variables d(eta)/du; the Γ and Π slots are exactly zero.
    pub theta: ConservedState<D>,
    /// zeta = (gamma-1) Cv rho / (p + p_inf).
    pub zeta: f64,
}

impl<const D: usize> ConservedState<D> {
    pub const N_EQ: usize = D + 4;

    pub fn zero() -> Self {
        Self { rho: 0.0, mom: [0.0; D], energy: 0.0, gamma: 0.0, pi: 0.0 }
    }

    /// Velocity vector v = rho v / rho.
    #[inline]
    pub fn velocity(&self) -> [f64; D] {
        let mut v = self.mom;
        for c in &mut v {
            *c /= self.rho;
        }
        v
    }

    /// Internal energy density rho e = rho E - |rho v|^2 / (2 rho).
    #[inline]
    pub fn internal_energy_density(&self) -> f64 {
        let mut ke = 0.0;
        for m in &self.mom {
            ke += m * m;
        }
        self.energy - 0.5 * ke / self.rho
    }

    /// Ratio of specific heats gamma = (Γ+1)/Γ.
    #[inline]
    pub fn heat_ratio(&self) -> f64 {
        (self.gamma + 1.0) / self.gamma
    }

    /// Mixture stiffening pressure p_inf = Π/(Γ+1).
    #[inline]
    pub fn p_inf(&self) -> f64 {
        self.pi / (self.gamma + 1.0)
    }

    /// Names the first violated admissibility condition, if any.
    ///
    /// The set of states requires rho > 0, Γ > 0, Π >= 0 and
    /// rho e > p_inf, all strict except Π (limiters own any epsilon slack).
    pub fn admissibility_violation(&self) -> Option<&'static str> {
        if !(self.rho > 0.0) {
            return Some("rho");
        }
        if !(self.gamma > 0.0) {
            return Some("Gamma");
        }
        if !(self.pi >= 0.0) {
            return Some("Pi");
        }
        if !(self.internal_energy_density() > self.p_inf()) {
            return Some("rho e");
        }
        None
    }

    #[inline]
    pub fn is_admissible(&self) -> bool {
        self.admissibility_violation().is_none()
    }

    pub fn check_admissible(&self) -> Result<()> {
        match self.admissibility_violation() {
            None => Ok(()),
            Some(cond) => Err(Error::Admissibility(format!(
                "condition `{cond}` violated by {self:?}"
            ))),
        }
    }

    /// Mixture pressure p = (rho e - Π)/Γ.
    pub fn pressure(&self) -> Result<f64> {
        self.check_admissible()?;
        Ok((self.internal_energy_density() - self.pi) / self.gamma)
    }

    /// Speed of sound c = sqrt(gamma (gamma-1) (rho e - p_inf) / rho).
    pub fn sound_speed(&self) -> Result<f64> {
        self.check_admissible()?;
        let g = self.heat_ratio();
        let arg = g * (g - 1.0) * (self.internal_energy_density() - self.p_inf()) / self.rho;
        if arg <= 0.0 {
            return Err(Error::Admissibility(format!(
                "sound speed argument {arg} not positive"
            )));
        }
        Ok(arg.sqrt())
    }

    /// Specific entropy for a given mixture heat capacity:
    ///
    /// `s = cv (ln(e - Π τ/(Γ+1)) + ln(τ)/Γ - ln Γ)`, with `τ = 1/rho`.
    pub fn specific_entropy(&self, cv: f64) -> Result<f64> {
        self.check_admissible()?;
        if !(cv > 0.0) {
            return Err(Error::Domain(format!("cv must be positive, got {cv}")));
        }
        let tau = 1.0 / self.rho;
        let e = self.internal_energy_density() * tau;
        Ok(cv * ((e - self.pi * tau / (self.gamma + 1.0)).ln() + tau.ln() / self.gamma
            - self.gamma.ln()))
    }

    /// Entropy pair and entropy variables (pure-phase diagnostic).
    pub fn entropy_eval(&self, cv: f64) -> Result<EntropyEval<D>> {
        let s = self.specific_entropy(cv)?;
        let p = (self.internal_energy_density() - self.pi) / self.gamma;
        let g = self.heat_ratio();
        let zeta = (g - 1.0) * cv * self.rho / (p + self.p_inf());
        let v = self.velocity();
        let mut v2 = 0.0;
        for c in &v {
            v2 += c * c;
        }
        let mut theta = ConservedState::<D>::zero();
        theta.rho = g * cv - s - 0.5 * zeta * v2;
        for i in 0..D {
            theta.mom[i] = zeta * v[i];
        }
        theta.energy = -zeta;
        let eta = -self.rho * s;
        let mut q = v;
        for c in &mut q {
            *c *= eta;
        }
        Ok(EntropyEval { eta, q, theta, zeta })
    }

    /// Conversion to primitive variables; inverse of [`PrimitiveState::conserved`].
    pub fn primitive(&self) -> Result<PrimitiveState<D>> {
        Ok(PrimitiveState {
            rho: self.rho,
            vel: self.velocity(),
            p: self.pressure()?,
            gamma: self.gamma,
            pi: self.pi,
        })
    }

    /// Dot product over all n_eq components (entropy-variable pairings).
    #[inline]
    pub fn dot(&self, other: &Self) -> f64 {
        let mut acc = self.rho * other.rho + self.energy * other.energy;
        for i in 0..D {
            acc += self.mom[i] * other.mom[i];
        }
        acc + self.gamma * other.gamma + self.pi * other.pi
    }

    /// Componentwise a + s * b, the workhorse of time stepping.
    #[inline]
    pub fn add_scaled(&self, s: f64, b: &Self) -> Self {
        let mut mom = self.mom;
        for i in 0..D {
            mom[i] += s * b.mom[i];
        }
        Self {
            rho: self.rho + s * b.rho,
            mom,
            energy: self.energy + s * b.energy,
            gamma: self.gamma + s * b.gamma,
            pi: self.pi + s * b.pi,
        }
    }

    /// Componentwise scaling.
    #[inline]
    pub fn scale(&self, s: f64) -> Self {
        let mut mom = self.mom;
        for c in &mut mom {
            *c *= s;
        }
        Self { rho: self.rho * s, mom, energy: self.energy * s, gamma: self.gamma * s, pi: self.pi * s }
    }

    /// Maximum absolute component, for scaled tolerances.
    pub fn norm_max(&self) -> f64 {
        let mut m = self.rho.abs().max(self.energy.abs());
        for c in &self.mom {
            m = m.max(c.abs());
        }
        m.max(self.gamma.abs()).max(self.pi.abs())
    }
}

impl<const D: usize> std::ops::Add for ConservedState<D> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_scaled(1.0, &rhs)
    }
}

impl<const D: usize> std::ops::Sub for ConservedState<D> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.add_scaled(-1.0, &rhs)
    }
}

impl<const D: usize> PrimitiveState<D> {
    /// Conversion to conserved variables: rho E = p Γ + Π + rho |v|^2 / 2.
    pub fn conserved(&self) -> ConservedState<D> {
        let mut mom = [0.0; D];
        let mut v2 = 0.0;
        for i in 0..D {
            mom[i] = self.rho * self.vel[i];
            v2 += self.vel[i] * self.vel[i];
        }
        ConservedState {
            rho: self.rho,
            mom,
            energy: self.p * self.gamma + self.pi + 0.5 * self.rho * v2,
            gamma: self.gamma,
            pi: self.pi,
        }
    }
}

impl SpeciesTable {
    pub fn new(species: Vec<Species>) -> Result<Self> {
        if species.is_empty() {
            return Err(Error::Config("species table must not be empty".into()));
        }
        for (i, sp) in species.iter().enumerate() {
            if !(sp.gamma > 1.0) {
                return Err(Error::Config(format!("species {i}: gamma must exceed 1, got {}", sp.gamma)));
            }
            if !(sp.p_inf >= 0.0) {
                return Err(Error::Config(format!("species {i}: p_inf must be >= 0, got {}", sp.p_inf)));
            }
            if !(sp.cv > 0.0) {
                return Err(Error::Config(format!("species {i}: cv must be positive, got {}", sp.cv)));
            }
        }
        Ok(Self { species })
    }

    pub fn species(&self) -> &[Species] {
        &self.species
    }

    pub fn len(&self) -> usize {
        self.species.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Γ of pure component i.
    pub fn gamma_of(&self, i: usize) -> f64 {
        1.0 / (self.species[i].gamma - 1.0)
    }

    /// Π of pure component i.
    pub fn pi_of(&self, i: usize) -> f64 {
        let sp = &self.species[i];
        sp.gamma * sp.p_inf / (sp.gamma - 1.0)
    }

    /// Limiter bounds (m_Γ, M_Γ): extreme values of 1/(γ_i − 1).
    pub fn gamma_bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.len() {
            let g = self.gamma_of(i);
            lo = lo.min(g);
            hi = hi.max(g);
        }
        (lo, hi)
    }

    /// Limiter bounds (m_Π, M_Π): extreme values of γ_i p∞_i/(γ_i − 1).
    pub fn pi_bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.len() {
            let p = self.pi_of(i);
            lo = lo.min(p);
            hi = hi.max(p);
        }
        (lo, hi)
    }

    /// Mixture (Γ, Π) from void fractions: Γ = Σ α_i/(γ_i−1),
    /// Π = Σ α_i γ_i p∞_i/(γ_i−1). The fractions must satisfy the
    /// saturation condition Σ α_i = 1 to 1e-12 and lie in [0, 1].
    pub fn gamma_pi_mix(&self, alphas: &[f64]) -> Result<(f64, f64)> {
        if alphas.len() != self.len() {
            return Err(Error::Config(format!(
                "{} void fractions for {} species",
                alphas.len(),
                self.len()
            )));
        }
        let sum: f64 = alphas.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Config(format!(
                "saturation condition violated: sum of void fractions = {sum}"
            )));
        }
        for (i, &a) in alphas.iter().enumerate() {
            if !(-1e-12..=1.0 + 1e-12).contains(&a) {
                return Err(Error::Config(format!("void fraction {i} = {a} outside [0, 1]")));
            }
        }
        let mut g = 0.0;
        let mut pi = 0.0;
        for (i, &a) in alphas.iter().enumerate() {
            g += a * self.gamma_of(i);
            pi += a * self.pi_of(i);
        }
        Ok((g, pi))
    }

    /// Void fraction of component 0 recovered from Γ (two-species mixtures).
    pub fn alpha1_from_gamma(&self, gamma: f64) -> Option<f64> {
        if self.len() != 2 {
            return None;
        }
        let g1 = self.gamma_of(0);
        let g2 = self.gamma_of(1);
        if (g1 - g2).abs() < 1e-14 {
            return None;
        }
        Some((gamma - g2) / (g1 - g2))
    }
}

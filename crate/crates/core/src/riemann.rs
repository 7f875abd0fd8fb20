//! Interface solvers: direct wave-speed estimates, the nonconservative
//! HLLC solver in fluctuation form, a Rusanov flux, and an exact
//! stiffened-gas Riemann solver used as a reference.
//!
//! The HLLC construction imposes pressure and velocity continuity across
//! the contact, so no root finding is needed: the star pressure and
//! contact speed come from the mass fluxes
//!
//! ```text
//!     Q_L = rho_L (u_L - s_L) > 0,    Q_R = rho_R (s_R - u_R) > 0,
//!     p* = (Q_L p_R + Q_R p_L + Q_L Q_R (u_L - u_R)) / (Q_L + Q_R),
//!     s* = (Q_L u_L + Q_R u_R + p_L - p_R) / (Q_L + Q_R),
//! ```
//!
//! and the star states follow from the Rankine-Hugoniot relations across
//! the outer waves. `Gamma`, `Pi` and the tangential velocity are carried
//! across the outer waves unchanged and jump only at `s*`.

mod exact;

pub use exact::{exact_riemann, ExactRiemannSolution};

use crate::error::{Error, Result};
use crate::fluctuations::{physical_flux_kernel, FluctuationPair, FluxState};
use crate::thermo::ConservedState;

/// Signal speeds, star quantities and star states of one HLLC evaluation.
#[derive(Clone, Copy, Debug)]
pub struct HllcBreakdown<const D: usize> {
    pub s_left: f64,
    pub s_star: f64,
    pub s_right: f64,
    pub p_star: f64,
    /// Mass fluxes across the outer waves, both positive.
    pub q_left: f64,
    pub q_right: f64,
    pub star_left: ConservedState<D>,
    pub star_right: ConservedState<D>,
}

/// Direct wave-speed estimates (no exact solve). Both use the larger of
/// the two heat-capacity ratios; the pressure-jump inflation term is
/// applied to the side facing the stronger shock first, then fed into the
/// opposite estimate.
pub fn wave_speed_estimates<const D: usize>(
    left: &ConservedState<D>,
    right: &ConservedState<D>,
    n: &[f64; D],
) -> Result<(f64, f64)> {
    let ql = FluxState::new(left)?;
    let qr = FluxState::new(right)?;
    Ok(wave_speeds_kernel(&ql, &qr, n))
}

#[inline]
pub(crate) fn wave_speeds_kernel<const D: usize>(
    a: &FluxState<D>,
    b: &FluxState<D>,
    n: &[f64; D],
) -> (f64, f64) {
    let g = ((a.gamma + 1.0) / a.gamma).max((b.gamma + 1.0) / b.gamma);
    let cl = (g * (a.p + a.p_inf) / a.rho).sqrt();
    let cr = (g * (b.p + b.p_inf) / b.rho).sqrt();
    let ul = a.vn(n);
    let ur = b.vn(n);
    let du = ul - ur;
    let k = 0.5 * (g + 1.0);
    let (ctl, ctr) = if b.p >= a.p {
        let ctl = cl + k * ((b.p - a.p) / (b.rho * cr) + du).max(0.0);
        let ctr = cr + k * ((a.p - b.p) / (a.rho * ctl) + du).max(0.0);
        (ctl, ctr)
    } else {
        let ctr = cr + k * ((a.p - b.p) / (a.rho * cl) + du).max(0.0);
        let ctl = cl + k * ((b.p - a.p) / (b.rho * ctr) + du).max(0.0);
        (ctl, ctr)
    };
    (ul - ctl, ur + ctr)
}

/// Full HLLC wave structure for a unit direction `n`.
pub fn hllc_breakdown<const D: usize>(
    left: &ConservedState<D>,
    right: &ConservedState<D>,
    n: &[f64; D],
) -> Result<HllcBreakdown<D>> {
    let a = FluxState::new(left)?;
    let b = FluxState::new(right)?;
    let bd = hllc_breakdown_kernel(&a, &b, n);
    bd.star_left
        .check_admissible()
        .map_err(|e| Error::Admissibility(format!("HLLC left star state: {e}")))?;
    bd.star_right
        .check_admissible()
        .map_err(|e| Error::Admissibility(format!("HLLC right star state: {e}")))?;
    if !(bd.s_left < bd.s_star && bd.s_star < bd.s_right) {
        return Err(Error::Interlacing(format!(
            "s_L = {}, s* = {}, s_R = {}",
            bd.s_left, bd.s_star, bd.s_right
        )));
    }
    Ok(bd)
}

#[inline]
pub(crate) fn hllc_breakdown_kernel<const D: usize>(
    a: &FluxState<D>,
    b: &FluxState<D>,
    n: &[f64; D],
) -> HllcBreakdown<D> {
    let (s_left, s_right) = wave_speeds_kernel(a, b, n);
    let ul = a.vn(n);
    let ur = b.vn(n);
    let q_left = a.rho * (ul - s_left);
    let q_right = b.rho * (s_right - ur);
    let qsum = q_left + q_right;
    let scale = (a.rho * (a.p + a.p_inf)).sqrt().max((b.rho * (b.p + b.p_inf)).sqrt());
    let (p_star, s_star) = if qsum > 1e-12 * scale {
        (
            (q_left * b.p + q_right * a.p + q_left * q_right * (ul - ur)) / qsum,
            (q_left * ul + q_right * ur + a.p - b.p) / qsum,
        )
    } else {
        // both mass fluxes at round-off level; fall back to simple means
        (0.5 * (a.p + b.p), 0.5 * (ul + ur))
    };

    let star_left = {
        let rho_star = q_left / (s_star - s_left);
        let spec_e_tot = a.energy / a.rho;
        let e_star_tot = spec_e_tot + (s_star - ul) * (s_star - a.p / q_left);
        let mut mom = [0.0; D];
        for i in 0..D {
            mom[i] = rho_star * (a.v[i] + (s_star - ul) * n[i]);
        }
        ConservedState { rho: rho_star, mom, energy: rho_star * e_star_tot, gamma: a.gamma, pi: a.pi }
    };
    let star_right = {
        let rho_star = q_right / (s_right - s_star);
        let spec_e_tot = b.energy / b.rho;
        let e_star_tot = spec_e_tot + (s_star - ur) * (s_star + b.p / q_right);
        let mut mom = [0.0; D];
        for i in 0..D {
            mom[i] = rho_star * (b.v[i] + (s_star - ur) * n[i]);
        }
        ConservedState { rho: rho_star, mom, energy: rho_star * e_star_tot, gamma: b.gamma, pi: b.pi }
    };

    HllcBreakdown { s_left, s_star, s_right, p_star, q_left, q_right, star_left, star_right }
}

/// HLLC fluctuations, split on the signs of the signal speeds.
pub fn hllc_fluctuations<const D: usize>(
    left: &ConservedState<D>,
    right: &ConservedState<D>,
    n: &[f64; D],
) -> Result<FluctuationPair<D>> {
    let a = FluxState::new(left)?;
    let b = FluxState::new(right)?;
    Ok(hllc_fluctuations_kernel(&a, &b, n))
}

#[inline]
pub(crate) fn hllc_fluctuations_kernel<const D: usize>(
    a: &FluxState<D>,
    b: &FluxState<D>,
    n: &[f64; D],
) -> FluctuationPair<D> {
    let bd = hllc_breakdown_kernel(a, b, n);
    hllc_from_breakdown(a, b, n, &bd)
}

pub(crate) fn hllc_from_breakdown<const D: usize>(
    a: &FluxState<D>,
    b: &FluxState<D>,
    n: &[f64; D],
    bd: &HllcBreakdown<D>,
) -> FluctuationPair<D> {
    let ua = conserved_of(a);
    let ub = conserved_of(b);
    let fa = physical_flux_kernel(a, n);
    let fb = physical_flux_kernel(b, n);
    let jump_g = b.gamma - a.gamma;
    let jump_pi = b.pi - a.pi;
    let zero = ConservedState::<D>::zero();

    let with_jumps = |mut v: ConservedState<D>| {
        v.gamma += bd.s_star * jump_g;
        v.pi += bd.s_star * jump_pi;
        v
    };

    if bd.s_left > 0.0 {
        let dplus = with_jumps(fb - fa);
        FluctuationPair { dminus: zero, dplus }
    } else if bd.s_star > 0.0 {
        // star flux left of the contact, by Rankine-Hugoniot across s_L
        let fstar_l = fa.add_scaled(bd.s_left, &(bd.star_left - ua));
        let dminus = (bd.star_left - ua).scale(bd.s_left);
        let dplus = with_jumps(fb - fstar_l);
        FluctuationPair { dminus, dplus }
    } else if bd.s_right > 0.0 {
        let fstar_r = fb.add_scaled(bd.s_right, &(bd.star_right - ub));
        let dminus = with_jumps(fstar_r - fa);
        let dplus = (ub - bd.star_right).scale(bd.s_right);
        FluctuationPair { dminus, dplus }
    } else {
        let dminus = with_jumps(fb - fa);
        FluctuationPair { dminus, dplus: zero }
    }
}

fn conserved_of<const D: usize>(q: &FluxState<D>) -> ConservedState<D> {
    let mut mom = [0.0; D];
    for i in 0..D {
        mom[i] = q.rho * q.v[i];
    }
    ConservedState { rho: q.rho, mom, energy: q.energy, gamma: q.gamma, pi: q.pi }
}

/// Rusanov flux on the conservative rows; the Gamma and Pi rows are zero.
/// `lambda` must bound the wave speeds of both states.
pub fn rusanov_flux<const D: usize>(
    left: &ConservedState<D>,
    right: &ConservedState<D>,
    n: &[f64; D],
    lambda: f64,
) -> Result<ConservedState<D>> {
    let a = FluxState::new(left)?;
    let b = FluxState::new(right)?;
    let fa = physical_flux_kernel(&a, n);
    let fb = physical_flux_kernel(&b, n);
    let mut out = (fa + fb).scale(0.5).add_scaled(-0.5 * lambda, &(*right - *left));
    out.gamma = 0.0;
    out.pi = 0.0;
    Ok(out)
}

/// Largest absolute signal speed of the pair, used by CFL estimates.
pub fn max_signal_speed<const D: usize>(
    left: &ConservedState<D>,
    right: &ConservedState<D>,
    n: &[f64; D],
) -> Result<f64> {
    let (sl, sr) = wave_speed_estimates(left, right, n)?;
    Ok(sl.abs().max(sr.abs()))
}

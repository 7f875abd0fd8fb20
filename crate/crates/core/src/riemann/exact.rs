//! Exact Riemann solver for two stiffened gases separated by the contact.
//!
//! `Gamma` and `Pi` are constant on each side of the contact, so each side
//! behaves as a single stiffened gas. In the shifted pressure `p + p_inf`
//! a stiffened gas is formally a polytropic gas, which reduces the problem
//! to the classical two-gamma solver: the star pressure solves
//! `f_L(p) + f_R(p) + (u_R - u_L) = 0` with the usual shock (mass-flux) and
//! rarefaction (isentrope) branches written in shifted pressures.

use crate::error::{Error, Result};
use crate::thermo::{ConservedState, PrimitiveState};

#[derive(Clone, Copy, Debug)]
struct Side {
    rho: f64,
    u: f64,
    p: f64,
    /// Ratio of specific heats of this side's effective stiffened gas.
    g: f64,
    p_inf: f64,
    c: f64,
    /// Transported EOS parameters carried to sampled states.
    big_gamma: f64,
    big_pi: f64,
}

impl Side {
    fn from_state(u: &ConservedState<1>) -> Result<Self> {
        u.check_admissible()?;
        let p = u.pressure()?;
        Ok(Side {
            rho: u.rho,
            u: u.velocity()[0],
            p,
            g: u.heat_ratio(),
            p_inf: u.p_inf(),
            c: u.sound_speed()?,
            big_gamma: u.gamma,
            big_pi: u.pi,
        })
    }

    /// Wave function f_X(p) and its derivative in p.
    fn wave_fn(&self, p: f64) -> (f64, f64) {
        let ps = p + self.p_inf;
        let ps_x = self.p + self.p_inf;
        if p > self.p {
            // shock: mass-flux form of the Rankine-Hugoniot relations
            let a = 2.0 / ((self.g + 1.0) * self.rho);
            let b = (self.g - 1.0) / (self.g + 1.0) * ps_x;
            let root = (a / (ps + b)).sqrt();
            let f = (p - self.p) * root;
            let df = root * (1.0 - 0.5 * (p - self.p) / (ps + b));
            (f, df)
        } else {
            // rarefaction: isentrope of s = cv ln((p + p_inf)/rho^gamma)
            let ex = 0.5 * (self.g - 1.0) / self.g;
            let ratio = (ps / ps_x).powf(ex);
            let f = 2.0 * self.c / (self.g - 1.0) * (ratio - 1.0);
            let df = ratio / (self.rho * self.c) * ps_x / ps;
            (f, df)
        }
    }

    /// Density on the star side of this wave at star pressure p.
    fn star_density(&self, p: f64) -> f64 {
        let ps = p + self.p_inf;
        let ps_x = self.p + self.p_inf;
        if p > self.p {
            let beta = (self.g - 1.0) / (self.g + 1.0);
            self.rho * (ps / ps_x + beta) / (beta * ps / ps_x + 1.0)
        } else {
            self.rho * (ps / ps_x).powf(1.0 / self.g)
        }
    }
}

/// Solved wave structure; samples the self-similar solution at `xi = x/t`.
#[derive(Clone, Debug)]
pub struct ExactRiemannSolution {
    left: Side,
    right: Side,
    p_star: f64,
    u_star: f64,
}

impl ExactRiemannSolution {
    /// Solve the star region by safeguarded Newton iteration, relative
    /// tolerance 1e-12, at most 100 iterations.
    pub fn solve(left: &ConservedState<1>, right: &ConservedState<1>) -> Result<Self> {
        let l = Side::from_state(left)?;
        let r = Side::from_state(right)?;

        // positivity (no vacuum) condition in shifted pressures
        let du = r.u - l.u;
        if 2.0 * l.c / (l.g - 1.0) + 2.0 * r.c / (r.g - 1.0) <= du {
            return Err(Error::Vacuum(format!(
                "velocity divergence {du} exceeds acoustic budget"
            )));
        }

        let f_of = |p: f64| -> f64 {
            let (fl, _) = l.wave_fn(p);
            let (fr, _) = r.wave_fn(p);
            fl + fr + du
        };

        // bracket: star pressure exceeds the vacuum floor -min(p_inf)
        let floor = -l.p_inf.min(r.p_inf);
        let scale = (l.p + l.p_inf).max(r.p + r.p_inf);
        let mut lo = floor + 1e-14 * scale;
        if f_of(lo) > 0.0 {
            return Err(Error::Vacuum("wave function positive at the pressure floor".into()));
        }
        let mut hi = (l.p.max(r.p) + scale).max(lo * 2.0 + scale);
        let mut grow = 0;
        while f_of(hi) < 0.0 {
            hi = floor + 2.0 * (hi - floor);
            grow += 1;
            if grow > 200 {
                return Err(Error::Domain("exact Riemann bracket expansion failed".into()));
            }
        }

        // Newton with bisection fallback inside [lo, hi]
        let mut p = 0.5 * (l.p + r.p);
        let guess = 0.5 * (l.p + r.p) - 0.125 * du * (l.rho + r.rho) * (l.c + r.c);
        if guess > lo && guess < hi {
            p = guess;
        }
        if !(p > lo && p < hi) {
            p = 0.5 * (lo + hi);
        }
        let mut converged = false;
        for _ in 0..100 {
            let (fl, dfl) = l.wave_fn(p);
            let (fr, dfr) = r.wave_fn(p);
            let f = fl + fr + du;
            let step = f / (dfl + dfr);
            if step.abs() <= 1e-12 * p.abs().max(1e-300) {
                converged = true;
                break;
            }
            if f > 0.0 {
                hi = p;
            } else {
                lo = p;
            }
            let mut p_new = p - step;
            if !(p_new > lo && p_new < hi) {
                p_new = 0.5 * (lo + hi);
            }
            p = p_new;
        }
        if !converged && (hi - lo) > 1e-10 * scale {
            return Err(Error::Domain(format!(
                "exact Riemann pressure iteration stalled at p = {p}"
            )));
        }

        let (fl, _) = l.wave_fn(p);
        let (fr, _) = r.wave_fn(p);
        let u_star = 0.5 * (l.u + r.u) + 0.5 * (fr - fl);
        Ok(Self { left: l, right: r, p_star: p, u_star })
    }

    pub fn p_star(&self) -> f64 {
        self.p_star
    }

    pub fn u_star(&self) -> f64 {
        self.u_star
    }

    /// Sample the solution at the similarity coordinate `xi = x/t`.
    pub fn sample(&self, xi: f64) -> ConservedState<1> {
        if xi < self.u_star {
            self.sample_left(xi)
        } else {
            self.sample_right(xi)
        }
    }

    fn sample_left(&self, xi: f64) -> ConservedState<1> {
        let s = &self.left;
        let prim = |rho: f64, u: f64, p: f64| {
            PrimitiveState { rho, vel: [u], p, gamma: s.big_gamma, pi: s.big_pi }.conserved()
        };
        if self.p_star > s.p {
            // left shock
            let ps_ratio = (self.p_star + s.p_inf) / (s.p + s.p_inf);
            let speed =
                s.u - s.c * ((s.g + 1.0) / (2.0 * s.g) * ps_ratio + (s.g - 1.0) / (2.0 * s.g)).sqrt();
            if xi < speed {
                prim(s.rho, s.u, s.p)
            } else {
                prim(s.star_density(self.p_star), self.u_star, self.p_star)
            }
        } else {
            // left rarefaction
            let c_star = s.c * ((self.p_star + s.p_inf) / (s.p + s.p_inf))
                .powf(0.5 * (s.g - 1.0) / s.g);
            let head = s.u - s.c;
            let tail = self.u_star - c_star;
            if xi < head {
                prim(s.rho, s.u, s.p)
            } else if xi > tail {
                prim(s.star_density(self.p_star), self.u_star, self.p_star)
            } else {
                let u = 2.0 / (s.g + 1.0) * (s.c + 0.5 * (s.g - 1.0) * s.u + xi);
                let c = 2.0 / (s.g + 1.0) * (s.c + 0.5 * (s.g - 1.0) * (s.u - xi));
                let ps = (s.p + s.p_inf) * (c / s.c).powf(2.0 * s.g / (s.g - 1.0));
                let rho = s.g * ps / (c * c);
                prim(rho, u, ps - s.p_inf)
            }
        }
    }

    fn sample_right(&self, xi: f64) -> ConservedState<1> {
        let s = &self.right;
        let prim = |rho: f64, u: f64, p: f64| {
            PrimitiveState { rho, vel: [u], p, gamma: s.big_gamma, pi: s.big_pi }.conserved()
        };
        if self.p_star > s.p {
            // right shock
            let ps_ratio = (self.p_star + s.p_inf) / (s.p + s.p_inf);
            let speed =
                s.u + s.c * ((s.g + 1.0) / (2.0 * s.g) * ps_ratio + (s.g - 1.0) / (2.0 * s.g)).sqrt();
            if xi > speed {
                prim(s.rho, s.u, s.p)
            } else {
                prim(s.star_density(self.p_star), self.u_star, self.p_star)
            }
        } else {
            // right rarefaction
            let c_star = s.c * ((self.p_star + s.p_inf) / (s.p + s.p_inf))
                .powf(0.5 * (s.g - 1.0) / s.g);
            let head = s.u + s.c;
            let tail = self.u_star + c_star;
            if xi > head {
                prim(s.rho, s.u, s.p)
            } else if xi < tail {
                prim(s.star_density(self.p_star), self.u_star, self.p_star)
            } else {
                let u = 2.0 / (s.g + 1.0) * (-s.c + 0.5 * (s.g - 1.0) * s.u + xi);
                let c = 2.0 / (s.g + 1.0) * (s.c - 0.5 * (s.g - 1.0) * (s.u - xi));
                let ps = (s.p + s.p_inf) * (c / s.c).powf(2.0 * s.g / (s.g - 1.0));
                let rho = s.g * ps / (c * c);
                prim(rho, u, ps - s.p_inf)
            }
        }
    }

    /// Largest absolute signal speed in the solution.
    pub fn max_signal_speed(&self) -> f64 {
        let l = &self.left;
        let r = &self.right;
        let sl = if self.p_star > l.p {
            let ps_ratio = (self.p_star + l.p_inf) / (l.p + l.p_inf);
            l.u - l.c * ((l.g + 1.0) / (2.0 * l.g) * ps_ratio + (l.g - 1.0) / (2.0 * l.g)).sqrt()
        } else {
            l.u - l.c
        };
        let sr = if self.p_star > r.p {
            let ps_ratio = (self.p_star + r.p_inf) / (r.p + r.p_inf);
            r.u + r.c * ((r.g + 1.0) / (2.0 * r.g) * ps_ratio + (r.g - 1.0) / (2.0 * r.g)).sqrt()
        } else {
            r.u + r.c
        };
        sl.abs().max(sr.abs())
    }
}

/// Sample the exact solution at the given `xi = x/t` coordinates, with
/// `x` measured along the direction `n` (+1 or -1). For `n = -1` the
/// problem is solved in mirrored velocities and the samples are mirrored
/// back, so the returned momenta are in the original frame.
pub fn exact_riemann(
    left: &ConservedState<1>,
    right: &ConservedState<1>,
    n: f64,
    xis: &[f64],
) -> Result<Vec<ConservedState<1>>> {
    if n == 1.0 {
        let sol = ExactRiemannSolution::solve(left, right)?;
        Ok(xis.iter().map(|&xi| sol.sample(xi)).collect())
    } else if n == -1.0 {
        let mirror = |u: &ConservedState<1>| ConservedState { mom: [-u.mom[0]], ..*u };
        let sol = ExactRiemannSolution::solve(&mirror(left), &mirror(right))?;
        Ok(xis.iter().map(|&xi| mirror(&sol.sample(xi))).collect())
    } else {
        Err(Error::Domain(format!("1D Riemann direction must be +-1, got {n}")))
    }
}

//! Extremal lengths of the classes `a`, `b`, `ab^-1` on the slit torus
//! `X = C/<1, tau> \ [0, s]`.
//!
//! The extremal length of a loop class is the minimal Dirichlet energy over
//! the fundamental domain of a potential `u` with the class's periods
//! (`u(z + 1) - u(z)`, `u(z + tau) - u(z)`) that is constant on the slit, so
//! that every level curve avoids the slit. For the class with homology
//! `p + q tau` the periods are `(P1, Ptau)` with `p P1 + q Ptau = 0`, scaled
//! to unit intersection: `a -> (0, 1)`, `b -> (1, 0)`, `ab^-1 -> (1, 1)`.
//!
//! Discretization: P1 elements on the sheared lattice `i/n + j tau/n`, each
//! cell split along its `(0,0)-(1,1)` diagonal, slit nodes `j = 0`,
//! `0 <= i <= s n`. Writing `u = L + w` with `L` linear and `w` periodic
//! splits the energy as `E(L) + E(w)` exactly, and `w` solves the periodic
//! lattice Laplace problem with Dirichlet data `-L` on the slit nodes. That
//! problem is solved directly with a capacitance matrix built from the
//! periodic lattice Green's function, which is translation invariant and
//! only needed along the slit row.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::richardson::refine_and_extrapolate;
use crate::charts::{LambdaTriple, SlitChartPoint};
use crate::error::{Error, Result};
use crate::exec::{try_map_ordered, Execution};

pub const MIN_GRID: usize = 16;
pub const MAX_GRID: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveClass {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "ab_inv")]
    ABInv,
}

impl CurveClass {
    pub const ALL: [CurveClass; 3] = [CurveClass::A, CurveClass::B, CurveClass::ABInv];

    /// Periods of the dual potential along `1` and `tau`.
    fn periods(self) -> (f64, f64) {
        match self {
            CurveClass::A => (0.0, 1.0),
            CurveClass::B => (1.0, 0.0),
            CurveClass::ABInv => (1.0, 1.0),
        }
    }

    /// Extremal length on the unslit torus.
    pub fn flat_value(self, tau: Complex64) -> f64 {
        match self {
            CurveClass::A => 1.0 / tau.im,
            CurveClass::B => tau.norm_sqr() / tau.im,
            CurveClass::ABInv => (1.0 - tau).norm_sqr() / tau.im,
        }
    }
}

impl std::str::FromStr for CurveClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(CurveClass::A),
            "b" => Ok(CurveClass::B),
            "ab_inv" | "ab-1" | "aB" => Ok(CurveClass::ABInv),
            _ => Err(Error::InvalidArgument(format!(
                "unknown curve class {s:?} (a, b, ab_inv)"
            ))),
        }
    }
}

/// Edge weights of the P1 stiffness stencil along `e1 = 1`, `e2 = tau` and
/// the diagonal `e1 + e2`; scale invariant in the mesh width.
pub(crate) fn stencil_weights(tau: Complex64) -> [f64; 3] {
    let e1 = [1.0, 0.0];
    let e2 = [tau.re, tau.im];
    let d = [1.0 + tau.re, tau.im];
    let zero = [0.0, 0.0];
    // off-diagonal local stiffness entries of the two triangles
    let k1 = local_stiffness([zero, e1, d]);
    let k2 = local_stiffness([zero, d, e2]);
    [-(k1[0][1] + k2[1][2]), -(k1[1][2] + k2[0][2]), -(k1[0][2] + k2[0][1])]
}

fn local_stiffness(p: [[f64; 2]; 3]) -> [[f64; 3]; 3] {
    let edge = |i: usize| {
        let (a, b) = (p[(i + 1) % 3], p[(i + 2) % 3]);
        [b[0] - a[0], b[1] - a[1]]
    };
    let e = [edge(0), edge(1), edge(2)];
    let area2 = (e[2][0] * (-e[1][1]) - e[2][1] * (-e[1][0])).abs();
    let mut k = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            k[i][j] = (e[i][0] * e[j][0] + e[i][1] * e[j][1]) / (2.0 * area2);
        }
    }
    k
}

/// Number of lattice nodes on the slit `[0, s]` at resolution `n`.
pub(crate) fn slit_nodes(s: f64, n: usize) -> usize {
    (s * n as f64 + 1e-9).floor() as usize + 1
}

/// Discrete extremal length at a single resolution `n`.
pub fn discrete_extremal_length(p: SlitChartPoint, class: CurveClass, n: usize) -> Result<f64> {
    p.check()?;
    check_grid(n)?;
    let tau = p.tau;
    let (p1, pt) = class.periods();
    let alpha = p1;
    let beta = (pt - alpha * tau.re) / tau.im;
    let linear_energy = (alpha * alpha + beta * beta) * tau.im;

    let m = slit_nodes(p.s, n);
    if m <= 1 || alpha == 0.0 {
        // Dirichlet data -alpha x vanishes on the slit: w = 0.
        return Ok(linear_energy);
    }

    let g = slit_green_row(tau, n, m);
    let dim = m + 1;
    let mut cap = DMatrix::<f64>::zeros(dim, dim);
    let mut rhs = DVector::<f64>::zeros(dim);
    for i in 0..m {
        for j in 0..m {
            cap[(i, j)] = g[i.abs_diff(j)];
        }
        cap[(i, m)] = 1.0;
        cap[(m, i)] = 1.0;
        rhs[i] = -alpha * i as f64 / n as f64;
    }
    let sol = cap
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Solver(format!("singular capacitance matrix at n = {n}")))?;
    let periodic_energy: f64 = (0..m).map(|i| rhs[i] * sol[i]).sum();
    Ok(linear_energy + periodic_energy)
}

/// `G(d, 0)` for `d = 0..m`, where `G` is the mean-zero inverse of the
/// periodic stiffness operator on the `n x n` lattice.
fn slit_green_row(tau: Complex64, n: usize, m: usize) -> Vec<f64> {
    let [w1, w2, wd] = stencil_weights(tau);
    let step = 2.0 * std::f64::consts::PI / n as f64;
    let cos: Vec<f64> = (0..n).map(|k| (step * k as f64).cos()).collect();
    let sin: Vec<f64> = (0..n).map(|k| (step * k as f64).sin()).collect();
    let nn = (n * n) as f64;

    // h(k1) = sum over k2 of 1 / symbol(k1, k2)
    let h: Vec<f64> = (0..n)
        .map(|k1| {
            let mut acc = 0.0;
            for k2 in 0..n {
                if k1 == 0 && k2 == 0 {
                    continue;
                }
                // cos(t1 + t2) through the tables
                let c12 = cos[k1] * cos[k2] - sin[k1] * sin[k2];
                let symbol = 2.0 * (w1 * (1.0 - cos[k1]) + w2 * (1.0 - cos[k2]) + wd * (1.0 - c12));
                acc += 1.0 / symbol;
            }
            acc / nn
        })
        .collect();

    (0..m)
        .map(|d| (0..n).map(|k1| h[k1] * cos[(k1 * d) % n]).sum())
        .collect()
}

fn check_grid(n: usize) -> Result<()> {
    if n < MIN_GRID {
        return Err(Error::InvalidArgument(format!(
            "grid_n must be at least {MIN_GRID}, got {n}"
        )));
    }
    if n > MAX_GRID {
        return Err(Error::ResourceLimit(format!(
            "grid_n {n} exceeds the cap of {MAX_GRID}"
        )));
    }
    Ok(())
}

/// Refinement schedule: `grid_n, 2 grid_n, ...` for `levels` levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefinementPlan {
    pub grid_n: usize,
    pub levels: usize,
    /// Converged when successive levels differ by less than this, relatively.
    pub rel_tol: f64,
}

impl Default for RefinementPlan {
    fn default() -> Self {
        RefinementPlan {
            grid_n: 64,
            levels: 3,
            rel_tol: 5e-3,
        }
    }
}

impl RefinementPlan {
    pub fn grids(&self) -> Result<Vec<usize>> {
        if self.levels < 2 {
            return Err(Error::InvalidArgument(format!(
                "at least two refinement levels are needed, got {}",
                self.levels
            )));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        check_grid(self.grid_n)?;
        let finest = self
            .grid_n
            .checked_shl(self.levels as u32 - 1)
            .filter(|&f| f <= MAX_GRID && self.levels <= 16);
        if finest.is_none() {
            return Err(Error::ResourceLimit(format!(
                "{} levels from grid_n {} exceed the cap of {MAX_GRID}",
                self.levels, self.grid_n
            )));
        }
        Ok((0..self.levels).map(|k| self.grid_n << k).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub grid_n: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModulusEstimate {
    pub tau: [f64; 2],
    pub s: f64,
    pub class: CurveClass,
    /// Finest grid.
    pub grid_n: usize,
    pub estimate: f64,
    pub error_indicator: f64,
    /// Only present with three or more levels.
    pub extrapolated: Option<f64>,
    pub converged: bool,
    pub history: Vec<Level>,
}

impl ModulusEstimate {
    pub fn relative_change(&self) -> f64 {
        self.error_indicator / self.estimate.abs()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("estimate serialization is infallible")
    }
}

/// Runs the refinement schedule; returns the estimate whether or not it met
/// the convergence criterion.
pub fn estimate_extremal_length(
    p: SlitChartPoint,
    class: CurveClass,
    plan: &RefinementPlan,
) -> Result<ModulusEstimate> {
    p.check()?;
    let grids = plan.grids()?;
    let history = grids
        .iter()
        .map(|&n| discrete_extremal_length(p, class, n).map(|value| Level { grid_n: n, value }))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = history.iter().map(|l| l.value).collect();
    let ex = refine_and_extrapolate(&values, 2.0)?;
    let estimate = *values.last().unwrap();
    Ok(ModulusEstimate {
        tau: [p.tau.re, p.tau.im],
        s: p.s,
        class,
        grid_n: *grids.last().unwrap(),
        estimate,
        error_indicator: ex.error_indicator,
        extrapolated: (values.len() >= 3).then_some(ex.value),
        converged: ex.error_indicator < plan.rel_tol * estimate.abs(),
        history,
    })
}

/// Extremal length of `class` on the slit torus; a non-converged schedule is
/// an error carrying the full history.
pub fn slit_torus_extremal_length(
    p: SlitChartPoint,
    class: CurveClass,
    plan: &RefinementPlan,
) -> Result<ModulusEstimate> {
    let est = estimate_extremal_length(p, class, plan)?;
    if est.converged {
        Ok(est)
    } else {
        Err(Error::NonConvergence(Box::new(est)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TripleEstimate {
    pub triple: LambdaTriple,
    /// `Q(x) + 4` of the triple.
    pub region_gap: f64,
    /// Largest error indicator of the three classes.
    pub error_indicator: f64,
    pub components: Vec<ModulusEstimate>,
}

/// Numerical Λ-coordinates of the slit torus. The three solves are
/// independent and run under `exec`.
pub fn lambda_triple_slit(p: SlitChartPoint, plan: &RefinementPlan, exec: Execution) -> Result<TripleEstimate> {
    let components = try_map_ordered(exec, &CurveClass::ALL, |&c| slit_torus_extremal_length(p, c, plan))?;
    let x = [components[0].estimate, components[1].estimate, components[2].estimate];
    let triple = LambdaTriple::new(x)?;
    Ok(TripleEstimate {
        region_gap: triple.region_gap(),
        error_indicator: components.iter().map(|c| c.error_indicator).fold(0.0, f64::max),
        triple,
        components,
    })
}

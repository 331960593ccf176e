//! Double-precision solvers on periodic grids over `[0, 1)^d`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::HyperbolicError;

/// Floating-point copy of a symbol: `A⁰..A³` and `C`.
#[derive(Clone, Debug)]
pub struct SymbolF64 {
    pub a: [Vec<Vec<f64>>; 4],
    pub c: Vec<Vec<f64>>,
}

impl SymbolF64 {
    /// The same system with the zeroth-order part dropped.
    pub fn principal(&self) -> SymbolF64 {
        let n = self.c.len();
        SymbolF64 { a: self.a.clone(), c: vec![vec![0.0; n]; n] }
    }
}

fn dmat(m: &[Vec<f64>]) -> DMatrix<f64> {
    let n = m.len();
    DMatrix::from_fn(n, n, |i, j| m[i][j])
}

/// `A⁰ ∂_t u + Σ_{i ≤ d} A^i ∂_i u + C u = F`.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub a0: DMatrix<f64>,
    pub a: Vec<DMatrix<f64>>,
    pub c: DMatrix<f64>,
    a0_inv: DMatrix<f64>,
    m: Vec<DMatrix<f64>>,
    mc: DMatrix<f64>,
}

impl LinearSystem {
    pub fn new(a0: DMatrix<f64>, a: Vec<DMatrix<f64>>, c: DMatrix<f64>) -> Result<Self, HyperbolicError> {
        if a.is_empty() || a.len() > 3 {
            return Err(HyperbolicError::BadDimension(a.len()));
        }
        let chol = a0.clone().cholesky().ok_or(HyperbolicError::NotPositive)?;
        let a0_inv = chol.inverse();
        let m = a.iter().map(|ai| &a0_inv * ai).collect();
        let mc = &a0_inv * &c;
        Ok(LinearSystem { a0, a, c, a0_inv, m, mc })
    }

    /// Reduction to the first `dims` spatial directions.
    pub fn from_symbol(s: &SymbolF64, dims: usize) -> Result<Self, HyperbolicError> {
        if !(1..=3).contains(&dims) {
            return Err(HyperbolicError::BadDimension(dims));
        }
        Self::new(dmat(&s.a[0]), (1..=dims).map(|i| dmat(&s.a[i])).collect(), dmat(&s.c))
    }

    pub fn ncomp(&self) -> usize {
        self.a0.nrows()
    }

    pub fn dims(&self) -> usize {
        self.a.len()
    }

    /// Largest `|λ|` of `A⁰⁻¹A^i`, summed over directions.
    pub fn speed(&self) -> f64 {
        let chol = self.a0.clone().cholesky().expect("checked positive");
        let l_inv = chol.l().try_inverse().expect("triangular with positive diagonal");
        self.a
            .iter()
            .map(|ai| {
                let s = &l_inv * ai * l_inv.transpose();
                let s = (&s + s.transpose()) * 0.5;
                SymmetricEigen::new(s).eigenvalues.amax()
            })
            .sum()
    }
}

/// A periodic grid with `n` cells per direction and `ncomp` components per cell.
#[derive(Clone, Debug, PartialEq)]
pub struct GridState {
    pub n: usize,
    pub dims: usize,
    pub ncomp: usize,
    pub t: f64,
    pub u: Vec<f64>,
}

impl GridState {
    pub fn zeros(n: usize, dims: usize, ncomp: usize) -> Self {
        GridState { n, dims, ncomp, t: 0.0, u: vec![0.0; n.pow(dims as u32) * ncomp] }
    }

    pub fn from_fn(n: usize, dims: usize, ncomp: usize, f: impl Fn(&[f64]) -> Vec<f64>) -> Self {
        let mut s = Self::zeros(n, dims, ncomp);
        for cell in 0..s.cells() {
            let x = s.position(cell);
            let v = f(&x);
            s.u[cell * ncomp..(cell + 1) * ncomp].copy_from_slice(&v);
        }
        s
    }

    pub fn cells(&self) -> usize {
        self.n.pow(self.dims as u32)
    }

    pub fn dx(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn position(&self, cell: usize) -> Vec<f64> {
        let mut c = cell;
        (0..self.dims)
            .map(|_| {
                let i = c % self.n;
                c /= self.n;
                i as f64 * self.dx()
            })
            .collect()
    }

    /// Neighbour of `cell` shifted by `step` along direction `dir`.
    pub fn shift(&self, cell: usize, dir: usize, step: isize) -> usize {
        let stride = self.n.pow(dir as u32);
        let i = (cell / stride) % self.n;
        let j = (i as isize + step).rem_euclid(self.n as isize) as usize;
        cell - i * stride + j * stride
    }

    pub fn cell(&self, cell: usize) -> &[f64] {
        &self.u[cell * self.ncomp..(cell + 1) * self.ncomp]
    }

    /// `dx^d Σ_cells uᵀ M v`.
    pub fn pairing(&self, other: &[f64], m: &DMatrix<f64>) -> f64 {
        let vol = self.dx().powi(self.dims as i32);
        let mut acc = 0.0;
        for cell in 0..self.cells() {
            let a = DVector::from_column_slice(self.cell(cell));
            let b = DVector::from_column_slice(&other[cell * self.ncomp..(cell + 1) * self.ncomp]);
            acc += a.dot(&(m * b));
        }
        acc * vol
    }

    /// Discrete `L²` norm.
    pub fn l2(&self, other: Option<&[f64]>) -> f64 {
        let vol = self.dx().powi(self.dims as i32);
        let s: f64 = match other {
            Some(o) => self.u.iter().zip(o).map(|(a, b)| (a - b) * (a - b)).sum(),
            None => self.u.iter().map(|a| a * a).sum(),
        };
        (s * vol).sqrt()
    }
}

pub type Forcing<'a> = &'a dyn Fn(f64, &[f64]) -> Vec<f64>;

/// Result of a linear evolution.
#[derive(Clone, Debug)]
pub struct Evolution {
    pub state: GridState,
    pub dt: f64,
    /// `Σ uᵀA⁰u` at each step.
    pub energy: Vec<f64>,
    /// The leapfrog invariant `Σ (u^{n+1})ᵀ A⁰ u^n`.
    pub mixed_energy: Vec<f64>,
    /// Stored states when requested.
    pub history: Vec<Vec<f64>>,
}

impl Evolution {
    /// `max_n |E_n − E_0| / |E_0|` for the leapfrog invariant.
    pub fn relative_drift(&self) -> f64 {
        let e0 = self.mixed_energy.first().copied().unwrap_or(0.0);
        if e0 == 0.0 {
            return self.mixed_energy.iter().fold(0.0, |m, e| m.max(e.abs()));
        }
        self.mixed_energy.iter().fold(0.0, |m, e| m.max((e - e0).abs() / e0.abs()))
    }

    pub fn energy_csv(&self) -> String {
        let mut s = String::from("step,time,energy,leapfrog_energy\n");
        for (i, e) in self.energy.iter().enumerate() {
            let m = self.mixed_energy.get(i).copied().unwrap_or(f64::NAN);
            s.push_str(&format!("{},{:.12e},{:.15e},{:.15e}\n", i, i as f64 * self.dt, e, m));
        }
        s
    }
}

/// `−A⁰⁻¹(Σ A^i D_i u + C u − F(t))` with centered differences.
fn linear_rhs(sys: &LinearSystem, s: &GridState, u: &[f64], t: f64, forcing: Option<Forcing>) -> Vec<f64> {
    let nc = s.ncomp;
    let inv2dx = 0.5 / s.dx();
    let mut out = vec![0.0; u.len()];
    for cell in 0..s.cells() {
        let mut acc = DVector::zeros(nc);
        for (d, m) in sys.m.iter().enumerate() {
            let p = s.shift(cell, d, 1);
            let q = s.shift(cell, d, -1);
            let diff = DVector::from_fn(nc, |i, _| (u[p * nc + i] - u[q * nc + i]) * inv2dx);
            acc -= m * diff;
        }
        let here = DVector::from_column_slice(&u[cell * nc..(cell + 1) * nc]);
        acc -= &sys.mc * here;
        if let Some(f) = forcing {
            let fv = DVector::from_vec(f(t, &s.position(cell)));
            acc += &sys.a0_inv * fv;
        }
        out[cell * nc..(cell + 1) * nc].copy_from_slice(acc.as_slice());
    }
    out
}

/// Time step for Courant number `cfl` (leapfrog needs `cfl ≤ 1`).
pub fn leapfrog_dt(sys: &LinearSystem, n: usize, cfl: f64) -> Result<f64, HyperbolicError> {
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(HyperbolicError::CflViolation(cfl, 1.0));
    }
    let speed = sys.speed();
    Ok(if speed > 0.0 { cfl / (n as f64 * speed) } else { cfl / n as f64 })
}

/// Leapfrog in time, centered in space. The first step is Heun's method
/// unless `second` supplies the state at `t = dt`.
pub fn evolve_linear(
    sys: &LinearSystem,
    init: &GridState,
    dt: f64,
    steps: usize,
    forcing: Option<Forcing>,
    second: Option<&GridState>,
    keep_history: bool,
) -> Result<Evolution, HyperbolicError> {
    if init.ncomp != sys.ncomp() || init.dims != sys.dims() {
        return Err(HyperbolicError::BadDimension(init.dims));
    }
    let bound = dt * sys.speed() * init.n as f64;
    if bound > 1.0 + 1e-12 {
        return Err(HyperbolicError::CflViolation(bound, 1.0));
    }
    let mut prev = init.u.clone();
    let mut energy = vec![init.pairing(&prev, &sys.a0)];
    let mut mixed = Vec::new();
    let mut history = Vec::new();
    if keep_history {
        history.push(prev.clone());
    }
    if steps == 0 {
        return Ok(Evolution { state: init.clone(), dt, energy, mixed_energy: mixed, history });
    }
    let mut cur = match second {
        Some(s) => s.u.clone(),
        None => {
            let k1 = linear_rhs(sys, init, &prev, 0.0, forcing);
            let mid: Vec<f64> = prev.iter().zip(&k1).map(|(a, k)| a + dt * k).collect();
            let k2 = linear_rhs(sys, init, &mid, dt, forcing);
            prev.iter().zip(k1.iter().zip(&k2)).map(|(a, (x, y))| a + 0.5 * dt * (x + y)).collect()
        }
    };
    mixed.push(init.pairing(&cur, &sys.a0));
    energy.push(init.pairing(&cur, &sys.a0));
    if keep_history {
        history.push(cur.clone());
    }
    for step in 1..steps {
        let t = step as f64 * dt;
        let r = linear_rhs(sys, init, &cur, t, forcing);
        let next: Vec<f64> = prev.iter().zip(&r).map(|(p, k)| p + 2.0 * dt * k).collect();
        prev = std::mem::replace(&mut cur, next);
        let mut probe = init.clone();
        probe.u = prev.clone();
        mixed.push(probe.pairing(&cur, &sys.a0));
        energy.push(init.pairing(&cur, &sys.a0));
        if keep_history {
            history.push(cur.clone());
        }
    }
    let mut state = init.clone();
    state.u = cur;
    state.t = steps as f64 * dt;
    Ok(Evolution { state, dt, energy, mixed_energy: mixed, history })
}

/// Result of solving `L u = r` from zero data.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub evolution: Evolution,
    /// `L²` norm (space, at the middle time level) of the continuous-operator
    /// residual `A⁰u_t + Σ A^i u_i + Cu − r`, evaluated with fourth-order
    /// differences.
    pub residual: f64,
}

/// Solve `L u = r` with zero initial data by leapfrog and report the residual.
pub fn discrete_homotopy(sys: &LinearSystem, n: usize, cfl: f64, t_final: f64, r: Forcing) -> Result<Homotopy, HyperbolicError> {
    let dt0 = leapfrog_dt(sys, n, cfl)?;
    let steps = ((t_final / dt0).ceil() as usize).max(4);
    let dt = t_final / steps as f64;
    let init = GridState::zeros(n, sys.dims(), sys.ncomp());
    let ev = evolve_linear(sys, &init, dt, steps, Some(r), None, true)?;
    let mid = steps / 2;
    let h = &ev.history;
    let nc = init.ncomp;
    let dx = init.dx();
    let t = mid as f64 * dt;
    let mut sum = 0.0;
    for cell in 0..init.cells() {
        let at = |lvl: usize, c: usize| DVector::from_column_slice(&h[lvl][c * nc..(c + 1) * nc]);
        let ut = (at(mid - 2, cell) - at(mid - 1, cell) * 8.0 + at(mid + 1, cell) * 8.0 - at(mid + 2, cell)) / (12.0 * dt);
        let mut res = &sys.a0 * ut + &sys.c * at(mid, cell);
        for (d, ad) in sys.a.iter().enumerate() {
            let c = |s: isize| at(mid, init.shift(cell, d, s));
            let ux = (c(-2) - c(-1) * 8.0 + c(1) * 8.0 - c(2)) / (12.0 * dx);
            res += ad * ux;
        }
        res -= DVector::from_vec(r(t, &init.position(cell)));
        sum += res.norm_squared();
    }
    let residual = (sum * dx.powi(init.dims as i32)).sqrt();
    Ok(Homotopy { evolution: ev, residual })
}

/// State-dependent coefficients `(A⁰(x,u), [A^i(x,u)])`.
pub type Coefficients<'a> = &'a dyn Fn(&[f64], &[f64]) -> (DMatrix<f64>, Vec<DMatrix<f64>>);
pub type Source<'a> = &'a dyn Fn(&[f64], &[f64]) -> Vec<f64>;

/// Local Lax-Friedrichs in space with coefficients frozen per stage, SSP-RK3
/// in time. With `dims = 0` this is an ODE integrator.
pub fn evolve_quasilinear(
    coeffs: Coefficients,
    source: Source,
    init: &GridState,
    dt: f64,
    steps: usize,
    floor: f64,
) -> Result<GridState, HyperbolicError> {
    let mut u = init.u.clone();
    for _ in 0..steps {
        let k1 = quasilinear_rhs(coeffs, source, init, &u, dt, floor)?;
        let u1: Vec<f64> = u.iter().zip(&k1).map(|(a, k)| a + dt * k).collect();
        let k2 = quasilinear_rhs(coeffs, source, init, &u1, dt, floor)?;
        let u2: Vec<f64> = u.iter().zip(u1.iter().zip(&k2)).map(|(a, (b, k))| 0.75 * a + 0.25 * (b + dt * k)).collect();
        let k3 = quasilinear_rhs(coeffs, source, init, &u2, dt, floor)?;
        u = u.iter().zip(u2.iter().zip(&k3)).map(|(a, (b, k))| a / 3.0 + 2.0 / 3.0 * (b + dt * k)).collect();
    }
    let mut out = init.clone();
    out.u = u;
    out.t = init.t + steps as f64 * dt;
    Ok(out)
}

fn quasilinear_rhs(coeffs: Coefficients, source: Source, s: &GridState, u: &[f64], dt: f64, floor: f64) -> Result<Vec<f64>, HyperbolicError> {
    let nc = s.ncomp;
    let cells = if s.dims == 0 { 1 } else { s.cells() };
    let x_of = |c: usize| if s.dims == 0 { Vec::new() } else { s.position(c) };
    let mut frozen = Vec::with_capacity(cells);
    let mut alpha = vec![0.0; cells];
    for c in 0..cells {
        let (a0, a) = coeffs(&x_of(c), &u[c * nc..(c + 1) * nc]);
        let eig = SymmetricEigen::new(a0.clone()).eigenvalues;
        if eig.min() < floor {
            return Err(HyperbolicError::PositivityLost(eig.min(), floor));
        }
        let a0_inv = a0.try_inverse().ok_or(HyperbolicError::NotPositive)?;
        let speeds: f64 = a.iter().map(|ai| (&a0_inv * ai).complex_eigenvalues().iter().fold(0.0f64, |m, z| m.max(z.norm()))).sum();
        alpha[c] = speeds;
        frozen.push((a0_inv, a));
    }
    if s.dims > 0 {
        let bound = dt * alpha.iter().fold(0.0f64, |m, a| m.max(*a)) * s.n as f64;
        if bound > 1.0 {
            return Err(HyperbolicError::CflViolation(bound, 1.0));
        }
    }
    let mut out = vec![0.0; u.len()];
    let inv2dx = if s.dims == 0 { 0.0 } else { 0.5 / s.dx() };
    for c in 0..cells {
        let (a0_inv, a) = &frozen[c];
        let mut flux = DVector::zeros(nc);
        let here = DVector::from_column_slice(&u[c * nc..(c + 1) * nc]);
        for (d, ad) in a.iter().enumerate() {
            let p = s.shift(c, d, 1);
            let q = s.shift(c, d, -1);
            let up = DVector::from_column_slice(&u[p * nc..(p + 1) * nc]);
            let uq = DVector::from_column_slice(&u[q * nc..(q + 1) * nc]);
            let a_loc = alpha[c].max(alpha[p]).max(alpha[q]);
            flux -= a0_inv * ad * (&up - &uq) * inv2dx;
            flux += (&up - &here * 2.0 + &uq) * (a_loc * inv2dx);
        }
        let b = DVector::from_vec(source(&x_of(c), here.as_slice()));
        flux += a0_inv * b;
        out[c * nc..(c + 1) * nc].copy_from_slice(flux.as_slice());
    }
    Ok(out)
}

/// Burgers oracle: `u(t, x) = u₀(x − t u)` by Newton iteration from `u₀(x)`.
pub fn burgers_characteristics(u0: &dyn Fn(f64) -> f64, du0: &dyn Fn(f64) -> f64, t: f64, x: f64) -> f64 {
    let mut u = u0(x);
    for _ in 0..100 {
        let xi = x - t * u;
        let g = u - u0(xi);
        let dg = 1.0 + t * du0(xi);
        let step = g / dg;
        u -= step;
        if step.abs() < 1e-15 {
            break;
        }
    }
    u
}

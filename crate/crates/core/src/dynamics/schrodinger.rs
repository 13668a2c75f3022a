use super::{Diagnostics, HamiltonianModel, PropagationResult, Trajectory};
use crate::error::{reject, Result};
use crate::linalg::{CMatrix, StateVector};

/// Norm drift that flags a run as failed.
pub const NORM_FAIL_TOL: f64 = 1e-8;

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return reject("propagation grid needs at least two points");
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return reject("propagation grid must be strictly increasing");
    }
    Ok(())
}

/// Walk the grid with midpoint-exponential steps, reusing the last step
/// propagator whenever the generator and step length repeat exactly.
fn for_each_step(
    model: &HamiltonianModel,
    grid: &[f64],
    mut visit: impl FnMut(usize, &CMatrix) -> Result<()>,
) -> Result<()> {
    check_grid(grid)?;
    model.evaluate(grid[0])?;
    model.evaluate(grid[grid.len() - 1])?;
    let mut cache: Option<(CMatrix, f64, CMatrix)> = None;
    for (i, w) in grid.windows(2).enumerate() {
        let (t0, t1) = (w[0], w[1]);
        let h = t1 - t0;
        let g = model.step_generator(0.5 * (t0 + t1));
        let u = match &cache {
            Some((cg, ch, cu)) if *ch == h && *cg == g => cu.clone(),
            _ => {
                let u = model.exponentiate(&g, h)?;
                cache = Some((g, h, u.clone()));
                u
            }
        };
        let u = model.dress(u, t0, t1);
        visit(i, &u)?;
    }
    Ok(())
}

/// Closed-system propagation of a pure state, one midpoint-exponential step
/// per grid interval; the state is recorded at every grid point.
pub fn propagate_schrodinger(model: &HamiltonianModel, psi0: &StateVector, grid: &[f64]) -> Result<PropagationResult> {
    if psi0.dim() != model.dim() {
        return reject(format!("initial state has dimension {}, model has {}", psi0.dim(), model.dim()));
    }
    StateVector::new(psi0.amplitudes().to_vec())?;
    let mut diag = Diagnostics::new();
    let mut states = Vec::with_capacity(grid.len());
    states.push(psi0.clone());
    let mut psi = psi0.clone();
    for_each_step(model, grid, |i, u| {
        psi = psi.apply(u);
        let dev = (psi.norm_sqr() - 1.0).abs();
        diag.max_norm_deviation = diag.max_norm_deviation.max(dev);
        if dev > NORM_FAIL_TOL {
            diag.fail(i + 1, grid[i + 1], format!("norm drift {dev:.3e}"));
        }
        diag.steps += 1;
        states.push(psi.clone());
        Ok(())
    })?;
    Ok(PropagationResult {
        grid: grid.to_vec(),
        trajectory: Trajectory::Pure(states),
        diagnostics: diag,
        basis_labels: model.basis_labels().to_vec(),
    })
}

/// Time-ordered product of step propagators, `U(grid_end, grid_start)`.
pub fn propagate_unitary(model: &HamiltonianModel, grid: &[f64]) -> Result<CMatrix> {
    let mut total = CMatrix::identity(model.dim());
    for_each_step(model, grid, |_, u| {
        total = u * &total;
        Ok(())
    })?;
    Ok(total)
}

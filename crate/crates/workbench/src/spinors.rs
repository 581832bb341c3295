//! Spinor workflows built from the core pieces: the s-family spinor
//! residual split, the exact (s, α) Killing solve, and the cone-lift
//! decision with its chirality report.

use conewb_core::connection::{levi_civita, s_family, Connection, KillingParams};
use conewb_core::cone::ConeModel;
use conewb_core::frame::FrameModel;
use conewb_core::linalg::{self, SolveOutcome};
use conewb_core::scalar::Scalar;
use conewb_core::spin::{
    build_spin_module, spinor_derivative, spinor_lift_maps, SpinModule, Spinor,
};
use conewb_core::tensor::AltForm;
use std::sync::Arc;

/// For fixed ψ, solves `∇^s_X ψ = α X ψ` for the unknowns (s, α) exactly:
/// the residual is affine in both, so this is a linear system over the
/// scalar field. Returns the solution set.
pub enum KillingSolve {
    /// No (s, α) satisfies the equation.
    None,
    /// A unique pair.
    Unique { s: Scalar, alpha: Scalar },
    /// An affine family (dimension ≥ 1); the witness pair is one solution.
    Family { s: Scalar, alpha: Scalar, dim: usize },
}

pub fn solve_killing_unknowns(
    module: &SpinModule,
    model: &Arc<FrameModel>,
    tc: &AltForm,
    psi: &Spinor,
) -> KillingSolve {
    let ctx = model.context();
    let lc = levi_civita(model);
    let n = model.dim();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for dir in 0..n {
        // ∇^s_dir ψ = ∇^g_dir ψ + s·(e_dir ⌟ T^c)ψ, so the residual per
        // component c is  A_c + s·B_c − α·G_c = 0.
        let a = spinor_derivative(module, &lc, psi, dir);
        let b = module.form_operator(&tc.interior_frame(dir)).apply(psi);
        let g = module
            .vector_operator(&model.frame_vector(dir))
            .apply(psi);
        for c in 0..module.dim() {
            if a.coeffs[c].is_zero() && b.coeffs[c].is_zero() && g.coeffs[c].is_zero() {
                continue;
            }
            rows.push(vec![b.coeffs[c].clone(), -&g.coeffs[c]]);
            rhs.push(-&a.coeffs[c]);
        }
    }
    match linalg::solve(ctx, rows, rhs) {
        SolveOutcome::Inconsistent => KillingSolve::None,
        SolveOutcome::Solved { particular, nullspace } => {
            if nullspace.is_empty() {
                KillingSolve::Unique {
                    s: particular[0].clone(),
                    alpha: particular[1].clone(),
                }
            } else {
                KillingSolve::Family {
                    s: particular[0].clone(),
                    alpha: particular[1].clone(),
                    dim: nullspace.len(),
                }
            }
        }
    }
}

/// Result of lifting a base spinor to the cone and testing parallelism.
pub struct LiftOutcome {
    pub lifted: Spinor,
    /// Chirality half (+1/−1) of the embedding that is ∇̄-parallel.
    pub half: i8,
    /// True when exactly one of the two embeddings is parallel.
    pub unique: bool,
}

/// Embeds ψ into the cone spin module along both chirality halves and
/// reports which one is parallel for the given cone connection.
pub fn lift_and_check(
    base_module: &SpinModule,
    cone_module: &SpinModule,
    cone_conn: &Connection,
    psi: &Spinor,
) -> Result<LiftOutcome, String> {
    let maps = spinor_lift_maps(base_module, cone_module).map_err(|e| e.to_string())?;
    let straight = maps.lift_straight(psi);
    let twisted = maps.lift_twisted(psi);
    let is_parallel = |p: &Spinor| {
        (0..cone_module.n()).all(|dir| spinor_derivative(cone_module, cone_conn, p, dir).is_zero())
    };
    let sp = is_parallel(&straight);
    let tp = is_parallel(&twisted);
    match (sp, tp) {
        (true, false) => Ok(LiftOutcome { lifted: straight, half: maps.straight_half, unique: true }),
        (false, true) => Ok(LiftOutcome { lifted: twisted, half: -maps.straight_half, unique: true }),
        (true, true) => Ok(LiftOutcome { lifted: straight, half: maps.straight_half, unique: false }),
        (false, false) => Err("neither embedding is parallel".to_string()),
    }
}

/// The full Killing-to-cone flow at instantiated parameters: solve (s, α),
/// refuse the cone when α = 0, otherwise build the cone with a = 2|α|.
pub fn cone_from_killing(
    model: &Arc<FrameModel>,
    s: Scalar,
    alpha: Scalar,
) -> Result<(KillingParams, ConeModel), String> {
    let params = KillingParams::for_cone(s, alpha)?;
    let cone = conewb_core::cone::build_cone(model, &params.a).map_err(|e| e.to_string())?;
    Ok((params, cone))
}

/// Convenience: the Δ_n module for a model dimension.
pub fn module_for(model: &Arc<FrameModel>) -> SpinModule {
    build_spin_module(model.dim()).expect("spin module dimension in range")
}

/// The s-family connection for a characteristic torsion.
pub fn s_connection(model: &Arc<FrameModel>, tc: &AltForm, s: &Scalar) -> Connection {
    s_family(model, tc, s)
}

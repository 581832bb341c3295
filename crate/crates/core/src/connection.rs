//! Metric connections in an orthonormal frame: Levi-Civita via Koszul,
//! skew-torsion modifications, covariant derivatives, the coderivative, and
//! the exact linear solver for characteristic connections.

use crate::frame::{FrameModel, VectorField};
use crate::linalg::{self, SolveOutcome};
use crate::parallel::par_map_range;
use crate::scalar::Scalar;
use crate::tensor::{combinations, AltForm, CovTensor, Endo};
use std::sync::Arc;

/// A metric connection: `gamma[(i,j,k)] = Γ_{ijk} = g(∇_{e_i} e_j, e_k)`
/// with all indices down, plus its totally antisymmetric torsion 3-form.
#[derive(Clone, Debug)]
pub struct Connection {
    model: Arc<FrameModel>,
    gamma: Vec<Scalar>,
    torsion: AltForm,
}

impl Connection {
    pub fn model(&self) -> &Arc<FrameModel> {
        &self.model
    }

    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.model.dim();
        &self.gamma[(i * n + j) * n + k]
    }

    pub fn torsion(&self) -> &AltForm {
        &self.torsion
    }

    /// Builds a connection directly from a full Γ table (used for fixtures
    /// whose connection, not brackets, is the displayed data).
    pub fn from_gamma(model: &Arc<FrameModel>, gamma: Vec<Scalar>, torsion: AltForm) -> Connection {
        assert_eq!(gamma.len(), model.dim().pow(3));
        Connection { model: model.clone(), gamma, torsion }
    }

    /// Metricity: Γ_{ijk} = −Γ_{ikj}, exactly.
    pub fn is_metric(&self) -> bool {
        let n = self.model.dim();
        for i in 0..n {
            for j in 0..n {
                for k in j..n {
                    if !(self.gamma(i, j, k) + self.gamma(i, k, j)).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Torsion recomputed from the definition
    /// `T(X,Y) = ∇_X Y − ∇_Y X − [X,Y]`, lowered to a 3-form.
    pub fn computed_torsion(&self) -> CovTensor {
        let m = &self.model;
        let n = m.dim();
        CovTensor::from_fn(m.context(), n, 3, |idx| {
            let (i, j, k) = (idx[0], idx[1], idx[2]);
            let g = self.gamma(i, j, k) - self.gamma(j, i, k);
            &g - m.c(i, j, k)
        })
    }

    /// Checks that the stored torsion form agrees with the computed one.
    pub fn torsion_consistent(&self) -> bool {
        let t = self.computed_torsion();
        t.is_alternating() && t.to_alt_form() == self.torsion
    }

    /// `∇_{e_i} v` for a vector field.
    pub fn nabla_vector(&self, i: usize, v: &VectorField) -> VectorField {
        let m = &self.model;
        let n = m.dim();
        let mut out = VectorField::zero(m.context(), n);
        for j in 0..n {
            let d = m.dir_deriv(i, &v.coeffs[j]);
            if !d.is_zero() {
                out.coeffs[j] = &out.coeffs[j] + &d;
            }
            if v.coeffs[j].is_zero() {
                continue;
            }
            for k in 0..n {
                let g = self.gamma(i, j, k);
                if !g.is_zero() {
                    out.coeffs[k] = &out.coeffs[k] + &(&v.coeffs[j] * g);
                }
            }
        }
        out
    }

    /// Directional covariant derivatives of a form: entry `i` is `∇_{e_i} α`
    /// (alternating in its form slots, so only increasing tuples are built).
    pub fn covariant_derivative_form(&self, alpha: &AltForm) -> Vec<AltForm> {
        let m = self.model.clone();
        let n = m.dim();
        let k = alpha.degree();
        par_map_range(n, move |i| {
            let mut out = AltForm::zero(alpha.context(), n, k);
            for tuple in combinations(n, k) {
                let mut acc = m.dir_deriv(i, alpha.get_increasing(&tuple));
                let mut idx = tuple.clone();
                for t in 0..k {
                    let orig = idx[t];
                    for l in 0..n {
                        let g = self.gamma(i, orig, l);
                        if g.is_zero() {
                            continue;
                        }
                        idx[t] = l;
                        let v = alpha.value(&idx);
                        if !v.is_zero() {
                            acc = &acc - &(g * &v);
                        }
                    }
                    idx[t] = orig;
                }
                out.set_increasing(&tuple, acc);
            }
            out
        })
    }

    /// `∇A` of an endomorphism as the degree-3 tensor
    /// `(i; j, k) ↦ g((∇_{e_i} A)(e_j), e_k)`.
    pub fn covariant_derivative_endo(&self, a: &Endo) -> CovTensor {
        let m = &self.model;
        let n = m.dim();
        let rows = par_map_range(n, |i| {
            let mut slice = Vec::with_capacity(n * n);
            for j in 0..n {
                for k in 0..n {
                    // e_i(A_{kj}) + Σ_l A_{lj} Γ_{ilk} − Σ_l Γ_{ijl} A_{kl}
                    let mut acc = m.dir_deriv(i, a.get(k, j));
                    for l in 0..n {
                        let alj = a.get(l, j);
                        if !alj.is_zero() {
                            let g = self.gamma(i, l, k);
                            if !g.is_zero() {
                                acc = &acc + &(alj * g);
                            }
                        }
                        let g2 = self.gamma(i, j, l);
                        if !g2.is_zero() {
                            let akl = a.get(k, l);
                            if !akl.is_zero() {
                                acc = &acc - &(g2 * akl);
                            }
                        }
                    }
                    slice.push(acc);
                }
            }
            slice
        });
        let mut out = CovTensor::zero(m.context(), n, 3);
        for (i, slice) in rows.into_iter().enumerate() {
            let mut it = slice.into_iter();
            for j in 0..n {
                for k in 0..n {
                    out.set(&[i, j, k], it.next().unwrap());
                }
            }
        }
        out
    }

    /// Covariant derivative of a general covariant tensor; the result has
    /// one extra first slot for the direction.
    pub fn covariant_derivative_cov(&self, t: &CovTensor) -> CovTensor {
        let m = &self.model;
        let n = m.dim();
        CovTensor::from_fn(m.context(), n, t.degree() + 1, |idx| {
            let i = idx[0];
            let slots = &idx[1..];
            let mut acc = m.dir_deriv(i, t.get(slots));
            let mut work = slots.to_vec();
            for (tpos, &orig) in slots.iter().enumerate() {
                for l in 0..n {
                    let g = self.gamma(i, orig, l);
                    if g.is_zero() {
                        continue;
                    }
                    work[tpos] = l;
                    let v = t.get(&work);
                    if !v.is_zero() {
                        acc = &acc - &(g * v);
                    }
                }
                work[tpos] = orig;
            }
            acc
        })
    }

    /// Coderivative `δT = −Σ_i (∇_{e_i} T)(e_i, ·)` over the orthonormal
    /// frame; maps k-forms to (k−1)-forms.
    pub fn coderivative(&self, alpha: &AltForm) -> AltForm {
        assert!(alpha.degree() >= 1);
        let m = &self.model;
        let n = m.dim();
        let derivs = self.covariant_derivative_form(alpha);
        let mut out = AltForm::zero(alpha.context(), n, alpha.degree() - 1);
        for tuple in combinations(n, alpha.degree() - 1) {
            let mut acc = Scalar::zero(alpha.context());
            let mut idx = Vec::with_capacity(alpha.degree());
            for (i, d) in derivs.iter().enumerate() {
                idx.clear();
                idx.push(i);
                idx.extend_from_slice(&tuple);
                let v = d.value(&idx);
                if !v.is_zero() {
                    acc = &acc - &v;
                }
            }
            out.set_increasing(&tuple, acc);
        }
        out
    }
}

/// Levi-Civita connection by the Koszul formula on an orthonormal invariant
/// frame: `2Γ_{ijk} = c_{ijk} − c_{ikj} − c_{jki}` (metric-derivative terms
/// vanish by orthonormality). Torsion is zero.
pub fn levi_civita(m: &Arc<FrameModel>) -> Connection {
    let n = m.dim();
    let half = Scalar::from_ratio(m.context(), 1, 2);
    let mut gamma = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = &(m.c(i, j, k) - m.c(i, k, j)) - m.c(j, k, i);
                gamma.push(&v * &half);
            }
        }
    }
    Connection {
        model: m.clone(),
        gamma,
        torsion: AltForm::zero(m.context(), n, 3),
    }
}

/// `∇' = ∇ + factor·T` on lowered indices: `Γ'_{ijk} = Γ_{ijk} + factor·T_{ijk}`.
/// The stored torsion gains `2·factor·T`.
pub fn add_torsion(base: &Connection, t: &AltForm, factor: &Scalar) -> Connection {
    let m = &base.model;
    let n = m.dim();
    assert_eq!(t.degree(), 3);
    let mut gamma = base.gamma.clone();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = t.value(&[i, j, k]);
                if !v.is_zero() {
                    let o = (i * n + j) * n + k;
                    gamma[o] = &gamma[o] + &(factor * &v);
                }
            }
        }
    }
    let two_factor = factor + factor;
    Connection {
        model: m.clone(),
        gamma,
        torsion: base.torsion.add(&t.scale(&two_factor)),
    }
}

/// The s-family `∇^s = ∇^g + 2s T^c`, with torsion `4s T^c`.
pub fn s_family(m: &Arc<FrameModel>, tc: &AltForm, s: &Scalar) -> Connection {
    add_torsion(&levi_civita(m), tc, &(s + s))
}

/// Parameters of a Killing-spinor-with-torsion setup: the family parameter
/// s, the Killing number α and the cone constant a.
#[derive(Clone, Debug)]
pub struct KillingParams {
    pub s: Scalar,
    pub alpha: Scalar,
    pub a: Scalar,
}

impl KillingParams {
    /// Fixes `a = 2|α|` for the cone construction. The Killing number must
    /// be a nonzero rational here: the cone depends on it, and the
    /// construction is meaningless for parallel spinors (α = 0).
    pub fn for_cone(s: Scalar, alpha: Scalar) -> Result<KillingParams, String> {
        let Some(q) = alpha.as_rational() else {
            return Err(format!("Killing number must be rational to fix the cone, got `{alpha}`"));
        };
        if q == num::BigRational::from_integer(0.into()) {
            return Err("cannot lift a parallel spinor (Killing number α = 0): the cone constant a = 2|α| degenerates".to_string());
        }
        let two_abs = &alpha + &alpha;
        let a = if q < num::BigRational::from_integer(0.into()) {
            -&two_abs
        } else {
            two_abs
        };
        Ok(KillingParams { s, alpha, a })
    }
}

/// A structure tensor handed to the characteristic solver.
#[derive(Clone, Debug)]
pub enum StructTensor {
    Form(AltForm),
    Endo(Endo),
    Vector(VectorField),
}

/// Outcome of the characteristic-connection solve.
#[derive(Clone, Debug)]
pub enum CharSolve {
    /// No skew-torsion connection preserves all given tensors.
    None,
    Unique(AltForm),
    Family {
        particular: AltForm,
        basis: Vec<AltForm>,
    },
}

/// Finds all 3-forms `T` with `(∇^g + ½T)·τ = 0` for every structure tensor
/// τ, by exact linear algebra over the scalar field.
pub fn characteristic_solve(m: &Arc<FrameModel>, tensors: &[StructTensor]) -> CharSolve {
    let n = m.dim();
    let ctx = m.context();
    let lc = levi_civita(m);
    let unknowns = combinations(n, 3);
    let ncols = unknowns.len();
    let zero = Scalar::zero(ctx);
    let half = Scalar::from_ratio(ctx, 1, 2);

    // T(i,j,l) as a linear functional on the unknowns.
    let t_entry = |row: &mut [Scalar], i: usize, j: usize, l: usize, coeff: &Scalar| {
        if let Some((sorted, sign)) = crate::tensor::sort_with_sign(&[i, j, l]) {
            let col = crate::tensor::comb_rank(n, &sorted);
            let c = if sign > 0 { coeff.clone() } else { -coeff };
            row[col] = &row[col] + &c;
        }
    };

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();

    for tensor in tensors {
        match tensor {
            StructTensor::Form(alpha) => {
                let k = alpha.degree();
                let nabla = lc.covariant_derivative_form(alpha);
                for i in 0..n {
                    for tuple in combinations(n, k) {
                        let mut row = vec![zero.clone(); ncols];
                        let mut idx = tuple.clone();
                        for t in 0..k {
                            let orig = idx[t];
                            for l in 0..n {
                                idx[t] = l;
                                let v = alpha.value(&idx);
                                if !v.is_zero() {
                                    let c = -&(&half * &v);
                                    t_entry(&mut row, i, orig, l, &c);
                                }
                            }
                            idx[t] = orig;
                        }
                        let b = -nabla[i].get_increasing(&tuple);
                        if row.iter().all(Scalar::is_zero) && b.is_zero() {
                            continue;
                        }
                        rows.push(row);
                        rhs.push(b);
                    }
                }
            }
            StructTensor::Endo(a) => {
                let nabla = lc.covariant_derivative_endo(a);
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            let mut row = vec![zero.clone(); ncols];
                            for l in 0..n {
                                let alj = a.get(l, j);
                                if !alj.is_zero() {
                                    let c = &half * alj;
                                    t_entry(&mut row, i, l, k, &c);
                                }
                                let akl = a.get(k, l);
                                if !akl.is_zero() {
                                    let c = -&(&half * akl);
                                    t_entry(&mut row, i, j, l, &c);
                                }
                            }
                            let b = -nabla.get(&[i, j, k]);
                            if row.iter().all(Scalar::is_zero) && b.is_zero() {
                                continue;
                            }
                            rows.push(row);
                            rhs.push(b);
                        }
                    }
                }
            }
            StructTensor::Vector(v) => {
                for i in 0..n {
                    let nv = lc.nabla_vector(i, v);
                    for k in 0..n {
                        let mut row = vec![zero.clone(); ncols];
                        for j in 0..n {
                            if !v.coeffs[j].is_zero() {
                                let c = &half * &v.coeffs[j];
                                t_entry(&mut row, i, j, k, &c);
                            }
                        }
                        let b = -&nv.coeffs[k];
                        if row.iter().all(Scalar::is_zero) && b.is_zero() {
                            continue;
                        }
                        rows.push(row);
                        rhs.push(b);
                    }
                }
            }
        }
    }

    let rebuild = |x: &[Scalar]| {
        let mut t = AltForm::zero(ctx, n, 3);
        for (col, tuple) in unknowns.iter().enumerate() {
            if !x[col].is_zero() {
                t.set_increasing(tuple, x[col].clone());
            }
        }
        t
    };

    match linalg::solve(ctx, rows, rhs) {
        SolveOutcome::Inconsistent => CharSolve::None,
        SolveOutcome::Solved { particular, nullspace } => {
            if nullspace.is_empty() {
                CharSolve::Unique(rebuild(&particular))
            } else {
                CharSolve::Family {
                    particular: rebuild(&particular),
                    basis: nullspace.iter().map(|v| rebuild(v)).collect(),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::ModelKind;
    use crate::scalar::Context;

    fn heisenberg() -> Arc<FrameModel> {
        let ctx = Context::new(&["rho"]);
        let mut m = FrameModel::new(&ctx, 5, ModelKind::LieGroup);
        let rho = m.scalar("rho");
        m.set_bracket(0, 1, 4, rho.clone());
        m.set_bracket(2, 3, 4, rho);
        Arc::new(m)
    }

    #[test]
    fn flat_levi_civita_vanishes() {
        let m = Arc::new(FrameModel::flat(&Context::new::<&str>(&[]), 4));
        let lc = levi_civita(&m);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    assert!(lc.gamma(i, j, k).is_zero());
                }
            }
        }
        assert!(lc.is_metric() && lc.torsion_consistent());
    }

    #[test]
    fn heisenberg_koszul() {
        let m = heisenberg();
        let lc = levi_civita(&m);
        let half_rho = m.scalar("rho/2");
        assert_eq!(lc.gamma(0, 1, 4), &half_rho);
        assert_eq!(lc.gamma(1, 0, 4), &-&half_rho);
        assert_eq!(lc.gamma(4, 0, 1), &-&half_rho);
        assert!(lc.is_metric());
        assert!(lc.torsion_consistent());
    }

    #[test]
    fn add_torsion_and_s_family() {
        let m = heisenberg();
        let lc = levi_civita(&m);
        let tc = AltForm::from_terms(
            m.context(),
            5,
            3,
            &[
                (&[0, 1, 4], m.scalar("-rho")),
                (&[2, 3, 4], m.scalar("-rho")),
            ],
        );
        // factor 0 is the base connection
        let same = add_torsion(&lc, &tc, &m.zero());
        assert_eq!(same.gamma(0, 1, 4), lc.gamma(0, 1, 4));
        // s = 1/4 gives the characteristic convention: torsion T^c
        let nc = s_family(&m, &tc, &m.ratio(1, 4));
        assert_eq!(nc.torsion(), &tc);
        assert!(nc.is_metric());
        assert!(nc.torsion_consistent());
        // s = 0 is Levi-Civita
        let s0 = s_family(&m, &tc, &m.zero());
        assert!(s0.torsion().is_zero());
        assert_eq!(s0.gamma(0, 1, 4), lc.gamma(0, 1, 4));
    }

    #[test]
    fn metric_tensor_is_parallel() {
        let m = heisenberg();
        let lc = levi_civita(&m);
        let metric = CovTensor::from_fn(m.context(), 5, 2, |idx| {
            if idx[0] == idx[1] {
                m.one()
            } else {
                m.zero()
            }
        });
        assert!(lc.covariant_derivative_cov(&metric).is_zero());
    }

    #[test]
    fn characteristic_solver_flat_parallel_structure() {
        // Flat 4-torus with the standard parallel hermitian structure:
        // the unique characteristic torsion is zero.
        let ctx = Context::new::<&str>(&[]);
        let m = Arc::new(FrameModel::flat(&ctx, 4));
        let omega = AltForm::from_terms(
            &ctx,
            4,
            2,
            &[(&[0, 1], m.one()), (&[2, 3], m.one())],
        );
        let j = Endo::from_two_form(&omega);
        match characteristic_solve(&m, &[StructTensor::Endo(j)]) {
            CharSolve::Unique(t) => assert!(t.is_zero()),
            other => panic!("expected unique zero torsion, got {other:?}"),
        }
    }
}

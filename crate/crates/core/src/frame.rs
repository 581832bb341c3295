//! Frame-presented manifolds: an orthonormal moving frame `e_1..e_n` whose
//! geometry is encoded entirely by structure functions `c_{ij}^k` with
//! `[e_i, e_j] = Σ_k c_{ij}^k e_k`. The metric is the identity in the frame.
//!
//! Structure functions are scalars of the model context; they may depend on
//! the radial symbol only when the model designates a radial frame index,
//! and frame-direction derivatives of scalars vanish except along it.

use crate::scalar::{parse_scalar, Context, Scalar, ScalarError};
use std::sync::Arc;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModelKind {
    Flat,
    LieGroup,
    ReductiveHomogeneous,
    Cone,
}

#[derive(Error, Debug)]
pub enum FrameError {
    #[error("bracket indices must be distinct and in 1..=dim, got ({0}, {1})")]
    BadBracketIndex(usize, usize),
    #[error("generalized Jacobi identity fails on frame triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),
    #[error("structure function c_{{{0}{1}}}^{{{2}}} depends on r but the model has no radial index")]
    RadialLeak(usize, usize, usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A manifold presented by an orthonormal frame with structure functions.
#[derive(Clone, Debug)]
pub struct FrameModel {
    ctx: Arc<Context>,
    dim: usize,
    frame_names: Vec<String>,
    /// Dense `n^3` table, `c[(i*n + j)*n + k] = c_{ij}^k`.
    c: Vec<Scalar>,
    radial_index: Option<usize>,
    orientation: i8,
    kind: ModelKind,
    /// Whether the frame brackets close into a Lie algebra. Homogeneous
    /// fixtures presented through their m-projection do not satisfy Jacobi
    /// and only support the identities their displayed data determines.
    assume_jacobi: bool,
}

impl FrameModel {
    pub fn new(ctx: &Arc<Context>, dim: usize, kind: ModelKind) -> FrameModel {
        let zero = Scalar::zero(ctx);
        FrameModel {
            ctx: ctx.clone(),
            dim,
            frame_names: (1..=dim).map(|i| format!("e{i}")).collect(),
            c: vec![zero; dim * dim * dim],
            radial_index: None,
            orientation: 1,
            kind,
            assume_jacobi: !matches!(kind, ModelKind::ReductiveHomogeneous),
        }
    }

    pub fn flat(ctx: &Arc<Context>, dim: usize) -> FrameModel {
        FrameModel::new(ctx, dim, ModelKind::Flat)
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn set_orientation(&mut self, o: i8) {
        assert!(o == 1 || o == -1);
        self.orientation = o;
    }

    pub fn radial_index(&self) -> Option<usize> {
        self.radial_index
    }

    pub fn set_radial_index(&mut self, idx: Option<usize>) {
        self.radial_index = idx;
    }

    pub fn assume_jacobi(&self) -> bool {
        self.assume_jacobi
    }

    pub fn set_assume_jacobi(&mut self, v: bool) {
        self.assume_jacobi = v;
    }

    pub fn frame_names(&self) -> &[String] {
        &self.frame_names
    }

    pub fn set_frame_names(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.dim);
        self.frame_names = names;
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(&self.ctx)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(&self.ctx)
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::from_int(&self.ctx, n)
    }

    pub fn ratio(&self, n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(&self.ctx, n, d)
    }

    /// Parses an expression over the model context.
    pub fn scalar(&self, expr: &str) -> Scalar {
        parse_scalar(expr, &self.ctx).expect("invalid scalar expression")
    }

    /// Structure function `c_{ij}^k` (0-based indices).
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    /// Declares `[e_i, e_j] = Σ coeff_k e_k` for `i < j` (0-based);
    /// the antisymmetric partner is stored automatically.
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, coeff: Scalar) {
        assert!(i != j && i < self.dim && j < self.dim && k < self.dim);
        let n = self.dim;
        self.c[(i * n + j) * n + k] = coeff.clone();
        self.c[(j * n + i) * n + k] = -coeff;
    }

    /// Frame-direction derivative of a scalar: only the radial direction
    /// differentiates, all other frame directions act trivially.
    pub fn dir_deriv(&self, dir: usize, s: &Scalar) -> Scalar {
        if Some(dir) == self.radial_index {
            s.d_dr()
        } else {
            Scalar::zero(&self.ctx)
        }
    }

    /// The `i`-th frame field as a vector field.
    pub fn frame_vector(&self, i: usize) -> VectorField {
        let mut coeffs = vec![self.zero(); self.dim];
        coeffs[i] = self.one();
        VectorField { ctx: self.ctx.clone(), coeffs }
    }

    /// `[X, Y]` for vector fields with scalar coefficients, using the
    /// structure functions plus radial product-rule terms.
    pub fn lie_bracket(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let n = self.dim;
        let mut out = vec![self.zero(); n];
        for i in 0..n {
            if x.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !y.coeffs[j].is_zero() {
                    let fg = &x.coeffs[i] * &y.coeffs[j];
                    if !fg.is_zero() {
                        for k in 0..n {
                            let c = self.c(i, j, k);
                            if !c.is_zero() {
                                out[k] = &out[k] + &(&fg * c);
                            }
                        }
                    }
                }
                // f (e_i . g_j) e_j
                let dg = self.dir_deriv(i, &y.coeffs[j]);
                if !dg.is_zero() {
                    out[j] = &out[j] + &(&x.coeffs[i] * &dg);
                }
            }
        }
        for j in 0..n {
            if y.coeffs[j].is_zero() {
                continue;
            }
            for i in 0..n {
                let df = self.dir_deriv(j, &x.coeffs[i]);
                if !df.is_zero() {
                    out[i] = &out[i] - &(&y.coeffs[j] * &df);
                }
            }
        }
        VectorField { ctx: self.ctx.clone(), coeffs: out }
    }

    /// Verifies the stored structure functions: no radial dependence without
    /// a radial index, and the generalized Jacobi identity when the model
    /// claims it (via `lie_bracket` on frame fields, so radial-derivative
    /// terms on structure functions participate).
    pub fn validate(&self) -> Result<(), FrameError> {
        let n = self.dim;
        if self.radial_index.is_none() {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if !self.c(i, j, k).d_dr().is_zero() {
                            return Err(FrameError::RadialLeak(i + 1, j + 1, k + 1));
                        }
                    }
                }
            }
        }
        if self.assume_jacobi {
            for i in 0..n {
                for j in (i + 1)..n {
                    for k in (j + 1)..n {
                        if !self.jacobiator(i, j, k).is_zero() {
                            return Err(FrameError::JacobiViolation(i + 1, j + 1, k + 1));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> VectorField {
        let e = |i| self.frame_vector(i);
        let mut acc = self.lie_bracket(&e(i), &self.lie_bracket(&e(j), &e(k)));
        acc = acc.add(&self.lie_bracket(&e(j), &self.lie_bracket(&e(k), &e(i))));
        acc.add(&self.lie_bracket(&e(k), &self.lie_bracket(&e(i), &e(j))))
    }
}

/// A vector field expressed in the frame basis.
#[derive(Clone, PartialEq, Debug)]
pub struct VectorField {
    ctx: Arc<Context>,
    pub coeffs: Vec<Scalar>,
}

impl VectorField {
    pub fn zero(ctx: &Arc<Context>, dim: usize) -> VectorField {
        VectorField { ctx: ctx.clone(), coeffs: vec![Scalar::zero(ctx); dim] }
    }

    pub fn from_coeffs(ctx: &Arc<Context>, coeffs: Vec<Scalar>) -> VectorField {
        VectorField { ctx: ctx.clone(), coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, rhs: &VectorField) -> VectorField {
        VectorField {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &VectorField) -> VectorField {
        VectorField {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> VectorField {
        VectorField {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn neg(&self) -> VectorField {
        self.scale(&Scalar::from_int(&self.ctx, -1))
    }

    /// Orthonormal-frame inner product `g(X, Y)` (bilinear, no conjugation).
    pub fn dot(&self, rhs: &VectorField) -> Scalar {
        let mut acc = Scalar::zero(&self.ctx);
        for (a, b) in self.coeffs.iter().zip(&rhs.coeffs) {
            acc = &acc + &(a * b);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 5-dimensional Heisenberg frame: [e1,e2] = rho e5, [e3,e4] = rho e5.
    pub fn heisenberg() -> FrameModel {
        let ctx = Context::new(&["rho"]);
        let mut m = FrameModel::new(&ctx, 5, ModelKind::LieGroup);
        let rho = m.scalar("rho");
        m.set_bracket(0, 1, 4, rho.clone());
        m.set_bracket(2, 3, 4, rho);
        m.validate().unwrap();
        m
    }

    #[test]
    fn flat_brackets_vanish() {
        let m = FrameModel::flat(&Context::new::<&str>(&[]), 4);
        let x = m.frame_vector(0);
        let y = m.frame_vector(1);
        assert!(m.lie_bracket(&x, &y).is_zero());
        m.validate().unwrap();
    }

    #[test]
    fn heisenberg_bracket() {
        let m = heisenberg();
        let b = m.lie_bracket(&m.frame_vector(0), &m.frame_vector(1));
        let mut expect = VectorField::zero(m.context(), 5);
        expect.coeffs[4] = m.scalar("rho");
        assert_eq!(b, expect);
    }

    #[test]
    fn radial_product_rule() {
        // A cone-like model: [d_r, e_i] = -(1/r) e_i on a 2+1 frame.
        let ctx = Context::new(&["a"]);
        let mut m = FrameModel::new(&ctx, 3, ModelKind::Cone);
        m.set_radial_index(Some(2));
        let minus_inv_r = m.scalar("-1/r");
        m.set_bracket(2, 0, 0, minus_inv_r.clone());
        m.set_bracket(2, 1, 1, minus_inv_r);
        m.validate().unwrap();
        let dr = m.frame_vector(2);
        let e0 = m.frame_vector(0);
        // [d_r, e_0] = -(1/r) e_0
        let b = m.lie_bracket(&dr, &e0);
        assert_eq!(b, e0.scale(&m.scalar("-1/r")));
        // r*e_0 is the lift of a base vector: [d_r, r e_0] = 0.
        let lifted = e0.scale(&m.scalar("r"));
        assert!(m.lie_bracket(&dr, &lifted).is_zero());
    }

    #[test]
    fn jacobi_detects_violation() {
        let ctx = Context::new::<&str>(&[]);
        let mut m = FrameModel::new(&ctx, 3, ModelKind::LieGroup);
        // [e1,[e2,e3]] + cyclic = -e1 for this table.
        m.set_bracket(0, 1, 2, m.one());
        m.set_bracket(0, 2, 2, m.one());
        m.set_bracket(1, 2, 0, m.one());
        assert!(matches!(
            m.validate(),
            Err(FrameError::JacobiViolation(_, _, _))
        ));
    }
}

//! Exterior and covariant tensor algebra in an orthonormal frame: wedge,
//! interior product, Hodge star, metric pairings and the exterior
//! derivative via the invariant formula.

use crate::frame::{FrameModel, VectorField};
use crate::scalar::{Context, Scalar};
use std::sync::Arc;

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All strictly increasing `k`-tuples over `0..n`, lexicographically.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binom(n, k));
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Lexicographic rank of a strictly increasing tuple over `0..n`.
pub fn comb_rank(n: usize, tuple: &[usize]) -> usize {
    let k = tuple.len();
    let mut rank = 0usize;
    let mut prev: isize = -1;
    for (j, &c) in tuple.iter().enumerate() {
        for x in ((prev + 1) as usize)..c {
            rank += binom(n - 1 - x, k - 1 - j);
        }
        prev = c as isize;
    }
    rank
}

/// Sorts an index tuple; returns the sorted tuple and the permutation sign,
/// or `None` when an index repeats.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, i8)> {
    let mut v = idx.to_vec();
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((v, sign))
}

fn perm_sign(idx: &[usize]) -> i8 {
    let mut inv = 0usize;
    for i in 0..idx.len() {
        for j in (i + 1)..idx.len() {
            if idx[i] > idx[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Iterates all multi-indices in `{0..n}^k` in odometer order.
pub struct MultiIndexIter {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl MultiIndexIter {
    pub fn new(n: usize, k: usize) -> Self {
        MultiIndexIter { n, idx: vec![0; k], done: n == 0 && k > 0 }
    }
}

impl Iterator for MultiIndexIter {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let cur = self.idx.clone();
        let mut pos = self.idx.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.idx[pos] += 1;
            if self.idx[pos] < self.n {
                break;
            }
            self.idx[pos] = 0;
        }
        if self.idx.is_empty() {
            self.done = true;
        }
        Some(cur)
    }
}

/// Anything with multilinear components over a frame.
pub trait TensorData {
    fn dim(&self) -> usize;
    fn degree(&self) -> usize;
    fn context(&self) -> &Arc<Context>;
    fn value(&self, idx: &[usize]) -> Scalar;
}

/// Alternating k-form, dense over strictly increasing multi-indices.
#[derive(Clone, PartialEq, Debug)]
pub struct AltForm {
    ctx: Arc<Context>,
    dim: usize,
    degree: usize,
    coeffs: Vec<Scalar>,
}

impl AltForm {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    /// Component at an arbitrary index tuple, with the permutation sign;
    /// zero when an index repeats.
    pub fn value(&self, idx: &[usize]) -> Scalar {
        match sort_with_sign(idx) {
            None => Scalar::zero(&self.ctx),
            Some((sorted, sign)) => {
                let c = self.get_increasing(&sorted);
                if sign > 0 {
                    c.clone()
                } else {
                    -c
                }
            }
        }
    }

    pub fn zero(ctx: &Arc<Context>, dim: usize, degree: usize) -> AltForm {
        assert!(degree <= dim, "form degree exceeds dimension");
        AltForm {
            ctx: ctx.clone(),
            dim,
            degree,
            coeffs: vec![Scalar::zero(ctx); binom(dim, degree)],
        }
    }

    /// Builds a form from (indices, coefficient) terms; indices are 0-based,
    /// arbitrary order, and contribute with their permutation sign.
    pub fn from_terms(
        ctx: &Arc<Context>,
        dim: usize,
        degree: usize,
        terms: &[(&[usize], Scalar)],
    ) -> AltForm {
        let mut f = AltForm::zero(ctx, dim, degree);
        for (idx, c) in terms {
            f.add_term(idx, c.clone());
        }
        f
    }

    /// Adds `c · e_{idx}` (indices in arbitrary order, sign applied).
    pub fn add_term(&mut self, idx: &[usize], c: Scalar) {
        assert_eq!(idx.len(), self.degree);
        if let Some((sorted, sign)) = sort_with_sign(idx) {
            let r = comb_rank(self.dim, &sorted);
            let signed = if sign > 0 { c } else { -c };
            self.coeffs[r] = &self.coeffs[r] + &signed;
        }
    }

    pub fn get_increasing(&self, idx: &[usize]) -> &Scalar {
        &self.coeffs[comb_rank(self.dim, idx)]
    }

    pub fn set_increasing(&mut self, idx: &[usize], c: Scalar) {
        let r = comb_rank(self.dim, idx);
        self.coeffs[r] = c;
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// The first nonzero coefficient and its (1-based) increasing indices.
    pub fn witness(&self) -> Option<(Vec<usize>, Scalar)> {
        for (r, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = combinations(self.dim, self.degree)[r]
                    .iter()
                    .map(|&i| i + 1)
                    .collect();
                return Some((idx, c.clone()));
            }
        }
        None
    }

    pub fn add(&self, rhs: &AltForm) -> AltForm {
        assert!(self.dim == rhs.dim && self.degree == rhs.degree);
        AltForm {
            ctx: self.ctx.clone(),
            dim: self.dim,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &AltForm) -> AltForm {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> AltForm {
        AltForm {
            ctx: self.ctx.clone(),
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> AltForm {
        AltForm {
            ctx: self.ctx.clone(),
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn wedge(&self, rhs: &AltForm) -> AltForm {
        assert_eq!(self.dim, rhs.dim);
        let (p, q) = (self.degree, rhs.degree);
        assert!(p + q <= self.dim, "wedge degree exceeds dimension");
        let mut out = AltForm::zero(&self.ctx, self.dim, p + q);
        let combos = combinations(self.dim, p + q);
        let splits = combinations(p + q, p);
        for (rank, tuple) in combos.iter().enumerate() {
            let mut acc = Scalar::zero(&self.ctx);
            for positions in &splits {
                let mut left = Vec::with_capacity(p);
                let mut right = Vec::with_capacity(q);
                let mut taken = vec![false; p + q];
                for &pos in positions {
                    left.push(tuple[pos]);
                    taken[pos] = true;
                }
                for (pos, &t) in tuple.iter().enumerate() {
                    if !taken[pos] {
                        right.push(t);
                    }
                }
                let a = self.get_increasing(&left);
                if a.is_zero() {
                    continue;
                }
                let b = rhs.get_increasing(&right);
                if b.is_zero() {
                    continue;
                }
                // Shuffle sign: permutation taking (left ++ right) positions
                // back to the identity.
                let mut order: Vec<usize> = positions.clone();
                order.extend((0..p + q).filter(|pos| !positions.contains(pos)));
                let sign = perm_sign(&order);
                let term = a * b;
                acc = if sign > 0 { &acc + &term } else { &acc - &term };
            }
            out.coeffs[rank] = acc;
        }
        out
    }

    /// First-slot interior product `X ⌟ α`.
    pub fn interior(&self, x: &VectorField) -> AltForm {
        assert!(self.degree >= 1, "interior product needs degree >= 1");
        let mut out = AltForm::zero(&self.ctx, self.dim, self.degree - 1);
        for (rank, tuple) in combinations(self.dim, self.degree - 1).iter().enumerate() {
            let mut acc = Scalar::zero(&self.ctx);
            let mut idx = Vec::with_capacity(self.degree);
            for i in 0..self.dim {
                if x.coeffs[i].is_zero() {
                    continue;
                }
                idx.clear();
                idx.push(i);
                idx.extend_from_slice(tuple);
                let v = self.value(&idx);
                if !v.is_zero() {
                    acc = &acc + &(&x.coeffs[i] * &v);
                }
            }
            out.coeffs[rank] = acc;
        }
        out
    }

    /// `e_i ⌟ α` for a frame direction.
    pub fn interior_frame(&self, i: usize) -> AltForm {
        let mut out = AltForm::zero(&self.ctx, self.dim, self.degree - 1);
        for (rank, tuple) in combinations(self.dim, self.degree - 1).iter().enumerate() {
            let mut idx = Vec::with_capacity(self.degree);
            idx.push(i);
            idx.extend_from_slice(tuple);
            out.coeffs[rank] = self.value(&idx);
        }
        out
    }

    /// Hodge star in the orthonormal frame with the model orientation:
    /// `*(e_I) = sign(I, I^c) · orientation · e_{I^c}`.
    pub fn hodge(&self, m: &FrameModel) -> AltForm {
        assert_eq!(self.dim, m.dim());
        let n = self.dim;
        let k = self.degree;
        let mut out = AltForm::zero(&self.ctx, n, n - k);
        for (rank, tuple) in combinations(n, k).iter().enumerate() {
            let c = &self.coeffs[rank];
            if c.is_zero() {
                continue;
            }
            let comp: Vec<usize> = (0..n).filter(|i| !tuple.contains(i)).collect();
            let mut perm = tuple.clone();
            perm.extend_from_slice(&comp);
            let sign = perm_sign(&perm) * m.orientation();
            let r2 = comb_rank(n, &comp);
            out.coeffs[r2] = if sign > 0 {
                &out.coeffs[r2] + c
            } else {
                &out.coeffs[r2] - c
            };
        }
        out
    }

    /// Hodge star of the conformally scaled metric `λ²g`:
    /// `*_{λ²g} = λ^{n-2k} *_g` on k-forms.
    pub fn hodge_scaled(&self, m: &FrameModel, lambda: &Scalar) -> AltForm {
        let e = m.dim() as i32 - 2 * self.degree as i32;
        self.hodge(m).scale(&lambda.pow(e))
    }

    /// Full multilinear evaluation on vector fields.
    pub fn eval(&self, args: &[&VectorField]) -> Scalar {
        assert_eq!(args.len(), self.degree);
        let mut acc = Scalar::zero(&self.ctx);
        for (rank, tuple) in combinations(self.dim, self.degree).iter().enumerate() {
            let c = &self.coeffs[rank];
            if c.is_zero() {
                continue;
            }
            // det of the k×k minor picked out by `tuple`.
            let k = self.degree;
            let mut det = Scalar::zero(&self.ctx);
            for (perm_rank, perm) in permutations(k).iter().enumerate() {
                let _ = perm_rank;
                let mut prod = Scalar::one(&self.ctx);
                let mut zero = false;
                for (t, &p) in perm.iter().enumerate() {
                    let v = &args[p].coeffs[tuple[t]];
                    if v.is_zero() {
                        zero = true;
                        break;
                    }
                    prod = &prod * v;
                }
                if zero {
                    continue;
                }
                det = if perm_sign(perm) > 0 { &det + &prod } else { &det - &prod };
            }
            acc = &acc + &(c * &det);
        }
        acc
    }

    /// Re-embeds the form into a larger frame (extra slots empty).
    pub fn embed(&self, new_dim: usize) -> AltForm {
        assert!(new_dim >= self.dim);
        let mut out = AltForm::zero(&self.ctx, new_dim, self.degree);
        for (rank, tuple) in combinations(self.dim, self.degree).iter().enumerate() {
            if !self.coeffs[rank].is_zero() {
                out.set_increasing(tuple, self.coeffs[rank].clone());
            }
        }
        out
    }

    /// Restriction to the first `new_dim` frame directions.
    pub fn restrict(&self, new_dim: usize) -> AltForm {
        assert!(new_dim <= self.dim && self.degree <= new_dim);
        let mut out = AltForm::zero(&self.ctx, new_dim, self.degree);
        for (rank, tuple) in combinations(new_dim, self.degree).iter().enumerate() {
            out.coeffs[rank] = self.get_increasing(tuple).clone();
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> AltForm {
        AltForm {
            ctx: self.ctx.clone(),
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(k, &mut cur, &mut out);
    out
}

impl TensorData for AltForm {
    fn dim(&self) -> usize {
        self.dim
    }
    fn degree(&self) -> usize {
        self.degree
    }
    fn context(&self) -> &Arc<Context> {
        &self.ctx
    }
    fn value(&self, idx: &[usize]) -> Scalar {
        AltForm::value(self, idx)
    }
}

/// General covariant k-tensor, dense over all `n^k` slots.
#[derive(Clone, PartialEq, Debug)]
pub struct CovTensor {
    ctx: Arc<Context>,
    dim: usize,
    degree: usize,
    coeffs: Vec<Scalar>,
}

impl CovTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn zero(ctx: &Arc<Context>, dim: usize, degree: usize) -> CovTensor {
        CovTensor {
            ctx: ctx.clone(),
            dim,
            degree,
            coeffs: vec![Scalar::zero(ctx); dim.pow(degree as u32)],
        }
    }

    pub fn from_fn(
        ctx: &Arc<Context>,
        dim: usize,
        degree: usize,
        f: impl Fn(&[usize]) -> Scalar,
    ) -> CovTensor {
        let mut t = CovTensor::zero(ctx, dim, degree);
        for idx in MultiIndexIter::new(dim, degree) {
            let v = f(&idx);
            t.set(&idx, v);
        }
        t
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.degree);
        let mut o = 0usize;
        for &i in idx {
            o = o * self.dim + i;
        }
        o
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.coeffs[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: Scalar) {
        let o = self.offset(idx);
        self.coeffs[o] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn witness(&self) -> Option<(Vec<usize>, Scalar)> {
        for idx in MultiIndexIter::new(self.dim, self.degree) {
            let v = self.get(&idx);
            if !v.is_zero() {
                return Some((idx.iter().map(|&i| i + 1).collect(), v.clone()));
            }
        }
        None
    }

    pub fn add(&self, rhs: &CovTensor) -> CovTensor {
        assert!(self.dim == rhs.dim && self.degree == rhs.degree);
        CovTensor {
            ctx: self.ctx.clone(),
            dim: self.dim,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &CovTensor) -> CovTensor {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> CovTensor {
        CovTensor {
            ctx: self.ctx.clone(),
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> CovTensor {
        CovTensor {
            ctx: self.ctx.clone(),
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    /// True when the tensor is alternating in all slots.
    pub fn is_alternating(&self) -> bool {
        for idx in MultiIndexIter::new(self.dim, self.degree) {
            match sort_with_sign(&idx) {
                None => {
                    if !self.get(&idx).is_zero() {
                        return false;
                    }
                }
                Some((sorted, sign)) => {
                    let v = self.get(&sorted);
                    let expect = if sign > 0 { v.clone() } else { -v };
                    if self.get(&idx) != &expect {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Reads an alternating tensor off as an [`AltForm`]; panics when the
    /// tensor is not alternating.
    pub fn to_alt_form(&self) -> AltForm {
        assert!(self.is_alternating(), "tensor is not alternating");
        let mut out = AltForm::zero(&self.ctx, self.dim, self.degree);
        for (rank, tuple) in combinations(self.dim, self.degree).iter().enumerate() {
            out.coeffs[rank] = self.get(tuple).clone();
        }
        out
    }
}

impl TensorData for CovTensor {
    fn dim(&self) -> usize {
        self.dim
    }
    fn degree(&self) -> usize {
        self.degree
    }
    fn context(&self) -> &Arc<Context> {
        &self.ctx
    }
    fn value(&self, idx: &[usize]) -> Scalar {
        self.get(idx).clone()
    }
}

/// A (1,1)-tensor: `n×n` matrix acting on vector fields.
#[derive(Clone, PartialEq, Debug)]
pub struct Endo {
    ctx: Arc<Context>,
    dim: usize,
    /// Row-major: `mat[i*dim + j]` is the `e_i` component of `A(e_j)`.
    mat: Vec<Scalar>,
}

impl Endo {
    pub fn zero(ctx: &Arc<Context>, dim: usize) -> Endo {
        Endo { ctx: ctx.clone(), dim, mat: vec![Scalar::zero(ctx); dim * dim] }
    }

    pub fn identity(ctx: &Arc<Context>, dim: usize) -> Endo {
        let mut e = Endo::zero(ctx, dim);
        for i in 0..dim {
            e.set(i, i, Scalar::one(ctx));
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.mat[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.mat[i * self.dim + j] = v;
    }

    pub fn apply(&self, v: &VectorField) -> VectorField {
        let mut out = VectorField::zero(&self.ctx, self.dim);
        for j in 0..self.dim {
            if v.coeffs[j].is_zero() {
                continue;
            }
            for i in 0..self.dim {
                let m = self.get(i, j);
                if !m.is_zero() {
                    out.coeffs[i] = &out.coeffs[i] + &(m * &v.coeffs[j]);
                }
            }
        }
        out
    }

    pub fn apply_frame(&self, j: usize) -> VectorField {
        let mut out = VectorField::zero(&self.ctx, self.dim);
        for i in 0..self.dim {
            out.coeffs[i] = self.get(i, j).clone();
        }
        out
    }

    /// Matrix product `self ∘ rhs`.
    pub fn compose(&self, rhs: &Endo) -> Endo {
        assert_eq!(self.dim, rhs.dim);
        let mut out = Endo::zero(&self.ctx, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = Scalar::zero(&self.ctx);
                for k in 0..self.dim {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        let b = rhs.get(k, j);
                        if !b.is_zero() {
                            acc = &acc + &(a * b);
                        }
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn square(&self) -> Endo {
        self.compose(self)
    }

    pub fn add(&self, rhs: &Endo) -> Endo {
        Endo {
            ctx: self.ctx.clone(),
            dim: self.dim,
            mat: self.mat.iter().zip(&rhs.mat).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Endo) -> Endo {
        Endo {
            ctx: self.ctx.clone(),
            dim: self.dim,
            mat: self.mat.iter().zip(&rhs.mat).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Endo {
        Endo {
            ctx: self.ctx.clone(),
            dim: self.dim,
            mat: self.mat.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Endo {
        Endo {
            ctx: self.ctx.clone(),
            dim: self.dim,
            mat: self.mat.iter().map(|a| a * s).collect(),
        }
    }

    pub fn transpose(&self) -> Endo {
        let mut out = Endo::zero(&self.ctx, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.mat.iter().all(Scalar::is_zero)
    }

    /// `η ⊗ ξ` as an endomorphism: `v ↦ η(v) ξ`.
    pub fn outer(eta: &AltForm, xi: &VectorField) -> Endo {
        assert_eq!(eta.degree(), 1);
        let ctx = eta.context().clone();
        let dim = eta.dim();
        let mut out = Endo::zero(&ctx, dim);
        for i in 0..dim {
            for j in 0..dim {
                out.set(i, j, &xi.coeffs[i] * eta.get_increasing(&[j]));
            }
        }
        out
    }

    /// Reads the endomorphism φ off a 2-form through `F(v,w) = g(v, φ(w))`,
    /// i.e. `φ(e_j) = Σ_i F(e_i, e_j) e_i`.
    pub fn from_two_form(f: &AltForm) -> Endo {
        assert_eq!(f.degree(), 2);
        let mut out = Endo::zero(f.context(), f.dim());
        for i in 0..f.dim() {
            for j in 0..f.dim() {
                out.set(i, j, f.value(&[i, j]));
            }
        }
        out
    }

    /// Inverse of `from_two_form`; requires an antisymmetric matrix.
    pub fn to_two_form(&self) -> AltForm {
        let mut out = AltForm::zero(&self.ctx, self.dim, 2);
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                assert!(
                    (self.get(i, j) + self.get(j, i)).is_zero(),
                    "endomorphism is not metric-antisymmetric"
                );
                out.set_increasing(&[i, j], self.get(i, j).clone());
            }
        }
        out
    }
}

/// The paper's full multi-index metric pairing on k-tensors:
/// `g(R,S) = Σ_{i_1..i_k} R(e_{i_1},..) S(e_{i_1},..)`.
pub fn pair_full(r: &dyn TensorData, s: &dyn TensorData) -> Scalar {
    assert_eq!(r.degree(), s.degree(), "metric pairing degree mismatch");
    assert_eq!(r.dim(), s.dim());
    let ctx = r.context().clone();
    let mut acc = Scalar::zero(&ctx);
    for idx in MultiIndexIter::new(r.dim(), r.degree()) {
        let a = r.value(&idx);
        if a.is_zero() {
            continue;
        }
        let b = s.value(&idx);
        if b.is_zero() {
            continue;
        }
        acc = &acc + &(&a * &b);
    }
    acc
}

/// Determinant-convention pairing on forms (sum over increasing indices);
/// equals `pair_full / k!` on alternating tensors.
pub fn pair_increasing(r: &AltForm, s: &AltForm) -> Scalar {
    assert_eq!(r.degree(), s.degree());
    let ctx = r.context().clone();
    let mut acc = Scalar::zero(&ctx);
    for (a, b) in r.coeffs().iter().zip(s.coeffs()) {
        if !a.is_zero() && !b.is_zero() {
            acc = &acc + &(a * b);
        }
    }
    acc
}

/// Exterior derivative via the invariant formula over frame fields; scalar
/// coefficients differentiate only along the radial index.
pub fn exterior_derivative(m: &FrameModel, alpha: &AltForm) -> AltForm {
    let n = m.dim();
    let k = alpha.degree();
    assert!(k < n, "exterior derivative of a top form");
    let mut out = AltForm::zero(alpha.context(), n, k + 1);
    for (rank, tuple) in combinations(n, k + 1).iter().enumerate() {
        let mut acc = Scalar::zero(alpha.context());
        // Σ_p (-1)^p e_{i_p}( α(.. î_p ..) )
        if m.radial_index().is_some() {
            for p in 0..=k {
                let rest: Vec<usize> = tuple
                    .iter()
                    .enumerate()
                    .filter(|(q, _)| *q != p)
                    .map(|(_, &i)| i)
                    .collect();
                let d = m.dir_deriv(tuple[p], &alpha.value(&rest));
                if !d.is_zero() {
                    acc = if p % 2 == 0 { &acc + &d } else { &acc - &d };
                }
            }
        }
        // Σ_{p<q} (-1)^{p+q} α([e_p, e_q], .. î_p .. î_q ..)
        for p in 0..=k {
            for q in (p + 1)..=k {
                let rest: Vec<usize> = tuple
                    .iter()
                    .enumerate()
                    .filter(|(t, _)| *t != p && *t != q)
                    .map(|(_, &i)| i)
                    .collect();
                let mut idx = Vec::with_capacity(k);
                for mc in 0..n {
                    let c = m.c(tuple[p], tuple[q], mc);
                    if c.is_zero() {
                        continue;
                    }
                    idx.clear();
                    idx.push(mc);
                    idx.extend_from_slice(&rest);
                    let v = alpha.value(&idx);
                    if v.is_zero() {
                        continue;
                    }
                    let term = c * &v;
                    acc = if (p + q) % 2 == 0 { &acc + &term } else { &acc - &term };
                }
            }
        }
        out.coeffs[rank] = acc;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::ModelKind;

    fn flat(n: usize) -> FrameModel {
        FrameModel::flat(&Context::new::<&str>(&[]), n)
    }

    fn basis(m: &FrameModel, idx: &[usize]) -> AltForm {
        AltForm::from_terms(m.context(), m.dim(), idx.len(), &[(idx, m.one())])
    }

    #[test]
    fn wedge_basics() {
        let m = flat(5);
        let eta = basis(&m, &[4]);
        assert!(eta.wedge(&eta).is_zero());
        let e12 = basis(&m, &[0, 1]);
        let e34 = basis(&m, &[2, 3]);
        let w = e12.wedge(&e34);
        assert_eq!(w, basis(&m, &[0, 1, 2, 3]));
    }

    #[test]
    fn heisenberg_torsion_shape() {
        // (e12 + e34) ∧ e5 has the two expected coefficients.
        let m = flat(5);
        let f = basis(&m, &[0, 1]).add(&basis(&m, &[2, 3]));
        let t = f.wedge(&basis(&m, &[4]));
        assert_eq!(t, basis(&m, &[0, 1, 4]).add(&basis(&m, &[2, 3, 4])));
    }

    #[test]
    fn graded_commutativity() {
        let m = flat(6);
        let a = basis(&m, &[0, 2]).add(&basis(&m, &[1, 3]).scale(&m.int(3)));
        let b = basis(&m, &[4]).add(&basis(&m, &[5]).scale(&m.int(-2)));
        // deg 2 × deg 1: α∧β = (+1)^{2·1} β∧α
        assert_eq!(a.wedge(&b), b.wedge(&a));
        let c = basis(&m, &[1]);
        // deg 1 × deg 1: anticommute
        assert_eq!(b.wedge(&c), c.wedge(&b).neg());
    }

    #[test]
    fn interior_g2_fixture() {
        // X = e1 into the standard G2 3-form.
        let m = flat(7);
        let phi = g2_standard(&m);
        let x = m.frame_vector(0);
        let got = phi.interior(&x);
        let expect = basis(&m, &[1, 2])
            .add(&basis(&m, &[3, 4]))
            .add(&basis(&m, &[5, 6]))
            .sub(&basis(&m, &[3, 6]));
        assert_eq!(got, expect);
    }

    /// §-standard G2 form e123+e145+e167+e246-e147-e347-e356 (1-based).
    pub fn g2_standard(m: &FrameModel) -> AltForm {
        let one = m.one();
        AltForm::from_terms(
            m.context(),
            7,
            3,
            &[
                (&[0, 1, 2], one.clone()),
                (&[0, 3, 4], one.clone()),
                (&[0, 5, 6], one.clone()),
                (&[1, 3, 5], one.clone()),
                (&[0, 3, 6], -&one),
                (&[2, 3, 6], -&one),
                (&[2, 4, 5], -&one),
            ],
        )
    }

    #[test]
    fn hodge_involution_and_volume() {
        let m = flat(7);
        let vol = basis(&m, &[0, 1, 2, 3, 4, 5, 6]);
        let one_form = vol.hodge(&m);
        assert_eq!(one_form.degree(), 0);
        assert_eq!(one_form.coeffs()[0], m.one());
        let phi = g2_standard(&m);
        let sphi = phi.hodge(&m);
        // ** = id on 3-forms in dim 7
        assert_eq!(sphi.hodge(&m), phi);
        // full-sum pairing of a unit 3-form with itself is 3! = 6
        let e123 = basis(&m, &[0, 1, 2]);
        assert_eq!(pair_full(&e123, &e123), m.int(6));
    }

    #[test]
    fn orientation_flip_negates_star() {
        let mut m = flat(7);
        let phi = g2_standard(&m);
        let plus = phi.hodge(&m);
        m.set_orientation(-1);
        let minus = phi.hodge(&m);
        assert_eq!(minus, plus.neg());
    }

    #[test]
    fn interior_is_antiderivation() {
        let m = flat(6);
        let a = basis(&m, &[0, 1]).add(&basis(&m, &[2, 3]).scale(&m.int(2)));
        let b = basis(&m, &[4]).add(&basis(&m, &[1]));
        let x = m.frame_vector(0).add(&m.frame_vector(2).scale(&m.int(3)));
        let lhs = a.wedge(&b).interior(&x);
        let rhs = a
            .interior(&x)
            .wedge(&b)
            .add(&a.wedge(&b.interior(&x))); // (-1)^{deg a} = +1 for deg 2
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exterior_derivative_heisenberg() {
        let ctx = Context::new(&["rho"]);
        let mut m = FrameModel::new(&ctx, 5, ModelKind::LieGroup);
        let rho = m.scalar("rho");
        m.set_bracket(0, 1, 4, rho.clone());
        m.set_bracket(2, 3, 4, rho.clone());
        let eta = basis(&m, &[4]);
        let deta = exterior_derivative(&m, &eta);
        let expect = basis(&m, &[0, 1]).add(&basis(&m, &[2, 3])).scale(&-&rho);
        assert_eq!(deta, expect);
        // d² = 0
        assert!(exterior_derivative(&m, &deta).is_zero());
    }

    #[test]
    fn endo_roundtrip_and_outer() {
        let m = flat(5);
        let f2 = basis(&m, &[0, 1]).add(&basis(&m, &[2, 3])).neg();
        let phi = Endo::from_two_form(&f2);
        assert_eq!(phi.to_two_form(), f2);
        // φ² = -id + η⊗ξ for the standard contact pair
        let eta = basis(&m, &[4]);
        let xi = m.frame_vector(4);
        let resid = phi
            .square()
            .add(&Endo::identity(m.context(), 5))
            .sub(&Endo::outer(&eta, &xi));
        assert!(resid.is_zero());
    }

    #[test]
    fn eval_on_vectors() {
        let m = flat(3);
        let w = basis(&m, &[0, 1]);
        let x = m.frame_vector(0).add(&m.frame_vector(1));
        let y = m.frame_vector(1).scale(&m.int(2));
        assert_eq!(w.eval(&[&x, &y]), m.int(2));
        assert_eq!(w.eval(&[&y, &x]), m.int(-2));
    }
}

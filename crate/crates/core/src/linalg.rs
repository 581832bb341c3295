//! Exact dense linear algebra over the scalar field: Gauss–Jordan
//! elimination with pivoting on nonzero entries (rank decisions are exact,
//! no thresholds), particular solutions and nullspace bases.

use crate::parallel::par_map;
use crate::scalar::{Context, Scalar};
use std::sync::Arc;

/// Result of solving `A x = b` over the scalar field.
#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Inconsistent,
    Solved {
        particular: Vec<Scalar>,
        /// Basis of the homogeneous solution space; empty means unique.
        nullspace: Vec<Vec<Scalar>>,
    },
}

/// Pivot preference: cheaper scalars make better pivots, keeping the
/// rational-function entries small during elimination.
fn weight(s: &Scalar) -> usize {
    s.numerator().terms.len()
        + s.denominator().terms.len()
        + s.numerator().total_degree() as usize
        + s.denominator().total_degree() as usize
}

/// Solves `A x = b` exactly. `rows` are the coefficient rows of `A`.
pub fn solve(ctx: &Arc<Context>, rows: Vec<Vec<Scalar>>, rhs: Vec<Scalar>) -> SolveOutcome {
    assert_eq!(rows.len(), rhs.len());
    let ncols = rows.first().map(Vec::len).unwrap_or(0);
    let mut aug: Vec<(Vec<Scalar>, Scalar)> = rows.into_iter().zip(rhs).collect();
    // Drop identically zero rows with zero rhs early; they carry nothing.
    aug.retain(|(row, b)| !b.is_zero() || row.iter().any(|c| !c.is_zero()));

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut pivot_rows: Vec<(usize, Vec<Scalar>, Scalar)> = Vec::new(); // (col, row, rhs)

    for col in 0..ncols {
        // Pick the cheapest nonzero pivot in this column.
        let mut best: Option<(usize, usize)> = None;
        for (r, (row, _)) in aug.iter().enumerate() {
            if !row[col].is_zero() {
                let w = weight(&row[col]);
                if best.map(|(_, bw)| w < bw).unwrap_or(true) {
                    best = Some((r, w));
                }
            }
        }
        let Some((r, _)) = best else { continue };
        let (mut prow, mut pb) = aug.swap_remove(r);
        let inv = prow[col].inv();
        for c in prow.iter_mut() {
            if !c.is_zero() {
                *c = &*c * &inv;
            }
        }
        pb = &pb * &inv;
        // Eliminate this column from the remaining rows (in parallel; each
        // row update is independent).
        let prow_ref = &prow;
        let pb_ref = &pb;
        aug = par_map(aug, |(mut row, mut b)| {
            let f = row[col].clone();
            if !f.is_zero() {
                for (c, pc) in row.iter_mut().zip(prow_ref.iter()) {
                    if !pc.is_zero() {
                        *c = &*c - &(&f * pc);
                    }
                }
                b = &b - &(&f * pb_ref);
            }
            (row, b)
        });
        aug.retain(|(row, b)| !b.is_zero() || row.iter().any(|c| !c.is_zero()));
        // Back-substitute into the pivot rows found so far.
        for (_, row, b) in pivot_rows.iter_mut() {
            let f = row[col].clone();
            if !f.is_zero() {
                for (c, pc) in row.iter_mut().zip(prow.iter()) {
                    if !pc.is_zero() {
                        *c = &*c - &(&f * pc);
                    }
                }
                *b = &*b - &(&f * &pb);
            }
        }
        pivot_of_col[col] = Some(pivot_rows.len());
        pivot_rows.push((col, prow, pb));
    }

    // Whatever rows remain have zero coefficients; nonzero rhs means the
    // system is inconsistent.
    if aug.iter().any(|(_, b)| !b.is_zero()) {
        return SolveOutcome::Inconsistent;
    }

    let zero = Scalar::zero(ctx);
    let mut particular = vec![zero.clone(); ncols];
    for (col, _, b) in &pivot_rows {
        particular[*col] = b.clone();
    }
    let mut nullspace = Vec::new();
    for free in 0..ncols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![zero.clone(); ncols];
        v[free] = Scalar::one(ctx);
        for (col, row, _) in &pivot_rows {
            v[*col] = -&row[free];
        }
        nullspace.push(v);
    }
    SolveOutcome::Solved { particular, nullspace }
}

/// Basis of the kernel of the linear map given by `rows`.
pub fn kernel(ctx: &Arc<Context>, rows: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let n = rows.len();
    match solve(ctx, rows, vec![Scalar::zero(ctx); n]) {
        SolveOutcome::Solved { nullspace, .. } => nullspace,
        SolveOutcome::Inconsistent => unreachable!("homogeneous system is always consistent"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ctx: &Arc<Context>, n: i64) -> Scalar {
        Scalar::from_int(ctx, n)
    }

    #[test]
    fn unique_solution() {
        let ctx = Context::new::<&str>(&[]);
        let rows = vec![
            vec![s(&ctx, 2), s(&ctx, 1)],
            vec![s(&ctx, 1), s(&ctx, -1)],
        ];
        let rhs = vec![s(&ctx, 5), s(&ctx, 1)];
        match solve(&ctx, rows, rhs) {
            SolveOutcome::Solved { particular, nullspace } => {
                assert!(nullspace.is_empty());
                assert_eq!(particular, vec![s(&ctx, 2), s(&ctx, 1)]);
            }
            _ => panic!("expected solution"),
        }
    }

    #[test]
    fn detects_inconsistency_and_kernel() {
        let ctx = Context::new::<&str>(&[]);
        let rows = vec![
            vec![s(&ctx, 1), s(&ctx, 1)],
            vec![s(&ctx, 2), s(&ctx, 2)],
        ];
        assert!(matches!(
            solve(&ctx, rows.clone(), vec![s(&ctx, 1), s(&ctx, 3)]),
            SolveOutcome::Inconsistent
        ));
        let null = kernel(&ctx, rows);
        assert_eq!(null.len(), 1);
        // (x, -x) direction
        assert_eq!(null[0][0], -&null[0][1]);
    }

    #[test]
    fn rational_function_entries() {
        // Solve (1/r) x = 1 over the function field.
        let ctx = Context::new::<&str>(&[]);
        let r = Scalar::r(&ctx);
        let rows = vec![vec![Scalar::one(&ctx).checked_div(&r).unwrap()]];
        match solve(&ctx, rows, vec![Scalar::one(&ctx)]) {
            SolveOutcome::Solved { particular, nullspace } => {
                assert!(nullspace.is_empty());
                assert_eq!(particular[0], r);
            }
            _ => panic!(),
        }
    }
}

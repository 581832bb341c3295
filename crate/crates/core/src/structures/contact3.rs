//! Almost contact 3-structures: the six quaternionic relations between
//! `(φ_i, η_i, ξ_i)`, orthonormality of the Reeb fields, and the commutator
//! relations `[ξ_i, ξ_j] = 2a ξ_k − T(ξ_i, ξ_j)`.

use super::contact::ContactStructure;
use super::ResidualEntry;
use crate::frame::VectorField;
use crate::scalar::Scalar;
use crate::tensor::{AltForm, Endo};

/// Residual report of the 3-structure relations.
#[derive(Debug)]
pub struct Contact3Report {
    pub entries: Vec<ResidualEntry>,
}

impl Contact3Report {
    pub fn all_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero)
    }

    pub fn entry(&self, label: &str) -> Option<&ResidualEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

fn endo_witness(e: &Endo) -> Option<(Vec<usize>, Scalar)> {
    for i in 0..e.dim() {
        for j in 0..e.dim() {
            if !e.get(i, j).is_zero() {
                return Some((vec![i + 1, j + 1], e.get(i, j).clone()));
            }
        }
    }
    None
}

fn vector_witness(v: &VectorField) -> Option<(Vec<usize>, Scalar)> {
    v.coeffs
        .iter()
        .position(|c| !c.is_zero())
        .map(|i| (vec![i + 1], v.coeffs[i].clone()))
}

/// Checks the quaternionic and commutator relations for three almost
/// contact structures on a common model, with cone constant `a` and the
/// torsion 3-form `T` entering the commutators.
pub fn contact3_check(
    s1: &ContactStructure,
    s2: &ContactStructure,
    s3: &ContactStructure,
    a: &Scalar,
    torsion: &AltForm,
) -> Contact3Report {
    let model = s1.model().clone();
    let ctx = model.context();
    let n = model.dim();
    let mut entries = Vec::new();

    // Orthonormality of ξ_1, ξ_2, ξ_3.
    let xis = [s1.xi(), s2.xi(), s3.xi()];
    let mut ortho_witness = None;
    'ortho: for i in 0..3 {
        for j in 0..3 {
            let expect = if i == j { model.one() } else { model.zero() };
            let v = &xis[i].dot(xis[j]) - &expect;
            if !v.is_zero() {
                ortho_witness = Some((vec![i + 1, j + 1], v));
                break 'ortho;
            }
        }
    }
    entries.push(ResidualEntry::new("xi-orthonormal", ortho_witness));

    // The six quaternionic relations.
    let phis = [s1.phi(), s2.phi(), s3.phi()];
    let etas = [s1.eta(), s2.eta(), s3.eta()];
    // (left φ, right φ, sign of φ_result, result index, η index, ξ index)
    let relations: [(usize, usize, i64, usize, usize, usize); 6] = [
        (2, 1, -1, 0, 1, 2), // φ3φ2 = −φ1 + η2⊗ξ3
        (1, 2, 1, 0, 2, 1),  // φ2φ3 = +φ1 + η3⊗ξ2
        (0, 2, -1, 1, 2, 0), // φ1φ3 = −φ2 + η3⊗ξ1
        (2, 0, 1, 1, 0, 2),  // φ3φ1 = +φ2 + η1⊗ξ3
        (1, 0, -1, 2, 0, 1), // φ2φ1 = −φ3 + η1⊗ξ2
        (0, 1, 1, 2, 1, 0),  // φ1φ2 = +φ3 + η2⊗ξ1
    ];
    for (l, r, sign, res, ei, xi) in relations {
        let lhs = phis[l].compose(phis[r]);
        let rhs = phis[res]
            .scale(&Scalar::from_int(ctx, sign))
            .add(&Endo::outer(etas[ei], xis[xi]));
        let resid = lhs.sub(&rhs);
        let label = format!("phi{}phi{}", l + 1, r + 1);
        entries.push(ResidualEntry::new(label, endo_witness(&resid)));
    }

    // Commutators [ξ_i, ξ_j] = 2a ξ_k − T(ξ_i, ξ_j).
    let torsion_vector = |x: &VectorField, y: &VectorField| {
        let mut v = VectorField::zero(ctx, n);
        for (k, slot) in v.coeffs.iter_mut().enumerate() {
            let ek = model.frame_vector(k);
            *slot = torsion.eval(&[x, y, &ek]);
        }
        v
    };
    let two_a = a + a;
    let comms = [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)];
    for (i, j, k) in comms {
        let lhs = model.lie_bracket(xis[i], xis[j]);
        let rhs = xis[k].scale(&two_a).sub(&torsion_vector(xis[i], xis[j]));
        let resid = lhs.sub(&rhs);
        let label = format!("[xi{},xi{}]", i + 1, j + 1);
        entries.push(ResidualEntry::new(label, vector_witness(&resid)));
    }

    Contact3Report { entries }
}

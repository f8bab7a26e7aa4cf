use std::fmt;
use std::str::FromStr;

use super::rng::SplitMix64;
use super::HarnessError;
use crate::linalg::{CMatrix, HermMatrix, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Hermitian,
    Positive,
    Unitary,
    Projection,
    PartitionIsometry,
    ComplexGeneral,
}

impl GenKind {
    pub const ALL: [GenKind; 6] = [
        GenKind::Hermitian,
        GenKind::Positive,
        GenKind::Unitary,
        GenKind::Projection,
        GenKind::PartitionIsometry,
        GenKind::ComplexGeneral,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GenKind::Hermitian => "hermitian",
            GenKind::Positive => "positive",
            GenKind::Unitary => "unitary",
            GenKind::Projection => "projection",
            GenKind::PartitionIsometry => "partition_isometry",
            GenKind::ComplexGeneral => "complex_general",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GenKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GenKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| HarnessError::UnknownKind(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub dim: usize,
    pub seed: u64,
    pub scale: f64,
}

/// `C*C + S*S = P` with `P` an orthogonal projection.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    pub c: CMatrix,
    pub s: CMatrix,
    pub p: HermMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Generated {
    Matrix(CMatrix),
    Hermitian(HermMatrix),
    Partition(Partition),
}

pub fn generate(spec: GenSpec) -> Result<Generated, HarnessError> {
    if spec.dim == 0 {
        return Err(HarnessError::InvalidSpec("dim must be at least 1".into()));
    }
    if !spec.scale.is_finite() {
        return Err(HarnessError::InvalidSpec(format!("scale {} is not finite", spec.scale)));
    }
    let mut rng = SplitMix64::new(spec.seed);
    let (n, c) = (spec.dim, spec.scale);
    Ok(match spec.kind {
        GenKind::Hermitian => Generated::Hermitian(hermitian(&mut rng, n).scale(c)),
        GenKind::Positive => Generated::Hermitian(positive(&mut rng, n).scale(c.abs())),
        GenKind::Unitary => Generated::Matrix(unitary(&mut rng, n)),
        GenKind::Projection => {
            let rank = rng.int_in(0, n);
            Generated::Hermitian(projection(&mut rng, n, rank))
        }
        GenKind::PartitionIsometry => Generated::Partition(partition_isometry(&mut rng, n)),
        GenKind::ComplexGeneral => Generated::Matrix(gaussian_matrix(&mut rng, n, n).scale(c)),
    })
}

pub fn gaussian_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| rng.complex_gaussian())
}

/// `(G + G*)/2` for a complex Gaussian `G`.
pub fn hermitian(rng: &mut SplitMix64, n: usize) -> HermMatrix {
    HermMatrix::symmetrized(gaussian_matrix(rng, n, n))
}

/// `G*G`.
pub fn positive(rng: &mut SplitMix64, n: usize) -> HermMatrix {
    let g = gaussian_matrix(rng, n, n);
    HermMatrix::symmetrized(&g.adjoint() * &g)
}

/// Gram–Schmidt (applied twice) on the columns of a complex Gaussian matrix,
/// which gives a Haar-distributed unitary.
pub fn unitary(rng: &mut SplitMix64, n: usize) -> CMatrix {
    let g = gaussian_matrix(rng, n, n);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column(j);
        for _ in 0..2 {
            for q in &cols {
                let dot: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= dot * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        cols.push(v);
    }
    CMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// `V diag(values) V*` for a Haar unitary `V`.
pub fn with_spectrum(rng: &mut SplitMix64, values: &[f64]) -> HermMatrix {
    let v = unitary(rng, values.len());
    HermMatrix::diag(values).conjugate_by(&v)
}

/// Orthogonal projection of the given rank onto a Haar-random subspace.
pub fn projection(rng: &mut SplitMix64, n: usize, rank: usize) -> HermMatrix {
    let values: Vec<f64> = (0..n).map(|i| if i < rank { 1.0 } else { 0.0 }).collect();
    with_spectrum(rng, &values)
}

fn angles(rng: &mut SplitMix64, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.uniform_in(0.0, std::f64::consts::FRAC_PI_2)).collect()
}

/// `C = V₁ diag(cos θ) W P`, `S = V₂ diag(sin θ) W P` with `P` a projection of
/// random rank, so `C*C + S*S = P W* W P = P`.
pub fn partition_isometry(rng: &mut SplitMix64, n: usize) -> Partition {
    let rank = rng.int_in(0, n);
    let p = projection(rng, n, rank);
    partition_on(rng, p)
}

/// Same construction with `P = I`.
pub fn full_isometry(rng: &mut SplitMix64, n: usize) -> Partition {
    partition_on(rng, HermMatrix::identity(n))
}

fn partition_on(rng: &mut SplitMix64, p: HermMatrix) -> Partition {
    let n = p.dim();
    let theta = angles(rng, n);
    let v1 = unitary(rng, n);
    let v2 = unitary(rng, n);
    let w = unitary(rng, n);
    let cos: Vec<f64> = theta.iter().map(|t| t.cos()).collect();
    let sin: Vec<f64> = theta.iter().map(|t| t.sin()).collect();
    let wp = &w * p.as_cmatrix();
    let c = &(&v1 * &CMatrix::from_diag(&cos)) * &wp;
    let s = &(&v2 * &CMatrix::from_diag(&sin)) * &wp;
    Partition { c, s, p }
}

/// Commuting positive `C = V diag(cos θ) V*`, `S = V diag(sin θ) V*` on a
/// random-rank subspace, so `C² + S² = P`.
pub fn positive_pair(rng: &mut SplitMix64, n: usize) -> (HermMatrix, HermMatrix, HermMatrix) {
    let rank = rng.int_in(0, n);
    let theta = angles(rng, n);
    let v = unitary(rng, n);
    let on = |f: fn(f64) -> f64| -> Vec<f64> {
        (0..n).map(|i| if i < rank { f(theta[i]) } else { 0.0 }).collect()
    };
    let c = HermMatrix::diag(&on(f64::cos)).conjugate_by(&v);
    let s = HermMatrix::diag(&on(f64::sin)).conjugate_by(&v);
    let p = HermMatrix::diag(&on(|_| 1.0)).conjugate_by(&v);
    (c, s, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: GenKind, seed: u64) -> GenSpec {
        GenSpec {
            kind,
            dim: 5,
            seed,
            scale: 1.0,
        }
    }

    #[test]
    fn deterministic() {
        for kind in GenKind::ALL {
            assert_eq!(generate(spec(kind, 17)).unwrap(), generate(spec(kind, 17)).unwrap());
        }
        assert_ne!(
            generate(spec(GenKind::Hermitian, 1)).unwrap(),
            generate(spec(GenKind::Hermitian, 2)).unwrap()
        );
    }

    #[test]
    fn projections_are_idempotent() {
        for seed in 0..20 {
            let Generated::Hermitian(p) = generate(spec(GenKind::Projection, seed)).unwrap() else {
                panic!("projection must be Hermitian");
            };
            let m = p.as_cmatrix();
            assert!((m * m).distance(m) <= 1e-12);
        }
    }

    #[test]
    fn partitions_sum_to_projection() {
        for seed in 0..20 {
            let Generated::Partition(pt) =
                generate(spec(GenKind::PartitionIsometry, seed)).unwrap()
            else {
                panic!("expected a partition");
            };
            let sum = &(&pt.c.adjoint() * &pt.c) + &(&pt.s.adjoint() * &pt.s);
            assert!(sum.distance(pt.p.as_cmatrix()) <= 1e-12, "seed {seed}");
        }
    }

    #[test]
    fn unitary_is_unitary() {
        let Generated::Matrix(u) = generate(spec(GenKind::Unitary, 4)).unwrap() else {
            panic!("expected a matrix");
        };
        assert!((&u.adjoint() * &u).distance(&CMatrix::identity(5)) < 1e-13);
    }

    #[test]
    fn positive_pair_identity() {
        let mut rng = SplitMix64::new(5);
        let (c, s, p) = positive_pair(&mut rng, 6);
        let sum = &(c.as_cmatrix() * c.as_cmatrix()) + &(s.as_cmatrix() * s.as_cmatrix());
        assert!(sum.distance(p.as_cmatrix()) < 1e-12);
    }

    #[test]
    fn bad_specs() {
        assert!(matches!("nope".parse::<GenKind>(), Err(HarnessError::UnknownKind(_))));
        let mut s = spec(GenKind::Hermitian, 0);
        s.dim = 0;
        assert!(matches!(generate(s), Err(HarnessError::InvalidSpec(_))));
    }
}

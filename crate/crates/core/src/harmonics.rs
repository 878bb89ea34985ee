//! Bases of spherical harmonics `H_d` (joint kernel of all `Delta_ij` in the
//! multidegree-`d` polynomials) and simplicial harmonics (additionally killed
//! by `h_ij`, `i < j`), and the dimension identity behind the joint
//! `O(m) x gl(k)` decomposition of `H`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::linalg;
use crate::ratpoly::{monomials_of_multidegree, multidegree_dim, Ambient, MultiDegree, Polynomial};
use crate::repcomb::{kostka, partitions, Partition};
use crate::weyl::WeylElement;
use crate::{Cap, Error, Rational, Result};

#[derive(Debug, Clone, Serialize)]
pub struct HarmonicBasis {
    pub multidegree: MultiDegree,
    pub basis: Vec<Polynomial>,
}

impl HarmonicBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplicialBasis {
    pub partition: Partition,
    pub multidegree: MultiDegree,
    pub basis: Vec<Polynomial>,
}

impl SimplicialBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// All `Delta_ij` with `i <= j`.
pub fn laplacians(amb: Ambient) -> Vec<WeylElement> {
    let mut out = Vec::new();
    for i in 1..=amb.k {
        for j in i..=amb.k {
            out.push(WeylElement::laplacian(amb, i, j).unwrap());
        }
    }
    out
}

/// The raising operators `h_ij`, `i < j`, spanning `t_-`.
pub fn raising_eulers(amb: Ambient) -> Vec<WeylElement> {
    let mut out = Vec::new();
    for i in 1..=amb.k {
        for j in (i + 1)..=amb.k {
            out.push(WeylElement::euler(amb, i, j).unwrap());
        }
    }
    out
}

fn check_multidegree(amb: &Ambient, d: &MultiDegree) -> Result<()> {
    if d.len() != amb.k {
        return Err(Error::LengthMismatch {
            expected: amb.k,
            got: d.len(),
        });
    }
    Ok(())
}

/// Reduced echelon basis (in canonical monomial order) of the common kernel
/// of `ops` restricted to multidegree `d`.
pub fn joint_kernel(
    amb: Ambient,
    d: &MultiDegree,
    ops: &[WeylElement],
    cap: Cap,
) -> Result<Vec<Polynomial>> {
    check_multidegree(&amb, d)?;
    cap.check(multidegree_dim(&amb, d))?;
    let monos = monomials_of_multidegree(&amb, d);
    let ncols = monos.len();
    let mut row_index: HashMap<(usize, crate::ratpoly::Monomial), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (col, mono) in monos.iter().enumerate() {
        let p = Polynomial::monomial(amb, mono.clone(), Rational::from_integer(1.into()));
        for (op_idx, op) in ops.iter().enumerate() {
            for (out_mono, c) in op.apply(&p)?.terms() {
                let n = row_index.len();
                let row = *row_index.entry((op_idx, out_mono.clone())).or_insert(n);
                entries.push((row, col, c.clone()));
            }
        }
    }
    let mut rows = vec![vec![Rational::from_integer(0.into()); ncols]; row_index.len()];
    for (r, c, v) in entries {
        rows[r][c] = v;
    }
    let ker = linalg::kernel(&rows, ncols);
    Ok(linalg::canonical_basis(&ker, ncols)
        .into_iter()
        .map(|v| Polynomial::from_coordinates(amb, &monos, &v))
        .collect())
}

/// Basis of the spherical harmonics homogeneous of multidegree `d`.
pub fn harmonic_basis(amb: Ambient, d: &MultiDegree, cap: Cap) -> Result<HarmonicBasis> {
    Ok(HarmonicBasis {
        multidegree: d.clone(),
        basis: joint_kernel(amb, d, &laplacians(amb), cap)?,
    })
}

/// Basis of the simplicial harmonics of multidegree `a` (padded to length `k`).
/// Reports an empty basis, not an error, when the kernel is trivial.
pub fn simplicial_basis(amb: Ambient, a: &Partition, cap: Cap) -> Result<SimplicialBasis> {
    let d = MultiDegree(a.padded(amb.k)?);
    let mut ops = laplacians(amb);
    ops.extend(raising_eulers(amb));
    Ok(SimplicialBasis {
        partition: a.clone(),
        basis: joint_kernel(amb, &d, &ops, cap)?,
        multidegree: d,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotypicTerm {
    pub partition: Partition,
    pub simplicial_dim: usize,
    pub kostka: u64,
}

/// Both sides of `dim H_d = sum_a dim H^S_a * K(a, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotypicCheck {
    pub multidegree: MultiDegree,
    pub lhs: u64,
    pub rhs: u64,
    pub terms: Vec<IsotypicTerm>,
    #[serde(rename = "match")]
    pub matches: bool,
}

fn isotypic_from(
    d: &MultiDegree,
    lhs: u64,
    k: usize,
    simplicial_dims: &BTreeMap<Partition, usize>,
) -> IsotypicCheck {
    let mut terms = Vec::new();
    let mut rhs = 0;
    for a in partitions(d.total(), k, d.total()) {
        let kn = kostka(&a, &d.0);
        if kn == 0 {
            continue;
        }
        let sd = simplicial_dims[&a];
        rhs += sd as u64 * kn;
        terms.push(IsotypicTerm {
            partition: a,
            simplicial_dim: sd,
            kostka: kn,
        });
    }
    IsotypicCheck {
        multidegree: d.clone(),
        lhs,
        rhs,
        matches: lhs == rhs,
        terms,
    }
}

fn simplicial_dims(
    amb: Ambient,
    needed: impl IntoIterator<Item = Partition>,
    cap: Cap,
) -> Result<BTreeMap<Partition, usize>> {
    let mut parts: Vec<Partition> = needed.into_iter().collect();
    parts.sort();
    parts.dedup();
    parts
        .into_par_iter()
        .map(|a| simplicial_basis(amb, &a, cap).map(|b| (a, b.dim())))
        .collect()
}

pub fn isotypic_dimension_check(amb: Ambient, d: &MultiDegree, cap: Cap) -> Result<IsotypicCheck> {
    check_multidegree(&amb, d)?;
    let lhs = harmonic_basis(amb, d, cap)?.dim() as u64;
    let needed = partitions(d.total(), amb.k, d.total())
        .into_iter()
        .filter(|a| kostka(a, &d.0) > 0);
    let dims = simplicial_dims(amb, needed, cap)?;
    Ok(isotypic_from(d, lhs, amb.k, &dims))
}

/// The identity at every multidegree of total degree at most `max_total`,
/// sorted by multidegree.
pub fn isotypic_scan(amb: Ambient, max_total: u32, cap: Cap) -> Result<Vec<IsotypicCheck>> {
    let degrees = MultiDegree::all_up_to(amb.k, max_total);
    let needed = (0..=max_total).flat_map(|n| partitions(n, amb.k, n));
    let dims = simplicial_dims(amb, needed, cap)?;
    let lhs: Vec<u64> = degrees
        .par_iter()
        .map(|d| harmonic_basis(amb, d, cap).map(|b| b.dim() as u64))
        .collect::<Result<_>>()?;
    Ok(degrees
        .iter()
        .zip(lhs)
        .map(|(d, l)| isotypic_from(d, l, amb.k, &dims))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::binomial;
    use crate::repcomb::is_admissible;

    fn amb(k: usize, m: usize) -> Ambient {
        Ambient::new(k, m).unwrap()
    }

    fn md(v: &[u32]) -> MultiDegree {
        MultiDegree(v.to_vec())
    }

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn harmonic_basis_examples() {
        let b = harmonic_basis(amb(2, 3), &md(&[0, 0]), Cap::DEFAULT).unwrap();
        assert_eq!(b.basis, vec![Polynomial::one(amb(2, 3))]);
        assert_eq!(
            harmonic_basis(amb(1, 3), &md(&[2]), Cap::DEFAULT)
                .unwrap()
                .dim(),
            5
        );
        assert_eq!(
            harmonic_basis(amb(2, 1), &md(&[1, 1]), Cap::DEFAULT)
                .unwrap()
                .dim(),
            0
        );
    }

    #[test]
    fn basis_elements_are_harmonic_and_canonical() {
        let a = amb(2, 3);
        let b = harmonic_basis(a, &md(&[2, 1]), Cap::DEFAULT).unwrap();
        for h in &b.basis {
            for lap in laplacians(a) {
                assert!(lap.apply(h).unwrap().is_zero());
            }
            // leading coefficient is 1
            assert!(h.terms().next_back().unwrap().1 == &Rational::from_integer(1.into()));
        }
        // distinct leading monomials
        let mut leads: Vec<_> = b
            .basis
            .iter()
            .map(|h| h.terms().next_back().unwrap().0.clone())
            .collect();
        leads.dedup();
        assert_eq!(leads.len(), b.dim());
    }

    #[test]
    fn resource_cap_is_enforced() {
        let err = harmonic_basis(amb(2, 3), &md(&[3, 3]), Cap(10)).unwrap_err();
        assert_eq!(err, Error::ResourceCap { dim: 100, cap: 10 });
        assert!(matches!(
            harmonic_basis(amb(2, 3), &md(&[3]), Cap::DEFAULT),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn dimension_symmetric_under_permutation() {
        let a = amb(2, 3);
        assert_eq!(
            harmonic_basis(a, &md(&[2, 1]), Cap::DEFAULT).unwrap().dim(),
            harmonic_basis(a, &md(&[1, 2]), Cap::DEFAULT).unwrap().dim()
        );
    }

    #[test]
    fn single_variable_closed_form() {
        for m in 2..=5usize {
            for d in 0..=6u32 {
                let expect = binomial((d as usize + m - 1) as u64, (m - 1) as u64)
                    - if d >= 2 {
                        binomial((d as usize + m - 3) as u64, (m - 1) as u64)
                    } else {
                        0
                    };
                let got = harmonic_basis(amb(1, m), &md(&[d]), Cap::DEFAULT)
                    .unwrap()
                    .dim();
                assert_eq!(got as u128, expect, "m={m} d={d}");
            }
        }
    }

    #[test]
    fn simplicial_examples() {
        let a = amb(2, 3);
        let b = simplicial_basis(a, &part(&[]), Cap::DEFAULT).unwrap();
        assert_eq!(b.basis, vec![Polynomial::one(a)]);
        for m in 2..=4 {
            assert_eq!(
                simplicial_basis(amb(2, m), &part(&[1]), Cap::DEFAULT)
                    .unwrap()
                    .dim(),
                m
            );
        }
        let b = simplicial_basis(amb(2, 2), &part(&[1, 1]), Cap::DEFAULT).unwrap();
        assert!(b.dim() > 0);
        // the determinant x1_1*x2_2 - x1_2*x2_1 spans it
        assert_eq!(b.dim(), 1);
        assert_eq!(
            b.basis[0],
            Polynomial::parse("x1_1*x2_2 - x1_2*x2_1", 2, 2).unwrap()
        );
    }

    #[test]
    fn simplicial_vectors_are_lowest_rung() {
        let a = amb(2, 3);
        for p in [part(&[2]), part(&[2, 1]), part(&[1, 1]), part(&[3, 1])] {
            let b = simplicial_basis(a, &p, Cap::DEFAULT).unwrap();
            for v in &b.basis {
                for h in raising_eulers(a) {
                    assert!(h.apply(v).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn simplicial_vanishes_off_admissible() {
        for m in 1..=3 {
            for a in crate::repcomb::partitions_in_box(2, 3) {
                let dim = simplicial_basis(amb(2, m), &a, Cap::DEFAULT).unwrap().dim();
                assert_eq!(dim > 0, is_admissible(&a, m), "a={a} m={m}");
            }
        }
    }

    #[test]
    fn isotypic_examples() {
        let zero = isotypic_dimension_check(amb(2, 3), &md(&[0, 0]), Cap::DEFAULT).unwrap();
        assert_eq!((zero.lhs, zero.rhs), (1, 1));
        let c = isotypic_dimension_check(amb(2, 3), &md(&[1, 1]), Cap::DEFAULT).unwrap();
        assert_eq!(c.terms.len(), 2);
        assert!(c.matches, "{c:?}");
        let c = isotypic_dimension_check(amb(2, 3), &md(&[2, 1]), Cap::DEFAULT).unwrap();
        assert!(c.matches, "{c:?}");
    }

    #[test]
    fn isotypic_scan_matches_for_small_m() {
        for m in 3..=5 {
            for c in isotypic_scan(amb(2, m), 4, Cap::DEFAULT).unwrap() {
                assert!(c.matches, "m={m} {c:?}");
            }
        }
    }
}

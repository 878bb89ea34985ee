//! Sufficient conditions for irreducibility of the generalized Verma modules
//! `V_lambda` of `sp(2k)` induced from `gl(k)`, and a finite-depth comparison
//! of `V_a~` against the module `L_a~ = sum_n r^{2n} F_a~` realized inside the
//! polynomials.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::fischer::ExponentMatrix;
use crate::harmonics::simplicial_basis;
use crate::linalg;
use crate::ratpoly::{binomial, Ambient, Monomial, MultiDegree, Polynomial};
use crate::repcomb::{gl_dim, shift, Partition, WeightVector};
use crate::weyl::WeylElement;
use crate::{fmt_rational, Cap, Error, Rational, Result};

/// `q` is in `-N = {-1, -2, ...}`.
pub fn is_negative_natural(q: &Rational) -> bool {
    q.is_integer() && q.is_negative()
}

fn ser_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

/// `lambda_i + lambda_j - 2k + i + j - 2` for a pair `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCondition {
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    pub violated: bool,
}

/// `lambda_i - k + i - 1` for an index `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexCondition {
    pub i: usize,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    pub violated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub weight: WeightVector,
    pub pair_conditions: Vec<PairCondition>,
    pub index_conditions: Vec<IndexCondition>,
    pub irreducible_sufficient: bool,
}

impl ConditionReport {
    pub fn violations(&self) -> usize {
        self.pair_conditions.iter().filter(|c| c.violated).count()
            + self.index_conditions.iter().filter(|c| c.violated).count()
    }
}

/// Evaluates both families of conditions for the weight `lambda`.
pub fn check_weight(lambda: &WeightVector, k: usize) -> Result<ConditionReport> {
    if lambda.0.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            got: lambda.0.len(),
        });
    }
    let int = |n: i64| Rational::from_integer(n.into());
    let k_i = k as i64;
    let mut pair_conditions = Vec::new();
    for i in 1..=k {
        for j in (i + 1)..=k {
            let value =
                &lambda.0[i - 1] + &lambda.0[j - 1] + int(-2 * k_i + i as i64 + j as i64 - 2);
            pair_conditions.push(PairCondition {
                i,
                j,
                violated: is_negative_natural(&value),
                value,
            });
        }
    }
    let index_conditions: Vec<IndexCondition> = (1..=k)
        .map(|i| {
            let value = &lambda.0[i - 1] + int(-k_i + i as i64 - 1);
            IndexCondition {
                i,
                violated: is_negative_natural(&value),
                value,
            }
        })
        .collect();
    let irreducible_sufficient =
        pair_conditions.iter().all(|c| !c.violated) && index_conditions.iter().all(|c| !c.violated);
    Ok(ConditionReport {
        weight: lambda.clone(),
        pair_conditions,
        index_conditions,
        irreducible_sufficient,
    })
}

/// The conditions at the shifted weight `a + m/2`.
pub fn check_partition(a: &Partition, m: usize, k: usize) -> Result<ConditionReport> {
    check_weight(&shift(a, m, k)?, k)
}

/// `m >= 2k - 1`.
pub fn semistable(m: usize, k: usize) -> bool {
    m + 1 >= 2 * k
}

/// `dim gl(a) * C(g + k(k+1)/2 - 1, g)`, the dimension of the degree-`g`
/// layer `sum_{|n| = g} r^{2n} F_a` of the induced module.
pub fn verma_graded_dim(a: &Partition, k: usize, g: u32) -> Result<u64> {
    let symbols = (k * (k + 1) / 2) as u64;
    let layer = binomial(g as u64 + symbols - 1, g as u64);
    Ok(gl_dim(a, k)? * u64::try_from(layer).expect("layer count overflows u64"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapseLevel {
    pub g: u32,
    pub free_dim: u64,
    pub realized_dim: u64,
    pub collapsed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapseReport {
    pub partition: Partition,
    pub k: usize,
    pub m: usize,
    pub simplicial_dim: usize,
    /// Dimension of the `gl(k)` module generated by one simplicial vector.
    pub copy_dim: usize,
    pub gl_dim: u64,
    pub levels: Vec<CollapseLevel>,
}

impl CollapseReport {
    pub fn collapsed(&self) -> bool {
        self.levels.iter().any(|l| l.collapsed)
    }

    pub fn is_empty(&self) -> bool {
        self.simplicial_dim == 0
    }
}

fn rank_of(polys: &[Polynomial]) -> usize {
    use std::collections::HashMap;
    let mut index: HashMap<&Monomial, usize> = HashMap::new();
    for p in polys {
        for (mono, _) in p.terms() {
            let n = index.len();
            index.entry(mono).or_insert(n);
        }
    }
    let rows: Vec<Vec<Rational>> = polys
        .iter()
        .map(|p| {
            let mut v = vec![Rational::zero(); index.len()];
            for (mono, c) in p.terms() {
                v[index[mono]] = c.clone();
            }
            v
        })
        .collect();
    linalg::rank(&rows, index.len())
}

/// Closes `{v}` under the lowering operators `h_ij`, `i > j`, returning a
/// basis of weight vectors.
fn gl_orbit(amb: Ambient, v: &Polynomial) -> Vec<Polynomial> {
    let lowering: Vec<WeylElement> = (1..=amb.k)
        .flat_map(|i| (1..i).map(move |j| (i, j)))
        .map(|(i, j)| WeylElement::euler(amb, i, j).unwrap())
        .collect();
    let mut basis: Vec<Polynomial> = vec![v.clone()];
    let mut frontier = vec![v.clone()];
    while let Some(w) = frontier.pop() {
        for op in &lowering {
            let u = op.apply(&w).unwrap();
            if u.is_zero() {
                continue;
            }
            let d = u.homogeneous_multidegree().unwrap();
            let mut same: Vec<Polynomial> = basis
                .iter()
                .filter(|b| b.homogeneous_multidegree().unwrap() == d)
                .cloned()
                .collect();
            let before = same.len();
            same.push(u.clone());
            if rank_of(&same) > before {
                basis.push(u.clone());
                frontier.push(u);
            }
        }
    }
    basis.sort_by_key(|b| b.homogeneous_multidegree().unwrap());
    basis
}

/// Compares, for each depth `g <= max_depth`, the free dimension of the
/// degree-`g` layer of `V_a~` with the rank of `{r^{2n} u : |n| = g}` where
/// `u` runs over a weight basis of the `gl(k)` copy generated by one
/// simplicial harmonic of shape `a`.
pub fn collapse_detect(
    a: &Partition,
    amb: Ambient,
    max_depth: u32,
    cap: Cap,
) -> Result<CollapseReport> {
    let k = amb.k;
    let simplicial = simplicial_basis(amb, a, cap)?;
    let gdim = gl_dim(a, k)?;
    let mut report = CollapseReport {
        partition: a.clone(),
        k,
        m: amb.m,
        simplicial_dim: simplicial.dim(),
        copy_dim: 0,
        gl_dim: gdim,
        levels: Vec::new(),
    };
    let Some(top) = simplicial.basis.first() else {
        return Ok(report);
    };
    let copy = gl_orbit(amb, top);
    report.copy_dim = copy.len();
    let top_degree = MultiDegree(a.padded(k)?).total() + 2 * max_depth;
    for d in MultiDegree::all_up_to(k, top_degree) {
        if d.total() == top_degree {
            cap.check(crate::ratpoly::multidegree_dim(&amb, &d))?;
        }
    }
    report.levels = (0..=max_depth)
        .into_par_iter()
        .map(|g| {
            let mut by_degree: std::collections::BTreeMap<MultiDegree, Vec<Polynomial>> =
                Default::default();
            for n in ExponentMatrix::with_total(k, g) {
                let r2n = n.r2n(amb);
                for u in &copy {
                    let p = &r2n * u;
                    let d = p.homogeneous_multidegree().unwrap().unwrap();
                    by_degree.entry(d).or_default().push(p);
                }
            }
            let realized: usize = by_degree.values().map(|ps| rank_of(ps)).sum();
            let free = verma_graded_dim(a, k, g).unwrap();
            CollapseLevel {
                g,
                free_dim: free,
                realized_dim: realized as u64,
                collapsed: (realized as u64) < free,
            }
        })
        .collect();
    Ok(report)
}

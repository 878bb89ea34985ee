//! The Fischer inner product `(P, Q) = [P(d) Q](0)`, the orthogonal split
//! `P = H + sum r^2_ij Q_ij`, its recursive application
//! `P = sum_n r^{2n} H_n`, and exact directness analysis of that sum.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::harmonics::{harmonic_basis, laplacians};
use crate::linalg;
use crate::ratpoly::{
    compositions, monomials_of_multidegree, multidegree_dim, Ambient, Monomial, MultiDegree,
    Polynomial,
};
use crate::{fmt_rational, Cap, Error, Rational, Result};

/// Pairs `(i, j)` with `1 <= i <= j <= k` in lexicographic order.
pub fn upper_pairs(k: usize) -> Vec<(usize, usize)> {
    (1..=k).flat_map(|i| (i..=k).map(move |j| (i, j))).collect()
}

/// Exponents `n_ij` (`i <= j`) of `r^{2n} = prod r_ij^{2 n_ij}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentMatrix {
    k: usize,
    // indexed like `upper_pairs(k)`
    entries: Vec<u32>,
}

impl ExponentMatrix {
    pub fn zero(k: usize) -> Self {
        ExponentMatrix {
            k,
            entries: vec![0; k * (k + 1) / 2],
        }
    }

    pub fn from_entries(k: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != k * (k + 1) / 2 {
            return Err(Error::LengthMismatch {
                expected: k * (k + 1) / 2,
                got: entries.len(),
            });
        }
        Ok(ExponentMatrix { k, entries })
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        // pairs before row i, then offset within the row
        (i - 1) * (2 * self.k + 2 - i) / 2 + (j - i)
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[self.slot(i, j)]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// `n + e_ij`.
    pub fn bump(&self, i: usize, j: usize) -> ExponentMatrix {
        let mut out = self.clone();
        let s = self.slot(i, j);
        out.entries[s] += 1;
        out
    }

    /// The multidegree of `r^{2n}`: each `r^2_ij` adds one to `d_i` and one to `d_j`.
    pub fn multidegree(&self) -> MultiDegree {
        let mut d = vec![0u32; self.k];
        for ((i, j), &n) in upper_pairs(self.k).into_iter().zip(&self.entries) {
            d[i - 1] += n;
            d[j - 1] += n;
        }
        MultiDegree(d)
    }

    /// `prod_{i<=j} (r^2_ij)^{n_ij}`.
    pub fn r2n(&self, amb: Ambient) -> Polynomial {
        let mut out = Polynomial::one(amb);
        for ((i, j), &n) in upper_pairs(self.k).into_iter().zip(&self.entries) {
            if n > 0 {
                out = &out * &Polynomial::rsquared(amb, i, j).unwrap().pow(n);
            }
        }
        out
    }

    /// Nonzero entries as `(i, j, n_ij)`.
    pub fn nonzero(&self) -> Vec<(usize, usize, u32)> {
        upper_pairs(self.k)
            .into_iter()
            .zip(&self.entries)
            .filter(|(_, &n)| n > 0)
            .map(|((i, j), &n)| (i, j, n))
            .collect()
    }

    /// All exponent matrices with `|n| = total`, lexicographically ascending.
    pub fn with_total(k: usize, total: u32) -> Vec<ExponentMatrix> {
        let mut v: Vec<ExponentMatrix> = compositions(total, k * (k + 1) / 2)
            .into_iter()
            .map(|entries| ExponentMatrix { k, entries })
            .collect();
        v.sort();
        v
    }
}

impl Serialize for ExponentMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[usize; 3]> = self
            .nonzero()
            .into_iter()
            .map(|(i, j, n)| [i, j, n as usize])
            .collect();
        v.serialize(s)
    }
}

impl std::fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let nz = self.nonzero();
        if nz.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = nz
            .into_iter()
            .map(|(i, j, n)| {
                if n == 1 {
                    format!("r{i}{j}^2")
                } else {
                    format!("r{i}{j}^{}", 2 * n)
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// One term `r^{2n} * H_n` of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FischerComponent {
    pub n: ExponentMatrix,
    pub harmonic: Polynomial,
}

/// `(P, Q) = [P(d) Q](0) = sum_alpha p_alpha q_alpha alpha!`.
pub fn fischer_ip(p: &Polynomial, q: &Polynomial) -> Result<Rational> {
    if p.ambient() != q.ambient() {
        let (a, b) = (p.ambient(), q.ambient());
        return Err(Error::AmbientMismatch(a.k, a.m, b.k, b.m));
    }
    let (small, large) = if p.len() <= q.len() { (p, q) } else { (q, p) };
    let mut acc = Rational::zero();
    for (mono, c) in small.terms() {
        let other = large.coefficient(mono);
        if !other.is_zero() {
            acc += c * other * Rational::from_integer(mono.factorial());
        }
    }
    Ok(acc)
}

/// `P = harmonic + sum_{i<=j} r^2_ij * quotient_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicSplit {
    pub harmonic: Polynomial,
    /// Indexed like [`upper_pairs`].
    pub quotients: Vec<((usize, usize), Polynomial)>,
}

/// Splits a homogeneous polynomial into its Fischer-orthogonal projection
/// onto the harmonics and a remainder in the ideal of the `r^2_ij`.
///
/// The quotients are the minimum Fischer-norm choice: `Q_ij = Delta_ij Y`
/// where `Y` solves `Delta_kl (P - sum r^2_ij Delta_ij Y) = 0` for all `k <= l`.
pub fn harmonic_split(p: &Polynomial, cap: Cap) -> Result<HarmonicSplit> {
    let amb = p.ambient();
    let pairs = upper_pairs(amb.k);
    let Some(d) = p.homogeneous_multidegree()? else {
        return Ok(HarmonicSplit {
            harmonic: p.clone(),
            quotients: pairs
                .into_iter()
                .map(|ij| (ij, Polynomial::zero(amb)))
                .collect(),
        });
    };
    cap.check(multidegree_dim(&amb, &d))?;
    let laps = laplacians(amb);
    let r2: Vec<Polynomial> = pairs
        .iter()
        .map(|&(i, j)| Polynomial::rsquared(amb, i, j).unwrap())
        .collect();
    let gram_op = |y: &Polynomial| -> Polynomial {
        let mut acc = Polynomial::zero(amb);
        for (lap, r) in laps.iter().zip(&r2) {
            let t = lap.apply(y).unwrap();
            if !t.is_zero() {
                acc = &acc + &(r * &t);
            }
        }
        acc
    };

    let monos = monomials_of_multidegree(&amb, &d);
    let mut row_index: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut entries = Vec::new();
    for (col, mono) in monos.iter().enumerate() {
        let image = gram_op(&Polynomial::monomial(
            amb,
            mono.clone(),
            Rational::from_integer(1.into()),
        ));
        for (op, lap) in laps.iter().enumerate() {
            for (m, c) in lap.apply(&image)?.terms() {
                let n = row_index.len();
                let r = *row_index.entry((op, m.clone())).or_insert(n);
                entries.push((r, col, c.clone()));
            }
        }
    }
    let mut rhs_entries = Vec::new();
    for (op, lap) in laps.iter().enumerate() {
        for (m, c) in lap.apply(p)?.terms() {
            let n = row_index.len();
            let r = *row_index.entry((op, m.clone())).or_insert(n);
            rhs_entries.push((r, c.clone()));
        }
    }
    let nrows = row_index.len();
    let mut rows = vec![vec![Rational::zero(); monos.len()]; nrows];
    for (r, c, v) in entries {
        rows[r][c] = v;
    }
    let mut rhs = vec![Rational::zero(); nrows];
    for (r, v) in rhs_entries {
        rhs[r] = v;
    }
    let y = linalg::solve(&rows, monos.len(), &rhs)
        .expect("the harmonic projection system is always consistent");
    let y = Polynomial::from_coordinates(amb, &monos, &y);
    let harmonic = p - &gram_op(&y);
    let quotients = pairs
        .into_iter()
        .zip(&laps)
        .map(|(ij, lap)| (ij, lap.apply(&y).unwrap()))
        .collect();
    Ok(HarmonicSplit {
        harmonic,
        quotients,
    })
}

/// Writes `P = sum_n r^{2n} H_n` by repeated harmonic splitting. Components
/// are sorted by `n` and have nonzero harmonic parts; zero gives an empty list.
pub fn fischer_decompose(p: &Polynomial, cap: Cap) -> Result<Vec<FischerComponent>> {
    let amb = p.ambient();
    let k = amb.k;
    let mut result: BTreeMap<ExponentMatrix, Polynomial> = BTreeMap::new();
    let mut level: BTreeMap<ExponentMatrix, Polynomial> = BTreeMap::new();
    if !p.is_zero() {
        level.insert(ExponentMatrix::zero(k), p.clone());
    }
    while !level.is_empty() {
        let work: Vec<(ExponentMatrix, Polynomial)> = level
            .iter()
            .flat_map(|(n, r)| {
                r.multidegree_split()
                    .into_values()
                    .map(move |part| (n.clone(), part))
            })
            .collect();
        let splits: Vec<(ExponentMatrix, HarmonicSplit)> = work
            .into_par_iter()
            .map(|(n, part)| harmonic_split(&part, cap).map(|s| (n, s)))
            .collect::<Result<_>>()?;
        let mut next: BTreeMap<ExponentMatrix, Polynomial> = BTreeMap::new();
        for (n, split) in splits {
            if !split.harmonic.is_zero() {
                let slot = result
                    .entry(n.clone())
                    .or_insert_with(|| Polynomial::zero(amb));
                *slot = &*slot + &split.harmonic;
            }
            for ((i, j), q) in split.quotients {
                if q.is_zero() {
                    continue;
                }
                let slot = next
                    .entry(n.bump(i, j))
                    .or_insert_with(|| Polynomial::zero(amb));
                *slot = &*slot + &q;
            }
        }
        level = next;
    }
    Ok(result
        .into_iter()
        .filter(|(_, h)| !h.is_zero())
        .map(|(n, harmonic)| FischerComponent { n, harmonic })
        .collect())
}

/// `sum r^{2n} H_n`.
pub fn reassemble(amb: Ambient, components: &[FischerComponent]) -> Polynomial {
    components.iter().fold(Polynomial::zero(amb), |acc, c| {
        &acc + &(&c.n.r2n(amb) * &c.harmonic)
    })
}

/// Whether the decomposition of `p` is forced, i.e. the sum `sum_n r^{2n} H`
/// is direct at every multidegree occurring in `p`.
pub fn decomposition_is_unique(p: &Polynomial, cap: Cap) -> Result<bool> {
    let amb = p.ambient();
    for d in p.multidegree_split().keys() {
        if !directness_at(amb, d, cap)?.witnesses.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One element `r^{2n} * h` of the spanning family at a multidegree, with
/// `h` the `basis_index`-th harmonic basis vector of `harmonic_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub n: ExponentMatrix,
    pub harmonic_degree: MultiDegree,
    pub basis_index: usize,
}

fn ser_witnesses<S: Serializer>(w: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<String>> = w
        .iter()
        .map(|row| row.iter().map(fmt_rational).collect())
        .collect();
    v.serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectnessRecord {
    pub multidegree: MultiDegree,
    pub assembled_dim: usize,
    pub ambient_dim: usize,
    pub rank: usize,
    pub family: Vec<FamilyMember>,
    /// Kernel vectors of the family: coefficient lists giving a vanishing
    /// combination, scaled to primitive integers.
    #[serde(serialize_with = "ser_witnesses")]
    pub witnesses: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectnessReport {
    pub k: usize,
    pub m: usize,
    pub degree: u32,
    pub records: Vec<DirectnessRecord>,
}

impl DirectnessReport {
    pub fn is_direct(&self) -> bool {
        self.records.iter().all(|r| r.witnesses.is_empty())
    }

    pub fn witness_count(&self) -> usize {
        self.records.iter().map(|r| r.witnesses.len()).sum()
    }

    pub fn record(&self, d: &MultiDegree) -> Option<&DirectnessRecord> {
        self.records.iter().find(|r| &r.multidegree == d)
    }
}

impl DirectnessRecord {
    /// Evaluates `sum_t c_t * family_t` for a coefficient vector.
    pub fn combination(
        &self,
        amb: Ambient,
        bases: &impl Fn(&MultiDegree) -> Vec<Polynomial>,
        coeffs: &[Rational],
    ) -> Polynomial {
        let mut acc = Polynomial::zero(amb);
        for (member, c) in self.family.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            let h = &bases(&member.harmonic_degree)[member.basis_index];
            acc = &acc + &(&member.n.r2n(amb) * h).scale(c);
        }
        acc
    }
}

fn family_at(
    amb: Ambient,
    d: &MultiDegree,
    bases: &HashMap<MultiDegree, Vec<Polynomial>>,
) -> (Vec<FamilyMember>, Vec<Polynomial>) {
    let mut ns: Vec<ExponentMatrix> = (0..=d.total() / 2)
        .flat_map(|g| ExponentMatrix::with_total(amb.k, g))
        .collect();
    ns.sort();
    let mut members = Vec::new();
    let mut polys = Vec::new();
    for n in ns {
        let Some(e) = d.checked_sub(&n.multidegree()) else {
            continue;
        };
        let basis = &bases[&e];
        if basis.is_empty() {
            continue;
        }
        let r2n = n.r2n(amb);
        for (idx, h) in basis.iter().enumerate() {
            polys.push(&r2n * h);
            members.push(FamilyMember {
                n: n.clone(),
                harmonic_degree: e.clone(),
                basis_index: idx,
            });
        }
    }
    (members, polys)
}

fn record_at(
    amb: Ambient,
    d: &MultiDegree,
    bases: &HashMap<MultiDegree, Vec<Polynomial>>,
) -> DirectnessRecord {
    let (family, polys) = family_at(amb, d, bases);
    let monos = monomials_of_multidegree(&amb, d);
    let index: HashMap<Monomial, usize> = monos
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    // columns are family members
    let mut rows = vec![vec![Rational::zero(); polys.len()]; monos.len()];
    for (col, p) in polys.iter().enumerate() {
        for (mono, c) in p.terms() {
            rows[index[mono]][col] = c.clone();
        }
    }
    let red = linalg::rref(&rows, polys.len());
    let witnesses: Vec<Vec<Rational>> = red.kernel().iter().map(|v| linalg::primitive(v)).collect();
    for w in &witnesses {
        let zero = polys
            .iter()
            .zip(w)
            .fold(Polynomial::zero(amb), |acc, (p, c)| &acc + &p.scale(c));
        assert!(zero.is_zero(), "collapse witness does not vanish");
    }
    DirectnessRecord {
        multidegree: d.clone(),
        assembled_dim: polys.len(),
        ambient_dim: monos.len(),
        rank: red.rank(),
        family,
        witnesses,
    }
}

fn harmonic_bases(
    amb: Ambient,
    degrees: &[MultiDegree],
    cap: Cap,
) -> Result<HashMap<MultiDegree, Vec<Polynomial>>> {
    degrees
        .par_iter()
        .map(|e| harmonic_basis(amb, e, cap).map(|b| (e.clone(), b.basis)))
        .collect()
}

/// Directness of `sum_n r^{2n} H` restricted to the single multidegree `d`.
pub fn directness_at(amb: Ambient, d: &MultiDegree, cap: Cap) -> Result<DirectnessRecord> {
    if d.len() != amb.k {
        return Err(Error::LengthMismatch {
            expected: amb.k,
            got: d.len(),
        });
    }
    cap.check(multidegree_dim(&amb, d))?;
    let below: Vec<MultiDegree> = MultiDegree::all_up_to(amb.k, d.total())
        .into_iter()
        .filter(|e| d.checked_sub(e).is_some())
        .collect();
    let bases = harmonic_bases(amb, &below, cap)?;
    Ok(record_at(amb, d, &bases))
}

/// For every multidegree of total degree at most `max_total`, the rank of the
/// family `{r^{2n} h}` against its size, with exact kernel vectors whenever
/// the family is dependent.
pub fn directness_report(amb: Ambient, max_total: u32, cap: Cap) -> Result<DirectnessReport> {
    let degrees = MultiDegree::all_up_to(amb.k, max_total);
    for d in &degrees {
        cap.check(multidegree_dim(&amb, d))?;
    }
    let bases = harmonic_bases(amb, &degrees, cap)?;
    let records = degrees
        .par_iter()
        .map(|d| record_at(amb, d, &bases))
        .collect();
    Ok(DirectnessReport {
        k: amb.k,
        m: amb.m,
        degree: max_total,
        records,
    })
}

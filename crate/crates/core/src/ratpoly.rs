//! Sparse multivariate polynomials with exact rational coefficients in the
//! `k*m` variables `x^i_j` (vector index `i`, coordinate `j`).
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic with variables ordered `x1_1 > x1_2 > ... > x2_1 > ...`.
//! Coefficients are `BigRational`, always normalized and never zero, so two
//! equal polynomials have identical term maps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::{fmt_rational, Error, Rational, Result};

/// Number of vector variables `k` and their dimension `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Ambient {
    pub k: usize,
    pub m: usize,
}

impl Ambient {
    pub fn new(k: usize, m: usize) -> Result<Self> {
        if k == 0 || m == 0 {
            return Err(Error::InvalidArgument(format!(
                "k and m must be at least 1 (got k={k}, m={m})"
            )));
        }
        Ok(Ambient { k, m })
    }

    /// Total number of scalar variables, `k*m`.
    pub fn nvars(&self) -> usize {
        self.k * self.m
    }

    /// Linear index of `x^vector_coordinate`, both 1-based.
    pub fn index(&self, v: VarIndex) -> Result<usize> {
        if v.vector == 0 || v.vector > self.k {
            return Err(Error::IndexOutOfRange(format!(
                "vector index {} not in 1..={}",
                v.vector, self.k
            )));
        }
        if v.coordinate == 0 || v.coordinate > self.m {
            return Err(Error::IndexOutOfRange(format!(
                "coordinate index {} not in 1..={}",
                v.coordinate, self.m
            )));
        }
        Ok((v.vector - 1) * self.m + (v.coordinate - 1))
    }

    pub fn var_at(&self, idx: usize) -> VarIndex {
        VarIndex {
            vector: idx / self.m + 1,
            coordinate: idx % self.m + 1,
        }
    }

    fn check_same(&self, other: &Ambient) -> Result<()> {
        if self != other {
            Err(Error::AmbientMismatch(self.k, self.m, other.k, other.m))
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_vector(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.k {
            Err(Error::IndexOutOfRange(format!(
                "vector index {i} not in 1..={}",
                self.k
            )))
        } else {
            Ok(())
        }
    }
}

/// The variable `x^vector_coordinate`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarIndex {
    pub vector: usize,
    pub coordinate: usize,
}

impl VarIndex {
    pub fn new(vector: usize, coordinate: usize) -> Self {
        VarIndex { vector, coordinate }
    }
}

/// A power product of the ambient variables, stored as a dense exponent
/// vector of length `k*m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars].into_boxed_slice(),
        }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial {
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn var(nvars: usize, idx: usize, exp: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[idx] = exp;
        Monomial::from_exponents(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, idx: usize) -> u32 {
        self.exps[idx]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial::from_exponents(exps))
    }

    /// `alpha! = prod alpha_v!`, the Fischer norm of the monomial.
    pub fn factorial(&self) -> BigInt {
        self.exps
            .iter()
            .fold(BigInt::one(), |acc, &e| acc * factorial(e))
    }

    pub fn multidegree(&self, amb: &Ambient) -> MultiDegree {
        MultiDegree(
            self.exps
                .chunks(amb.m)
                .map(|block| block.iter().sum())
                .collect(),
        )
    }

    fn write(&self, amb: &Ambient, f: &mut fmt::Formatter<'_>, prefix: char) -> fmt::Result {
        let mut first = true;
        for (idx, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            let v = amb.var_at(idx);
            write!(f, "{prefix}{}_{}", v.vector, v.coordinate)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// earliest variable.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Degrees `(d_1, ..., d_k)` in each vector variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn zero(k: usize) -> Self {
        MultiDegree(vec![0; k])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise `self - other`, `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiDegree)
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Every multidegree of length `k` with total degree at most `max_total`,
    /// ordered by total degree and then lexicographically.
    pub fn all_up_to(k: usize, max_total: u32) -> Vec<MultiDegree> {
        let mut out = Vec::new();
        for total in 0..=max_total {
            let mut comps = compositions(total, k);
            comps.reverse();
            out.extend(comps.into_iter().map(MultiDegree));
        }
        out
    }

    /// Parses `2` or `2,1`.
    pub fn parse(s: &str) -> Result<MultiDegree> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidArgument(format!("bad multidegree entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(MultiDegree)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// Compositions of `n` into `parts` non-negative parts, lexicographically
/// descending (first part largest first).
pub(crate) fn compositions(n: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(n: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=n).rev() {
            prefix.push(first);
            go(n - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

pub(crate) fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Dimension of the space of polynomials homogeneous of multidegree `d`.
pub fn multidegree_dim(amb: &Ambient, d: &MultiDegree) -> usize {
    d.0.iter()
        .map(|&di| binomial(di as u64 + amb.m as u64 - 1, amb.m as u64 - 1))
        .fold(1u128, |a, b| a.saturating_mul(b))
        .min(usize::MAX as u128) as usize
}

/// All monomials of multidegree `d`, in descending canonical order.
pub fn monomials_of_multidegree(amb: &Ambient, d: &MultiDegree) -> Vec<Monomial> {
    assert_eq!(d.len(), amb.k, "multidegree length must equal k");
    let blocks: Vec<Vec<Vec<u32>>> = d.0.iter().map(|&di| compositions(di, amb.m)).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(amb.nvars());
    fn go(blocks: &[Vec<Vec<u32>>], current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        match blocks.split_first() {
            None => out.push(Monomial::from_exponents(current.clone())),
            Some((first, rest)) => {
                for comp in first {
                    let len = current.len();
                    current.extend_from_slice(comp);
                    go(rest, current, out);
                    current.truncate(len);
                }
            }
        }
    }
    go(&blocks, &mut current, &mut out);
    out
}

/// A polynomial in the `k*m` variables over the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ambient: Ambient,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ambient: Ambient) -> Self {
        Polynomial {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: Ambient) -> Self {
        Self::constant(ambient, Rational::one())
    }

    pub fn constant(ambient: Ambient, c: Rational) -> Self {
        Self::monomial(ambient, Monomial::one(ambient.nvars()), c)
    }

    pub fn monomial(ambient: Ambient, mono: Monomial, c: Rational) -> Self {
        assert_eq!(mono.nvars(), ambient.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Polynomial { ambient, terms }
    }

    pub fn var(ambient: Ambient, v: VarIndex) -> Result<Self> {
        let idx = ambient.index(v)?;
        Ok(Self::monomial(
            ambient,
            Monomial::var(ambient.nvars(), idx, 1),
            Rational::one(),
        ))
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(ambient: Ambient, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(ambient);
        for (mono, c) in terms {
            p.add_term(mono, c);
        }
        p
    }

    /// `r^2_ij = sum_s x^i_s x^j_s`.
    pub fn rsquared(ambient: Ambient, i: usize, j: usize) -> Result<Self> {
        ambient.check_vector(i)?;
        ambient.check_vector(j)?;
        let n = ambient.nvars();
        let terms = (0..ambient.m).map(|s| {
            let a = Monomial::var(n, (i - 1) * ambient.m + s, 1);
            let b = Monomial::var(n, (j - 1) * ambient.m + s, 1);
            (a.mul(&b), Rational::one())
        });
        Ok(Polynomial::from_terms(ambient, terms))
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ambient.check_same(&other.ambient)?;
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ambient.check_same(&other.ambient)?;
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ambient.check_same(&other.ambient)?;
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += c;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            ambient: self.ambient,
            terms: acc,
        })
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ambient);
        }
        Polynomial {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies every term by the monomial `mono`.
    pub fn mul_monomial(&self, mono: &Monomial) -> Polynomial {
        Polynomial {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.ambient);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact partial derivative with respect to `v`.
    pub fn derivative(&self, v: VarIndex) -> Result<Polynomial> {
        let idx = self.ambient.index(v)?;
        Ok(self.derivative_at(idx))
    }

    pub(crate) fn derivative_at(&self, idx: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.ambient);
        for (mono, c) in &self.terms {
            let e = mono.exponent(idx);
            if e == 0 {
                continue;
            }
            let mut exps = mono.exponents().to_vec();
            exps[idx] -= 1;
            out.add_term(
                Monomial::from_exponents(exps),
                c * Rational::from_integer(e.into()),
            );
        }
        out
    }

    /// Splits into parts homogeneous in each vector variable.
    pub fn multidegree_split(&self) -> BTreeMap<MultiDegree, Polynomial> {
        let mut out: BTreeMap<MultiDegree, Polynomial> = BTreeMap::new();
        for (mono, c) in &self.terms {
            out.entry(mono.multidegree(&self.ambient))
                .or_insert_with(|| Polynomial::zero(self.ambient))
                .terms
                .insert(mono.clone(), c.clone());
        }
        out
    }

    /// The multidegree of a homogeneous polynomial; `Ok(None)` for zero.
    pub fn homogeneous_multidegree(&self) -> Result<Option<MultiDegree>> {
        let mut it = self.terms.keys().map(|m| m.multidegree(&self.ambient));
        let Some(first) = it.next() else {
            return Ok(None);
        };
        if it.any(|d| d != first) {
            return Err(Error::NotHomogeneous);
        }
        Ok(Some(first))
    }

    /// Coordinates with respect to an indexed monomial basis. Terms whose
    /// monomial is not in `index` are reported as `None`.
    pub fn coordinates(
        &self,
        index: &std::collections::HashMap<Monomial, usize>,
    ) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); index.len()];
        for (mono, c) in &self.terms {
            v[*index.get(mono)?] = c.clone();
        }
        Some(v)
    }

    /// Inverse of [`Polynomial::coordinates`].
    pub fn from_coordinates(ambient: Ambient, basis: &[Monomial], coords: &[Rational]) -> Self {
        Polynomial::from_terms(ambient, basis.iter().cloned().zip(coords.iter().cloned()))
    }

    /// Parses the text grammar `c*x1_1^2*x2_3 - 1/2*x1_2 + 3`.
    pub fn parse(text: &str, k: usize, m: usize) -> Result<Polynomial> {
        let ambient = Ambient::new(k, m)?;
        Parser::new(text, ambient).parse()
    }
}

impl fmt::Display for Polynomial {
    /// Renders terms in descending canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (mono, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if mono.is_one() {
                f.write_str(&fmt_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", fmt_rational(&abs))?;
                }
                mono.write(&self.ambient, f, 'x')?;
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial ambient mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial ambient mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial ambient mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

/// Writes an operator term `x^a d^b` with `d{i}_{j}` standing for the
/// partial derivative.
pub(crate) fn write_monomial(
    mono: &Monomial,
    amb: &Ambient,
    f: &mut fmt::Formatter<'_>,
    prefix: char,
) -> fmt::Result {
    mono.write(amb, f, prefix)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ambient: Ambient,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, ambient: Ambient) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            ambient,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn small_integer(&mut self) -> Result<usize> {
        let start = self.pos;
        let n = self.integer()?;
        usize::try_from(n).or_else(|_| {
            self.pos = start;
            self.err("integer too large")
        })
    }

    fn parse(mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.ambient);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return self.err("empty input"),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    Rational::one()
                }
                Some(b'-') => {
                    self.pos += 1;
                    -Rational::one()
                }
                Some(_) if first => Rational::one(),
                Some(c) => return self.err(format!("expected '+' or '-', found {:?}", c as char)),
            };
            first = false;
            let term = self.term()?;
            out = &out + &term.scale(&sign);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        self.pos = at;
                        return self.err("zero denominator");
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(Polynomial::constant(self.ambient, Rational::new(num, den)))
            }
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return self.err("expected vector index after 'x'");
                }
                let i = self.small_integer()?;
                if self.src.get(self.pos) != Some(&b'_') {
                    return self.err("expected '_' in variable name");
                }
                self.pos += 1;
                if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return self.err("expected coordinate index after '_'");
                }
                let j = self.small_integer()?;
                let idx = self
                    .ambient
                    .index(VarIndex::new(i, j))
                    .map_err(|e| match e {
                        Error::IndexOutOfRange(msg) => {
                            Error::IndexOutOfRange(format!("{msg} at position {start}"))
                        }
                        other => other,
                    })?;
                let mut exp = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let at = self.pos;
                    let e = self.small_integer()?;
                    if e == 0 || e > u32::MAX as usize {
                        self.pos = at;
                        return self.err("exponent must be a positive integer");
                    }
                    exp = e as u32;
                }
                Ok(Polynomial::monomial(
                    self.ambient,
                    Monomial::var(self.ambient.nvars(), idx, exp),
                    Rational::one(),
                ))
            }
            Some(c) => self.err(format!("unexpected character {:?}", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}
